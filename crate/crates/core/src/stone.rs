//! Stone-type representations over sets of two-valued states.
//!
//! Given a separating set `S` of states on `L`, the family
//! `e(C) = { s ∈ S | s(C) = 1 }`, `C ∈ L`, lives on the point set `S`, is
//! isomorphic to `L` via `e`, and separates its points. Point `j` of the
//! representation is the `j`-th state of the (sorted) state set.

use crate::error::{Error, Result};
use crate::event::Event;
use crate::json::content_hash;
use crate::morphism::MorphismTable;
use crate::quotient::{check_bijection, check_hash, QuotientResult};
use crate::somp::Somp;
use crate::states::{
    dirac_states, enumerate_delta_states, enumerate_states, is_dirac, is_state, separation_witness,
    StateSet,
};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StoneResult {
    pub base_hash: String,
    pub states: StateSet,
    pub rep: Somp,
    /// Base event `i` maps to representation event `map_e[i]`.
    pub map_e: Vec<usize>,
}

impl StoneResult {
    pub fn map_e_table<'a>(&'a self, base: &'a Somp) -> Result<MorphismTable<'a>> {
        check_hash(&self.base_hash, base)?;
        MorphismTable::new(base, &self.rep, self.map_e.clone())
    }

    /// Shape checks that need no base family.
    pub fn check_shape(&self) -> Result<()> {
        if self.states.somp_hash != self.base_hash {
            return Err(Error::HashMismatch {
                expected: self.base_hash.clone(),
                found: self.states.somp_hash.clone(),
            });
        }
        if self.rep.universe_size() != self.states.len() {
            return Err(Error::Malformed(format!(
                "representation has {} points but there are {} states",
                self.rep.universe_size(),
                self.states.len()
            )));
        }
        check_bijection(&self.map_e, self.rep.len())
    }

    /// Full check against `base`: hash, states, and `rep[map_e[i]] = e(base[i])`.
    pub fn verify_against(&self, base: &Somp) -> Result<()> {
        self.check_shape()?;
        check_hash(&self.base_hash, base)?;
        self.states.check_against(base)?;
        for i in 0..base.len() {
            if self.rep.event(self.map_e[i]) != &image(&self.states, i) {
                return Err(Error::Malformed(format!(
                    "map_e is wrong at event {}",
                    base.event(i)
                )));
            }
        }
        Ok(())
    }
}

/// `e(C)` for base event `i`.
fn image(states: &StateSet, i: usize) -> Event {
    let bits: Vec<bool> = states.iter().map(|st| st.value(i)).collect();
    Event::from_bits(&bits)
}

/// Builds the representation on `states`, refusing non-separating sets.
pub fn stone_representation(s: &Somp, states: &StateSet) -> Result<StoneResult> {
    check_hash(&states.somp_hash, s)?;
    for st in states.iter() {
        if let Some(v) = is_state(s, st.values())? {
            return Err(Error::NotAState(v.describe(s)));
        }
    }
    if let Some((a, b)) = separation_witness(s, states.states()) {
        return Err(Error::NotSeparating {
            a: s.event(a).to_string(),
            b: s.event(b).to_string(),
        });
    }
    let images: Vec<Event> = (0..s.len()).map(|i| image(states, i)).collect();
    let mut events = images.clone();
    events.sort();
    let rep = Somp::from_events(states.len(), events)?;
    let map_e: Vec<usize> = images
        .iter()
        .map(|e| rep.index_of(e).expect("image is a representation event"))
        .collect();
    let result = StoneResult {
        base_hash: content_hash(s),
        states: states.clone(),
        rep,
        map_e,
    };
    let e = result.map_e_table(s)?;
    let violations = e.violations();
    if !violations.is_empty() || !e.is_somp_isomorphism() {
        return Err(Error::NotAMorphism(violations.len()));
    }
    Ok(result)
}

/// Census of states by Dirac-ness.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DiracCensus {
    pub total: usize,
    pub dirac: usize,
}

impl DiracCensus {
    pub fn all_dirac(&self) -> bool {
        self.total == self.dirac
    }
}

pub fn dirac_census(s: &Somp, states: &StateSet) -> Result<DiracCensus> {
    let mut dirac = 0;
    for st in states.iter() {
        if !is_dirac(s, st)?.is_empty() {
            dirac += 1;
        }
    }
    Ok(DiracCensus {
        total: states.len(),
        dirac,
    })
}

/// Whether every two-valued state on `s` is a Dirac state.
pub fn all_states_dirac(s: &Somp, limit: Option<usize>) -> Result<DiracCensus> {
    let states = enumerate_states(s, limit)?;
    dirac_census(s, &states)
}

/// Observed facts about the representation built from the symmetric
/// difference states.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DeltaStoneReport {
    pub delta_states: usize,
    pub rep_delta_closed: bool,
    /// Census of the symmetric-difference states on the representation,
    /// present only when the representation is closed under `△`.
    pub rep_delta_census: Option<DiracCensus>,
}

/// The representation over all two-valued symmetric-difference states.
pub fn delta_stone(s: &Somp, limit: Option<usize>) -> Result<(StoneResult, DeltaStoneReport)> {
    let delta = enumerate_delta_states(s, limit)?;
    let result = stone_representation(s, &delta)?;
    let rep_delta_closed = result.rep.is_delta_closed();
    let rep_delta_census = if rep_delta_closed {
        let on_rep = enumerate_delta_states(&result.rep, limit)?;
        Some(dirac_census(&result.rep, &on_rep)?)
    } else {
        None
    };
    let report = DeltaStoneReport {
        delta_states: delta.len(),
        rep_delta_closed,
        rep_delta_census,
    };
    Ok((result, report))
}

/// The representation over the Dirac states.
pub fn dirac_stone(s: &Somp) -> Result<StoneResult> {
    stone_representation(s, &dirac_states(s))
}

/// The isomorphism from a Dirac-state representation onto the natural
/// point-distinguishing quotient, `f ∘ e⁻¹`, as an index table over the
/// representation's events.
///
/// Dirac states at `p` and `q` coincide exactly when `p` and `q` share an
/// indistinguishability class, so the Dirac points correspond to the blocks.
pub fn dirac_stone_to_quotient(
    base: &Somp,
    stone: &StoneResult,
    quotient: &QuotientResult,
) -> Result<Vec<usize>> {
    check_hash(&stone.base_hash, base)?;
    check_hash(&quotient.source_hash, base)?;
    if stone.states.len() != quotient.partition.len() {
        return Err(Error::Malformed(format!(
            "{} Dirac points but {} blocks",
            stone.states.len(),
            quotient.partition.len()
        )));
    }
    let mut table = vec![0; stone.rep.len()];
    for i in 0..base.len() {
        table[stone.map_e[i]] = quotient.map_f[i];
    }
    Ok(table)
}
