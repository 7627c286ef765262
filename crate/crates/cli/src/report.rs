//! Analysis reports and human-readable tables.
//!
//! Tables show every point set twice: with the library's 0-based point
//! indices and with 1-based labels `1..=n`.

use std::fmt::Write;

use serde::Serialize;
use somp::morphism::MorphismViolation;
use somp::states::{delta_states_among, enumerate_states_with, is_separating, SolverConfig};
use somp::stone::dirac_census;
use somp::{
    indistinguishability_partition, is_dirac, natural_pd_representation, Event, MorphismTable,
    QuotientResult, Somp, StateSet, StoneResult, TransversalCopy, Violation,
};

fn one_based(members: impl IntoIterator<Item = usize>) -> String {
    let labels: Vec<String> = members.into_iter().map(|p| (p + 1).to_string()).collect();
    format!("{{{}}}", labels.join(","))
}

/// `{0,1} ~ {1,2}`: 0-based indices, then 1-based labels.
pub fn labels(e: &Event) -> String {
    format!("{e} ~ {}", one_based(e.members()))
}

pub fn violation_labels(v: &Violation) -> String {
    match v {
        Violation::MissingFull => "the full set is missing".into(),
        Violation::MissingComplement(a) => format!("complement of {} is missing", labels(a)),
        Violation::MissingDisjointUnion(a, b) => {
            format!("union of {} and {} is missing", labels(a), labels(b))
        }
        Violation::DuplicateEvent(a) => format!("{} appears more than once", labels(a)),
        Violation::LengthMismatch(a) => format!(
            "{} is over {} points, not the universe size",
            labels(a),
            a.universe_size()
        ),
    }
}

pub fn family_table(s: &Somp) -> String {
    let mut out = format!("n = {}, |L| = {}\n", s.universe_size(), s.len());
    for (i, e) in s.events().iter().enumerate() {
        let _ = writeln!(out, "{i:>5}  {}", labels(e));
    }
    out
}

#[derive(Debug, Serialize)]
pub struct Flags {
    pub point_distinguishing: bool,
    pub lattice: bool,
    pub delta_closed: bool,
    pub boolean: bool,
}

#[derive(Debug, Serialize)]
pub struct StateCounts {
    pub total: usize,
    pub dirac: usize,
    /// Only for families closed under symmetric difference.
    pub delta: Option<usize>,
    pub all_states_dirac: bool,
}

/// Cardinalities of the quotient point set, the point set of the
/// representation over all states, and the quotient family. The state
/// count is absent when the states do not separate.
#[derive(Debug, Serialize)]
pub struct Cardinalities {
    pub quotient_points: usize,
    pub state_points: Option<usize>,
    pub quotient_events: usize,
}

#[derive(Debug, Serialize)]
pub struct Analysis {
    pub universe_size: usize,
    pub events: usize,
    pub flags: Flags,
    pub blocks: usize,
    pub states: StateCounts,
    pub cardinalities: Cardinalities,
}

impl Analysis {
    pub fn compute(s: &Somp, config: SolverConfig) -> somp::Result<Analysis> {
        let states = enumerate_states_with(s, config)?;
        let census = dirac_census(s, &states)?;
        let delta_closed = s.is_delta_closed();
        let delta = if delta_closed {
            Some(delta_states_among(s, &states)?.len())
        } else {
            None
        };
        let blocks = indistinguishability_partition(s).len();
        let quotient = natural_pd_representation(s).quotient;
        Ok(Analysis {
            universe_size: s.universe_size(),
            events: s.len(),
            flags: Flags {
                point_distinguishing: s.is_point_distinguishing(),
                lattice: s.is_lattice(),
                delta_closed,
                boolean: s.is_boolean(),
            },
            blocks,
            states: StateCounts {
                total: census.total,
                dirac: census.dirac,
                delta,
                all_states_dirac: census.all_dirac(),
            },
            cardinalities: Cardinalities {
                quotient_points: quotient.universe_size(),
                state_points: is_separating(s, &states).then_some(states.len()),
                quotient_events: quotient.len(),
            },
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }

    pub fn to_table(&self) -> String {
        let yn = |b: bool| if b { "yes" } else { "no" };
        let mut out = String::new();
        let _ = writeln!(out, "points                 {}", self.universe_size);
        let _ = writeln!(out, "events                 {}", self.events);
        let _ = writeln!(
            out,
            "point-distinguishing   {}",
            yn(self.flags.point_distinguishing)
        );
        let _ = writeln!(out, "lattice                {}", yn(self.flags.lattice));
        let _ = writeln!(
            out,
            "closed under delta     {}",
            yn(self.flags.delta_closed)
        );
        let _ = writeln!(out, "Boolean                {}", yn(self.flags.boolean));
        let _ = writeln!(out, "blocks                 {}", self.blocks);
        let _ = writeln!(out, "states                 {}", self.states.total);
        let _ = writeln!(out, "Dirac states           {}", self.states.dirac);
        if let Some(d) = self.states.delta {
            let _ = writeln!(out, "delta states           {d}");
        }
        let _ = writeln!(
            out,
            "all states Dirac       {}",
            yn(self.states.all_states_dirac)
        );
        let c = &self.cardinalities;
        let q = c.state_points.map_or("n/a".to_string(), |q| q.to_string());
        let _ = writeln!(
            out,
            "cardinalities          quotient points {}, state points {q}, quotient events {}",
            c.quotient_points, c.quotient_events
        );
        out
    }
}

pub fn states_table(s: &Somp, states: &StateSet) -> somp::Result<String> {
    let mut rows = String::new();
    let mut dirac = 0;
    for (j, st) in states.iter().enumerate() {
        let bits: String = st
            .values()
            .iter()
            .map(|&v| if v { '1' } else { '0' })
            .collect();
        let at = is_dirac(s, st)?;
        let kind = if at.is_empty() {
            "non-Dirac".to_string()
        } else {
            dirac += 1;
            format!("Dirac at {}", labels(&at))
        };
        let _ = writeln!(rows, "{j:>5}  {bits}  {kind}");
    }
    Ok(format!(
        "{} states, {dirac} Dirac, {} non-Dirac\n{rows}",
        states.len(),
        states.len() - dirac
    ))
}

pub fn quotient_table(s: &Somp, q: &QuotientResult) -> String {
    let mut out = format!(
        "{} points in {} blocks, {} events\nblocks\n",
        s.universe_size(),
        q.partition.len(),
        q.quotient.len()
    );
    for (b, block) in q.partition.blocks().iter().enumerate() {
        let _ = writeln!(out, "{b:>5}  {}", labels(block));
    }
    out.push_str("map\n");
    for (i, &j) in q.map_f.iter().enumerate() {
        let _ = writeln!(
            out,
            "{:>5}  {} -> {}",
            i,
            labels(s.event(i)),
            labels(q.quotient.event(j))
        );
    }
    out
}

pub fn transversal_table(t: &TransversalCopy) -> String {
    let mut out = format!("representatives {}\n", labels_of(&t.representatives));
    for i in 0..t.somp.len() {
        let _ = writeln!(out, "{i:>5}  {}", labels_of(&t.original_members(i)));
    }
    out
}

fn labels_of(points: &[usize]) -> String {
    let zero: Vec<String> = points.iter().map(usize::to_string).collect();
    format!(
        "{{{}}} ~ {}",
        zero.join(","),
        one_based(points.iter().copied())
    )
}

pub fn stone_table(base: &Somp, r: &StoneResult) -> String {
    let mut out = format!(
        "{} states as points, {} events\n",
        r.rep.universe_size(),
        r.rep.len()
    );
    for (i, &j) in r.map_e.iter().enumerate() {
        let _ = writeln!(
            out,
            "{:>5}  {} -> {}",
            i,
            labels(base.event(i)),
            labels(r.rep.event(j))
        );
    }
    out
}

pub fn morphism_table(m: &MorphismTable<'_>) -> String {
    let mut out = String::new();
    for (i, &j) in m.table().iter().enumerate() {
        let _ = writeln!(
            out,
            "{:>5}  {} -> {}",
            i,
            labels(m.source().event(i)),
            labels(m.target().event(j))
        );
    }
    out
}

#[derive(Debug, Serialize)]
pub struct MorphismReport {
    pub morphism: bool,
    pub injective: bool,
    pub surjective: bool,
    pub isomorphism: bool,
    pub violations: Vec<String>,
}

impl MorphismReport {
    pub fn new(m: &MorphismTable<'_>) -> Self {
        let src = m.source();
        let violations: Vec<String> = m
            .violations()
            .iter()
            .map(|v| match *v {
                MorphismViolation::TopNotPreserved { image } => {
                    format!(
                        "{}: P maps to {}",
                        v.name(),
                        labels(m.target().event(image))
                    )
                }
                MorphismViolation::ComplementNotPreserved { event } => {
                    format!("{}: {}", v.name(), labels(src.event(event)))
                }
                MorphismViolation::DisjointUnionNotPreserved { a, b } => {
                    format!(
                        "{}: {} and {}",
                        v.name(),
                        labels(src.event(a)),
                        labels(src.event(b))
                    )
                }
            })
            .collect();
        MorphismReport {
            morphism: violations.is_empty(),
            injective: m.is_injective(),
            surjective: m.is_surjective(),
            isomorphism: m.is_somp_isomorphism(),
            violations,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }

    pub fn to_table(&self) -> String {
        let mut out = format!(
            "morphism {}, injective {}, surjective {}, isomorphism {}\n",
            self.morphism, self.injective, self.surjective, self.isomorphism
        );
        for v in &self.violations {
            let _ = writeln!(out, "  {v}");
        }
        out
    }
}
