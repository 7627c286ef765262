//! Two-valued states: `{0,1}`-valued maps on the events that take value 1
//! at `P` and add up over disjoint pairs.

mod solver;

use crate::error::{Error, Result};
use crate::event::Event;
use crate::json::content_hash;
use crate::somp::Somp;

/// Default cap on the number of enumerated states.
pub const DEFAULT_STATE_LIMIT: usize = 1_000_000;

/// Value vector aligned with the canonical event order of a [`Somp`].
///
/// The derived order is lexicographic with `false < true`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TwoValuedState {
    values: Vec<bool>,
}

impl TwoValuedState {
    /// Wraps a value vector without checking it; see [`is_state`].
    pub fn from_values(values: Vec<bool>) -> Self {
        TwoValuedState { values }
    }

    pub fn values(&self) -> &[bool] {
        &self.values
    }

    pub fn value(&self, event: usize) -> bool {
        self.values[event]
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Values on the complement-pair representatives, in canonical order.
    pub fn pair_choices(&self, s: &Somp) -> Vec<bool> {
        s.pair_representatives()
            .into_iter()
            .map(|r| self.values[r])
            .collect()
    }
}

/// Sorted, deduplicated states over one family, identified by its hash.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StateSet {
    pub somp_hash: String,
    states: Vec<TwoValuedState>,
}

impl StateSet {
    /// Sorts and deduplicates `states`; every vector must have `|L|` entries.
    pub fn new(s: &Somp, states: Vec<TwoValuedState>) -> Result<StateSet> {
        let set = StateSet::from_parts(content_hash(s), states)?;
        set.check_lengths(s.len())?;
        Ok(set)
    }

    /// Builds a set bound only by hash. Vectors must share one length.
    pub fn from_parts(somp_hash: String, mut states: Vec<TwoValuedState>) -> Result<StateSet> {
        if let Some(first) = states.first() {
            let len = first.len();
            if states.iter().any(|st| st.len() != len) {
                return Err(Error::Malformed("state vectors differ in length".into()));
            }
        }
        states.sort();
        states.dedup();
        Ok(StateSet { somp_hash, states })
    }

    fn check_lengths(&self, expected: usize) -> Result<()> {
        match self.states.iter().find(|st| st.len() != expected) {
            Some(st) => Err(Error::LengthMismatch {
                event: "state vector".into(),
                expected,
                found: st.len(),
            }),
            None => Ok(()),
        }
    }

    /// Checks that the set refers to `s` and that every member is a state.
    pub fn check_against(&self, s: &Somp) -> Result<()> {
        crate::quotient::check_hash(&self.somp_hash, s)?;
        self.check_lengths(s.len())?;
        for st in &self.states {
            if let Some(v) = is_state(s, st.values())? {
                return Err(Error::NotAState(v.describe(s)));
            }
        }
        Ok(())
    }

    pub fn states(&self) -> &[TwoValuedState] {
        &self.states
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, TwoValuedState> {
        self.states.iter()
    }

    /// Keeps the states accepted by `keep`.
    pub fn filter(&self, keep: impl Fn(&TwoValuedState) -> bool) -> StateSet {
        StateSet {
            somp_hash: self.somp_hash.clone(),
            states: self.states.iter().filter(|st| keep(st)).cloned().collect(),
        }
    }
}

/// Why a value vector fails to be a state.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StateViolation {
    /// Value 0 at `P`.
    TopNotOne,
    /// `v(A ∪ B) != v(A) + v(B)` for the disjoint events `a`, `b`.
    Additivity { a: usize, b: usize },
}

impl StateViolation {
    pub fn describe(&self, s: &Somp) -> String {
        match *self {
            StateViolation::TopNotOne => "value at P is 0".into(),
            StateViolation::Additivity { a, b } => {
                format!("additivity fails on {} and {}", s.event(a), s.event(b))
            }
        }
    }
}

/// Checks `v(P) = 1` and additivity on every disjoint pair, returning the
/// first failure (pairs in canonical order).
pub fn is_state(s: &Somp, values: &[bool]) -> Result<Option<StateViolation>> {
    if values.len() != s.len() {
        return Err(Error::LengthMismatch {
            event: "state vector".into(),
            expected: s.len(),
            found: values.len(),
        });
    }
    if !values[s.full_index()] {
        return Ok(Some(StateViolation::TopNotOne));
    }
    for &(a, b, u) in s.disjoint_pairs() {
        if u8::from(values[u]) != u8::from(values[a]) + u8::from(values[b]) {
            return Ok(Some(StateViolation::Additivity { a, b }));
        }
    }
    Ok(None)
}

/// The state concentrated at point `p`: value 1 exactly on events holding `p`.
pub fn dirac_state(s: &Somp, p: usize) -> Result<TwoValuedState> {
    if p >= s.universe_size() {
        return Err(Error::PointOutOfRange {
            point: p,
            universe_size: s.universe_size(),
        });
    }
    Ok(TwoValuedState {
        values: s.events().iter().map(|a| a.contains(p)).collect(),
    })
}

/// The distinct Dirac states of `s`.
pub fn dirac_states(s: &Somp) -> StateSet {
    let states = (0..s.universe_size())
        .map(|p| dirac_state(s, p).expect("point in range"))
        .collect();
    StateSet::new(s, states).expect("Dirac vectors have |L| entries")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SolverConfig {
    pub limit: usize,
    pub workers: usize,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            limit: DEFAULT_STATE_LIMIT,
            workers: 1,
        }
    }
}

/// All two-valued states of `s`, or `LimitExceeded` when there are more
/// than `limit`.
pub fn enumerate_states(s: &Somp, limit: Option<usize>) -> Result<StateSet> {
    enumerate_states_with(
        s,
        SolverConfig {
            limit: limit.unwrap_or(DEFAULT_STATE_LIMIT),
            ..SolverConfig::default()
        },
    )
}

pub fn enumerate_states_with(s: &Somp, config: SolverConfig) -> Result<StateSet> {
    let vectors = solver::solve(s, config.limit, config.workers.max(1))?;
    Ok(StateSet {
        somp_hash: content_hash(s),
        states: vectors
            .into_iter()
            .map(TwoValuedState::from_values)
            .collect(),
    })
}

/// Points at which `st` is concentrated. Empty means `st` is not Dirac.
/// The result is always a union of indistinguishability classes.
pub fn is_dirac(s: &Somp, st: &TwoValuedState) -> Result<Event> {
    if let Some(v) = is_state(s, st.values())? {
        return Err(Error::NotAState(v.describe(s)));
    }
    let n = s.universe_size();
    let members = (0..n).filter(|&p| {
        s.events()
            .iter()
            .zip(st.values())
            .all(|(a, &v)| a.contains(p) == v)
    });
    Event::from_members(n, members)
}

fn require_delta_closed(s: &Somp) -> Result<()> {
    match s.delta_witness() {
        Some((a, b)) => Err(Error::NotDeltaClosed {
            a: s.event(a).to_string(),
            b: s.event(b).to_string(),
        }),
        None => Ok(()),
    }
}

/// First pair violating `v(A △ B) <= v(A) + v(B)`, if any.
pub fn is_delta_state(s: &Somp, st: &TwoValuedState) -> Result<Option<(usize, usize)>> {
    require_delta_closed(s)?;
    if let Some(v) = is_state(s, st.values())? {
        return Err(Error::NotAState(v.describe(s)));
    }
    Ok(delta_violation(s, st))
}

fn delta_violation(s: &Somp, st: &TwoValuedState) -> Option<(usize, usize)> {
    let ev = s.events();
    for i in 0..ev.len() {
        for j in i + 1..ev.len() {
            if st.value(i) || st.value(j) {
                continue;
            }
            let d = s
                .index_of(&ev[i].symmetric_difference(&ev[j]))
                .expect("family is closed under symmetric difference");
            if st.value(d) {
                return Some((i, j));
            }
        }
    }
    None
}

/// States satisfying the symmetric-difference inequality.
pub fn enumerate_delta_states(s: &Somp, limit: Option<usize>) -> Result<StateSet> {
    delta_states_among(s, &enumerate_states(s, limit)?)
}

/// The members of `states` that satisfy the symmetric-difference inequality.
pub fn delta_states_among(s: &Somp, states: &StateSet) -> Result<StateSet> {
    require_delta_closed(s)?;
    states.check_against(s)?;
    Ok(states.filter(|st| delta_violation(s, st).is_none()))
}

/// First ordered pair `A ⊄ B` (canonical order) for which no state has
/// value 1 at `A` and 0 at `B`.
pub fn separation_witness(s: &Somp, states: &[TwoValuedState]) -> Option<(usize, usize)> {
    let ev = s.events();
    for i in 0..ev.len() {
        for j in 0..ev.len() {
            if ev[i].is_subset(&ev[j]) {
                continue;
            }
            if !states.iter().any(|st| st.value(i) && !st.value(j)) {
                return Some((i, j));
            }
        }
    }
    None
}

pub fn is_separating(s: &Somp, states: &StateSet) -> bool {
    separation_witness(s, states.states()).is_none()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::somp::{make_bigsets, make_even, make_powerset};

    fn ev(n: usize, m: &[usize]) -> Event {
        Event::from_members(n, m.iter().copied()).unwrap()
    }

    fn idx(s: &Somp, m: &[usize]) -> usize {
        s.index_of(&ev(s.universe_size(), m)).unwrap()
    }

    /// The non-Dirac state of the four-point even family: value 0 on
    /// {0,1}, {0,2}, {0,3}.
    fn odd_state(s: &Somp) -> TwoValuedState {
        let zeros = [
            idx(s, &[]),
            idx(s, &[0, 1]),
            idx(s, &[0, 2]),
            idx(s, &[0, 3]),
        ];
        TwoValuedState::from_values((0..s.len()).map(|i| !zeros.contains(&i)).collect())
    }

    #[test]
    fn odd_state_is_a_state_but_not_dirac() {
        let s = make_even(4).unwrap();
        let st = odd_state(&s);
        assert_eq!(is_state(&s, st.values()).unwrap(), None);
        assert!(is_dirac(&s, &st).unwrap().is_empty());
        let (a, b) = is_delta_state(&s, &st).unwrap().unwrap();
        assert_eq!((a, b), (idx(&s, &[0, 1]), idx(&s, &[0, 2])));
    }

    #[test]
    fn disjoint_pair_both_one_is_rejected() {
        let s = make_even(4).unwrap();
        let ones = [idx(&s, &[0, 1]), idx(&s, &[2, 3]), s.full_index()];
        let v: Vec<bool> = (0..s.len()).map(|i| ones.contains(&i)).collect();
        assert_eq!(
            is_state(&s, &v).unwrap(),
            Some(StateViolation::Additivity {
                a: idx(&s, &[0, 1]),
                b: idx(&s, &[2, 3])
            })
        );
        assert!(matches!(
            is_state(&s, &v[..3]),
            Err(Error::LengthMismatch { .. })
        ));
        let mut top_zero = dirac_state(&s, 0).unwrap().values().to_vec();
        top_zero[s.full_index()] = false;
        assert_eq!(
            is_state(&s, &top_zero).unwrap(),
            Some(StateViolation::TopNotOne)
        );
    }

    #[test]
    fn dirac_examples() {
        let s = make_even(4).unwrap();
        let d = dirac_state(&s, 0).unwrap();
        let ones: Vec<Vec<usize>> = (0..s.len())
            .filter(|&i| d.value(i))
            .map(|i| s.event(i).to_vec())
            .collect();
        assert_eq!(
            ones,
            vec![vec![0, 1], vec![0, 2], vec![0, 3], vec![0, 1, 2, 3]]
        );
        assert_eq!(
            is_dirac(&s, &dirac_state(&s, 2).unwrap()).unwrap().to_vec(),
            vec![2]
        );
        assert!(matches!(
            dirac_state(&s, 4),
            Err(Error::PointOutOfRange { .. })
        ));

        let b = make_bigsets(8, &ev(8, &[0, 1, 2, 3]), &ev(8, &[0, 1, 4, 5])).unwrap();
        let d0 = dirac_state(&b, 0).unwrap();
        assert_eq!(d0, dirac_state(&b, 1).unwrap());
        assert_eq!(is_dirac(&b, &d0).unwrap().to_vec(), vec![0, 1]);
    }

    #[test]
    fn not_a_state_is_an_error() {
        let s = make_even(4).unwrap();
        let zeros = TwoValuedState::from_values(vec![false; s.len()]);
        assert!(matches!(is_dirac(&s, &zeros), Err(Error::NotAState(_))));
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(
            enumerate_states(&make_even(4).unwrap(), None)
                .unwrap()
                .len(),
            8
        );
        assert_eq!(
            enumerate_states(&make_even(6).unwrap(), None)
                .unwrap()
                .len(),
            6
        );
        assert_eq!(
            enumerate_states(&make_powerset(3).unwrap(), None)
                .unwrap()
                .len(),
            3
        );
        let b = make_bigsets(8, &ev(8, &[0, 1, 2, 3]), &ev(8, &[0, 1, 4, 5])).unwrap();
        assert_eq!(enumerate_states(&b, None).unwrap().len(), 4);
    }

    #[test]
    fn limit_is_enforced() {
        let s = make_even(4).unwrap();
        assert!(matches!(
            enumerate_states(&s, Some(7)),
            Err(Error::LimitExceeded { limit: 7 })
        ));
        assert_eq!(enumerate_states(&s, Some(8)).unwrap().len(), 8);
    }

    #[test]
    fn worker_count_does_not_change_output() {
        let s = make_even(6).unwrap();
        let one = enumerate_states(&s, None).unwrap();
        for workers in [2, 3, 8] {
            let many = enumerate_states_with(
                &s,
                SolverConfig {
                    limit: DEFAULT_STATE_LIMIT,
                    workers,
                },
            )
            .unwrap();
            assert_eq!(one, many);
        }
    }

    #[test]
    fn delta_states() {
        let s = make_even(4).unwrap();
        let d = enumerate_delta_states(&s, None).unwrap();
        assert_eq!(d, dirac_states(&s));
        let c = crate::somp::closure(4, &[ev(4, &[0, 1]), ev(4, &[0, 2])], 16).unwrap();
        assert!(matches!(
            enumerate_delta_states(&c, None),
            Err(Error::NotDeltaClosed { .. })
        ));
    }

    #[test]
    fn separating_examples() {
        let s = make_even(4).unwrap();
        assert!(is_separating(&s, &dirac_states(&s)));
        assert!(is_separating(&s, &enumerate_states(&s, None).unwrap()));
        let three: Vec<TwoValuedState> = enumerate_states(&s, None)
            .unwrap()
            .iter()
            .filter(|st| st.pair_choices(&s)[1..].iter().filter(|&&b| b).count() == 1)
            .cloned()
            .collect();
        assert_eq!(three.len(), 3);
        let (a, b) = separation_witness(&s, &three).unwrap();
        assert_eq!(
            (s.event(a).to_vec(), s.event(b).to_vec()),
            (vec![0, 1], vec![1, 2])
        );
    }
}
