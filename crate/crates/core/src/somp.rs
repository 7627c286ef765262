//! Canonical finite set-representable orthomodular posets.
//!
//! A [`Somp`] is a family `L` of subsets of `P = {0, .., n-1}` that contains
//! `P`, is closed under complement, and is closed under unions of disjoint
//! members. Events are stored deduplicated in canonical order (cardinality,
//! then lexicographic on sorted member lists), so `∅` is always event 0 and
//! `P` is always the last event. All other modules index into this order.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::event::Event;

/// Largest universe accepted from external input.
pub const MAX_UNIVERSE: usize = 1 << 20;

/// Upper bound on the size of families built by the standard constructors.
pub const MAX_CONSTRUCTED_EVENTS: usize = 1 << 16;

/// Default cap for [`closure`].
pub const DEFAULT_CLOSURE_CAP: usize = 4096;

/// A single failed axiom instance found by [`validate`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    MissingFull,
    MissingComplement(Event),
    MissingDisjointUnion(Event, Event),
    DuplicateEvent(Event),
    LengthMismatch(Event),
}

impl Violation {
    pub fn name(&self) -> &'static str {
        match self {
            Violation::MissingFull => "MissingFull",
            Violation::MissingComplement(_) => "MissingComplement",
            Violation::MissingDisjointUnion(..) => "MissingDisjointUnion",
            Violation::DuplicateEvent(_) => "DuplicateEvent",
            Violation::LengthMismatch(_) => "LengthMismatch",
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::MissingFull => write!(f, "MissingFull"),
            Violation::MissingComplement(a) => write!(f, "MissingComplement({a})"),
            Violation::MissingDisjointUnion(a, b) => write!(f, "MissingDisjointUnion({a}, {b})"),
            Violation::DuplicateEvent(a) => write!(f, "DuplicateEvent({a})"),
            Violation::LengthMismatch(a) => {
                write!(f, "LengthMismatch({a} over {} points)", a.universe_size())
            }
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Outcome of [`validate`]: the report, and the canonical family when it
/// satisfies every axiom.
#[derive(Debug, Clone)]
pub struct Validation {
    pub report: ValidationReport,
    pub somp: Option<Somp>,
}

/// A finite set-representable orthomodular poset in canonical form.
#[derive(Clone)]
pub struct Somp {
    universe_size: usize,
    events: Vec<Event>,
    index: HashMap<Event, usize>,
    complement: Vec<usize>,
    disjoint: OnceLock<Vec<(usize, usize, usize)>>,
}

impl PartialEq for Somp {
    fn eq(&self, other: &Self) -> bool {
        self.universe_size == other.universe_size && self.events == other.events
    }
}

impl Eq for Somp {}

impl fmt::Debug for Somp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Somp")
            .field("universe_size", &self.universe_size)
            .field("events", &self.events)
            .finish()
    }
}

fn check_universe(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::EmptyUniverse);
    }
    if n > MAX_UNIVERSE {
        return Err(Error::UniverseTooLarge {
            universe_size: n,
            max: MAX_UNIVERSE,
        });
    }
    Ok(())
}

/// Checks the three axioms and reports every failing instance.
///
/// Length mismatches are reported as violations and the offending events are
/// left out of the axiom checks. Missing complements are listed in canonical
/// order of the event, missing unions in canonical order of the pair.
pub fn validate(n: usize, sets: &[Event]) -> Result<Validation> {
    check_universe(n)?;
    let mut violations = Vec::new();
    let mut seen: HashSet<&Event> = HashSet::new();
    let mut events: Vec<Event> = Vec::with_capacity(sets.len());
    for e in sets {
        if e.universe_size() != n {
            violations.push(Violation::LengthMismatch(e.clone()));
        } else if !seen.insert(e) {
            violations.push(Violation::DuplicateEvent(e.clone()));
        } else {
            events.push(e.clone());
        }
    }
    events.sort();
    let present: HashSet<&Event> = events.iter().collect();

    if !present.contains(&Event::full(n)) {
        violations.push(Violation::MissingFull);
    }
    for a in &events {
        if !present.contains(&a.complement()) {
            violations.push(Violation::MissingComplement(a.clone()));
        }
    }
    for (i, a) in events.iter().enumerate() {
        for b in &events[i + 1..] {
            if a.is_disjoint(b) && !present.contains(&a.union(b)) {
                violations.push(Violation::MissingDisjointUnion(a.clone(), b.clone()));
            }
        }
    }

    let report = ValidationReport { violations };
    let somp = report.ok().then(|| Somp::from_sorted_unchecked(n, events));
    Ok(Validation { report, somp })
}

/// Smallest family containing `generators` and `P`, closed under complement
/// and disjoint union.
pub fn closure(n: usize, generators: &[Event], cap: usize) -> Result<Somp> {
    check_universe(n)?;
    if let Some(bad) = generators.iter().find(|g| g.universe_size() != n) {
        return Err(Error::LengthMismatch {
            event: bad.to_string(),
            expected: n,
            found: bad.universe_size(),
        });
    }
    let mut family: Vec<Event> = Vec::new();
    let mut present: HashSet<Event> = HashSet::new();
    let mut queue: VecDeque<usize> = VecDeque::new();

    let mut push = |e: Event, family: &mut Vec<Event>, queue: &mut VecDeque<usize>| -> Result<()> {
        if present.insert(e.clone()) {
            family.push(e);
            if family.len() > cap {
                return Err(Error::CapExceeded { cap });
            }
            queue.push_back(family.len() - 1);
        }
        Ok(())
    };

    push(Event::full(n), &mut family, &mut queue)?;
    for g in generators {
        push(g.clone(), &mut family, &mut queue)?;
    }
    // A dequeued event is paired with every event present at that moment, so
    // each pair is checked when its later member is dequeued.
    while let Some(i) = queue.pop_front() {
        let a = family[i].clone();
        push(a.complement(), &mut family, &mut queue)?;
        let mut j = 0;
        while j < family.len() {
            if j != i && family[j].is_disjoint(&a) {
                let u = family[j].union(&a);
                push(u, &mut family, &mut queue)?;
            }
            j += 1;
        }
    }
    family.sort();
    Ok(Somp::from_sorted_unchecked(n, family))
}

impl Somp {
    /// Validates `events` and returns the canonical family, or
    /// [`Error::InvalidFamily`] listing every violation.
    pub fn from_events(n: usize, events: Vec<Event>) -> Result<Somp> {
        let v = validate(n, &events)?;
        match v.somp {
            Some(s) => Ok(s),
            None => Err(Error::InvalidFamily(v.report.violations)),
        }
    }

    /// `events` must already be sorted, deduplicated and valid.
    pub(crate) fn from_sorted_unchecked(n: usize, events: Vec<Event>) -> Somp {
        debug_assert!(events.windows(2).all(|w| w[0] < w[1]));
        let index: HashMap<Event, usize> = events
            .iter()
            .enumerate()
            .map(|(i, e)| (e.clone(), i))
            .collect();
        let complement = events.iter().map(|e| index[&e.complement()]).collect();
        Somp {
            universe_size: n,
            events,
            index,
            complement,
            disjoint: OnceLock::new(),
        }
    }

    fn from_unsorted_unchecked(n: usize, mut events: Vec<Event>) -> Somp {
        events.sort();
        events.dedup();
        Somp::from_sorted_unchecked(n, events)
    }

    pub fn universe_size(&self) -> usize {
        self.universe_size
    }

    pub fn events(&self) -> &[Event] {
        &self.events
    }

    pub fn event(&self, i: usize) -> &Event {
        &self.events[i]
    }

    /// Number of events, `|L|`.
    pub fn len(&self) -> usize {
        self.events.len()
    }

    /// Always false: a valid family holds at least `∅` and `P`.
    pub fn is_empty(&self) -> bool {
        self.events.is_empty()
    }

    pub fn index_of(&self, e: &Event) -> Option<usize> {
        self.index.get(e).copied()
    }

    pub fn contains(&self, e: &Event) -> bool {
        self.index.contains_key(e)
    }

    /// Index of the complement of event `i`.
    pub fn complement_of(&self, i: usize) -> usize {
        self.complement[i]
    }

    pub fn empty_index(&self) -> usize {
        0
    }

    pub fn full_index(&self) -> usize {
        self.events.len() - 1
    }

    /// Every pair `i < j` of disjoint events with the index of their union,
    /// computed on first use.
    pub fn disjoint_pairs(&self) -> &[(usize, usize, usize)] {
        self.disjoint.get_or_init(|| {
            let mut out = Vec::new();
            for (i, a) in self.events.iter().enumerate() {
                for (j, b) in self.events.iter().enumerate().skip(i + 1) {
                    if a.is_disjoint(b) {
                        out.push((i, j, self.index[&a.union(b)]));
                    }
                }
            }
            out
        })
    }

    /// Complement-pair representatives: the first event of each pair
    /// `{A, A'}` in canonical order.
    pub fn pair_representatives(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&i| i < self.complement[i])
            .collect()
    }

    /// Lexicographically least pair `x < y` that no event separates, if any.
    pub fn indistinguishable_pair(&self) -> Option<(usize, usize)> {
        let n = self.universe_size;
        (0..n)
            .flat_map(|x| (x + 1..n).map(move |y| (x, y)))
            .find(|&(x, y)| !self.separates(x, y))
    }

    /// Whether some event contains `x` but not `y`.
    pub fn separates(&self, x: usize, y: usize) -> bool {
        self.events.iter().any(|a| a.contains(x) && !a.contains(y))
    }

    pub fn is_point_distinguishing(&self) -> bool {
        self.indistinguishable_pair().is_none()
    }

    /// First pair (in canonical order) lacking a join or a meet.
    pub fn lattice_witness(&self) -> Option<(usize, usize)> {
        let m = self.len();
        for i in 0..m {
            for j in i + 1..m {
                if self.join(i, j).is_none() || self.meet(i, j).is_none() {
                    return Some((i, j));
                }
            }
        }
        None
    }

    pub fn is_lattice(&self) -> bool {
        self.lattice_witness().is_none()
    }

    /// Least upper bound of events `i` and `j` under inclusion, if it exists.
    ///
    /// The join exists iff the intersection of all upper bounds is itself a
    /// member of the family.
    pub fn join(&self, i: usize, j: usize) -> Option<usize> {
        let (a, b) = (&self.events[i], &self.events[j]);
        let mut acc = Event::full(self.universe_size);
        for c in &self.events {
            if a.is_subset(c) && b.is_subset(c) {
                acc = acc.intersection(c);
            }
        }
        self.index_of(&acc)
    }

    /// Greatest lower bound; dual of [`Somp::join`].
    pub fn meet(&self, i: usize, j: usize) -> Option<usize> {
        let (a, b) = (&self.events[i], &self.events[j]);
        let mut acc = Event::empty(self.universe_size);
        for c in &self.events {
            if c.is_subset(a) && c.is_subset(b) {
                acc = acc.union(c);
            }
        }
        self.index_of(&acc)
    }

    /// First pair whose symmetric difference is missing.
    pub fn delta_witness(&self) -> Option<(usize, usize)> {
        self.first_pair_missing(|a, b| a.symmetric_difference(b))
    }

    pub fn is_delta_closed(&self) -> bool {
        self.delta_witness().is_none()
    }

    /// First pair whose intersection is missing.
    pub fn intersection_witness(&self) -> Option<(usize, usize)> {
        self.first_pair_missing(|a, b| a.intersection(b))
    }

    /// Field of sets: closed under intersection (and hence union and `△`).
    pub fn is_boolean(&self) -> bool {
        self.intersection_witness().is_none()
    }

    fn first_pair_missing(&self, op: impl Fn(&Event, &Event) -> Event) -> Option<(usize, usize)> {
        let m = self.len();
        (0..m)
            .flat_map(|i| (i + 1..m).map(move |j| (i, j)))
            .find(|&(i, j)| !self.contains(&op(&self.events[i], &self.events[j])))
    }

    /// Height of the inclusion order: number of events on a longest chain
    /// minus one.
    pub fn height(&self) -> usize {
        // Canonical order is a linear extension of inclusion.
        let mut depth = vec![0usize; self.len()];
        for j in 0..self.len() {
            for i in 0..j {
                if depth[i] + 1 > depth[j] && self.events[i].is_subset(&self.events[j]) {
                    depth[j] = depth[i] + 1;
                }
            }
        }
        depth.last().copied().unwrap_or(0)
    }

    /// Indices of the minimal nonempty events.
    pub fn atoms(&self) -> Vec<usize> {
        (1..self.len())
            .filter(|&j| {
                (1..self.len()).all(|i| i == j || !self.events[i].is_subset(&self.events[j]))
            })
            .collect()
    }
}

/// All subsets of an `n`-point universe.
pub fn make_powerset(n: usize) -> Result<Somp> {
    check_universe(n)?;
    if n >= usize::BITS as usize || (1usize << n) > MAX_CONSTRUCTED_EVENTS {
        return Err(Error::CapExceeded {
            cap: MAX_CONSTRUCTED_EVENTS,
        });
    }
    let events = (0..1usize << n)
        .map(|mask| Event::from_members(n, (0..n).filter(|i| mask >> i & 1 == 1)))
        .collect::<Result<Vec<_>>>()?;
    Ok(Somp::from_unsorted_unchecked(n, events))
}

/// All even-cardinality subsets of an `n`-point universe, `n` even.
pub fn make_even(n: usize) -> Result<Somp> {
    check_universe(n)?;
    if !n.is_multiple_of(2) {
        return Err(Error::Malformed(format!(
            "even-subset family needs an even number of points, got {n}"
        )));
    }
    if n > 17 {
        return Err(Error::CapExceeded {
            cap: MAX_CONSTRUCTED_EVENTS,
        });
    }
    let events = (0..1usize << n)
        .filter(|mask| mask.count_ones() % 2 == 0)
        .map(|mask| Event::from_members(n, (0..n).filter(|i| mask >> i & 1 == 1)))
        .collect::<Result<Vec<_>>>()?;
    Ok(Somp::from_unsorted_unchecked(n, events))
}

/// The six-event family `{∅, A, A', B, B', P}`.
pub fn make_bigsets(n: usize, a: &Event, b: &Event) -> Result<Somp> {
    check_universe(n)?;
    for e in [a, b] {
        if e.universe_size() != n {
            return Err(Error::InvalidBigsets(format!(
                "event {e} is over {} points, expected {n}",
                e.universe_size()
            )));
        }
    }
    let six = vec![
        Event::empty(n),
        a.clone(),
        a.complement(),
        b.clone(),
        b.complement(),
        Event::full(n),
    ];
    let distinct: HashSet<&Event> = six.iter().collect();
    if distinct.len() != 6 {
        return Err(Error::InvalidBigsets(
            "the sets ∅, A, A', B, B', P must be pairwise distinct".into(),
        ));
    }
    Somp::from_events(n, six).map_err(|e| match e {
        Error::InvalidFamily(v) => Error::InvalidBigsets(
            v.iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(", "),
        ),
        other => other,
    })
}

/// Disjoint-sum product: `l` on points `0..n_l`, `k` on `n_l..n_l+n_k`, with
/// events `A ⊔ B` for `A ∈ l`, `B ∈ k`.
pub fn make_product(l: &Somp, k: &Somp) -> Result<Somp> {
    let (nl, nk) = (l.universe_size(), k.universe_size());
    let n = nl + nk;
    check_universe(n)?;
    if l.len().saturating_mul(k.len()) > MAX_CONSTRUCTED_EVENTS {
        return Err(Error::CapExceeded {
            cap: MAX_CONSTRUCTED_EVENTS,
        });
    }
    let mut events = Vec::with_capacity(l.len() * k.len());
    for a in l.events() {
        for b in k.events() {
            let members = a.members().chain(b.members().map(|j| j + nl));
            events.push(Event::from_members(n, members)?);
        }
    }
    Ok(Somp::from_unsorted_unchecked(n, events))
}
