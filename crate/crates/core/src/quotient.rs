//! Indistinguishability classes and the natural point-distinguishing
//! representation.
//!
//! Two points are indistinguishable when no event contains one but not the
//! other. The classes partition the universe, and no event splits a class,
//! so every event is a union of classes. Collapsing each class to a single
//! point gives an isomorphic family that separates all of its points.

use crate::error::{Error, Result};
use crate::event::Event;
use crate::json::content_hash;
use crate::morphism::MorphismTable;
use crate::somp::{Somp, MAX_CONSTRUCTED_EVENTS};

/// Disjoint nonempty blocks covering `{0, .., n-1}`, ordered by least member.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    universe_size: usize,
    blocks: Vec<Event>,
    block_of: Vec<usize>,
}

impl Partition {
    /// Checks disjointness, coverage and nonemptiness, then orders the blocks
    /// by least member.
    pub fn new(universe_size: usize, mut blocks: Vec<Event>) -> Result<Partition> {
        if universe_size == 0 {
            return Err(Error::EmptyUniverse);
        }
        let mut block_of = vec![usize::MAX; universe_size];
        for b in &blocks {
            if b.universe_size() != universe_size {
                return Err(Error::InvalidPartition(format!(
                    "block {b} is over {} points, expected {universe_size}",
                    b.universe_size()
                )));
            }
            if b.is_empty() {
                return Err(Error::InvalidPartition("empty block".into()));
            }
        }
        blocks.sort_by_key(|b| b.first());
        for (k, b) in blocks.iter().enumerate() {
            for p in b.members() {
                if block_of[p] != usize::MAX {
                    return Err(Error::InvalidPartition(format!(
                        "point {p} lies in more than one block"
                    )));
                }
                block_of[p] = k;
            }
        }
        if let Some(p) = block_of.iter().position(|&k| k == usize::MAX) {
            return Err(Error::InvalidPartition(format!("point {p} is in no block")));
        }
        Ok(Partition {
            universe_size,
            blocks,
            block_of,
        })
    }

    pub fn singletons(universe_size: usize) -> Result<Partition> {
        let blocks = (0..universe_size)
            .map(|p| Event::from_members(universe_size, [p]))
            .collect::<Result<Vec<_>>>()?;
        Partition::new(universe_size, blocks)
    }

    pub fn universe_size(&self) -> usize {
        self.universe_size
    }

    pub fn blocks(&self) -> &[Event] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// Index of the block containing point `p`.
    pub fn block_of(&self, p: usize) -> usize {
        self.block_of[p]
    }

    /// `{ j | block_j ⊆ a }` as an event over the block indices.
    pub fn collapse(&self, a: &Event) -> Event {
        let mut out = Event::empty(self.blocks.len());
        for (j, b) in self.blocks.iter().enumerate() {
            if b.is_subset(a) {
                out.insert(j);
            }
        }
        out
    }
}

/// Classes of the indistinguishability relation, found by testing every
/// point pair for a separating event.
pub fn indistinguishability_partition(s: &Somp) -> Partition {
    let n = s.universe_size();
    let mut block_of = vec![usize::MAX; n];
    let mut blocks: Vec<Event> = Vec::new();
    for x in 0..n {
        if block_of[x] != usize::MAX {
            continue;
        }
        let k = blocks.len();
        let mut block = Event::empty(n);
        block.insert(x);
        block_of[x] = k;
        for (y, slot) in block_of.iter_mut().enumerate().skip(x + 1) {
            if *slot == usize::MAX && !s.separates(x, y) && !s.separates(y, x) {
                block.insert(y);
                *slot = k;
            }
        }
        blocks.push(block);
    }
    Partition {
        universe_size: n,
        blocks,
        block_of,
    }
}

/// First `(event, block)` pair where the event splits the block.
pub fn block_property_violation(s: &Somp, p: &Partition) -> Option<(usize, usize)> {
    for (i, a) in s.events().iter().enumerate() {
        for (j, b) in p.blocks().iter().enumerate() {
            if !b.is_subset(a) && !b.is_disjoint(a) {
                return Some((i, j));
            }
        }
    }
    None
}

/// The natural point-distinguishing representation together with the
/// index map `f` from source events onto quotient events.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientResult {
    pub source_hash: String,
    pub partition: Partition,
    /// Point `j` is block `j` of the partition.
    pub quotient: Somp,
    pub map_f: Vec<usize>,
}

impl QuotientResult {
    /// `f` as a morphism table from `source` onto the quotient.
    pub fn map_f_table<'a>(&'a self, source: &'a Somp) -> Result<MorphismTable<'a>> {
        check_hash(&self.source_hash, source)?;
        MorphismTable::new(source, &self.quotient, self.map_f.clone())
    }

    /// Checks the structural invariants that do not need the source family:
    /// the quotient lives on the blocks and `map_f` is a bijection.
    pub fn check_shape(&self) -> Result<()> {
        if self.quotient.universe_size() != self.partition.len() {
            return Err(Error::Malformed(format!(
                "quotient has {} points but the partition has {} blocks",
                self.quotient.universe_size(),
                self.partition.len()
            )));
        }
        check_bijection(&self.map_f, self.quotient.len())
    }

    /// Full check against the source: hash, block property and
    /// `quotient[map_f[i]] = collapse(source[i])`.
    pub fn verify_against(&self, source: &Somp) -> Result<()> {
        self.check_shape()?;
        check_hash(&self.source_hash, source)?;
        if self.map_f.len() != source.len() {
            return Err(Error::Malformed("map_f length differs from source".into()));
        }
        if self.partition.universe_size() != source.universe_size() {
            return Err(Error::Malformed(
                "partition universe differs from source".into(),
            ));
        }
        for (i, a) in source.events().iter().enumerate() {
            if self.quotient.event(self.map_f[i]) != &self.partition.collapse(a) {
                return Err(Error::Malformed(format!("map_f is wrong at event {a}")));
            }
        }
        Ok(())
    }
}

pub(crate) fn check_hash(expected: &str, s: &Somp) -> Result<()> {
    let found = content_hash(s);
    if found != expected {
        return Err(Error::HashMismatch {
            expected: expected.to_string(),
            found,
        });
    }
    Ok(())
}

pub(crate) fn check_bijection(map: &[usize], len: usize) -> Result<()> {
    if map.len() != len {
        return Err(Error::Malformed(format!(
            "index map has {} entries, expected {len}",
            map.len()
        )));
    }
    let mut seen = vec![false; len];
    for &t in map {
        if t >= len || std::mem::replace(&mut seen[t], true) {
            return Err(Error::Malformed("index map is not a bijection".into()));
        }
    }
    Ok(())
}

/// Collapses every indistinguishability class to a point.
pub fn natural_pd_representation(s: &Somp) -> QuotientResult {
    let partition = indistinguishability_partition(s);
    let collapsed: Vec<Event> = s.events().iter().map(|a| partition.collapse(a)).collect();
    let mut events = collapsed.clone();
    events.sort();
    events.dedup();
    let quotient = Somp::from_events(partition.len(), events)
        .expect("collapsing indistinguishability classes preserves the axioms");
    let map_f = collapsed
        .iter()
        .map(|e| quotient.index_of(e).expect("image is a quotient event"))
        .collect();
    QuotientResult {
        source_hash: content_hash(s),
        partition,
        quotient,
        map_f,
    }
}

/// The quotient copied onto one representative point per class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransversalCopy {
    /// Original point carried by local point `j`, in increasing order.
    pub representatives: Vec<usize>,
    /// Family over the local points `0..representatives.len()`.
    pub somp: Somp,
}

impl TransversalCopy {
    /// Event `i` expressed in original point indices.
    pub fn original_members(&self, i: usize) -> Vec<usize> {
        self.somp
            .event(i)
            .members()
            .map(|j| self.representatives[j])
            .collect()
    }
}

/// Picks the least member of each block as its representative.
pub fn copy_on_transversal(q: &QuotientResult) -> TransversalCopy {
    let representatives: Vec<usize> = q
        .partition
        .blocks()
        .iter()
        .map(|b| b.first().expect("blocks are nonempty"))
        .collect();
    // Blocks are ordered by least member, so local point j is block j and
    // the events coincide with the quotient's.
    TransversalCopy {
        representatives,
        somp: q.quotient.clone(),
    }
}

/// All unions of blocks: the Boolean algebra whose indistinguishability
/// classes are exactly the blocks.
pub fn partition_boolean(p: &Partition) -> Result<Somp> {
    let k = p.len();
    if k >= usize::BITS as usize || (1usize << k) > MAX_CONSTRUCTED_EVENTS {
        return Err(Error::CapExceeded {
            cap: MAX_CONSTRUCTED_EVENTS,
        });
    }
    let n = p.universe_size();
    let mut events = Vec::with_capacity(1 << k);
    for mask in 0..1usize << k {
        let mut e = Event::empty(n);
        for (j, b) in p.blocks().iter().enumerate() {
            if mask >> j & 1 == 1 {
                e = e.union(b);
            }
        }
        events.push(e);
    }
    Somp::from_events(n, events)
}

/// The morphism `g̃` between quotients with `g̃ ∘ f_L = f_K ∘ g`.
pub fn induced_morphism<'a>(
    g: &MorphismTable<'_>,
    ql: &'a QuotientResult,
    qk: &'a QuotientResult,
) -> Result<MorphismTable<'a>> {
    let violations = g.violations();
    if !violations.is_empty() {
        return Err(Error::NotAMorphism(violations.len()));
    }
    check_hash(&ql.source_hash, g.source())?;
    check_hash(&qk.source_hash, g.target())?;
    let mut table = vec![usize::MAX; ql.quotient.len()];
    for (a, &fa) in ql.map_f.iter().enumerate() {
        table[fa] = qk.map_f[g.apply(a)];
    }
    let gt = MorphismTable::new(&ql.quotient, &qk.quotient, table)?;
    debug_assert!(gt.is_somp_morphism());
    Ok(gt)
}

/// Whether `g̃ ∘ f_L = f_K ∘ g` holds eventwise.
pub fn diagram_commutes(
    g: &MorphismTable<'_>,
    ql: &QuotientResult,
    qk: &QuotientResult,
    g_tilde: &MorphismTable<'_>,
) -> bool {
    g_tilde.table().len() == ql.quotient.len()
        && (0..g.source().len()).all(|a| g_tilde.apply(ql.map_f[a]) == qk.map_f[g.apply(a)])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::somp::{make_bigsets, make_even, make_powerset};

    fn ev(n: usize, m: &[usize]) -> Event {
        Event::from_members(n, m.iter().copied()).unwrap()
    }

    fn bigsets() -> Somp {
        make_bigsets(8, &ev(8, &[0, 1, 2, 3]), &ev(8, &[0, 1, 4, 5])).unwrap()
    }

    fn block_lists(p: &Partition) -> Vec<Vec<usize>> {
        p.blocks().iter().map(Event::to_vec).collect()
    }

    #[test]
    fn partitions_of_examples() {
        let p = indistinguishability_partition(&make_powerset(3).unwrap());
        assert_eq!(block_lists(&p), vec![vec![0], vec![1], vec![2]]);
        let p = indistinguishability_partition(&bigsets());
        assert_eq!(
            block_lists(&p),
            vec![vec![0, 1], vec![2, 3], vec![4, 5], vec![6, 7]]
        );
        let p = indistinguishability_partition(&make_even(4).unwrap());
        assert_eq!(p.len(), 4);
    }

    #[test]
    fn bigsets_quotient() {
        let s = bigsets();
        let q = natural_pd_representation(&s);
        let lists: Vec<Vec<usize>> = q.quotient.events().iter().map(Event::to_vec).collect();
        assert_eq!(
            lists,
            vec![
                vec![],
                vec![0, 1],
                vec![0, 2],
                vec![1, 3],
                vec![2, 3],
                vec![0, 1, 2, 3]
            ]
        );
        assert!(q.quotient.is_point_distinguishing());
        assert!(q.map_f_table(&s).unwrap().is_somp_isomorphism());
        q.verify_against(&s).unwrap();

        let t = copy_on_transversal(&q);
        assert_eq!(t.representatives, vec![0, 2, 4, 6]);
        assert!(t.somp.is_point_distinguishing());
        // A = {0,1,2,3} lands on representatives {0,2}.
        let a = s.index_of(&ev(8, &[0, 1, 2, 3])).unwrap();
        assert_eq!(t.original_members(q.map_f[a]), vec![0, 2]);
    }

    #[test]
    fn even_six_quotient_is_itself() {
        let s = make_even(6).unwrap();
        let q = natural_pd_representation(&s);
        assert_eq!(q.quotient, s);
        assert_eq!(q.map_f, (0..32).collect::<Vec<_>>());
        assert_eq!(copy_on_transversal(&q).somp, s);
    }

    #[test]
    fn partition_boolean_examples() {
        let p = Partition::new(4, vec![ev(4, &[2, 3]), ev(4, &[0, 1])]).unwrap();
        let b = partition_boolean(&p).unwrap();
        let lists: Vec<Vec<usize>> = b.events().iter().map(Event::to_vec).collect();
        assert_eq!(
            lists,
            vec![vec![], vec![0, 1], vec![2, 3], vec![0, 1, 2, 3]]
        );
        assert!(b.is_boolean());
        assert_eq!(indistinguishability_partition(&b), p);

        let s = partition_boolean(&Partition::singletons(3).unwrap()).unwrap();
        assert_eq!(s, make_powerset(3).unwrap());
    }

    #[test]
    fn invalid_partitions() {
        assert!(Partition::new(3, vec![ev(3, &[0, 1])]).is_err());
        assert!(Partition::new(3, vec![ev(3, &[0, 1]), ev(3, &[1, 2])]).is_err());
        assert!(Partition::new(3, vec![ev(3, &[0, 1, 2]), ev(3, &[])]).is_err());
    }

    #[test]
    fn induced_identity() {
        let s = make_even(4).unwrap();
        let q = natural_pd_representation(&s);
        let id = MorphismTable::identity(&s);
        let gt = induced_morphism(&id, &q, &q).unwrap();
        assert_eq!(gt.table(), (0..s.len()).collect::<Vec<_>>().as_slice());
        assert!(diagram_commutes(&id, &q, &q, &gt));
    }

    #[test]
    fn induced_rejects_non_morphism() {
        let s = make_powerset(2).unwrap();
        let q = natural_pd_representation(&s);
        let bad = MorphismTable::new(&s, &s, vec![0, 0, 0, 0]).unwrap();
        assert!(matches!(
            induced_morphism(&bad, &q, &q),
            Err(Error::NotAMorphism(_))
        ));
    }
}
