//! Morphisms between event families, given as index tables over the
//! canonical event order, and a small isomorphism search.

use std::fmt;

use crate::error::{Error, Result};
use crate::somp::Somp;

/// Default node budget for [`find_isomorphism`].
pub const DEFAULT_SEARCH_BUDGET: u64 = 1_000_000;

/// A map `L -> K` sending source event `i` to target event `table[i]`.
#[derive(Clone)]
pub struct MorphismTable<'a> {
    source: &'a Somp,
    target: &'a Somp,
    table: Vec<usize>,
}

impl fmt::Debug for MorphismTable<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("MorphismTable")
            .field("table", &self.table)
            .finish()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MorphismViolation {
    /// `f(P)` is the given target event instead of `Q`.
    TopNotPreserved { image: usize },
    /// `f(A') != f(A)'`.
    ComplementNotPreserved { event: usize },
    /// `f(A ∪ B) != f(A) ∪ f(B)` for disjoint `A`, `B`.
    DisjointUnionNotPreserved { a: usize, b: usize },
}

impl MorphismViolation {
    pub fn name(&self) -> &'static str {
        match self {
            MorphismViolation::TopNotPreserved { .. } => "TopNotPreserved",
            MorphismViolation::ComplementNotPreserved { .. } => "ComplementNotPreserved",
            MorphismViolation::DisjointUnionNotPreserved { .. } => "DisjointUnionNotPreserved",
        }
    }
}

impl<'a> MorphismTable<'a> {
    pub fn new(source: &'a Somp, target: &'a Somp, table: Vec<usize>) -> Result<Self> {
        if table.len() != source.len() {
            return Err(Error::MalformedTable(format!(
                "table has {} entries, source has {} events",
                table.len(),
                source.len()
            )));
        }
        if let Some(&bad) = table.iter().find(|&&t| t >= target.len()) {
            return Err(Error::MalformedTable(format!(
                "target index {bad} out of range for {} events",
                target.len()
            )));
        }
        Ok(MorphismTable {
            source,
            target,
            table,
        })
    }

    pub fn identity(s: &'a Somp) -> Self {
        MorphismTable {
            source: s,
            target: s,
            table: (0..s.len()).collect(),
        }
    }

    pub fn source(&self) -> &'a Somp {
        self.source
    }

    pub fn target(&self) -> &'a Somp {
        self.target
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    pub fn into_table(self) -> Vec<usize> {
        self.table
    }

    pub fn apply(&self, i: usize) -> usize {
        self.table[i]
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.target.len()];
        self.table
            .iter()
            .all(|&t| !std::mem::replace(&mut seen[t], true))
    }

    pub fn is_surjective(&self) -> bool {
        let mut seen = vec![false; self.target.len()];
        for &t in &self.table {
            seen[t] = true;
        }
        seen.into_iter().all(|b| b)
    }

    /// Every failing instance of the three morphism conditions.
    pub fn violations(&self) -> Vec<MorphismViolation> {
        let (src, dst) = (self.source, self.target);
        let mut out = Vec::new();
        let top = self.table[src.full_index()];
        if top != dst.full_index() {
            out.push(MorphismViolation::TopNotPreserved { image: top });
        }
        for i in 0..src.len() {
            if self.table[src.complement_of(i)] != dst.complement_of(self.table[i]) {
                out.push(MorphismViolation::ComplementNotPreserved { event: i });
            }
        }
        for &(a, b, u) in src.disjoint_pairs() {
            let expected = dst.event(self.table[a]).union(dst.event(self.table[b]));
            if dst.event(self.table[u]) != &expected {
                out.push(MorphismViolation::DisjointUnionNotPreserved { a, b });
            }
        }
        out
    }

    pub fn is_somp_morphism(&self) -> bool {
        self.violations().is_empty()
    }

    /// Inverse table when the map is a bijection.
    pub fn inverse(&self) -> Option<MorphismTable<'a>> {
        if self.source.len() != self.target.len() || !self.is_injective() {
            return None;
        }
        let mut inv = vec![0; self.target.len()];
        for (i, &t) in self.table.iter().enumerate() {
            inv[t] = i;
        }
        Some(MorphismTable {
            source: self.target,
            target: self.source,
            table: inv,
        })
    }

    /// A bijective morphism whose inverse is also a morphism.
    pub fn is_somp_isomorphism(&self) -> bool {
        self.is_somp_morphism() && self.inverse().is_some_and(|inv| inv.is_somp_morphism())
    }

    /// `then ∘ self`.
    pub fn compose<'b>(&self, then: &MorphismTable<'b>) -> Result<MorphismTable<'b>>
    where
        'a: 'b,
    {
        if self.target != then.source {
            return Err(Error::MalformedTable(
                "composition requires matching target and source".into(),
            ));
        }
        Ok(MorphismTable {
            source: self.source,
            target: then.target,
            table: self.table.iter().map(|&t| then.table[t]).collect(),
        })
    }
}

/// Order invariants that any isomorphism must preserve.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderInvariants {
    pub events: usize,
    pub atoms: usize,
    pub height: usize,
    pub complement_pairs: usize,
    /// Sorted `(down-set size, up-set size, orthogonal count)` per event.
    pub profile: Vec<(usize, usize, usize)>,
}

struct OrderData {
    le: Vec<Vec<bool>>,
    profile: Vec<(usize, usize, usize)>,
}

impl OrderData {
    fn new(s: &Somp) -> Self {
        let m = s.len();
        let ev = s.events();
        let le: Vec<Vec<bool>> = (0..m)
            .map(|i| (0..m).map(|j| ev[i].is_subset(&ev[j])).collect())
            .collect();
        let profile = (0..m)
            .map(|i| {
                let down = (0..m).filter(|&j| le[j][i]).count();
                let up = (0..m).filter(|&j| le[i][j]).count();
                let orth = (0..m).filter(|&j| ev[i].is_disjoint(&ev[j])).count();
                (down, up, orth)
            })
            .collect();
        OrderData { le, profile }
    }
}

pub fn order_invariants(s: &Somp) -> OrderInvariants {
    let mut profile = OrderData::new(s).profile;
    profile.sort_unstable();
    OrderInvariants {
        events: s.len(),
        atoms: s.atoms().len(),
        height: s.height(),
        complement_pairs: s.pair_representatives().len(),
        profile,
    }
}

/// Searches for an orthomodular poset isomorphism `l -> k`.
///
/// Returns `Ok(None)` when the search space is exhausted (or the order
/// invariants already differ) and `Err(BudgetExceeded)` when it gives up.
/// Complement pairs are assigned together and every partial assignment is
/// kept an order embedding, so a complete assignment is an order isomorphism
/// commuting with complement; it is re-verified before being returned.
pub fn find_isomorphism<'a>(
    l: &'a Somp,
    k: &'a Somp,
    budget: u64,
) -> Result<Option<MorphismTable<'a>>> {
    if l.len() != k.len() {
        return Ok(None);
    }
    if l == k {
        let id = MorphismTable::identity(l);
        if id.is_somp_isomorphism() {
            return Ok(Some(MorphismTable {
                source: l,
                target: k,
                table: id.into_table(),
            }));
        }
    }
    if order_invariants(l) != order_invariants(k) {
        return Ok(None);
    }

    let ld = OrderData::new(l);
    let kd = OrderData::new(k);
    let reps = l.pair_representatives();
    let domains: Vec<Vec<usize>> = reps
        .iter()
        .map(|&a| {
            let ac = l.complement_of(a);
            (0..k.len())
                .filter(|&x| {
                    ld.profile[a] == kd.profile[x]
                        && ld.profile[ac] == kd.profile[k.complement_of(x)]
                })
                .collect()
        })
        .collect();

    let mut search = Search {
        l,
        k,
        ld: &ld,
        kd: &kd,
        reps: &reps,
        table: vec![usize::MAX; l.len()],
        used: vec![false; k.len()],
        assigned: Vec::new(),
        nodes: 0,
        budget,
    };
    match search.run(domains, vec![false; reps.len()])? {
        Some(table) => Ok(Some(MorphismTable::new(l, k, table)?)),
        None => Ok(None),
    }
}

struct Search<'s> {
    l: &'s Somp,
    k: &'s Somp,
    ld: &'s OrderData,
    kd: &'s OrderData,
    reps: &'s [usize],
    table: Vec<usize>,
    used: Vec<bool>,
    assigned: Vec<usize>,
    nodes: u64,
    budget: u64,
}

impl Search<'_> {
    fn consistent(&self, a: usize, x: usize) -> bool {
        if self.used[x] {
            return false;
        }
        self.assigned.iter().all(|&b| {
            let y = self.table[b];
            self.ld.le[a][b] == self.kd.le[x][y] && self.ld.le[b][a] == self.kd.le[y][x]
        })
    }

    fn assign(&mut self, a: usize, x: usize) {
        self.table[a] = x;
        self.used[x] = true;
        self.assigned.push(a);
    }

    fn unassign(&mut self, a: usize) {
        self.used[self.table[a]] = false;
        self.table[a] = usize::MAX;
        let popped = self.assigned.pop();
        debug_assert_eq!(popped, Some(a));
    }

    fn run(&mut self, domains: Vec<Vec<usize>>, done: Vec<bool>) -> Result<Option<Vec<usize>>> {
        // Most constrained representative first; ties by canonical index.
        let next = (0..self.reps.len())
            .filter(|&r| !done[r])
            .min_by_key(|&r| (domains[r].len(), r));
        let Some(r) = next else {
            let candidate = MorphismTable {
                source: self.l,
                target: self.k,
                table: self.table.clone(),
            };
            return Ok(candidate.is_somp_isomorphism().then(|| self.table.clone()));
        };

        let a = self.reps[r];
        let ac = self.l.complement_of(a);
        for &x in &domains[r] {
            self.nodes += 1;
            if self.nodes > self.budget {
                return Err(Error::BudgetExceeded {
                    budget: self.budget,
                });
            }
            if !self.consistent(a, x) {
                continue;
            }
            self.assign(a, x);
            let xc = self.k.complement_of(x);
            if self.consistent(ac, xc) {
                self.assign(ac, xc);
                let mut next_done = done.clone();
                next_done[r] = true;
                // Forward check: prune the remaining domains against the new pair.
                let mut pruned = Vec::with_capacity(domains.len());
                let mut wiped = false;
                for (q, dom) in domains.iter().enumerate() {
                    if next_done[q] {
                        pruned.push(Vec::new());
                        continue;
                    }
                    let b = self.reps[q];
                    let bc = self.l.complement_of(b);
                    let d: Vec<usize> = dom
                        .iter()
                        .copied()
                        .filter(|&y| {
                            let yc = self.k.complement_of(y);
                            self.consistent(b, y) && self.consistent(bc, yc)
                        })
                        .collect();
                    wiped |= d.is_empty();
                    pruned.push(d);
                }
                if !wiped {
                    if let Some(t) = self.run(pruned, next_done)? {
                        return Ok(Some(t));
                    }
                }
                self.unassign(ac);
            }
            self.unassign(a);
        }
        Ok(None)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::event::Event;
    use crate::somp::{make_even, make_powerset};

    #[test]
    fn identity_is_isomorphism() {
        let s = make_even(4).unwrap();
        let id = MorphismTable::identity(&s);
        assert!(id.is_somp_morphism());
        assert!(id.is_somp_isomorphism());
    }

    #[test]
    fn swapping_top_breaks_morphism() {
        let s = make_powerset(2).unwrap();
        let i0 = s.index_of(&Event::from_members(2, [0]).unwrap()).unwrap();
        let top = s.full_index();
        let mut t: Vec<usize> = (0..s.len()).collect();
        t.swap(i0, top);
        let m = MorphismTable::new(&s, &s, t).unwrap();
        let v = m.violations();
        assert!(v.contains(&MorphismViolation::TopNotPreserved { image: i0 }));
        assert!(v
            .iter()
            .any(|x| matches!(x, MorphismViolation::ComplementNotPreserved { .. })));
        assert!(!m.is_somp_isomorphism());
    }

    #[test]
    fn malformed_tables() {
        let s = make_powerset(2).unwrap();
        assert!(MorphismTable::new(&s, &s, vec![0, 1]).is_err());
        assert!(MorphismTable::new(&s, &s, vec![0, 1, 2, 9]).is_err());
    }

    #[test]
    fn even_four_and_powerset_three_not_isomorphic() {
        let a = make_even(4).unwrap();
        let b = make_powerset(3).unwrap();
        assert_eq!(a.len(), b.len());
        assert!(find_isomorphism(&a, &b, DEFAULT_SEARCH_BUDGET)
            .unwrap()
            .is_none());
    }

    #[test]
    fn budget_exhaustion_is_an_error() {
        let a = crate::fixtures::non_lattice6();
        // Relabel points so the identity shortcut does not apply.
        let b = crate::fixtures::relabel_points(&a, &[5, 4, 3, 2, 1, 0]);
        assert_ne!(a, b);
        assert!(matches!(
            find_isomorphism(&a, &b, 1),
            Err(Error::BudgetExceeded { budget: 1 })
        ));
        let found = find_isomorphism(&a, &b, DEFAULT_SEARCH_BUDGET)
            .unwrap()
            .unwrap();
        assert!(found.is_somp_isomorphism());
    }
}
