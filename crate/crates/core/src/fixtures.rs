//! Named example families used by tests, the acceptance suite and the CLI.

use crate::error::Result;
use crate::event::Event;
use crate::quotient::{partition_boolean, Partition};
use crate::somp::{closure, make_bigsets, make_even, make_powerset, make_product, Somp};

pub struct Fixture {
    pub name: &'static str,
    pub somp: Somp,
}

fn ev(n: usize, members: &[usize]) -> Event {
    Event::from_members(n, members.iter().copied()).expect("fixture points in range")
}

/// `{∅, A, A', B, B', P}` on eight points with `A = {0,1,2,3}`,
/// `B = {0,1,4,5}`. Points 0 and 1 are not separated by any event.
pub fn bigsets8() -> Somp {
    make_bigsets(8, &ev(8, &[0, 1, 2, 3]), &ev(8, &[0, 1, 4, 5])).expect("valid big sets")
}

/// `{∅, {0,1}, {0,2}, {1,3}, {2,3}, P}`: closed under complement and
/// disjoint union but not under symmetric difference.
pub fn cross4() -> Somp {
    closure(4, &[ev(4, &[0, 1]), ev(4, &[0, 2])], 16).expect("six events")
}

/// A 20-event family on six points that is not a lattice: `{0,1}` and
/// `{0,2}` have upper bounds but no least one. Found by exhaustive search
/// over closures of two-point generators.
pub fn non_lattice6() -> Somp {
    let g = [
        ev(6, &[0, 1]),
        ev(6, &[0, 2]),
        ev(6, &[0, 3]),
        ev(6, &[1, 4]),
    ];
    closure(6, &g, 256).expect("twenty events")
}

/// Boolean algebra of unions of `{0,1}` and `{2,3,4}`.
pub fn block_boolean5() -> Somp {
    let p = Partition::new(5, vec![ev(5, &[0, 1]), ev(5, &[2, 3, 4])]).expect("partition");
    partition_boolean(&p).expect("four events")
}

/// Every named fixture.
pub fn standard() -> Vec<Fixture> {
    let e4 = make_even(4).expect("even 4");
    let mut out = vec![
        Fixture {
            name: "powerset-1",
            somp: make_powerset(1).expect("powerset"),
        },
        Fixture {
            name: "powerset-2",
            somp: make_powerset(2).expect("powerset"),
        },
        Fixture {
            name: "powerset-3",
            somp: make_powerset(3).expect("powerset"),
        },
        Fixture {
            name: "even-2",
            somp: make_even(2).expect("even"),
        },
        Fixture {
            name: "even-4",
            somp: e4.clone(),
        },
        Fixture {
            name: "even-6",
            somp: make_even(6).expect("even"),
        },
        Fixture {
            name: "bigsets-8",
            somp: bigsets8(),
        },
        Fixture {
            name: "cross-4",
            somp: cross4(),
        },
        Fixture {
            name: "non-lattice-6",
            somp: non_lattice6(),
        },
        Fixture {
            name: "block-boolean-5",
            somp: block_boolean5(),
        },
    ];
    out.push(Fixture {
        name: "product-even4-even4",
        somp: make_product(&e4, &e4).expect("product"),
    });
    out.push(Fixture {
        name: "product-bigsets8-powerset2",
        somp: make_product(&bigsets8(), &make_powerset(2).expect("powerset")).expect("product"),
    });
    out
}

/// The embedding of `even(4)` into `even(6)` sending `A` to `A` when
/// `3 ∉ A` and to `A ∪ {4,5}` otherwise, as an event index table.
pub fn even4_into_even6(even4: &Somp, even6: &Somp) -> Result<Vec<usize>> {
    even4
        .events()
        .iter()
        .map(|a| {
            let mut members = a.to_vec();
            if a.contains(3) {
                members.extend([4, 5]);
            }
            let image = Event::from_members(6, members)?;
            even6.index_of(&image).ok_or_else(|| {
                crate::error::Error::Malformed(format!("{image} is not an even subset"))
            })
        })
        .collect()
}

/// The same family with point `p` renamed to `perm[p]`.
pub fn relabel_points(s: &Somp, perm: &[usize]) -> Somp {
    let n = s.universe_size();
    let events = s
        .events()
        .iter()
        .map(|a| Event::from_members(n, a.members().map(|p| perm[p])).expect("perm in range"))
        .collect();
    Somp::from_events(n, events).expect("relabeling preserves the axioms")
}
