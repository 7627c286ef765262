//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero when any criterion fails.

mod common;

use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;

use common::{brute_force_states, idx, random_closures};
use somp::fixtures::{self, even4_into_even6, standard};
use somp::json::{
    partition_from_json, partition_to_json, quotient_from_json, quotient_to_json, somp_from_json,
    somp_to_json, state_set_from_json, state_set_to_json, stone_from_json, stone_to_json,
    transversal_from_json, transversal_to_json, Document, MorphismDoc,
};
use somp::quotient::block_property_violation;
use somp::states::{dirac_states, is_separating, separation_witness};
use somp::stone::{dirac_census, dirac_stone};
use somp::{
    all_states_dirac, copy_on_transversal, enumerate_delta_states, enumerate_states,
    find_isomorphism, indistinguishability_partition, is_delta_state, is_dirac, make_even,
    make_product, natural_pd_representation, stone_representation, Error, MorphismTable, Somp,
    StateSet, TwoValuedState,
};

type Outcome = Result<(), String>;
type Criterion = (&'static str, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn even(n: usize) -> Somp {
    make_even(n).expect("even family")
}

/// The even(4) state with value 0 on {0,1}, {0,2} and {0,3}.
fn odd_state(s: &Somp, states: &StateSet) -> Option<TwoValuedState> {
    states
        .iter()
        .find(|st| {
            [[0, 1], [0, 2], [0, 3]]
                .iter()
                .all(|m| !st.value(idx(s, m)))
        })
        .cloned()
}

fn even4_census() -> Outcome {
    let s = even(4);
    let states = enumerate_states(&s, None).map_err(|e| e.to_string())?;
    ensure!(states.len() == 8, "{} states", states.len());
    let census = dirac_census(&s, &states).map_err(|e| e.to_string())?;
    ensure!(census.dirac == 4, "{} Dirac states", census.dirac);
    let odd = odd_state(&s, &states).ok_or("state with zeros on {0,1},{0,2},{0,3} missing")?;
    let points = is_dirac(&s, &odd).map_err(|e| e.to_string())?;
    ensure!(points.is_empty(), "odd state is Dirac at {points}");
    Ok(())
}

fn even6_all_dirac() -> Outcome {
    let census = all_states_dirac(&even(6), None).map_err(|e| e.to_string())?;
    ensure!(census.total == 6, "{} states", census.total);
    ensure!(census.all_dirac(), "{} of 6 Dirac", census.dirac);
    Ok(())
}

fn block_property() -> Outcome {
    let mut families = vec![fixtures::bigsets8()];
    families.extend(random_closures(0xb10c, 200, 8, 256));
    for s in &families {
        let p = indistinguishability_partition(s);
        if let Some((e, b)) = block_property_violation(s, &p) {
            return Err(format!("{} splits block {}", s.event(e), p.blocks()[b]));
        }
    }
    ensure!(families.len() >= 201, "only {} families", families.len());
    Ok(())
}

fn quotient_isomorphism() -> Outcome {
    for f in standard() {
        let s = &f.somp;
        let q = natural_pd_representation(s);
        let m = q.map_f_table(s).map_err(|e| e.to_string())?;
        ensure!(
            m.is_somp_isomorphism(),
            "{}: map_f is not an isomorphism",
            f.name
        );
        let qs = &q.quotient;
        ensure!(
            qs.is_point_distinguishing(),
            "{}: quotient not point-distinguishing",
            f.name
        );
        ensure!(
            !s.is_lattice() || qs.is_lattice(),
            "{}: lattice lost",
            f.name
        );
        ensure!(
            !s.is_delta_closed() || qs.is_delta_closed(),
            "{}: delta closure lost",
            f.name
        );
        ensure!(
            !s.is_boolean() || qs.is_boolean(),
            "{}: Boolean lost",
            f.name
        );
    }
    Ok(())
}

fn dirac_rep_isomorphic_to_quotient() -> Outcome {
    for f in standard() {
        let s = &f.somp;
        let rep = dirac_stone(s).map_err(|e| format!("{}: {e}", f.name))?.rep;
        let q = natural_pd_representation(s).quotient;
        let found = find_isomorphism(&rep, &q, somp::morphism::DEFAULT_SEARCH_BUDGET)
            .map_err(|e| format!("{}: {e}", f.name))?;
        let m = found.ok_or_else(|| format!("{}: no isomorphism found", f.name))?;
        ensure!(
            m.is_somp_isomorphism(),
            "{}: search returned a non-isomorphism",
            f.name
        );
    }
    Ok(())
}

fn full_state_rep() -> Outcome {
    let s = even(4);
    let all = enumerate_states(&s, None).map_err(|e| e.to_string())?;
    let r = stone_representation(&s, &all).map_err(|e| e.to_string())?;
    let census = all_states_dirac(&r.rep, None).map_err(|e| e.to_string())?;
    ensure!(census.all_dirac(), "not all Dirac");
    ensure!((census.total, census.dirac) == (8, 8), "census {census:?}");
    Ok(())
}

fn separation_essential() -> Outcome {
    let s = even(4);
    let all = enumerate_states(&s, None).map_err(|e| e.to_string())?;
    // Choices on the pairs after {∅, P}: exactly one of the three is 1.
    let three: Vec<TwoValuedState> = all
        .iter()
        .filter(|st| st.pair_choices(&s)[1..].iter().filter(|&&b| b).count() == 1)
        .cloned()
        .collect();
    ensure!(three.len() == 3, "{} states in the subset", three.len());
    let set = StateSet::new(&s, three).map_err(|e| e.to_string())?;
    ensure!(!is_separating(&s, &set), "subset separates");
    let (a, b) = separation_witness(&s, set.states()).ok_or("no witness")?;
    let witness = (s.event(a).to_string(), s.event(b).to_string());
    ensure!(
        witness == ("{0,1}".into(), "{1,2}".into()),
        "witness {witness:?}"
    );
    match stone_representation(&s, &set) {
        Err(Error::NotSeparating { a, b }) if (a.as_str(), b.as_str()) == ("{0,1}", "{1,2}") => {
            Ok(())
        }
        other => Err(format!("construction not refused as expected: {other:?}")),
    }
}

fn product_closure() -> Outcome {
    let (e4, e6) = (even(4), even(6));
    let oracle = |s: &Somp| brute_force_states(s).len();
    let cases = [
        ("even6 x even6", &e6, &e6, 12, true),
        ("even4 x even6", &e4, &e6, 14, false),
    ];
    for (name, l, k, expected, all_dirac) in cases {
        let p = make_product(l, k).map_err(|e| e.to_string())?;
        let census = all_states_dirac(&p, None).map_err(|e| e.to_string())?;
        let sum = oracle(l) + oracle(k);
        ensure!(census.total == expected, "{name}: {} states", census.total);
        ensure!(
            census.total == sum,
            "{name}: {} states but factors sum to {sum}",
            census.total
        );
        ensure!(census.all_dirac() == all_dirac, "{name}: census {census:?}");
    }
    Ok(())
}

fn substructure() -> Outcome {
    let (e4, e6) = (even(4), even(6));
    let table = even4_into_even6(&e4, &e6).map_err(|e| e.to_string())?;
    let h = MorphismTable::new(&e4, &e6, table).map_err(|e| e.to_string())?;
    ensure!(h.is_somp_morphism(), "violations {:?}", h.violations());
    ensure!(h.is_injective(), "h is not injective");
    Ok(())
}

fn oracle_equivalence() -> Outcome {
    let mut checked = 0;
    for f in standard().into_iter().filter(|f| f.somp.len() <= 16) {
        let solved = enumerate_states(&f.somp, None).map_err(|e| e.to_string())?;
        let solved: Vec<Vec<bool>> = solved.iter().map(|st| st.values().to_vec()).collect();
        ensure!(
            solved == brute_force_states(&f.somp),
            "{}: solver disagrees",
            f.name
        );
        checked += 1;
    }
    ensure!(checked > 0, "no fixture with at most 16 events");
    Ok(())
}

fn delta_states() -> Outcome {
    let s = even(4);
    let delta = enumerate_delta_states(&s, None).map_err(|e| e.to_string())?;
    ensure!(
        delta == dirac_states(&s),
        "{} Δ-states differ from the Dirac states",
        delta.len()
    );
    let all = enumerate_states(&s, None).map_err(|e| e.to_string())?;
    let odd = odd_state(&s, &all).ok_or("odd state missing")?;
    let (a, b) = is_delta_state(&s, &odd)
        .map_err(|e| e.to_string())?
        .ok_or("odd state passes the Δ-inequality")?;
    let pair = (s.event(a).to_string(), s.event(b).to_string());
    ensure!(
        pair == ("{0,1}".into(), "{0,2}".into()),
        "fails at {pair:?}"
    );
    Ok(())
}

fn round_trip(
    kind: &str,
    name: &str,
    text: String,
    reparse: impl Fn(&str) -> Result<String, Error>,
) -> Outcome {
    let again = reparse(&text).map_err(|e| format!("{name} {kind}: {e}"))?;
    ensure!(
        again == text,
        "{name} {kind}: output differs after a round trip"
    );
    let doc = Document::parse(&text).map_err(|e| format!("{name} {kind} as document: {e}"))?;
    ensure!(
        doc.to_json() == text,
        "{name} {kind}: document round trip differs"
    );
    Ok(())
}

fn serialization() -> Outcome {
    for f in standard() {
        let (s, name) = (&f.somp, f.name);
        round_trip("family", name, somp_to_json(s), |t| {
            Ok(somp_to_json(&somp_from_json(t)?))
        })?;
        let p = indistinguishability_partition(s);
        round_trip("partition", name, partition_to_json(&p), |t| {
            Ok(partition_to_json(&partition_from_json(t)?))
        })?;
        let states = enumerate_states(s, None).map_err(|e| e.to_string())?;
        round_trip("state set", name, state_set_to_json(&states), |t| {
            Ok(state_set_to_json(&state_set_from_json(t)?))
        })?;
        let q = natural_pd_representation(s);
        round_trip("quotient", name, quotient_to_json(&q), |t| {
            Ok(quotient_to_json(&quotient_from_json(t)?))
        })?;
        let r = dirac_stone(s).map_err(|e| e.to_string())?;
        round_trip("representation", name, stone_to_json(&r), |t| {
            Ok(stone_to_json(&stone_from_json(t)?))
        })?;
        let m = MorphismDoc::from_table(&q.map_f_table(s).map_err(|e| e.to_string())?);
        round_trip("morphism", name, m.to_json(), |t| {
            Ok(MorphismDoc::from_json(t)?.to_json())
        })?;
        let t = copy_on_transversal(&q);
        round_trip("transversal", name, transversal_to_json(&t), |t| {
            Ok(transversal_to_json(&transversal_from_json(t)?))
        })?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 12] = [
        ("even(4) state census", even4_census),
        ("even(6) states are all Dirac", even6_all_dirac),
        (
            "indistinguishability blocks are never split",
            block_property,
        ),
        ("quotient map is an isomorphism", quotient_isomorphism),
        (
            "Dirac representation is isomorphic to the quotient",
            dirac_rep_isomorphic_to_quotient,
        ),
        ("full-state representation of even(4)", full_state_rep),
        ("non-separating state set is refused", separation_essential),
        ("products of all-Dirac families", product_closure),
        ("even(4) embeds into even(6)", substructure),
        ("solver agrees with brute force", oracle_equivalence),
        ("symmetric-difference states of even(4)", delta_states),
        ("JSON round trips are byte-identical", serialization),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let outcome =
            panic::catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(()) => println!("PASS {:>2} {name}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why}", i + 1);
            }
        }
    }
    println!("{} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
