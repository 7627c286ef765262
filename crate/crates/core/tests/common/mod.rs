#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use somp::{closure, is_state, Error, Event, Somp};

pub fn ev(n: usize, members: &[usize]) -> Event {
    Event::from_members(n, members.iter().copied()).unwrap()
}

pub fn idx(s: &Somp, members: &[usize]) -> usize {
    s.index_of(&ev(s.universe_size(), members)).unwrap()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn random_event(rng: &mut ChaCha8Rng, n: usize) -> Event {
    Event::from_members(n, (0..n).filter(|_| rng.random_bool(0.5))).unwrap()
}

/// `count` closures of one to three random generators over at most
/// `max_n` points; closures exceeding `cap` are skipped and redrawn.
pub fn random_closures(seed: u64, count: usize, max_n: usize, cap: usize) -> Vec<Somp> {
    let mut rng = rng(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let n = rng.random_range(1..=max_n);
        let k = rng.random_range(1..=3);
        let gens: Vec<Event> = (0..k).map(|_| random_event(&mut rng, n)).collect();
        match closure(n, &gens, cap) {
            Ok(s) => out.push(s),
            Err(Error::CapExceeded { .. }) => continue,
            Err(e) => panic!("unexpected closure error: {e}"),
        }
    }
    out
}

/// Every assignment that gives complementary events complementary values,
/// filtered by the state check. Exponential in |L|/2; small families only.
pub fn brute_force_states(s: &Somp) -> Vec<Vec<bool>> {
    let reps: Vec<usize> = (0..s.len()).filter(|&i| i < s.complement_of(i)).collect();
    assert!(reps.len() <= 20, "brute force is for small families");
    let mut out = Vec::new();
    for mask in 0u64..(1 << reps.len()) {
        let mut v = vec![false; s.len()];
        for (k, &r) in reps.iter().enumerate() {
            let bit = mask >> k & 1 == 1;
            v[r] = bit;
            v[s.complement_of(r)] = !bit;
        }
        if is_state(s, &v).unwrap().is_none() {
            out.push(v);
        }
    }
    out.sort();
    out
}

/// Additivity checked straight from set operations, with no use of the
/// library's pair tables.
pub fn satisfies_state_axioms(s: &Somp, v: &[bool]) -> bool {
    let ev = s.events();
    if !v[ev.len() - 1] {
        return false;
    }
    for i in 0..ev.len() {
        for j in 0..ev.len() {
            if i != j && ev[i].is_disjoint(&ev[j]) {
                let u = ev.iter().position(|c| *c == ev[i].union(&ev[j])).unwrap();
                if u8::from(v[u]) != u8::from(v[i]) + u8::from(v[j]) {
                    return false;
                }
            }
        }
    }
    true
}

/// Preimage family of `s` under a random point map `q -> P`, with the
/// corresponding event table `A -> φ⁻¹(A)`.
pub fn random_preimage(rng: &mut ChaCha8Rng, s: &Somp, q: usize) -> (Somp, Vec<Event>) {
    let n = s.universe_size();
    let phi: Vec<usize> = (0..q).map(|_| rng.random_range(0..n)).collect();
    let pre: Vec<Event> = s
        .events()
        .iter()
        .map(|a| Event::from_members(q, (0..q).filter(|&x| a.contains(phi[x]))).unwrap())
        .collect();
    let k = closure(q, &pre, 4096).unwrap();
    (k, pre)
}
