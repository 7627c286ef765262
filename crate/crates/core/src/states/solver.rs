//! All-solutions search for two-valued states.
//!
//! One boolean variable per complement pair `{A, A'}` (the pair's first event
//! in canonical order); every event is a literal over its pair's variable.
//! Each disjoint pair `A, B` with union `C` contributes the constraint
//! `v(A) + v(B) = v(C)`. The search propagates every constraint to a fixpoint
//! after each decision, branches on the free variable occurring in the most
//! constraints with value 1 first, and backtracks exhaustively.

use std::thread;

use crate::error::{Error, Result};
use crate::somp::Somp;

/// The three value patterns of `(a, b, c)` allowed by `a + b = c`.
const ALLOWED: [[bool; 3]; 3] = [
    [false, false, false],
    [true, false, true],
    [false, true, true],
];

#[derive(Clone, Copy)]
struct Literal {
    var: usize,
    negated: bool,
}

pub(crate) struct Problem {
    num_vars: usize,
    literals: Vec<Literal>,
    constraints: Vec<[usize; 3]>,
    watches: Vec<Vec<usize>>,
    order: Vec<usize>,
}

impl Problem {
    pub(crate) fn compile(s: &Somp) -> Problem {
        let reps = s.pair_representatives();
        let mut literals = vec![
            Literal {
                var: 0,
                negated: false
            };
            s.len()
        ];
        for (var, &r) in reps.iter().enumerate() {
            literals[r] = Literal {
                var,
                negated: false,
            };
            literals[s.complement_of(r)] = Literal { var, negated: true };
        }
        let constraints: Vec<[usize; 3]> = s
            .disjoint_pairs()
            .iter()
            .map(|&(a, b, c)| [a, b, c])
            .collect();
        let mut watches = vec![Vec::new(); reps.len()];
        for (ci, c) in constraints.iter().enumerate() {
            let mut vars: Vec<usize> = c.iter().map(|&e| literals[e].var).collect();
            vars.sort_unstable();
            vars.dedup();
            for v in vars {
                watches[v].push(ci);
            }
        }
        let mut order: Vec<usize> = (0..reps.len()).collect();
        order.sort_by_key(|&v| (std::cmp::Reverse(watches[v].len()), v));
        Problem {
            num_vars: reps.len(),
            literals,
            constraints,
            watches,
            order,
        }
    }
}

#[derive(Clone)]
struct Solver<'p> {
    problem: &'p Problem,
    assign: Vec<Option<bool>>,
    trail: Vec<usize>,
}

impl<'p> Solver<'p> {
    fn new(problem: &'p Problem) -> Self {
        Solver {
            problem,
            assign: vec![None; problem.num_vars],
            trail: Vec::new(),
        }
    }

    fn literal_value(&self, event: usize) -> Option<bool> {
        let l = self.problem.literals[event];
        self.assign[l.var].map(|v| v ^ l.negated)
    }

    fn set(&mut self, var: usize, value: bool) {
        self.assign[var] = Some(value);
        self.trail.push(var);
    }

    fn undo_to(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let v = self.trail.pop().unwrap();
            self.assign[v] = None;
        }
    }

    /// Sets `event` to `value` and propagates. Returns false on conflict.
    fn assign_event(&mut self, event: usize, value: bool) -> bool {
        let l = self.problem.literals[event];
        let var_value = value ^ l.negated;
        match self.assign[l.var] {
            Some(v) => v == var_value,
            None => {
                self.set(l.var, var_value);
                self.propagate(self.trail.len() - 1)
            }
        }
    }

    fn propagate(&mut self, mut head: usize) -> bool {
        let problem = self.problem;
        while head < self.trail.len() {
            let var = self.trail[head];
            head += 1;
            for &ci in &problem.watches[var] {
                if !self.revise(problem.constraints[ci]) {
                    return false;
                }
            }
        }
        true
    }

    /// Filters the allowed patterns of one constraint against the current
    /// assignment and forces any variable on which all survivors agree.
    fn revise(&mut self, events: [usize; 3]) -> bool {
        let lits = events.map(|e| self.problem.literals[e]);
        // Required variable value per pattern; shared variables must agree.
        let mut survivors: [Option<[(usize, bool); 3]>; 3] = [None; 3];
        let mut any = false;
        for (k, pattern) in ALLOWED.iter().enumerate() {
            let req = [0, 1, 2].map(|p| (lits[p].var, pattern[p] ^ lits[p].negated));
            let ok = (0..3).all(|p| {
                let (v, val) = req[p];
                self.assign[v].is_none_or(|cur| cur == val)
                    && (0..p).all(|q| req[q].0 != v || req[q].1 == val)
            });
            if ok {
                survivors[k] = Some(req);
                any = true;
            }
        }
        if !any {
            return false;
        }
        for p in 0..3 {
            let var = lits[p].var;
            if self.assign[var].is_some() {
                continue;
            }
            let mut forced: Option<bool> = None;
            let mut agree = true;
            for req in survivors.iter().flatten() {
                let val = req[p].1;
                match forced {
                    None => forced = Some(val),
                    Some(f) if f != val => agree = false,
                    _ => {}
                }
            }
            if agree {
                if let Some(val) = forced {
                    // Propagation of this variable happens via the trail.
                    self.set(var, val);
                }
            }
        }
        true
    }

    fn next_var(&self) -> Option<usize> {
        self.problem
            .order
            .iter()
            .copied()
            .find(|&v| self.assign[v].is_none())
    }

    fn values(&self) -> Vec<bool> {
        (0..self.problem.literals.len())
            .map(|e| self.literal_value(e).expect("complete assignment"))
            .collect()
    }

    fn search(&mut self, out: &mut Vec<Vec<bool>>, limit: usize) -> Result<()> {
        let Some(var) = self.next_var() else {
            out.push(self.values());
            if out.len() > limit {
                return Err(Error::LimitExceeded { limit });
            }
            return Ok(());
        };
        for value in [true, false] {
            let mark = self.trail.len();
            self.set(var, value);
            if self.propagate(mark) {
                self.search(out, limit)?;
            }
            self.undo_to(mark);
        }
        Ok(())
    }

    /// Consistent partial assignments after deciding the first `depth`
    /// branching variables, in search order.
    fn split(&mut self, depth: usize, out: &mut Vec<Vec<Option<bool>>>) {
        if depth == 0 {
            out.push(self.assign.clone());
            return;
        }
        let Some(var) = self.next_var() else {
            out.push(self.assign.clone());
            return;
        };
        for value in [true, false] {
            let mark = self.trail.len();
            self.set(var, value);
            if self.propagate(mark) {
                self.split(depth - 1, out);
            }
            self.undo_to(mark);
        }
    }
}

/// Every two-valued state of `s` as a value vector over its events, sorted
/// lexicographically. Subtrees are spread over `workers` threads; the result
/// does not depend on the worker count.
pub(crate) fn solve(s: &Somp, limit: usize, workers: usize) -> Result<Vec<Vec<bool>>> {
    let problem = Problem::compile(s);
    let mut root = Solver::new(&problem);
    // v(P) = 1
    if !root.assign_event(s.full_index(), true) {
        return Ok(Vec::new());
    }

    let mut out = Vec::new();
    if workers <= 1 {
        root.search(&mut out, limit)?;
    } else {
        let depth = (usize::BITS - (4 * workers - 1).leading_zeros()) as usize;
        let mut prefixes = Vec::new();
        root.split(depth, &mut prefixes);
        let chunks: Vec<Vec<Vec<Option<bool>>>> = (0..workers)
            .map(|w| prefixes.iter().skip(w).step_by(workers).cloned().collect())
            .collect();
        let results: Vec<Result<Vec<Vec<bool>>>> = thread::scope(|scope| {
            let handles: Vec<_> = chunks
                .into_iter()
                .map(|chunk| {
                    let problem = &problem;
                    scope.spawn(move || {
                        let mut found = Vec::new();
                        for assign in chunk {
                            let mut solver = Solver {
                                problem,
                                assign,
                                trail: Vec::new(),
                            };
                            solver.search(&mut found, limit)?;
                        }
                        Ok(found)
                    })
                })
                .collect();
            handles
                .into_iter()
                .map(|h| h.join().expect("solver worker panicked"))
                .collect()
        });
        for r in results {
            out.extend(r?);
            if out.len() > limit {
                return Err(Error::LimitExceeded { limit });
            }
        }
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}
