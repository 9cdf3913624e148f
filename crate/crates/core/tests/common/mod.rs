//! Shared fixtures, goal generators and a reference prover for the
//! integration tests.
//!
//! The reference prover is a plain breadth-first SLD resolver with its own
//! renaming and one-way matching. It shares only term types and `unify` with
//! the library, and `unify` itself is checked exhaustively in `kernel.rs`.

#![allow(dead_code)]

use std::collections::{BTreeMap, VecDeque};

use horn_arena::checker::{clause_var, Proof};
use horn_arena::kernel::{apply_subst, unify_atoms_with, Atom, Clause, Substitution, Term};
use horn_arena::theory_io::{parse_goal, parse_theory, Theory};
use horn_arena::Params;
use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

pub const EVEN: &str = include_str!("../../fixtures/even.thy");
pub const PLUS: &str = include_str!("../../fixtures/plus.thy");
pub const DISTRACTOR: &str = include_str!("../../fixtures/distractor.thy");
pub const DISTRACTOR_GOAL: &str = include_str!("../../fixtures/distractor.goal");

pub fn even() -> Theory {
    parse_theory(EVEN).unwrap()
}

pub fn plus() -> Theory {
    parse_theory(PLUS).unwrap()
}

/// Both arithmetic fixtures in one theory (even clauses 0-1, plus clauses 2-3).
pub fn arith() -> Theory {
    parse_theory(&format!("{EVEN}{PLUS}")).unwrap()
}

pub fn distractor() -> Theory {
    parse_theory(DISTRACTOR).unwrap()
}

pub fn distractor_target() -> Atom {
    parse_goal(DISTRACTOR_GOAL).unwrap()
}

/// `even(s^(2n)(z))` against the distractor theory.
pub fn even_target(n: usize) -> Atom {
    Atom::new("even", vec![numeral(2 * n)])
}

pub fn numeral(k: usize) -> Term {
    numeral_on(k, Term::constant("z"))
}

pub fn numeral_on(k: usize, base: Term) -> Term {
    (0..k).fold(base, |t, _| Term::app("s", vec![t]))
}

pub struct Gen(ChaCha8Rng);

impl Gen {
    pub fn new(seed: u64) -> Gen {
        Gen(ChaCha8Rng::seed_from_u64(seed))
    }

    pub fn below(&mut self, n: usize) -> usize {
        (self.0.next_u64() % n as u64) as usize
    }

    pub fn unit(&mut self) -> f64 {
        (self.0.next_u64() >> 11) as f64 / (1u64 << 53) as f64
    }

    pub fn coin(&mut self) -> bool {
        self.0.next_u64() & 1 == 1
    }

    /// Uniform in `[-r, r]` on a grid of 1/1024, so that scaling by small
    /// integers stays exact in floating point.
    pub fn weight(&mut self, r: f64) -> f64 {
        ((self.unit() * 2.0 - 1.0) * r * 1024.0).round() / 1024.0
    }

    pub fn params(&mut self, depth_limit: usize) -> Params {
        let w = [(); 5].map(|_| self.weight(2.0));
        Params::new(w, depth_limit).unwrap()
    }

    /// Random weights with a depth limit in 6..16.
    pub fn any_params(&mut self) -> Params {
        let depth_limit = 6 + self.below(10);
        self.params(depth_limit)
    }
}

/// True goals over [`arith`], ground or with existential variables.
pub fn true_goal(g: &mut Gen) -> Atom {
    match g.below(5) {
        0 => Atom::new("even", vec![numeral(2 * g.below(5))]),
        1 => {
            let (a, b) = (g.below(5), g.below(5));
            Atom::new("plus", vec![numeral(a), numeral(b), numeral(a + b)])
        }
        2 => {
            let (a, b) = (g.below(4), g.below(4));
            Atom::new("plus", vec![numeral(a), Term::var("X"), numeral(a + b)])
        }
        3 => {
            let c = g.below(7);
            Atom::new("plus", vec![Term::var("X"), Term::var("Y"), numeral(c)])
        }
        _ => Atom::new("even", vec![numeral_on(2 * g.below(3), Term::var("N"))]),
    }
}

/// Goals over [`arith`] with term depth at most 7, true or false, ground or not.
pub fn mixed_goal(g: &mut Gen) -> Atom {
    let arg = |g: &mut Gen| -> Term {
        match g.below(4) {
            0 => Term::var(["X", "Y", "Z"][g.below(3)]),
            1 => numeral_on(g.below(4), Term::var(["X", "Y"][g.below(2)])),
            _ => numeral(g.below(8)),
        }
    };
    if g.coin() {
        Atom::new("even", vec![arg(g)])
    } else {
        let (a, b, c) = (arg(g), arg(g), arg(g));
        Atom::new("plus", vec![a, b, c])
    }
}

fn rename_term(t: &Term, tag: u64) -> Term {
    match t {
        Term::Var(v) => Term::var(&format!("_O{tag}_{v}")),
        Term::App(f, args) => Term::App(
            f.clone(),
            args.iter().map(|a| rename_term(a, tag)).collect(),
        ),
    }
}

fn rename_atom(a: &Atom, tag: u64) -> Atom {
    Atom {
        predicate: a.predicate.clone(),
        args: a.args.iter().map(|t| rename_term(t, tag)).collect(),
    }
}

/// Breadth-first SLD resolution, leftmost selection. A goal at depth `d`
/// resolved with a non-fact clause puts its body at depth `d + 1`, which must
/// not exceed `depth_limit`.
pub fn oracle_provable(theory: &Theory, goal: &Atom, depth_limit: usize) -> bool {
    let mut queue: VecDeque<(Vec<(Atom, usize)>, Substitution)> = VecDeque::new();
    queue.push_back((vec![(goal.clone(), 0)], Substitution::new()));
    let mut tag = 0u64;
    while let Some((goals, s)) = queue.pop_front() {
        let Some(((first, d), rest)) = goals.split_first() else {
            return true;
        };
        let selected = apply_subst(&s, first);
        for c in theory.clauses() {
            tag += 1;
            let head = rename_atom(&c.head, tag);
            let Some(s2) = unify_atoms_with(s.clone(), &selected, &head) else {
                continue;
            };
            if !c.body.is_empty() && d + 1 > depth_limit {
                continue;
            }
            let mut next: Vec<(Atom, usize)> = c
                .body
                .iter()
                .map(|b| (rename_atom(b, tag), d + 1))
                .collect();
            next.extend(rest.iter().cloned());
            queue.push_back((next, s2));
        }
    }
    false
}

fn match_term(pattern: &Term, ground: &Term, out: &mut BTreeMap<String, Term>) -> bool {
    match (pattern, ground) {
        (Term::Var(v), _) => match out.get(&**v) {
            Some(bound) => bound == ground,
            None => {
                out.insert(v.to_string(), ground.clone());
                true
            }
        },
        (Term::App(f, xs), Term::App(g, ys)) => {
            f == g && xs.len() == ys.len() && xs.iter().zip(ys).all(|(x, y)| match_term(x, y, out))
        }
        _ => false,
    }
}

fn instantiate(t: &Term, m: &BTreeMap<String, Term>) -> Option<Term> {
    match t {
        Term::Var(v) => m.get(&**v).cloned(),
        Term::App(f, args) => Some(Term::App(
            f.clone(),
            args.iter()
                .map(|a| instantiate(a, m))
                .collect::<Option<_>>()?,
        )),
    }
}

fn head_match(c: &Clause, goal: &Atom) -> Option<BTreeMap<String, Term>> {
    let mut m = BTreeMap::new();
    let ok = c.head.predicate == goal.predicate
        && c.head.args.len() == goal.args.len()
        && c.head
            .args
            .iter()
            .zip(&goal.args)
            .all(|(p, t)| match_term(p, t, &mut m));
    ok.then_some(m)
}

/// Every proof tree of the ground `goal` with at most `height` levels, for
/// theories whose body variables all occur in the head.
pub fn oracle_proofs(theory: &Theory, goal: &Atom, height: usize) -> Vec<Proof> {
    if height == 0 {
        return Vec::new();
    }
    let mut out = Vec::new();
    for c in theory.clauses() {
        let Some(m) = head_match(c, goal) else {
            continue;
        };
        let body: Option<Vec<Atom>> = c
            .body
            .iter()
            .map(|b| {
                let args = b
                    .args
                    .iter()
                    .map(|t| instantiate(t, &m))
                    .collect::<Option<Vec<_>>>()?;
                Some(Atom {
                    predicate: b.predicate.clone(),
                    args,
                })
            })
            .collect();
        let Some(body) = body else { continue };
        let binding: Substitution = m.iter().map(|(v, t)| (clause_var(v), t.clone())).collect();
        let mut partial: Vec<Vec<Proof>> = vec![Vec::new()];
        for b in &body {
            let subs = oracle_proofs(theory, b, height - 1);
            partial = partial
                .into_iter()
                .flat_map(|p| {
                    subs.iter().map(move |s| {
                        let mut p = p.clone();
                        p.push(s.clone());
                        p
                    })
                })
                .collect();
        }
        for subproofs in partial {
            out.push(Proof {
                goal: goal.clone(),
                clause_id: c.id,
                binding: binding.clone(),
                subproofs,
            });
        }
    }
    out
}
