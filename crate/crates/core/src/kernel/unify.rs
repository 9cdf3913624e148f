use super::subst::{Apply, Substitution};
use super::term::{Atom, Clause, Symbol, Term};

/// Most general unifier of two terms, with occurs check.
pub fn unify(a: &Term, b: &Term) -> Option<Substitution> {
    unify_with(Substitution::new(), a, b)
}

/// Most general unifier of two atoms. Different predicates or arities never unify.
pub fn unify_atoms(a: &Atom, b: &Atom) -> Option<Substitution> {
    unify_atoms_with(Substitution::new(), a, b)
}

/// Extends an idempotent substitution so that it also unifies `a` and `b`.
pub fn unify_with(s: Substitution, a: &Term, b: &Term) -> Option<Substitution> {
    solve(s, vec![(a.clone(), b.clone())])
}

pub fn unify_atoms_with(s: Substitution, a: &Atom, b: &Atom) -> Option<Substitution> {
    if a.predicate != b.predicate || a.args.len() != b.args.len() {
        return None;
    }
    let pairs = a
        .args
        .iter()
        .cloned()
        .zip(b.args.iter().cloned())
        .rev()
        .collect();
    solve(s, pairs)
}

/// Solves the equations `v = t` of every binding in `extra` on top of `s`.
/// Used to merge the answers of sibling subgoals.
pub fn merge(s: Substitution, extra: &Substitution) -> Option<Substitution> {
    let mut pairs: Vec<(Term, Term)> = extra
        .iter()
        .map(|(v, t)| (Term::Var(v.clone()), t.clone()))
        .collect();
    pairs.reverse();
    solve(s, pairs)
}

// Pairs are popped from the back; callers push in reverse to get
// left-to-right processing.
fn solve(mut s: Substitution, mut stack: Vec<(Term, Term)>) -> Option<Substitution> {
    while let Some((x, y)) = stack.pop() {
        let x = x.apply(&s);
        let y = y.apply(&s);
        match (x, y) {
            (Term::Var(v), Term::Var(w)) if v == w => {}
            (Term::Var(v), t) | (t, Term::Var(v)) => {
                if t.contains_var(&v) {
                    return None;
                }
                s.extend(v, t);
            }
            (Term::App(f, fa), Term::App(g, ga)) => {
                if f != g || fa.len() != ga.len() {
                    return None;
                }
                stack.extend(fa.into_iter().zip(ga).rev());
            }
        }
    }
    Some(s)
}

/// Renames every variable of `clause` to `_G<n>` with `n` drawn from the
/// monotone `counter`, in first-occurrence order. Returns the renamed clause
/// and the `(original, fresh)` pairs.
pub fn rename_apart(clause: &Clause, counter: &mut u64) -> (Clause, Vec<(Symbol, Symbol)>) {
    let map: Vec<(Symbol, Symbol)> = clause
        .vars()
        .into_iter()
        .map(|v| {
            let fresh: Symbol = format!("_G{counter}").into();
            *counter += 1;
            (v, fresh)
        })
        .collect();
    if map.is_empty() {
        return (clause.clone(), map);
    }
    (clause.rename(&map), map)
}

pub fn standardize_apart(clause: &Clause, counter: &mut u64) -> Clause {
    rename_apart(clause, counter).0
}

/// Renames variables to `V0, V1, ...` in order of first occurrence.
pub fn canonicalize(a: &Atom) -> Atom {
    let map: Vec<(Symbol, Symbol)> = a
        .vars()
        .into_iter()
        .enumerate()
        .map(|(i, v)| (v, format!("V{i}").into()))
        .collect();
    a.rename(&map)
}

pub fn alpha_equivalent(a: &Atom, b: &Atom) -> bool {
    canonicalize(a) == canonicalize(b)
}
