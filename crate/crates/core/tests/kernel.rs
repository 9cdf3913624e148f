use horn_arena::kernel::{
    alpha_equivalent, apply_subst, canonicalize, merge, sym, unify, Atom, Clause, Substitution,
    Term,
};
use horn_arena::theory_io::{
    parse_atom, parse_clause, parse_term, parse_theory, parse_theory_bytes,
};
use horn_arena::Error;
use proptest::prelude::*;

/// All terms over `sig` (name, arity) and variables X, Y up to `depth`.
fn terms(sig: &[(&str, usize)], vars: bool, depth: usize) -> Vec<Term> {
    let mut out: Vec<Term> = Vec::new();
    if vars {
        out.push(Term::var("X"));
        out.push(Term::var("Y"));
    }
    out.extend(sig.iter().filter(|s| s.1 == 0).map(|s| Term::constant(s.0)));
    if depth == 0 {
        return out;
    }
    let smaller = terms(sig, vars, depth - 1);
    for &(f, n) in sig.iter().filter(|s| s.1 > 0) {
        let mut tuples: Vec<Vec<Term>> = vec![vec![]];
        for _ in 0..n {
            tuples = tuples
                .into_iter()
                .flat_map(|t| {
                    smaller
                        .iter()
                        .map(move |s| [t.clone(), vec![s.clone()]].concat())
                })
                .collect();
        }
        out.extend(tuples.into_iter().map(|args| Term::app(f, args)));
    }
    out
}

fn ground_substs(sig: &[(&str, usize)], depth: usize) -> Vec<Substitution> {
    let ground = terms(sig, false, depth);
    let mut out = Vec::new();
    for x in &ground {
        for y in &ground {
            out.push(
                [(sym("X"), x.clone()), (sym("Y"), y.clone())]
                    .into_iter()
                    .collect(),
            );
        }
    }
    out
}

/// For every pair of small terms: the computed unifier unifies, is idempotent,
/// and every ground unifier in the enumeration factors through it; when no
/// unifier is computed, none exists in the enumeration.
fn brute_force_mgu(sig: &[(&str, usize)], term_depth: usize, ground_depth: usize) -> usize {
    let ts = terms(sig, true, term_depth);
    let thetas = ground_substs(sig, ground_depth);
    let vars = [Term::var("X"), Term::var("Y")];
    let mut checked = 0;
    for s in &ts {
        for t in &ts {
            let mgu = unify(s, t);
            if let Some(sigma) = &mgu {
                assert_eq!(apply_subst(sigma, s), apply_subst(sigma, t), "{s} = {t}");
                assert!(sigma.is_idempotent(), "{s} = {t}: {sigma}");
            }
            for theta in &thetas {
                if apply_subst(theta, s) != apply_subst(theta, t) {
                    continue;
                }
                checked += 1;
                let sigma = mgu
                    .as_ref()
                    .unwrap_or_else(|| panic!("{s} = {t} has unifier {theta}"));
                for v in &vars {
                    assert_eq!(
                        apply_subst(theta, &apply_subst(sigma, v)),
                        apply_subst(theta, v),
                        "{s} = {t}"
                    );
                }
            }
        }
    }
    checked
}

#[test]
fn mgu_is_most_general_over_unary_signature() {
    assert!(brute_force_mgu(&[("a", 0), ("f", 1)], 3, 3) > 0);
}

#[test]
fn mgu_is_most_general_over_binary_signature() {
    assert!(brute_force_mgu(&[("a", 0), ("g", 2)], 2, 2) > 0);
}

#[test]
fn occurs_check_rejects_cycles() {
    assert!(unify(&parse_term("X").unwrap(), &parse_term("f(X)").unwrap()).is_none());
    assert!(unify(
        &parse_term("g(X, Y)").unwrap(),
        &parse_term("g(Y, f(X))").unwrap()
    )
    .is_none());
}

fn term() -> impl Strategy<Value = Term> {
    let leaf = prop_oneof![
        prop::sample::select(vec!["X", "Y", "Z", "_W"]).prop_map(Term::var),
        prop::sample::select(vec!["a", "b", "z"]).prop_map(Term::constant),
    ];
    leaf.prop_recursive(4, 24, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(|t| Term::app("f", vec![t])),
            (inner.clone(), inner).prop_map(|(a, b)| Term::app("g", vec![a, b])),
        ]
    })
}

fn atom() -> impl Strategy<Value = Atom> {
    (term(), term()).prop_map(|(a, b)| Atom::new("p", vec![a, b]))
}

proptest! {
    #[test]
    fn format_parse_roundtrip(t in term()) {
        prop_assert_eq!(parse_term(&t.to_string()).unwrap(), t);
    }

    #[test]
    fn clause_roundtrip(h in atom(), body in prop::collection::vec(atom(), 0..3)) {
        let c = Clause { id: 0, head: h, body };
        prop_assert_eq!(parse_clause(&c.to_string(), 0).unwrap(), c);
    }

    #[test]
    fn parser_never_panics_on_bytes(bytes in prop::collection::vec(any::<u8>(), 0..128)) {
        match parse_theory_bytes(&bytes) {
            Ok(_) | Err(Error::Syntax { .. }) | Err(Error::ArityConflict { .. }) => {}
            Err(e) => prop_assert!(false, "unexpected error {e:?}"),
        }
    }

    #[test]
    fn parser_never_panics_on_near_misses(text in "[a-cXY_(),.:\\- %\n?]{0,64}") {
        match parse_theory(&text) {
            Ok(_) | Err(Error::Syntax { .. }) | Err(Error::ArityConflict { .. }) => {}
            Err(e) => prop_assert!(false, "unexpected error {e:?}"),
        }
    }

    #[test]
    fn canonicalize_is_idempotent(a in atom()) {
        let c = canonicalize(&a);
        prop_assert_eq!(canonicalize(&c), c.clone());
        prop_assert!(alpha_equivalent(&a, &c));
        prop_assert_eq!(parse_atom(&c.to_string()).unwrap(), c);
    }

    #[test]
    fn unify_is_symmetric_and_idempotent(s in term(), t in term()) {
        let st = unify(&s, &t);
        let ts = unify(&t, &s);
        prop_assert_eq!(st.is_some(), ts.is_some());
        if let Some(sigma) = st {
            prop_assert!(sigma.is_idempotent());
            prop_assert_eq!(apply_subst(&sigma, &s), apply_subst(&sigma, &t));
        }
    }

    #[test]
    fn merge_agrees_with_both_inputs(a in term(), b in term(), c in term(), d in term()) {
        let (Some(s1), Some(s2)) = (unify(&a, &b), unify(&c, &d)) else { return Ok(()) };
        if let Some(m) = merge(s1, &s2) {
            prop_assert!(m.is_idempotent());
            prop_assert_eq!(apply_subst(&m, &a), apply_subst(&m, &b));
            prop_assert_eq!(apply_subst(&m, &c), apply_subst(&m, &d));
        }
    }
}
