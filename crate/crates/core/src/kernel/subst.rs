use std::collections::BTreeMap;

use super::term::{Atom, Clause, Symbol, Term};

/// Finite map from variable names to terms.
///
/// Substitutions built by [`unify`](super::unify) are idempotent: no domain
/// variable occurs in the range. Application is always simultaneous, so
/// `{X -> Y, Y -> z}` applied to `f(X, Y)` gives `f(Y, z)`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Substitution {
    map: BTreeMap<Symbol, Term>,
}

impl Substitution {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn get(&self, var: &str) -> Option<&Term> {
        self.map.get(var)
    }

    pub fn contains(&self, var: &str) -> bool {
        self.map.contains_key(var)
    }

    /// Inserts a raw binding without composing. The caller is responsible
    /// for idempotence if it matters.
    pub fn insert(&mut self, var: Symbol, term: Term) -> Option<Term> {
        self.map.insert(var, term)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Symbol, &Term)> {
        self.map.iter()
    }

    pub fn domain(&self) -> impl Iterator<Item = &Symbol> {
        self.map.keys()
    }

    /// Keeps only bindings whose variable is in `vars`.
    pub fn restrict(&self, vars: &[Symbol]) -> Substitution {
        Substitution {
            map: self
                .map
                .iter()
                .filter(|(k, _)| vars.contains(k))
                .map(|(k, v)| (k.clone(), v.clone()))
                .collect(),
        }
    }

    /// True when no domain variable occurs in any range term.
    pub fn is_idempotent(&self) -> bool {
        self.map
            .values()
            .all(|t| self.map.keys().all(|k| !t.contains_var(k)))
    }

    /// Adds `var -> term` and rewrites existing ranges so the result stays
    /// idempotent. `term` must already be resolved against `self` and must
    /// not contain `var`.
    pub(crate) fn extend(&mut self, var: Symbol, term: Term) {
        let single = [(var.clone(), term.clone())];
        for value in self.map.values_mut() {
            if value.contains_var(&var) {
                *value = replace(value, &single);
            }
        }
        self.map.insert(var, term);
    }
}

impl FromIterator<(Symbol, Term)> for Substitution {
    fn from_iter<I: IntoIterator<Item = (Symbol, Term)>>(iter: I) -> Self {
        Substitution {
            map: iter.into_iter().collect(),
        }
    }
}

fn replace(t: &Term, single: &[(Symbol, Term); 1]) -> Term {
    match t {
        Term::Var(v) if *v == single[0].0 => single[0].1.clone(),
        Term::Var(_) => t.clone(),
        Term::App(f, args) => {
            Term::App(f.clone(), args.iter().map(|a| replace(a, single)).collect())
        }
    }
}

/// Values a substitution can be applied to.
pub trait Apply: Sized {
    fn apply(&self, s: &Substitution) -> Self;
}

impl Apply for Term {
    fn apply(&self, s: &Substitution) -> Term {
        if s.is_empty() {
            return self.clone();
        }
        match self {
            Term::Var(v) => s.get(v).cloned().unwrap_or_else(|| self.clone()),
            Term::App(f, args) => Term::App(f.clone(), args.iter().map(|a| a.apply(s)).collect()),
        }
    }
}

impl Apply for Atom {
    fn apply(&self, s: &Substitution) -> Atom {
        Atom {
            predicate: self.predicate.clone(),
            args: self.args.iter().map(|a| a.apply(s)).collect(),
        }
    }
}

impl Apply for Clause {
    fn apply(&self, s: &Substitution) -> Clause {
        Clause {
            id: self.id,
            head: self.head.apply(s),
            body: self.body.iter().map(|b| b.apply(s)).collect(),
        }
    }
}

pub fn apply_subst<T: Apply>(s: &Substitution, t: &T) -> T {
    t.apply(s)
}
