use std::sync::Arc;

/// Interned-ish identifier. Cheap to clone, shared between terms.
pub type Symbol = Arc<str>;

pub fn sym(s: &str) -> Symbol {
    Arc::from(s)
}

/// A first-order term. Constants are applications with no arguments.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Var(Symbol),
    App(Symbol, Vec<Term>),
}

impl Term {
    pub fn var(name: &str) -> Term {
        Term::Var(sym(name))
    }

    pub fn constant(name: &str) -> Term {
        Term::App(sym(name), Vec::new())
    }

    pub fn app(functor: &str, args: Vec<Term>) -> Term {
        Term::App(sym(functor), args)
    }

    pub fn is_var(&self) -> bool {
        matches!(self, Term::Var(_))
    }

    pub fn is_ground(&self) -> bool {
        match self {
            Term::Var(_) => false,
            Term::App(_, args) => args.iter().all(Term::is_ground),
        }
    }

    pub fn contains_var(&self, name: &str) -> bool {
        match self {
            Term::Var(v) => &**v == name,
            Term::App(_, args) => args.iter().any(|a| a.contains_var(name)),
        }
    }

    /// Number of functor and variable occurrences.
    pub fn size(&self) -> usize {
        match self {
            Term::Var(_) => 1,
            Term::App(_, args) => 1 + args.iter().map(Term::size).sum::<usize>(),
        }
    }

    /// Nesting depth; constants and variables have depth 0.
    pub fn depth(&self) -> usize {
        match self {
            Term::Var(_) => 0,
            Term::App(_, args) => args.iter().map(|a| 1 + a.depth()).max().unwrap_or(0),
        }
    }

    /// Appends variables not yet in `out`, in depth-first left-to-right order.
    pub fn collect_vars(&self, out: &mut Vec<Symbol>) {
        match self {
            Term::Var(v) => {
                if !out.contains(v) {
                    out.push(v.clone());
                }
            }
            Term::App(_, args) => args.iter().for_each(|a| a.collect_vars(out)),
        }
    }

    pub fn vars(&self) -> Vec<Symbol> {
        let mut out = Vec::new();
        self.collect_vars(&mut out);
        out
    }

    pub(crate) fn rename(&self, map: &[(Symbol, Symbol)]) -> Term {
        match self {
            Term::Var(v) => match map.iter().find(|(from, _)| from == v) {
                Some((_, to)) => Term::Var(to.clone()),
                None => self.clone(),
            },
            Term::App(f, args) => {
                Term::App(f.clone(), args.iter().map(|a| a.rename(map)).collect())
            }
        }
    }
}

/// A predicate applied to terms: goals, conjectures, clause heads and body elements.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Atom {
    pub predicate: Symbol,
    pub args: Vec<Term>,
}

impl Atom {
    pub fn new(predicate: &str, args: Vec<Term>) -> Atom {
        Atom {
            predicate: sym(predicate),
            args,
        }
    }

    pub fn arity(&self) -> usize {
        self.args.len()
    }

    pub fn is_ground(&self) -> bool {
        self.args.iter().all(Term::is_ground)
    }

    /// Predicate symbol plus every functor and variable occurrence in the arguments.
    pub fn size(&self) -> usize {
        1 + self.args.iter().map(Term::size).sum::<usize>()
    }

    pub fn collect_vars(&self, out: &mut Vec<Symbol>) {
        self.args.iter().for_each(|a| a.collect_vars(out));
    }

    pub fn vars(&self) -> Vec<Symbol> {
        let mut out = Vec::new();
        self.collect_vars(&mut out);
        out
    }

    pub(crate) fn rename(&self, map: &[(Symbol, Symbol)]) -> Atom {
        Atom {
            predicate: self.predicate.clone(),
            args: self.args.iter().map(|a| a.rename(map)).collect(),
        }
    }
}

/// A Horn clause. `id` is the clause's position in its theory.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Clause {
    pub id: usize,
    pub head: Atom,
    pub body: Vec<Atom>,
}

impl Clause {
    pub fn is_fact(&self) -> bool {
        self.body.is_empty()
    }

    pub fn vars(&self) -> Vec<Symbol> {
        let mut out = Vec::new();
        self.head.collect_vars(&mut out);
        self.body.iter().for_each(|b| b.collect_vars(&mut out));
        out
    }

    pub(crate) fn rename(&self, map: &[(Symbol, Symbol)]) -> Clause {
        Clause {
            id: self.id,
            head: self.head.rename(map),
            body: self.body.iter().map(|b| b.rename(map)).collect(),
        }
    }
}
