use std::fmt;

use serde::de::{self, Deserializer};
use serde::ser::Serializer;
use serde::{Deserialize, Serialize};

use crate::kernel::{Atom, Clause, Substitution, Symbol, Term};

use super::parse::{parse_atom, parse_term};
use super::Theory;

fn write_args(f: &mut fmt::Formatter<'_>, name: &str, args: &[Term]) -> fmt::Result {
    f.write_str(name)?;
    if let Some((first, rest)) = args.split_first() {
        write!(f, "({first}")?;
        for a in rest {
            write!(f, ",{a}")?;
        }
        f.write_str(")")?;
    }
    Ok(())
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(v) => f.write_str(v),
            Term::App(name, args) => write_args(f, name, args),
        }
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_args(f, &self.predicate, &self.args)
    }
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.head)?;
        if let Some((first, rest)) = self.body.split_first() {
            write!(f, " :- {first}")?;
            for b in rest {
                write!(f, ", {b}")?;
            }
        }
        f.write_str(".")
    }
}

impl fmt::Display for Theory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in self.clauses() {
            writeln!(f, "{c}")?;
        }
        Ok(())
    }
}

impl fmt::Display for Substitution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (v, t)) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{v} -> {t}")?;
        }
        f.write_str("}")
    }
}

/// Text form of a term, atom or clause. Deterministic, no incidental whitespace.
pub fn format<T: fmt::Display>(value: &T) -> String {
    value.to_string()
}

// Terms and atoms travel through JSON as their concrete syntax.

impl Serialize for Term {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Term {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        parse_term(&text).map_err(de::Error::custom)
    }
}

impl Serialize for Atom {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Atom {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        parse_atom(&text).map_err(de::Error::custom)
    }
}

impl Serialize for Substitution {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_map(self.iter().map(|(v, t)| (&**v, t)))
    }
}

impl<'de> Deserialize<'de> for Substitution {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = std::collections::BTreeMap::<String, Term>::deserialize(d)?;
        raw.into_iter()
            .map(|(k, t)| match parse_term(&k) {
                Ok(Term::Var(_)) => Ok((Symbol::from(k.as_str()), t)),
                _ => Err(de::Error::custom(format!(
                    "binding key `{k}` is not a variable"
                ))),
            })
            .collect()
    }
}
