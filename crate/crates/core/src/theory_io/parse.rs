use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::kernel::{Atom, Clause, Symbol, Term};

use super::Theory;

struct Parser<'a> {
    src: &'a str,
    pos: usize,
    line: usize,
    column: usize,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Parser {
            src,
            pos: 0,
            line: 1,
            column: 1,
        }
    }

    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += c.len_utf8();
        if c == '\n' {
            self.line += 1;
            self.column = 1;
        } else {
            self.column += 1;
        }
        Some(c)
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Syntax {
            line: self.line,
            column: self.column,
            message: message.into(),
        })
    }

    fn skip_trivia(&mut self) {
        while let Some(c) = self.peek() {
            if c.is_whitespace() {
                self.bump();
            } else if c == '%' {
                while let Some(c) = self.bump() {
                    if c == '\n' {
                        break;
                    }
                }
            } else {
                break;
            }
        }
    }

    fn at_end(&mut self) -> bool {
        self.skip_trivia();
        self.pos >= self.src.len()
    }

    fn eat(&mut self, token: &str) -> bool {
        self.skip_trivia();
        if self.src[self.pos..].starts_with(token) {
            for _ in token.chars() {
                self.bump();
            }
            true
        } else {
            false
        }
    }

    fn expect(&mut self, token: &str) -> Result<()> {
        if self.eat(token) {
            Ok(())
        } else {
            match self.peek() {
                Some(c) => self.error(format!("expected `{token}`, found `{c}`")),
                None => self.error(format!("expected `{token}`, found end of input")),
            }
        }
    }

    fn identifier(&mut self) -> Result<&'a str> {
        self.skip_trivia();
        let start = self.pos;
        match self.peek() {
            Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
            Some(c) => return self.error(format!("expected identifier, found `{c}`")),
            None => return self.error("expected identifier, found end of input"),
        }
        while let Some(c) = self.peek() {
            if c.is_ascii_alphanumeric() || c == '_' {
                self.bump();
            } else {
                break;
            }
        }
        Ok(&self.src[start..self.pos])
    }

    fn name(&mut self, what: &str) -> Result<Symbol> {
        let (line, column) = (self.line, self.column);
        let id = self.identifier()?;
        if id.starts_with(|c: char| c.is_ascii_lowercase()) {
            Ok(id.into())
        } else {
            Err(Error::Syntax {
                line,
                column,
                message: format!("{what} `{id}` must begin with a lowercase letter"),
            })
        }
    }

    fn args(&mut self) -> Result<Vec<Term>> {
        let mut args = Vec::new();
        if self.eat("(") {
            loop {
                args.push(self.term()?);
                if self.eat(")") {
                    break;
                }
                self.expect(",")?;
            }
        }
        Ok(args)
    }

    fn term(&mut self) -> Result<Term> {
        let id = self.identifier()?;
        if id.starts_with(|c: char| c.is_ascii_uppercase() || c == '_') {
            return Ok(Term::Var(id.into()));
        }
        let functor: Symbol = id.into();
        Ok(Term::App(functor, self.args()?))
    }

    fn atom(&mut self) -> Result<Atom> {
        let predicate = self.name("predicate")?;
        Ok(Atom {
            predicate,
            args: self.args()?,
        })
    }

    fn clause(&mut self, id: usize) -> Result<Clause> {
        let head = self.atom()?;
        let mut body = Vec::new();
        if self.eat(":-") {
            loop {
                body.push(self.atom()?);
                if !self.eat(",") {
                    break;
                }
            }
        }
        self.expect(".")?;
        Ok(Clause { id, head, body })
    }

    fn finish(&mut self) -> Result<()> {
        if self.at_end() {
            Ok(())
        } else {
            let c = self.peek().unwrap_or(' ');
            self.error(format!("unexpected `{c}` after end of input"))
        }
    }
}

/// Parses a theory: clauses in source order, `%` comments to end of line.
pub fn parse_theory(text: &str) -> Result<Theory> {
    let mut p = Parser::new(text);
    let mut clauses = Vec::new();
    while !p.at_end() {
        let id = clauses.len();
        clauses.push(p.clause(id)?);
    }
    Theory::new(clauses)
}

/// Like [`parse_theory`], starting from raw bytes that may not be UTF-8.
pub fn parse_theory_bytes(bytes: &[u8]) -> Result<Theory> {
    parse_theory(utf8(bytes)?)
}

fn utf8(bytes: &[u8]) -> Result<&str> {
    std::str::from_utf8(bytes).map_err(|e| {
        let valid = &bytes[..e.valid_up_to()];
        // Prefix is valid UTF-8 by construction.
        let prefix = std::str::from_utf8(valid).unwrap_or_default();
        let line = prefix.matches('\n').count() + 1;
        let column = prefix.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
        Error::Syntax {
            line,
            column,
            message: "invalid UTF-8".into(),
        }
    })
}

/// Parses a goal, either a bare atom (`even(s(X))`) or a query (`?- even(z).`).
pub fn parse_goal(text: &str) -> Result<Atom> {
    let mut p = Parser::new(text);
    let query = p.eat("?-");
    let atom = p.atom()?;
    if query {
        p.expect(".")?;
    } else {
        p.eat(".");
    }
    p.finish()?;
    Ok(atom)
}

/// Parses a goal and checks its predicate's arity against `theory`.
pub fn parse_goal_in(text: &str, theory: &Theory) -> Result<Atom> {
    let atom = parse_goal(text)?;
    theory.check_arity(&atom)?;
    Ok(atom)
}

pub fn parse_term(text: &str) -> Result<Term> {
    let mut p = Parser::new(text);
    let t = p.term()?;
    p.finish()?;
    Ok(t)
}

pub fn parse_atom(text: &str) -> Result<Atom> {
    let mut p = Parser::new(text);
    let a = p.atom()?;
    p.finish()?;
    Ok(a)
}

/// Parses a single clause; the id is supplied by the caller.
pub fn parse_clause(text: &str, id: usize) -> Result<Clause> {
    let mut p = Parser::new(text);
    let c = p.clause(id)?;
    p.finish()?;
    Ok(c)
}

pub(super) fn record_arities(
    clauses: &[Clause],
) -> Result<(BTreeMap<Symbol, usize>, BTreeMap<Symbol, usize>)> {
    let mut predicates = BTreeMap::new();
    let mut functors = BTreeMap::new();
    for clause in clauses {
        for atom in std::iter::once(&clause.head).chain(&clause.body) {
            note(&mut predicates, "predicate", &atom.predicate, atom.arity())?;
            for t in &atom.args {
                note_term(&mut functors, t)?;
            }
        }
    }
    Ok((predicates, functors))
}

fn note(
    map: &mut BTreeMap<Symbol, usize>,
    kind: &'static str,
    name: &Symbol,
    arity: usize,
) -> Result<()> {
    match map.get(name) {
        Some(&first) if first != arity => Err(Error::ArityConflict {
            kind,
            name: name.to_string(),
            first,
            second: arity,
        }),
        Some(_) => Ok(()),
        None => {
            map.insert(name.clone(), arity);
            Ok(())
        }
    }
}

fn note_term(map: &mut BTreeMap<Symbol, usize>, t: &Term) -> Result<()> {
    if let Term::App(f, args) = t {
        note(map, "functor", f, args.len())?;
        for a in args {
            note_term(map, a)?;
        }
    }
    Ok(())
}
