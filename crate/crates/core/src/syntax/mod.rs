//! Concrete syntax: `.hochc` problems, `.rty` type environments, `.fth`
//! finite theories, and the canonical printer.

mod lexer;
mod parser;
mod printer;

use std::fmt;

pub use lexer::KEYWORDS;
pub use parser::{FunDecl, RelDecl, TheoryDecls};
pub use printer::{print_problem, print_term, print_type};

use crate::problem::{decompose_definite, DefiniteFormula, Problem, ProblemError};
use crate::semantics::theory::{FiniteTheory, TheoryError};
use crate::sort::{DuplicateBinding, SortEnv};
use crate::sorting::Signature;
use crate::term::Term;
use crate::types::{RefType, TypeEntry, TypeEnv, TypeError};
use parser::Parser;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{line}:{col}: {message}")]
pub struct SyntaxError {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error("syntax error at {0}")]
    Syntax(#[from] SyntaxError),
    #[error(transparent)]
    Problem(#[from] ProblemError),
    #[error(transparent)]
    Env(#[from] DuplicateBinding),
    #[error(transparent)]
    Type(#[from] TypeError),
    #[error(transparent)]
    Theory(#[from] TheoryError),
}

/// Parses a term over linear integer arithmetic.
pub fn parse_term(src: &str) -> Result<Term, SyntaxError> {
    parse_term_with(src, &Signature::zla(), &[])
}

/// Parses a term; identifiers that name a signature symbol and are not in
/// `scope` or bound become symbols.
pub fn parse_term_with(src: &str, sig: &Signature, scope: &[&str]) -> Result<Term, SyntaxError> {
    let mut p = Parser::new(src, sig)?;
    p.scope = scope.iter().map(|s| s.to_string()).collect();
    let t = p.term()?;
    p.expect_eof()?;
    Ok(t)
}

pub fn parse_type(src: &str) -> Result<RefType, SyntaxError> {
    parse_type_with(src, &Signature::zla())
}

pub fn parse_type_with(src: &str, sig: &Signature) -> Result<RefType, SyntaxError> {
    let mut p = Parser::new(src, sig)?;
    let t = p.ref_type()?;
    p.expect_eof()?;
    Ok(t)
}

/// Name of the theory declared by a problem file.
pub fn problem_theory(src: &str) -> Result<String, SyntaxError> {
    let sig = Signature::empty("");
    Parser::new(src, &sig)?.theory_header()
}

/// Parses and validates a problem, using the built-in signature of its
/// theory.
pub fn parse_problem(src: &str) -> Result<Problem, ParseError> {
    let sig = Signature::for_theory(&problem_theory(src)?);
    parse_problem_with(src, &sig)
}

pub fn parse_problem_with(src: &str, sig: &Signature) -> Result<Problem, ParseError> {
    let decls = Parser::new(src, sig)?.problem()?;
    let env = SortEnv::from_pairs(decls.env)?;
    let mut definite = DefiniteFormula::default();
    for c in &decls.clauses {
        definite
            .clauses
            .extend(decompose_definite(sig, &env, c)?.clauses);
    }
    let p = Problem {
        theory: decls.theory,
        env,
        definite,
        goal: decls.goal,
    };
    p.validate(sig)?;
    Ok(p)
}

/// Parses a `.rty` type environment. Entries are checked for sort
/// refinement against the entries before them.
pub fn parse_type_env(src: &str, sig: &Signature) -> Result<TypeEnv, ParseError> {
    let entries = Parser::new(src, sig)?.type_env()?;
    let mut g = TypeEnv::new();
    let mut scope = SortEnv::new();
    for (x, e) in entries {
        match e {
            Ok(s) => {
                scope = scope.extended(&x, s.clone());
                g.push(x, TypeEntry::Ind(s))?;
            }
            Err(t) => {
                let s = crate::types::refines(sig, &scope, &t)?;
                scope = scope.extended(&x, s);
                g.push(x, TypeEntry::Ty(t))?;
            }
        }
    }
    Ok(g)
}

pub fn print_type_env(g: &TypeEnv) -> String {
    let mut out = String::new();
    for (x, e) in g.iter() {
        match e {
            TypeEntry::Ind(s) => out.push_str(&format!("{x} : {s};\n")),
            TypeEntry::Ty(t) => out.push_str(&format!("{x} : {};\n", print_type(t))),
        }
    }
    out
}

/// Parses the raw declarations of a `.fth` file.
pub fn parse_theory_decls(src: &str) -> Result<TheoryDecls, SyntaxError> {
    let sig = Signature::empty("");
    let mut p = Parser::new(src, &sig)?;
    p.theory()
}

/// Parses a `.fth` finite theory.
pub fn parse_theory(src: &str) -> Result<FiniteTheory, ParseError> {
    Ok(FiniteTheory::from_decls(&parse_theory_decls(src)?)?)
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print_term(self))
    }
}

impl fmt::Display for RefType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print_type(self))
    }
}

impl fmt::Display for Problem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print_problem(self))
    }
}
