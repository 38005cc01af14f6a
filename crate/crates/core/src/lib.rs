//! Higher-order constrained Horn clauses: syntax, standard and monotone
//! semantics over finite theories, refinement types, inference of
//! first-order Horn constraints and solver integration.

pub mod cli;
pub mod gen;
pub mod inference;
pub mod problem;
pub mod reduce;
pub mod semantics;
pub mod solver;
pub mod sort;
pub mod sorting;
pub mod syntax;
pub mod term;
pub mod transform;
pub mod types;

pub use problem::{Clause, DefiniteFormula, Problem, ProblemError};
pub use sort::{Sort, SortEnv};
pub use sorting::Signature;
pub use term::{Const, Term};
pub use types::{RefType, TypeEnv};
