//! Finite-frame oracle: standard and monotone frames over a finite theory,
//! evaluators, Galois maps, least fixpoints and brute-force solvability.

pub mod eval;
pub mod fixpoint;
pub mod frame;
pub mod galois;
pub mod theory;
pub mod typesem;

pub use eval::{Compiled, Evaluator};
pub use fixpoint::Valuation;
pub use frame::{Frame, Frames, Kind};
pub use galois::{Galois, GaloisMaps};
pub use theory::FiniteTheory;

use crate::sort::Sort;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SemError {
    #[error("the {kind} frame for sort {sort} exceeds the size cap of {cap} elements")]
    FrameTooLarge { sort: Sort, kind: Kind, cap: usize },
    #[error("exhaustive search exceeds the cap of {0} valuations")]
    SearchTooLarge(usize),
    #[error("sort `{0}` is not declared by the theory")]
    UnknownSort(String),
    #[error("symbol `{0}` is not interpreted by the theory")]
    UnknownSymbol(String),
    #[error("unbound variable `{0}`")]
    Unbound(String),
    #[error("in `{term}`: expected sort {expected}, found {found}")]
    SortMismatch {
        term: String,
        expected: Sort,
        found: Sort,
    },
    #[error("`{0}` applies a term that is not a function")]
    NotAFunction(String),
    #[error("{0}")]
    Sort(String),
    #[error("`{0}` uses a constant that has no monotone interpretation")]
    NonGoalConstant(String),
    #[error("a function value at sort {0} is not monotone")]
    NotMonotone(Sort),
    #[error("type guard `{0}` has free variables")]
    OpenGuard(String),
    #[error("sort {0} is not relational")]
    NotRelational(Sort),
    #[error("theory `{0}` is not finite; the oracle needs a finite theory")]
    InfiniteTheory(String),
}
