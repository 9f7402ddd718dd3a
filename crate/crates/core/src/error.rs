use thiserror::Error;

use crate::expr::ParseError;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("duplicate element id `{0}`")]
    DuplicateId(String),
    #[error("cover ({0}, {1}) references an unknown element")]
    DanglingCover(String, String),
    #[error("cover ({lower}, {upper}) does not raise the rank by exactly one")]
    NotGraded { lower: String, upper: String },
    #[error("poset is not bounded: {0}")]
    NotBounded(String),
    #[error("unknown element id `{0}`")]
    UnknownId(String),
    #[error("`{0}` is not below `{1}`")]
    NotComparable(String, String),
    #[error("search budget exceeded: {elements} elements, cap is {cap}")]
    SearchBudgetExceeded { elements: usize, cap: usize },
    #[error("element budget exceeded: result would have {elements} elements, cap is {cap}")]
    BudgetExceeded { elements: u128, cap: usize },
    #[error("group closure exceeded {cap} elements")]
    ClosureBudgetExceeded { cap: usize },
    #[error("exponent must be at least 1")]
    NonPositiveExponent,
    #[error("family node carries no face lattice with product provenance")]
    MissingProvenance,
    #[error("permutations act on posets of different sizes ({0} vs {1})")]
    SizeMismatch(usize, usize),
    #[error("not an abstract polytope: {0}")]
    NotAPolytope(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
}
