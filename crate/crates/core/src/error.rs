use thiserror::Error;

use crate::fourier::RankReport;
use crate::universality::UniversalityVerdict;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("{n} is not a prime power; universality criteria are only available for N = p^M (use the brute-force rank oracle instead)")]
    NotPrimePower { n: u64 },

    #[error("modulus mismatch: index set lives in [0:{set_n}] but the modulus is {modulus_n}")]
    ModulusMismatch { set_n: usize, modulus_n: usize },

    #[error("requested a universal subset of size {requested} but the largest universal subset has size {maximal}")]
    Infeasible { requested: usize, maximal: usize },

    #[error("set is not universal: {0:?}")]
    NotUniversal(UniversalityVerdict),

    #[error("linear system is singular (numerical rank {} of {}, smallest singular value {:e})", .0.numerical_rank, .0.dimension, .0.smallest_singular_value)]
    Singular(RankReport),

    #[error("enumeration of {required} subsets exceeds the budget of {budget}")]
    BudgetExceeded { required: u128, budget: u128 },

    #[error("parameter condition violated: {lhs_name} = {lhs} must be >= {rhs_name} = {rhs}")]
    ParameterCondition {
        lhs_name: &'static str,
        lhs: f64,
        rhs_name: &'static str,
        rhs: f64,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidArgument(msg.into())
}
