//! Universal sampling sets for discrete bandlimited signals.
//!
//! An index set `I ⊂ Z_N` is *universal* when samples on `I` determine every
//! signal whose spectrum lives on any `J` with `|J| = |I|`; equivalently every
//! square DFT submatrix with rows `I` is invertible. For `N = p^M` this is a
//! purely combinatorial property of the residues of `I` modulo `p^k`, which
//! the [`universality`] module decides exactly. The [`fourier`] module holds
//! the numerical ground truth and interpolation, [`counting`] the exact
//! enumeration, and [`uncertainty`] the support-size consequences.
//!
//! Numerical code is generic over [`Real`] (`f32` or `f64`); the `*64` and
//! `*32` aliases below fix the scalar.

pub mod counting;
pub mod error;
pub mod fourier;
pub mod index;
pub mod linalg;
pub mod scalar;
pub mod uncertainty;
pub mod universality;

pub use counting::{count_by_brute_force, count_universal, entropy_curve, CountResult, EntropyPoint};
pub use error::{Error, Result};
pub use fourier::{
    brute_force_universal, condition_report, dft_submatrix, find_sampling_set, interpolate,
    interpolating_basis, is_invertible, DftSubmatrix, Interpolation, RankReport, Signal,
};
pub use index::{IndexSet, PrimePowerModulus, ResidueHistogram};
pub use linalg::CMatrix;
pub use scalar::Real;
pub use uncertainty::{
    cauchy_davenport_check, random_maximal_experiment, random_signal_uncertainty, sumset,
    verify_uncertainty, RandomExperimentSummary, SupportProfile, UncertaintyReport,
};
pub use universality::{
    decompose, is_universal, maximal_universal, minimal_universal, universal_subset_of_size,
    UniversalDecomposition, UniversalityVerdict,
};

pub type Signal64 = Signal<f64>;
pub type Signal32 = Signal<f32>;
pub type CMatrix64 = CMatrix<f64>;
pub type CMatrix32 = CMatrix<f32>;
pub type DftSubmatrix64 = DftSubmatrix<f64>;
pub type DftSubmatrix32 = DftSubmatrix<f32>;
pub type Interpolation64 = Interpolation<f64>;
pub type SupportProfile64 = SupportProfile<f64>;

#[cfg(doctest)]
#[doc = include_str!("../../../README.md")]
struct ReadmeDoctests;
