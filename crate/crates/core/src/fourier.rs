//! DFT submatrices, numerical rank, the brute-force universality oracle and
//! bandlimited interpolation.
//!
//! The DFT convention is `(Ff)(k) = Σ_j f(j) ζ^{jk}` with `ζ = exp(−2πi/N)`.
//! A signal is bandlimited to `J` when `Ff` vanishes off `J`; such signals are
//! spanned by the columns of `F*` indexed by `J`.

use num_complex::Complex;
use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::counting::DEFAULT_ENUMERATION_BUDGET;
use crate::error::{invalid, Error, Result};
use crate::index::{binomial, IndexSet};
use crate::linalg::{self, CMatrix};
use crate::scalar::Real;

/// A length-`N` complex signal on `Z_N`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(
    try_from = "SignalRepr<T>",
    into = "SignalRepr<T>",
    bound(serialize = "T: Real + Serialize", deserialize = "T: Real + Deserialize<'de>")
)]
pub struct Signal<T> {
    values: Vec<Complex<T>>,
}

#[derive(Serialize, Deserialize)]
struct SignalRepr<T> {
    n: usize,
    values: Vec<[T; 2]>,
}

impl<T: Real> TryFrom<SignalRepr<T>> for Signal<T> {
    type Error = String;

    fn try_from(r: SignalRepr<T>) -> std::result::Result<Self, String> {
        if r.values.len() != r.n {
            return Err(format!(
                "field `values` has {} entries but `n` is {}",
                r.values.len(),
                r.n
            ));
        }
        if r.n == 0 {
            return Err("field `n` must be positive".into());
        }
        Ok(Self {
            values: r.values.into_iter().map(|[re, im]| Complex::new(re, im)).collect(),
        })
    }
}

impl<T: Real> From<Signal<T>> for SignalRepr<T> {
    fn from(s: Signal<T>) -> Self {
        Self {
            n: s.values.len(),
            values: s.values.into_iter().map(|z| [z.re, z.im]).collect(),
        }
    }
}

impl<T: Real> Signal<T> {
    pub fn new(values: Vec<Complex<T>>) -> Result<Self> {
        if values.is_empty() {
            return Err(invalid("a signal needs at least one sample"));
        }
        Ok(Self { values })
    }

    pub fn zeros(n: usize) -> Self {
        Self {
            values: vec![Complex::zero(); n],
        }
    }

    pub fn delta(n: usize, k: usize) -> Self {
        let mut s = Self::zeros(n);
        s.values[k % n] = Complex::new(T::one(), T::zero());
        s
    }

    pub fn n(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self) -> &[Complex<T>] {
        &self.values
    }

    pub fn into_values(self) -> Vec<Complex<T>> {
        self.values
    }

    /// Values at the indices of `set`, in increasing index order.
    pub fn sample(&self, set: &IndexSet) -> Result<Vec<Complex<T>>> {
        if set.n() != self.n() {
            return Err(Error::ModulusMismatch {
                set_n: set.n(),
                modulus_n: self.n(),
            });
        }
        Ok(set.iter().map(|i| self.values[i]).collect())
    }

    pub fn max_abs(&self) -> T {
        self.values.iter().map(|z| z.norm()).fold(T::zero(), T::max)
    }

    pub fn norm(&self) -> T {
        linalg::norm2(&self.values)
    }

    pub fn dft(&self) -> Self {
        Self {
            values: transform(&self.values, false),
        }
    }

    pub fn idft(&self) -> Self {
        let n = T::from_usize(self.n()).expect("length fits the scalar");
        Self {
            values: transform(&self.values, true).into_iter().map(|z| z / n).collect(),
        }
    }

    /// Synthesises `F^{-1} g` for a spectrum `g` given on `support`.
    pub fn from_spectrum(n: usize, support: &IndexSet, coefficients: &[Complex<T>]) -> Result<Self> {
        if support.n() != n {
            return Err(Error::ModulusMismatch {
                set_n: support.n(),
                modulus_n: n,
            });
        }
        if support.len() != coefficients.len() {
            return Err(invalid("one coefficient per support index is required"));
        }
        let mut spectrum = vec![Complex::zero(); n];
        for (j, &c) in support.iter().zip(coefficients) {
            spectrum[j] = c;
        }
        Ok(Self { values: spectrum }.idft())
    }

    /// Relative L2 distance `‖self − other‖ / ‖other‖`.
    pub fn relative_error(&self, other: &Self) -> T {
        let diff: Vec<Complex<T>> = self.values.iter().zip(&other.values).map(|(a, b)| a - b).collect();
        linalg::norm2(&diff) / other.norm()
    }
}

/// `ζ^r` for `r` in `[0:N−1]`, each from its own exact angle.
pub fn root_table<T: Real>(n: usize) -> Vec<Complex<T>> {
    (0..n)
        .map(|r| {
            let theta = -2.0 * std::f64::consts::PI * r as f64 / n as f64;
            Complex::new(T::of(theta.cos()), T::of(theta.sin()))
        })
        .collect()
}

fn transform<T: Real>(x: &[Complex<T>], inverse: bool) -> Vec<Complex<T>> {
    let n = x.len();
    let roots = root_table::<T>(n);
    (0..n)
        .map(|k| {
            x.iter()
                .enumerate()
                .map(|(j, &v)| {
                    let w = roots[(j * k) % n];
                    v * if inverse { w.conj() } else { w }
                })
                .sum()
        })
        .collect()
}

/// Full `N × N` DFT matrix.
pub fn dft_matrix<T: Real>(n: usize) -> CMatrix<T> {
    let roots = root_table::<T>(n);
    CMatrix::from_fn(n, n, |r, c| roots[(r * c) % n])
}

/// `E_J`-columns of `F*`: a basis of the signals bandlimited to `support`.
pub fn bandlimited_basis<T: Real>(support: &IndexSet) -> CMatrix<T> {
    let n = support.n();
    let roots = root_table::<T>(n);
    let cols = support.as_slice();
    CMatrix::from_fn(n, cols.len(), |r, c| roots[(r * cols[c]) % n].conj())
}

/// `E_I^T F E_J` together with the index sets that produced it.
#[derive(Debug, Clone)]
pub struct DftSubmatrix<T> {
    pub rows: IndexSet,
    pub cols: IndexSet,
    pub entries: CMatrix<T>,
}

impl<T> DftSubmatrix<T> {
    pub fn n(&self) -> usize {
        self.rows.n()
    }
}

pub fn dft_submatrix<T: Real>(rows: &IndexSet, cols: &IndexSet) -> Result<DftSubmatrix<T>> {
    if rows.n() != cols.n() {
        return Err(invalid(format!(
            "row set lives mod {} but column set mod {}",
            rows.n(),
            cols.n()
        )));
    }
    let roots = root_table::<T>(rows.n());
    Ok(DftSubmatrix {
        rows: rows.clone(),
        cols: cols.clone(),
        entries: submatrix_from_table(&roots, rows.as_slice(), cols.as_slice()),
    })
}

fn submatrix_from_table<T: Real>(roots: &[Complex<T>], rows: &[usize], cols: &[usize]) -> CMatrix<T> {
    let n = roots.len();
    CMatrix::from_fn(rows.len(), cols.len(), |r, c| roots[(rows[r] * cols[c]) % n])
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct RankReport {
    pub numerical_rank: usize,
    pub dimension: usize,
    pub smallest_singular_value: f64,
    pub largest_singular_value: f64,
    pub tolerance: f64,
}

impl RankReport {
    pub fn is_full_rank(&self) -> bool {
        self.numerical_rank == self.dimension
    }

    /// `σ_max / σ_min`, infinite when the matrix is numerically singular.
    pub fn condition_number(&self) -> f64 {
        if !self.is_full_rank() || self.smallest_singular_value == 0.0 {
            f64::INFINITY
        } else if self.dimension == 0 {
            1.0
        } else {
            self.largest_singular_value / self.smallest_singular_value
        }
    }

    /// Threshold a singular value must exceed to count towards the rank.
    pub fn threshold(&self) -> f64 {
        self.tolerance * self.dimension.max(1) as f64 * self.largest_singular_value
    }
}

/// Rank of `m`: singular values above `tolerance · max(rows, cols) · σ_max` count.
pub fn rank_report<T: Real>(m: &CMatrix<T>, tolerance: T) -> RankReport {
    let s = linalg::singular_values(m);
    report_from_singular_values(&s, m.rows().max(m.cols()), m.rows().min(m.cols()), tolerance)
}

fn report_from_singular_values<T: Real>(s: &[T], scale: usize, dimension: usize, tolerance: T) -> RankReport {
    let largest = s.first().copied().unwrap_or_else(T::zero);
    let smallest = s.last().copied().unwrap_or_else(T::zero);
    let threshold = tolerance * T::from_usize(scale).expect("dimension fits the scalar") * largest;
    RankReport {
        numerical_rank: s.iter().filter(|&&v| v > threshold).count(),
        dimension,
        smallest_singular_value: smallest.to_f64_lossy(),
        largest_singular_value: largest.to_f64_lossy(),
        tolerance: tolerance.to_f64_lossy(),
    }
}

/// Numerical invertibility of the square submatrix `E_I^T F E_J`.
pub fn is_invertible<T: Real>(rows: &IndexSet, cols: &IndexSet, tolerance: T) -> Result<RankReport> {
    if rows.len() != cols.len() {
        return Err(invalid(format!(
            "submatrix is {}×{}, not square",
            rows.len(),
            cols.len()
        )));
    }
    let sub = dft_submatrix::<T>(rows, cols)?;
    Ok(rank_report(&sub.entries, tolerance))
}

/// Number of column sets the oracle examines for a set of size `d` mod `n`.
pub fn oracle_workload(n: usize, d: usize) -> u128 {
    if d == 0 {
        return 0;
    }
    let c = binomial(n - 1, d - 1);
    u128::try_from(&c).unwrap_or(u128::MAX)
}

/// Decides universality by testing every square submatrix with rows `set`.
///
/// Translating `J` multiplies the submatrix by an invertible diagonal matrix,
/// so only column sets containing 0 are examined: `C(N−1, d−1)` of them.
/// Runs on the current rayon pool; the verdict does not depend on scheduling.
pub fn brute_force_universal<T: Real>(set: &IndexSet, tolerance: T, budget: u128) -> Result<bool> {
    let n = set.n();
    let d = set.len();
    if d == 0 {
        return Ok(true);
    }
    let required = oracle_workload(n, d);
    if required > budget {
        return Err(Error::BudgetExceeded { required, budget });
    }
    let roots = root_table::<T>(n);
    let rows = set.as_slice();
    let full_rank = |cols: &[usize]| {
        let m = submatrix_from_table(&roots, rows, cols);
        let s = linalg::singular_values(&m);
        report_from_singular_values(&s, d, d, tolerance).is_full_rank()
    };
    if d == 1 {
        return Ok(full_rank(&[0]));
    }
    // Split on the second column index; each branch enumerates the rest.
    let verdict = (1..n).into_par_iter().all(|j1| {
        let pool: Vec<usize> = (j1 + 1..n).collect();
        let mut cols = Vec::with_capacity(d);
        cols.extend_from_slice(&[0, j1]);
        all_combinations(&pool, d - 2, &mut cols, &full_rank)
    });
    Ok(verdict)
}

/// `brute_force_universal` with the default tolerance and budget.
pub fn brute_force_universal_default(set: &IndexSet) -> Result<bool> {
    brute_force_universal::<f64>(set, f64::rank_tolerance(), DEFAULT_ENUMERATION_BUDGET)
}

fn all_combinations(
    pool: &[usize],
    k: usize,
    prefix: &mut Vec<usize>,
    test: &(impl Fn(&[usize]) -> bool + Sync),
) -> bool {
    if k == 0 {
        return test(prefix);
    }
    if pool.len() < k {
        return true;
    }
    for i in 0..=pool.len() - k {
        prefix.push(pool[i]);
        let ok = all_combinations(&pool[i + 1..], k - 1, prefix, test);
        prefix.pop();
        if !ok {
            return false;
        }
    }
    true
}

/// Outcome of a bandlimited reconstruction.
#[derive(Debug, Clone)]
pub struct Interpolation<T> {
    pub signal: Signal<T>,
    pub condition_number: f64,
    /// Set when `condition_number` exceeds [`ill_conditioned_threshold`].
    pub ill_conditioned: bool,
}

/// Condition number above which a reconstruction is flagged: `1/√tol`.
pub fn ill_conditioned_threshold<T: Real>() -> f64 {
    1.0 / T::rank_tolerance().to_f64_lossy().sqrt()
}

/// Reconstructs the unique `f` bandlimited to `support` with the given
/// values on `sample_set` (listed in increasing index order).
pub fn interpolate<T: Real>(
    samples: &[Complex<T>],
    sample_set: &IndexSet,
    support: &IndexSet,
    tolerance: T,
) -> Result<Interpolation<T>> {
    if sample_set.n() != support.n() {
        return Err(invalid("sample set and support live in different moduli"));
    }
    if sample_set.len() != support.len() {
        return Err(invalid(format!(
            "{} samples cannot determine a {}-dimensional space",
            sample_set.len(),
            support.len()
        )));
    }
    if samples.len() != sample_set.len() {
        return Err(invalid(format!(
            "got {} sample values for {} sample positions",
            samples.len(),
            sample_set.len()
        )));
    }
    let r = bandlimited_basis::<T>(support);
    let system = r.select_rows(sample_set.as_slice());
    let report = rank_report(&system, tolerance);
    if !report.is_full_rank() {
        return Err(Error::Singular(report));
    }
    let coeffs = linalg::solve_refined(&system, samples).ok_or(Error::Singular(report))?;
    let condition_number = report.condition_number();
    let ill_conditioned = condition_number > ill_conditioned_threshold::<T>();
    if ill_conditioned {
        log::warn!(
            "interpolation system for {} samples is ill-conditioned (condition number {:e})",
            sample_set.len(),
            condition_number
        );
    }
    Ok(Interpolation {
        signal: Signal::new(r.matvec(&coeffs))?,
        condition_number,
        ill_conditioned,
    })
}

/// `R (E_I^T R)^{-1}`: the interpolating basis of `span(R)` indexed by
/// `sample_set`. Column `k` is 1 at the `k`-th sample index and 0 at the others.
pub fn interpolating_basis<T: Real>(basis: &CMatrix<T>, sample_set: &IndexSet) -> Result<CMatrix<T>> {
    if basis.rows() != sample_set.n() {
        return Err(Error::ModulusMismatch {
            set_n: sample_set.n(),
            modulus_n: basis.rows(),
        });
    }
    if basis.cols() != sample_set.len() {
        return Err(invalid(format!(
            "basis has {} columns but the sample set has {} indices",
            basis.cols(),
            sample_set.len()
        )));
    }
    let system = basis.select_rows(sample_set.as_slice());
    let report = rank_report(&system, T::rank_tolerance());
    if !report.is_full_rank() {
        return Err(Error::Singular(report));
    }
    let inverse = linalg::solve_matrix(&system, &CMatrix::identity(basis.cols())).ok_or(Error::Singular(report))?;
    Ok(basis.matmul(&inverse))
}

/// Picks `d` rows of an `N × d` basis whose submatrix is invertible, by
/// greedy volume-maximising pivoting.
pub fn find_sampling_set<T: Real>(basis: &CMatrix<T>) -> Result<IndexSet> {
    if basis.cols() > basis.rows() {
        return Err(invalid("basis has more columns than rows"));
    }
    match linalg::greedy_row_selection(basis, T::rank_tolerance()) {
        Some(rows) => IndexSet::from_unsorted(basis.rows(), rows),
        None => Err(Error::Singular(rank_report(basis, T::rank_tolerance()))),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ConditionReport {
    pub condition_number: f64,
    pub lower_bound: f64,
    pub rank: RankReport,
}

/// Lower bound `√d / (Π_{a<b} |ζ^a − ζ^b|)^{1/d}` over pairs of `support`,
/// valid for the sample set `[0:d−1]`.
pub fn condition_lower_bound(support: &IndexSet) -> f64 {
    let d = support.len();
    if d == 0 {
        return 1.0;
    }
    let n = support.n() as f64;
    let js = support.as_slice();
    let mut log_prod = 0.0;
    for (a, &ja) in js.iter().enumerate() {
        for &jb in &js[a + 1..] {
            let diff = (jb - ja) as f64;
            log_prod += (2.0 * (std::f64::consts::PI * diff / n).sin().abs()).ln();
        }
    }
    ((d as f64).ln() / 2.0 - log_prod / d as f64).exp()
}

/// Condition number of `E_I^T F E_J` for the initial block `I = [0:d−1]`,
/// alongside its product-of-sines lower bound.
pub fn condition_report<T: Real>(sample_set: &IndexSet, support: &IndexSet, tolerance: T) -> Result<ConditionReport> {
    if !sample_set.is_initial_block() {
        return Err(invalid("the condition bound needs the sample set [0:d-1]"));
    }
    let rank = is_invertible::<T>(sample_set, support, tolerance)?;
    Ok(ConditionReport {
        condition_number: rank.condition_number(),
        lower_bound: condition_lower_bound(support),
        rank,
    })
}

/// Necessary condition for `B^J` to admit an orthogonal interpolating basis:
/// `J` is everything, or `2|J| ≤ N`.
pub fn orthogonal_basis_cardinality_ok(support: &IndexSet) -> bool {
    support.len() == support.n() || 2 * support.len() <= support.n()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn set(n: usize, e: &[usize]) -> IndexSet {
        IndexSet::new(n, e.to_vec()).unwrap()
    }

    #[test]
    fn small_submatrices() {
        let m = dft_submatrix::<f64>(&set(4, &[1]), &set(4, &[2])).unwrap();
        assert_abs_diff_eq!(m.entries[(0, 0)].re, -1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(m.entries[(0, 0)].im, 0.0, epsilon = 1e-15);
        let row0 = dft_submatrix::<f64>(&set(9, &[0]), &set(9, &[5])).unwrap();
        assert_eq!(row0.entries[(0, 0)], Complex::new(1.0, 0.0));
        assert!(!is_invertible(&set(4, &[0, 2]), &set(4, &[0, 2]), 1e-10).unwrap().is_full_rank());
        assert!(is_invertible(&set(4, &[1]), &set(4, &[3]), 1e-10).unwrap().is_full_rank());
        assert!(is_invertible(&set(4, &[0, 1]), &set(4, &[0]), 1e-10).is_err());
    }

    #[test]
    fn dft_is_unitary_up_to_scale() {
        for n in [1, 2, 7, 16, 60, 256] {
            let f = dft_matrix::<f64>(n);
            let g = f.conj_transpose().matmul(&f);
            let scaled = CMatrix::from_fn(n, n, |r, c| g[(r, c)] / n as f64);
            assert!(scaled.max_abs_diff(&CMatrix::identity(n)) < 1e-12, "n = {n}");
        }
    }

    #[test]
    fn transform_round_trip() {
        let s = Signal::new((0..12).map(|k| Complex::new(k as f64, (k * k) as f64 * 0.1)).collect()).unwrap();
        assert!(s.dft().idft().relative_error(&s) < 1e-14);
        let ones = Signal::<f64>::delta(8, 0).dft();
        assert!(ones.values().iter().all(|z| (z - Complex::new(1.0, 0.0)).norm() < 1e-15));
    }

    #[test]
    fn oracle_fixtures() {
        assert!(brute_force_universal_default(&set(8, &[0, 1, 3, 4, 6])).unwrap());
        assert!(!brute_force_universal_default(&set(8, &[0, 1, 4, 5])).unwrap());
        assert!(brute_force_universal_default(&set(12, &[0, 3, 5, 10])).unwrap());
        assert!(!brute_force_universal_default(&set(12, &[0, 3, 6, 9])).unwrap());
        assert!(brute_force_universal_default(&IndexSet::empty(5)).unwrap());
        let big = IndexSet::range(64, 0, 32);
        assert!(matches!(
            brute_force_universal::<f64>(&big, 1e-10, 1000),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn signal_json_shape() {
        let s = Signal::new(vec![Complex::new(1.0, 0.0), Complex::new(0.5, -2.0)]).unwrap();
        let json = serde_json::to_string(&s).unwrap();
        assert_eq!(json, r#"{"n":2,"values":[[1.0,0.0],[0.5,-2.0]]}"#);
        let back: Signal<f64> = serde_json::from_str(&json).unwrap();
        assert_eq!(back, s);
        let err = serde_json::from_str::<Signal<f64>>(r#"{"n":3,"values":[[1,0]]}"#).unwrap_err();
        assert!(err.to_string().contains("values"));
    }

    #[test]
    fn dc_interpolation() {
        let out = interpolate(&[Complex::new(2.5, 1.0)], &set(6, &[4]), &set(6, &[0]), 1e-10).unwrap();
        assert!(out.signal.values().iter().all(|z| (z - Complex::new(2.5, 1.0)).norm() < 1e-14));
        assert_abs_diff_eq!(out.condition_number, 1.0, epsilon = 1e-12);
    }

    #[test]
    fn singular_interpolation_reports_rank() {
        let err = interpolate(&[Complex::zero(); 2], &set(4, &[0, 2]), &set(4, &[0, 2]), 1e-10).unwrap_err();
        match err {
            Error::Singular(r) => assert_eq!((r.numerical_rank, r.dimension), (1, 2)),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn condition_bound_edge_cases() {
        let r = condition_report::<f64>(&set(64, &[0]), &set(64, &[17]), 1e-10).unwrap();
        assert_abs_diff_eq!(r.condition_number, 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(r.lower_bound, 1.0, epsilon = 1e-12);
        let spread = set(64, &[0, 8, 16, 24, 32, 40, 48, 56]);
        let r = condition_report::<f64>(&IndexSet::range(64, 0, 8), &spread, 1e-10).unwrap();
        assert_abs_diff_eq!(r.condition_number, 1.0, epsilon = 1e-10);
        assert_abs_diff_eq!(r.lower_bound, 1.0, epsilon = 1e-10);
        assert_abs_diff_eq!(r.rank.largest_singular_value, 8f64.sqrt(), epsilon = 1e-10);
        assert!(condition_report::<f64>(&set(64, &[1, 2]), &set(64, &[0, 1]), 1e-10).is_err());
    }

    #[test]
    fn orthogonal_cardinality() {
        assert!(orthogonal_basis_cardinality_ok(&set(8, &[0, 1, 2, 3])));
        assert!(!orthogonal_basis_cardinality_ok(&set(8, &[0, 1, 2, 3, 4])));
        assert!(orthogonal_basis_cardinality_ok(&IndexSet::full(8)));
    }
}
