//! Additive uncertainty principles, randomised experiments around them, and
//! sumset bounds.

use num_complex::Complex;
use rand::seq::SliceRandom;
use rand::{RngCore, SeedableRng};
use rand_distr::{Distribution, StandardNormal};
use rand_xoshiro::SplitMix64;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{invalid, Error, Result};
use crate::fourier::Signal;
use crate::index::{IndexSet, PrimePowerModulus};
use crate::scalar::Real;
use crate::universality::{is_universal, maximal_universal, minimal_universal};

/// Identifier of the generator behind every randomised routine here.
pub const PRNG_ID: &str = "splitmix64";

/// Relative zero threshold: values at most this times `max |value|` count as zero.
pub const DEFAULT_RELATIVE_ZERO_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase", bound = "T: Real + Serialize")]
pub struct SupportProfile<T> {
    pub signal: Signal<T>,
    pub support: IndexSet,
    pub zero_set: IndexSet,
    pub tolerance: T,
}

pub fn default_zero_tolerance<T: Real>(signal: &Signal<T>) -> T {
    T::of(DEFAULT_RELATIVE_ZERO_TOLERANCE) * signal.max_abs()
}

/// Splits `[0:N−1]` into indices with `|f(i)| > tolerance` and the rest.
pub fn support_profile<T: Real>(signal: &Signal<T>, tolerance: T) -> SupportProfile<T> {
    let n = signal.n();
    let (support, zeros): (Vec<usize>, Vec<usize>) = (0..n).partition(|&i| signal.values()[i].norm() > tolerance);
    SupportProfile {
        signal: signal.clone(),
        support: IndexSet::new(n, support).expect("indices are in range and increasing"),
        zero_set: IndexSet::new(n, zeros).expect("indices are in range and increasing"),
        tolerance,
    }
}

/// One side-by-side comparison `lhs ≥ rhs`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Inequality {
    pub lhs: usize,
    pub rhs: usize,
    pub holds: bool,
}

impl Inequality {
    fn at_least(lhs: usize, rhs: usize) -> Self {
        Self {
            lhs,
            rhs,
            holds: lhs >= rhs,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct UncertaintyReport {
    pub n: usize,
    pub support_size: usize,
    pub spectrum_support_size: usize,
    pub zero_set_size: usize,
    pub spectrum_zero_set_size: usize,
    /// `|Ω(Z(f))|`, `|Ω(Z(Ff))|`, `|Φ(supp f)|`, `|Φ(supp Ff)|`.
    pub maximal_in_zero_set: usize,
    pub maximal_in_spectrum_zero_set: usize,
    pub minimal_over_support: usize,
    pub minimal_over_spectrum_support: usize,
    /// `|supp Ff| ≥ 1 + |Ω(Z(f))|`
    pub spectrum_support_bound: Inequality,
    /// `|supp f| ≥ 1 + |Ω(Z(Ff))|`
    pub support_bound: Inequality,
    /// `|Φ(supp f)| ≥ |Z(Ff)| + 1`
    pub minimal_over_support_bound: Inequality,
    /// `|Φ(supp Ff)| ≥ |Z(f)| + 1`
    pub minimal_over_spectrum_support_bound: Inequality,
    /// `|supp f| + |supp Ff| ≥ N + 1`, reported when `N` is prime.
    pub prime_bound: Option<Inequality>,
    /// Whether `|Φ(S)| = N − |Ω(S')|` for both supports, so the minimal-set
    /// bounds coincide with the maximal-set bounds rewritten.
    pub bounds_equivalent: bool,
    pub support_tolerance: f64,
    pub spectrum_tolerance: f64,
}

impl UncertaintyReport {
    pub fn all_hold(&self) -> bool {
        self.spectrum_support_bound.holds
            && self.support_bound.holds
            && self.minimal_over_support_bound.holds
            && self.minimal_over_spectrum_support_bound.holds
            && self.prime_bound.is_none_or(|b| b.holds)
    }
}

/// Evaluates the maximal- and minimal-set uncertainty bounds for `signal`.
///
/// `tolerance` overrides the zero threshold for both `f` and `Ff`; by default
/// each uses [`DEFAULT_RELATIVE_ZERO_TOLERANCE`] times its own peak.
pub fn verify_uncertainty<T: Real>(
    signal: &Signal<T>,
    modulus: PrimePowerModulus,
    tolerance: Option<T>,
) -> Result<UncertaintyReport> {
    if signal.n() != modulus.n() {
        return Err(Error::ModulusMismatch {
            set_n: signal.n(),
            modulus_n: modulus.n(),
        });
    }
    if signal.max_abs() == T::zero() {
        return Err(invalid("the uncertainty bounds need a nonzero signal"));
    }
    let spectrum = signal.dft();
    let f = support_profile(signal, tolerance.unwrap_or_else(|| default_zero_tolerance(signal)));
    let g = support_profile(&spectrum, tolerance.unwrap_or_else(|| default_zero_tolerance(&spectrum)));
    let n = modulus.n();

    let omega_zf = maximal_universal(&f.zero_set, modulus)?.size;
    let omega_zg = maximal_universal(&g.zero_set, modulus)?.size;
    let phi_sf = minimal_universal(&f.support, modulus)?.size;
    let phi_sg = minimal_universal(&g.support, modulus)?.size;

    Ok(UncertaintyReport {
        n,
        support_size: f.support.len(),
        spectrum_support_size: g.support.len(),
        zero_set_size: f.zero_set.len(),
        spectrum_zero_set_size: g.zero_set.len(),
        maximal_in_zero_set: omega_zf,
        maximal_in_spectrum_zero_set: omega_zg,
        minimal_over_support: phi_sf,
        minimal_over_spectrum_support: phi_sg,
        spectrum_support_bound: Inequality::at_least(g.support.len(), 1 + omega_zf),
        support_bound: Inequality::at_least(f.support.len(), 1 + omega_zg),
        minimal_over_support_bound: Inequality::at_least(phi_sf, g.zero_set.len() + 1),
        minimal_over_spectrum_support_bound: Inequality::at_least(phi_sg, f.zero_set.len() + 1),
        prime_bound: (modulus.m() == 1).then(|| Inequality::at_least(f.support.len() + g.support.len(), n + 1)),
        bounds_equivalent: phi_sf + omega_zf == n && phi_sg + omega_zg == n,
        support_tolerance: f.tolerance.to_f64_lossy(),
        spectrum_tolerance: g.tolerance.to_f64_lossy(),
    })
}

/// Independent generator for trial `trial` of a run seeded with `seed`.
pub fn trial_rng(seed: u64, trial: u64) -> SplitMix64 {
    let key = SplitMix64::seed_from_u64(trial).next_u64();
    SplitMix64::seed_from_u64(seed ^ key)
}

/// Uniformly random `size`-subset of `[0:n−1]` by partial Fisher-Yates.
pub fn random_subset(n: usize, size: usize, rng: &mut impl rand::Rng) -> IndexSet {
    let mut pool: Vec<usize> = (0..n).collect();
    let (chosen, _) = pool.partial_shuffle(rng, size);
    IndexSet::from_unsorted(n, chosen.to_vec()).expect("distinct indices in range")
}

/// `a_{N,δ} = N (1 + ln(1+δ) + ln ln N) / ((1+δ) ln N)`.
pub fn a_n_delta(n: usize, delta: f64) -> f64 {
    let ln_n = (n as f64).ln();
    n as f64 / ((1.0 + delta) * ln_n) * (1.0 + (1.0 + delta).ln() + ln_n.ln())
}

/// `N ln(N/r) / ((1+δ) ln N)`, the universal-set size guaranteed for a random
/// zero set of size `N − r`; never below `a_{N,δ} − r`.
pub fn zero_set_target(n: usize, r: usize, delta: f64) -> f64 {
    let nf = n as f64;
    nf * (nf / r as f64).ln() / ((1.0 + delta) * nf.ln())
}

/// Both sides of `N ln(1/λ) ≥ (1+δ) d ln d` with `λ = (N−s)/N`.
pub fn random_set_condition(n: usize, s: usize, d: usize, delta: f64) -> (f64, f64) {
    let lambda = (n - s) as f64 / n as f64;
    let lhs = if lambda == 0.0 { f64::INFINITY } else { n as f64 * (1.0 / lambda).ln() };
    let df = d as f64;
    let rhs = if d <= 1 { 0.0 } else { (1.0 + delta) * df * df.ln() };
    (lhs, rhs)
}

/// Largest `d ≤ s` satisfying the random-set condition.
pub fn largest_admissible_d(n: usize, s: usize, delta: f64) -> usize {
    (1..=s)
        .rev()
        .find(|&d| {
            let (lhs, rhs) = random_set_condition(n, s, d, delta);
            lhs >= rhs
        })
        .unwrap_or(0)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct TrialRecord {
    pub trial_index: u64,
    pub statistic: usize,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ExperimentParameters {
    pub n: usize,
    pub p: usize,
    #[serde(rename = "M")]
    pub m: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub s: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r: Option<usize>,
    pub d: f64,
    pub delta: f64,
    pub lambda: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub a_n_delta: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct RandomExperimentSummary {
    pub experiment: &'static str,
    pub prng: &'static str,
    pub seed: u64,
    pub parameters: ExperimentParameters,
    pub trials: u64,
    pub successes: u64,
    pub empirical_probability: f64,
    pub theoretical_bound: f64,
    /// Three binomial standard deviations at the theoretical bound.
    pub slack: f64,
    /// `empirical_probability ≥ theoretical_bound − slack`.
    pub consistent: bool,
    #[serde(skip)]
    pub records: Vec<TrialRecord>,
}

fn summarise(
    experiment: &'static str,
    seed: u64,
    parameters: ExperimentParameters,
    bound: f64,
    records: Vec<TrialRecord>,
) -> RandomExperimentSummary {
    let trials = records.len() as u64;
    let successes = records.iter().filter(|r| r.pass).count() as u64;
    let empirical = if trials == 0 { 1.0 } else { successes as f64 / trials as f64 };
    let b = bound.clamp(0.0, 1.0);
    let slack = if trials == 0 { 0.0 } else { 3.0 * (b * (1.0 - b) / trials as f64).sqrt() };
    RandomExperimentSummary {
        experiment,
        prng: PRNG_ID,
        seed,
        parameters,
        trials,
        successes,
        empirical_probability: empirical,
        theoretical_bound: bound,
        slack,
        consistent: empirical >= bound - slack,
        records,
    }
}

/// Draws random `s`-subsets and records how often their largest universal
/// subset has at least `d` elements.
pub fn random_maximal_experiment(
    modulus: PrimePowerModulus,
    s: usize,
    d: usize,
    delta: f64,
    trials: u64,
    seed: u64,
) -> Result<RandomExperimentSummary> {
    let n = modulus.n();
    if s > n || d == 0 || delta <= 0.0 {
        return Err(invalid("need 0 ≤ s ≤ N, d ≥ 1 and δ > 0"));
    }
    let (lhs, rhs) = random_set_condition(n, s, d, delta);
    if lhs < rhs {
        return Err(Error::ParameterCondition {
            lhs_name: "N ln(1/lambda)",
            lhs,
            rhs_name: "(1+delta) d ln d",
            rhs,
        });
    }
    let records: Vec<TrialRecord> = (0..trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = trial_rng(seed, t);
            let set = random_subset(n, s, &mut rng);
            let size = maximal_universal(&set, modulus).expect("modulus matches").size;
            TrialRecord {
                trial_index: t,
                statistic: size,
                pass: size >= d,
            }
        })
        .collect();
    let parameters = ExperimentParameters {
        n,
        p: modulus.p(),
        m: modulus.m(),
        s: Some(s),
        r: None,
        d: d as f64,
        delta,
        lambda: (n - s) as f64 / n as f64,
        a_n_delta: None,
    };
    let bound = 1.0 - (d as f64).powf(-delta);
    Ok(summarise("random-maximal", seed, parameters, bound, records))
}

/// Draws signals with random `r`-element support and complex Gaussian values
/// and records how often `|supp g| + |supp Fg| ≥ 1 + a_{N,δ}`.
pub fn random_signal_uncertainty(
    modulus: PrimePowerModulus,
    r: usize,
    delta: f64,
    trials: u64,
    seed: u64,
) -> Result<RandomExperimentSummary> {
    let n = modulus.n();
    if r == 0 || r > n || delta <= 0.0 {
        return Err(invalid("need 1 ≤ r ≤ N and δ > 0"));
    }
    let a = a_n_delta(n, delta);
    if (r as f64) >= a {
        return Err(Error::ParameterCondition {
            lhs_name: "a_{N,delta}",
            lhs: a,
            rhs_name: "r (strictly)",
            rhs: r as f64,
        });
    }
    let records: Vec<TrialRecord> = (0..trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = trial_rng(seed, t);
            let support = random_subset(n, r, &mut rng);
            let mut values = vec![Complex::new(0.0, 0.0); n];
            for i in support.iter() {
                let re: f64 = StandardNormal.sample(&mut rng);
                let im: f64 = StandardNormal.sample(&mut rng);
                values[i] = Complex::new(re, im);
            }
            let g = Signal::new(values).expect("nonempty");
            let spectrum = g.dft();
            let total = support_profile(&g, default_zero_tolerance(&g)).support.len()
                + support_profile(&spectrum, default_zero_tolerance(&spectrum)).support.len();
            TrialRecord {
                trial_index: t,
                statistic: total,
                pass: total as f64 >= 1.0 + a,
            }
        })
        .collect();
    let parameters = ExperimentParameters {
        n,
        p: modulus.p(),
        m: modulus.m(),
        s: None,
        r: Some(r),
        d: zero_set_target(n, r, delta),
        delta,
        lambda: r as f64 / n as f64,
        a_n_delta: Some(a),
    };
    let bound = 1.0 - (a - r as f64).powf(-delta);
    Ok(summarise("random-signal", seed, parameters, bound, records))
}

/// `X + Y` modulo `N`.
pub fn sumset(x: &IndexSet, y: &IndexSet) -> Result<IndexSet> {
    if x.n() != y.n() {
        return Err(invalid(format!("sets live mod {} and mod {}", x.n(), y.n())));
    }
    let n = x.n();
    let mut hit = vec![false; n];
    for a in x.iter() {
        for b in y.iter() {
            hit[(a + b) % n] = true;
        }
    }
    IndexSet::new(n, (0..n).filter(|&i| hit[i]).collect())
}

/// Translations `h` with `h + S = S`; always contains 0.
pub fn periods(set: &IndexSet) -> Vec<usize> {
    let n = set.n();
    (0..n)
        .filter(|&h| set.iter().all(|a| set.contains((a + h) % n)))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SumsetReport {
    pub sumset: IndexSet,
    pub sumset_size: usize,
    pub x_universal: bool,
    pub y_universal: bool,
    /// `|X| + |Y| − 1`; compared against when either set is universal and
    /// the bound does not exceed `N`.
    pub theorem_bound: usize,
    pub theorem_applies: bool,
    pub theorem_holds: Option<bool>,
    /// `max(|Ω(X)| + |Y| − 1, |X| + |Ω(Y)| − 1)`, valid unconditionally once
    /// capped at `N` (any two sets with `|X| + |Y| > N` sum to all of `Z_N`).
    pub corollary_bound: usize,
    pub corollary_holds: bool,
}

pub fn cauchy_davenport_check(x: &IndexSet, y: &IndexSet, modulus: PrimePowerModulus) -> Result<SumsetReport> {
    modulus.check(x)?;
    modulus.check(y)?;
    if x.is_empty() || y.is_empty() {
        return Err(invalid("sumset bounds need nonempty sets"));
    }
    let s = sumset(x, y)?;
    let x_universal = is_universal(x, modulus)?.universal;
    let y_universal = is_universal(y, modulus)?.universal;
    let theorem_bound = x.len() + y.len() - 1;
    let theorem_applies = (x_universal || y_universal) && theorem_bound <= modulus.n();
    let corollary_bound = (maximal_universal(x, modulus)?.size + y.len() - 1)
        .max(x.len() + maximal_universal(y, modulus)?.size - 1);
    Ok(SumsetReport {
        sumset_size: s.len(),
        x_universal,
        y_universal,
        theorem_bound,
        theorem_applies,
        theorem_holds: theorem_applies.then_some(s.len() >= theorem_bound),
        corollary_bound,
        corollary_holds: s.len() >= corollary_bound.min(modulus.n()),
        sumset: s,
    })
}

/// Two comparison examples against Kneser's theorem. `stated_sumset` is the
/// sumset as usually quoted; for the second example it disagrees with the
/// computed one, which is kept alongside.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct KneserFixture {
    pub x: IndexSet,
    pub y: IndexSet,
    pub stated_sumset: Vec<usize>,
    pub computed_sumset: IndexSet,
    pub matches_statement: bool,
    pub periods: Vec<usize>,
    pub report: SumsetReport,
}

pub fn kneser_fixtures() -> Vec<KneserFixture> {
    let cases: [(u32, &[usize], &[usize], &[usize]); 2] = [
        (3, &[0, 1], &[0, 4], &[0, 1, 4, 5]),
        (4, &[0, 2], &[0, 2, 4], &[0, 2, 4, 6, 8, 10]),
    ];
    cases
        .iter()
        .map(|&(m, x, y, stated)| {
            let modulus = PrimePowerModulus::new(2, m).expect("power of two");
            let x = IndexSet::new(modulus.n(), x.to_vec()).expect("fixture");
            let y = IndexSet::new(modulus.n(), y.to_vec()).expect("fixture");
            let report = cauchy_davenport_check(&x, &y, modulus).expect("fixture");
            KneserFixture {
                matches_statement: report.sumset.as_slice() == stated,
                periods: periods(&report.sumset),
                computed_sumset: report.sumset.clone(),
                stated_sumset: stated.to_vec(),
                x,
                y,
                report,
            }
        })
        .collect()
}
