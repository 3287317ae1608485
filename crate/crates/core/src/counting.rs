//! Exact counts of universal sets and the normalised log-count curve.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{invalid, Error, Result};
use crate::index::{binomial, for_each_combination, IndexSet, PrimePowerModulus};
use crate::universality::is_universal;

/// Default cap on the number of subsets `count_by_brute_force` will visit.
pub const DEFAULT_ENUMERATION_BUDGET: u128 = 1 << 24;

/// Base-`p` digits of `d` (most significant first) and the suffix values
/// `d_i = sum_{j > i} alpha_j p^(M-j)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BasePExpansion {
    pub d: usize,
    pub digits: Vec<usize>,
    /// `suffixes[i]` is `d_i` for `i` in `[0:M]`; `d_0 = d`, `d_M = 0`.
    pub suffixes: Vec<usize>,
}

impl BasePExpansion {
    /// Requires `d < p^M`; `d = p^M` has no `M`-digit expansion.
    pub fn new(d: usize, modulus: PrimePowerModulus) -> Result<Self> {
        if d >= modulus.n() {
            return Err(invalid(format!(
                "{d} has no {}-digit base-{} expansion",
                modulus.m(),
                modulus.p()
            )));
        }
        let m = modulus.m();
        let digits: Vec<usize> = (1..=m)
            .map(|i| d / modulus.pow(m - i) % modulus.p())
            .collect();
        let suffixes = (0..=m).map(|i| d % modulus.pow(m - i)).collect();
        Ok(Self {
            d,
            digits,
            suffixes,
        })
    }
}

/// Arbitrary-precision count of universal sets.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct CountResult {
    #[serde(serialize_with = "serialize_decimal")]
    pub value: BigUint,
}

fn serialize_decimal<S: serde::Serializer>(v: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_str_radix(10))
}

impl std::fmt::Display for CountResult {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl From<BigUint> for CountResult {
    fn from(value: BigUint) -> Self {
        Self { value }
    }
}

/// Number of universal `d`-subsets of `[0:p^M-1]`:
/// `prod_i C(p, alpha_i + 1)^(d_i) C(p, alpha_i)^(p^(M-i) - d_i)`.
pub fn count_universal(d: usize, modulus: PrimePowerModulus) -> Result<CountResult> {
    if d > modulus.n() {
        return Err(invalid(format!("d = {d} exceeds N = {}", modulus.n())));
    }
    if d == modulus.n() {
        return Ok(BigUint::one().into());
    }
    let exp = BasePExpansion::new(d, modulus)?;
    let p = modulus.p();
    let m = modulus.m();
    let mut value = BigUint::one();
    for i in 1..=m as usize {
        let alpha = exp.digits[i - 1];
        let di = exp.suffixes[i];
        let block = modulus.pow(m - i as u32);
        value *= binomial(p, alpha + 1).pow(di as u32);
        value *= binomial(p, alpha).pow((block - di) as u32);
    }
    Ok(value.into())
}

/// One step of the level recurrence:
/// `C(d, p^M) = C(p, alpha_1 + 1)^(d_1) C(p, alpha_1)^(p^(M-1) - d_1) C(d_1, p^(M-1))`.
/// Returns the leading factor and `d_1`.
pub fn count_recurrence_step(d: usize, modulus: PrimePowerModulus) -> Result<(BigUint, usize)> {
    let exp = BasePExpansion::new(d, modulus)?;
    let p = modulus.p();
    let alpha = exp.digits[0];
    let d1 = exp.suffixes[1];
    let block = modulus.pow(modulus.m() - 1);
    let factor = binomial(p, alpha + 1).pow(d1 as u32) * binomial(p, alpha).pow((block - d1) as u32);
    Ok((factor, d1))
}

/// Counts universal `d`-subsets by testing every subset.
pub fn count_by_brute_force(
    d: usize,
    modulus: PrimePowerModulus,
    budget: u128,
) -> Result<CountResult> {
    let n = modulus.n();
    if d > n {
        return Err(invalid(format!("d = {d} exceeds N = {n}")));
    }
    let required = binomial(n, d).to_u128().unwrap_or(u128::MAX);
    if required > budget {
        return Err(Error::BudgetExceeded { required, budget });
    }
    // Split on the first element so the partial counts can be summed in any order.
    let total: u64 = if d == 0 {
        1
    } else {
        (0..=n - d)
            .into_par_iter()
            .map(|first| {
                let mut count = 0u64;
                let rest = n - first - 1;
                let mut elems = vec![0usize; d];
                elems[0] = first;
                for_each_combination(rest, d - 1, |c| {
                    for (slot, &x) in elems[1..].iter_mut().zip(c) {
                        *slot = first + 1 + x;
                    }
                    let s = IndexSet::from_sorted_unchecked(n, elems.clone());
                    if is_universal(&s, modulus).map(|v| v.universal).unwrap_or(false) {
                        count += 1;
                    }
                });
                count
            })
            .sum()
    };
    Ok(BigUint::from(total).into())
}

/// Natural log of a big integer, accurate to double precision.
pub fn ln_biguint(x: &BigUint) -> f64 {
    assert!(!x.is_zero(), "log of zero");
    let bits = x.bits();
    if bits <= 64 {
        return x.to_u64().expect("fits").to_f64().expect("finite").ln();
    }
    let shift = bits - 64;
    let top = (x >> shift).to_u64().expect("64 bits") as f64;
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EntropyPoint {
    pub alpha: f64,
    pub normalized_log_count: f64,
    #[serde(rename = "M")]
    pub m: u32,
    pub p: usize,
}

/// `log C(floor(alpha p^M), p^M) / p^M` at `resolution` equally spaced
/// `alpha` in `[0, 1]`.
pub fn entropy_curve(p: usize, m: u32, resolution: usize) -> Result<Vec<EntropyPoint>> {
    if resolution < 2 {
        return Err(invalid("resolution must be at least 2"));
    }
    let modulus = PrimePowerModulus::new(p, m)?;
    let n = modulus.n();
    (0..resolution)
        .map(|i| {
            let alpha = i as f64 / (resolution - 1) as f64;
            let d = ((i as u128 * n as u128) / (resolution - 1) as u128) as usize;
            let count = count_universal(d, modulus)?;
            Ok(EntropyPoint {
                alpha,
                normalized_log_count: ln_biguint(&count.value) / n as f64,
                m,
                p,
            })
        })
        .collect()
}
