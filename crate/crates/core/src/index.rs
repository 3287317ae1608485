//! Residue arithmetic on index sets.
//!
//! An [`IndexSet`] is a sorted subset of `[0:N-1]`. Over a prime-power modulus
//! `N = p^M` its congruence tree is summarised by a [`ResidueHistogram`]: for
//! every level `k` in `[0:M]` the number of elements in each residue class
//! modulo `p^k`. This module also provides the dihedral action on `Z_N`,
//! base-`p` digit reversal, and bracelet canonicalisation and counting.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};

/// The ambient size `N = p^M` with `p` prime and `M >= 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct PrimePowerModulus {
    p: usize,
    m: u32,
    n: usize,
}

impl PrimePowerModulus {
    pub fn new(p: usize, m: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(invalid(format!("p = {p} is not prime")));
        }
        if m == 0 {
            return Err(invalid("exponent M must be at least 1"));
        }
        let n = p
            .checked_pow(m)
            .ok_or_else(|| invalid(format!("{p}^{m} overflows")))?;
        Ok(Self { p, m, n })
    }

    /// Factors `n` as `p^M`, failing for composite non-prime-powers.
    pub fn from_n(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::NotPrimePower { n: n as u64 });
        }
        let p = smallest_prime_factor(n);
        let mut rest = n;
        let mut m = 0;
        while rest % p == 0 {
            rest /= p;
            m += 1;
        }
        if rest != 1 {
            return Err(Error::NotPrimePower { n: n as u64 });
        }
        Self::new(p, m)
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `p^k` for `k <= M`.
    pub fn pow(&self, k: u32) -> usize {
        debug_assert!(k <= self.m);
        self.p.pow(k)
    }

    pub(crate) fn check(&self, set: &IndexSet) -> Result<()> {
        if set.n() != self.n {
            return Err(Error::ModulusMismatch {
                set_n: set.n(),
                modulus_n: self.n,
            });
        }
        Ok(())
    }
}

impl fmt::Display for PrimePowerModulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}^{} = {}", self.p, self.m, self.n)
    }
}

pub(crate) fn smallest_prime_factor(n: usize) -> usize {
    if n % 2 == 0 {
        return 2;
    }
    let mut q = 3;
    while q * q <= n {
        if n % q == 0 {
            return q;
        }
        q += 2;
    }
    n
}

pub fn is_prime(n: usize) -> bool {
    n >= 2 && smallest_prime_factor(n) == n
}

/// A sorted set of distinct residues in `[0:N-1]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "IndexSetRepr", into = "IndexSetRepr")]
pub struct IndexSet {
    n: usize,
    elements: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct IndexSetRepr {
    n: usize,
    indices: Vec<usize>,
}

impl TryFrom<IndexSetRepr> for IndexSet {
    type Error = Error;

    fn try_from(r: IndexSetRepr) -> Result<Self> {
        IndexSet::new(r.n, r.indices)
    }
}

impl From<IndexSet> for IndexSetRepr {
    fn from(s: IndexSet) -> Self {
        IndexSetRepr {
            n: s.n,
            indices: s.elements,
        }
    }
}

impl IndexSet {
    /// Builds a set from a strictly increasing list of residues.
    pub fn new(n: usize, elements: Vec<usize>) -> Result<Self> {
        if n == 0 {
            return Err(invalid("ambient size N must be positive"));
        }
        if let Some(&bad) = elements.iter().find(|&&e| e >= n) {
            return Err(invalid(format!("index {bad} is outside [0:{}]", n - 1)));
        }
        if elements.windows(2).any(|w| w[0] >= w[1]) {
            return Err(invalid("indices must be strictly increasing"));
        }
        Ok(Self { n, elements })
    }

    /// Sorts the input; duplicates are rejected.
    pub fn from_unsorted(n: usize, mut elements: Vec<usize>) -> Result<Self> {
        elements.sort_unstable();
        Self::new(n, elements)
    }

    pub fn empty(n: usize) -> Self {
        assert!(n > 0);
        Self {
            n,
            elements: Vec::new(),
        }
    }

    pub fn full(n: usize) -> Self {
        Self::range(n, 0, n)
    }

    /// The block `[start : end-1]`.
    pub fn range(n: usize, start: usize, end: usize) -> Self {
        assert!(n > 0 && start <= end && end <= n);
        Self {
            n,
            elements: (start..end).collect(),
        }
    }

    /// Bit `i` of `mask` selects residue `i`; requires `n <= 64`.
    pub fn from_mask(n: usize, mask: u64) -> Self {
        assert!(n > 0 && n <= 64);
        debug_assert!(n == 64 || mask >> n == 0);
        let elements = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
        Self { n, elements }
    }

    pub fn to_mask(&self) -> u64 {
        assert!(self.n <= 64);
        self.elements.iter().fold(0u64, |m, &e| m | 1 << e)
    }

    pub(crate) fn from_sorted_unchecked(n: usize, elements: Vec<usize>) -> Self {
        debug_assert!(elements.windows(2).all(|w| w[0] < w[1]));
        debug_assert!(elements.last().map_or(true, |&e| e < n));
        Self { n, elements }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.elements
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.elements.iter().copied()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.elements.binary_search(&i).is_ok()
    }

    pub fn complement(&self) -> Self {
        let mut out = Vec::with_capacity(self.n - self.len());
        let mut it = self.elements.iter().peekable();
        for i in 0..self.n {
            if it.peek() == Some(&&i) {
                it.next();
            } else {
                out.push(i);
            }
        }
        Self {
            n: self.n,
            elements: out,
        }
    }

    pub fn is_subset_of(&self, other: &IndexSet) -> bool {
        self.n == other.n && self.iter().all(|i| other.contains(i))
    }

    pub fn union(&self, other: &IndexSet) -> Result<Self> {
        if self.n != other.n {
            return Err(invalid("union of sets with different N"));
        }
        let merged: BTreeSet<usize> = self.iter().chain(other.iter()).collect();
        Ok(Self::from_sorted_unchecked(self.n, merged.into_iter().collect()))
    }

    /// True when the set is `[0 : d-1]`.
    pub fn is_initial_block(&self) -> bool {
        self.elements.iter().enumerate().all(|(i, &e)| i == e)
    }
}

impl fmt::Display for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, e) in self.elements.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "}} mod {}", self.n)
    }
}

/// Per-level residue counts `chi_k(a)` for `k` in `[0:M]`, `a` in `[0:p^k-1]`.
///
/// Level `k` holds `p^k` entries; a parent count equals the sum of its `p`
/// children `a + j p^(k-1)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ResidueHistogram {
    modulus: PrimePowerModulus,
    counts: Vec<Vec<usize>>,
}

/// Block counts `phi_k(a)`: elements in `[a p^(M-k) : (a+1) p^(M-k) - 1]`.
/// Same shape as a [`ResidueHistogram`].
pub type DispersionTable = ResidueHistogram;

impl ResidueHistogram {
    pub fn modulus(&self) -> PrimePowerModulus {
        self.modulus
    }

    /// Counts at level `k`, indexed by residue.
    pub fn level(&self, k: u32) -> &[usize] {
        &self.counts[k as usize]
    }

    pub fn count(&self, k: u32, a: usize) -> usize {
        self.counts[k as usize][a]
    }

    pub fn levels(&self) -> impl Iterator<Item = (u32, &[usize])> {
        self.counts
            .iter()
            .enumerate()
            .map(|(k, v)| (k as u32, v.as_slice()))
    }

    pub fn cardinality(&self) -> usize {
        self.counts[0][0]
    }

    /// Sorted (descending) multiset of counts at level `k`.
    pub fn multiset(&self, k: u32) -> Vec<usize> {
        let mut v = self.level(k).to_vec();
        v.sort_unstable_by(|a, b| b.cmp(a));
        v
    }

    /// Builds all levels from the finest one using the parent/child recurrence.
    fn from_finest(modulus: PrimePowerModulus, finest: Vec<usize>) -> Self {
        let m = modulus.m() as usize;
        let p = modulus.p();
        let mut counts = vec![Vec::new(); m + 1];
        counts[m] = finest;
        for k in (1..=m).rev() {
            let width = counts[k].len() / p;
            let parent: Vec<usize> = (0..width)
                .map(|a| (0..p).map(|j| counts[k][a + j * width]).sum())
                .collect();
            counts[k - 1] = parent;
        }
        Self { modulus, counts }
    }
}

/// `chi_k(a; set)` for every level.
pub fn residue_histogram(set: &IndexSet, modulus: PrimePowerModulus) -> Result<ResidueHistogram> {
    modulus.check(set)?;
    let mut finest = vec![0usize; modulus.n()];
    for i in set.iter() {
        finest[i] = 1;
    }
    Ok(ResidueHistogram::from_finest(modulus, finest))
}

/// Histogram of the initial block `[0 : d-1]`, from the closed form
/// `floor((d - 1 - a) / p^k + 1)`.
pub fn chi_star(d: usize, modulus: PrimePowerModulus) -> Result<ResidueHistogram> {
    if d > modulus.n() {
        return Err(invalid(format!(
            "cardinality {d} exceeds N = {}",
            modulus.n()
        )));
    }
    let counts = (0..=modulus.m())
        .map(|k| {
            let q = modulus.pow(k);
            (0..q)
                .map(|a| if a >= d { 0 } else { (d - 1 - a) / q + 1 })
                .collect()
        })
        .collect();
    Ok(ResidueHistogram { modulus, counts })
}

/// Reverses the `m` base-`p` digits of `a`.
pub fn digit_reverse(a: usize, p: usize, m: u32) -> Result<usize> {
    let bound = p
        .checked_pow(m)
        .ok_or_else(|| invalid(format!("{p}^{m} overflows")))?;
    if p < 2 || a >= bound {
        return Err(invalid(format!("{a} is outside [0:{p}^{m}-1]")));
    }
    Ok(reverse_digits(a, p, m))
}

pub(crate) fn reverse_digits(mut a: usize, p: usize, m: u32) -> usize {
    let mut r = 0;
    for _ in 0..m {
        r = r * p + a % p;
        a /= p;
    }
    r
}

/// Applies the digit-reversal permutation `pi_M` elementwise.
pub fn digit_reverse_set(set: &IndexSet, modulus: PrimePowerModulus) -> Result<IndexSet> {
    modulus.check(set)?;
    let mut out: Vec<usize> = set
        .iter()
        .map(|i| reverse_digits(i, modulus.p(), modulus.m()))
        .collect();
    out.sort_unstable();
    Ok(IndexSet::from_sorted_unchecked(set.n(), out))
}

/// Block-occupancy table `phi_k(a; set)`.
pub fn dispersion(set: &IndexSet, modulus: PrimePowerModulus) -> Result<DispersionTable> {
    modulus.check(set)?;
    let counts = (0..=modulus.m())
        .map(|k| {
            let block = modulus.pow(modulus.m() - k);
            let mut row = vec![0usize; modulus.pow(k)];
            for i in set.iter() {
                row[i / block] += 1;
            }
            row
        })
        .collect();
    Ok(ResidueHistogram { modulus, counts })
}

/// Applies the reflection `n -> -n` (if requested) and then `t` steps of the
/// shift `n -> n - 1`, all modulo `N`.
pub fn act(set: &IndexSet, t: i64, reflect: bool) -> IndexSet {
    let n = set.n() as i64;
    let shift = t.rem_euclid(n);
    let mut out: Vec<usize> = set
        .iter()
        .map(|i| {
            let i = i as i64;
            let r = if reflect { -i } else { i };
            (r - shift).rem_euclid(n) as usize
        })
        .collect();
    out.sort_unstable();
    IndexSet::from_sorted_unchecked(set.n(), out)
}

/// Dihedral orbit summary of an index set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct BraceletClass {
    /// Lexicographically least image over all `2N` group elements.
    pub canonical: IndexSet,
    pub orbit_size: usize,
}

pub fn bracelet_canonical(set: &IndexSet) -> BraceletClass {
    let n = set.n() as i64;
    let images: BTreeSet<IndexSet> = [false, true]
        .into_iter()
        .flat_map(|reflect| (0..n).map(move |t| act(set, t, reflect)))
        .collect();
    BraceletClass {
        canonical: images.first().cloned().expect("orbit is never empty"),
        orbit_size: images.len(),
    }
}

/// Number of black/white bracelets of length `n` with exactly `d` black beads,
/// by Burnside's lemma over the dihedral group of order `2n`.
pub fn bracelet_count(n: usize, d: usize) -> Result<BigUint> {
    if n == 0 || d > n {
        return Err(invalid(format!("need 0 <= d <= n and n >= 1, got n={n} d={d}")));
    }
    // Rotations: sum over k | gcd(n, d) of phi(k) C(n/k, d/k).
    let g = n.gcd(&d);
    let rotations: BigUint = (1..=g)
        .filter(|k| g % k == 0)
        .map(|k| BigUint::from(euler_phi(k)) * binomial(n / k, d / k))
        .sum();
    // Average number of colourings fixed by a reflection.
    let reflections = if n % 2 == 1 {
        binomial((n - 1) / 2, d / 2)
    } else if d % 2 == 0 {
        binomial(n / 2, d / 2)
    } else {
        binomial(n / 2 - 1, (d - 1) / 2)
    };
    let total = rotations + BigUint::from(n) * reflections;
    let (q, r) = total.div_rem(&BigUint::from(2 * n));
    debug_assert!(r.is_zero(), "Burnside average must be integral");
    Ok(q)
}

pub fn euler_phi(mut n: usize) -> usize {
    let mut result = n;
    let mut q = 2;
    while q * q <= n {
        if n % q == 0 {
            while n % q == 0 {
                n /= q;
            }
            result -= result / q;
        }
        q += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

/// Exact binomial coefficient; zero when `k > n`.
pub fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// Calls `f` with every `d`-subset of `[0:n-1]` in lexicographic order.
pub fn for_each_combination(n: usize, d: usize, mut f: impl FnMut(&[usize])) {
    if d > n {
        return;
    }
    let mut idx: Vec<usize> = (0..d).collect();
    loop {
        f(&idx);
        let mut i = d;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if idx[i] != i + n - d {
                break;
            }
            if i == 0 {
                return;
            }
        }
        idx[i] += 1;
        for j in i + 1..d {
            idx[j] = idx[j - 1] + 1;
        }
    }
}
