//! Test-side oracles written independently of the library's algorithms:
//! bitmask residue scans, dihedral orbit scans and signal synthesis.
#![allow(dead_code)]

use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_distr::{Distribution, StandardNormal};
use rand_xoshiro::SplitMix64;
use unisample::fourier::bandlimited_basis;
use unisample::linalg::jacobi_svd;
use unisample::{IndexSet, Signal};

pub fn rng(seed: u64) -> SplitMix64 {
    SplitMix64::seed_from_u64(seed)
}

pub fn set(n: usize, e: &[usize]) -> IndexSet {
    IndexSet::new(n, e.to_vec()).unwrap()
}

/// Universality read straight off the bits: every level `p^k` must have
/// class counts within one of each other.
pub fn universal_by_scan(mask: u64, p: usize, m: u32) -> bool {
    let n = p.pow(m);
    let mut q = 1;
    for _ in 0..m {
        q *= p;
        let mut counts = vec![0u32; q];
        for i in 0..n {
            if mask >> i & 1 == 1 {
                counts[i % q] += 1;
            }
        }
        let lo = counts.iter().min().unwrap();
        let hi = counts.iter().max().unwrap();
        if hi - lo > 1 {
            return false;
        }
    }
    true
}

fn rotate(mask: u64, n: usize, t: usize) -> u64 {
    if t == 0 {
        return mask;
    }
    let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    ((mask << t) | (mask >> (n - t))) & full
}

fn reflect(mask: u64, n: usize) -> u64 {
    (0..n)
        .filter(|&i| mask >> i & 1 == 1)
        .fold(0u64, |acc, i| acc | 1u64 << ((n - i) % n))
}

/// Smallest mask in the dihedral orbit.
pub fn dihedral_key(mask: u64, n: usize) -> u64 {
    let r = reflect(mask, n);
    (0..n)
        .flat_map(|t| [rotate(mask, n, t), rotate(r, n, t)])
        .min()
        .unwrap()
}

/// Number of dihedral orbits of `d`-subsets of `Z_n`, for every `d`.
pub fn bracelet_counts_by_scan(n: usize) -> Vec<u64> {
    let mut seen = std::collections::HashSet::new();
    let mut counts = vec![0u64; n + 1];
    for mask in 0..(1u64 << n) {
        if seen.insert(dihedral_key(mask, n)) {
            counts[mask.count_ones() as usize] += 1;
        }
    }
    counts
}

/// Smallest mask among all images `x -> u x + t` with `u` a unit mod `n`.
/// Universality is invariant under these maps: translation rescales columns
/// and multiplication by a unit permutes the admissible column sets.
pub fn affine_key(mask: u64, n: usize) -> u64 {
    let units: Vec<usize> = (1..n).filter(|&u| gcd(u, n) == 1).collect();
    let mut best = u64::MAX;
    for &u in &units {
        let scaled = (0..n)
            .filter(|&i| mask >> i & 1 == 1)
            .fold(0u64, |acc, i| acc | 1u64 << (u * i % n));
        for t in 0..n {
            best = best.min(rotate(scaled, n, t));
        }
    }
    best.min(mask)
}

pub fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn binomial_u128(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

pub fn random_subset(n: usize, size: usize, rng: &mut impl Rng) -> IndexSet {
    let mut pool: Vec<usize> = (0..n).collect();
    for i in 0..size {
        let j = rng.random_range(i..n);
        pool.swap(i, j);
    }
    IndexSet::from_unsorted(n, pool[..size].to_vec()).unwrap()
}

pub fn gaussian(rng: &mut impl Rng) -> Complex<f64> {
    Complex::new(StandardNormal.sample(rng), StandardNormal.sample(rng))
}

/// A signal with spectrum on `support` that vanishes on `zeros`
/// (`|zeros| = |support| − 1`), from the null vector of the sampled basis.
pub fn tight_signal(support: &IndexSet, zeros: &IndexSet) -> Signal<f64> {
    assert_eq!(zeros.len() + 1, support.len());
    let basis = bandlimited_basis::<f64>(support);
    let sampled = basis.select_rows(zeros.as_slice());
    let svd = jacobi_svd(&sampled, true);
    let v = svd.v.unwrap();
    let c = v.column(support.len() - 1);
    Signal::new(basis.matvec(&c)).unwrap()
}

/// Random spectrum on `support`.
pub fn random_bandlimited(support: &IndexSet, rng: &mut impl Rng) -> Signal<f64> {
    let coeffs: Vec<Complex<f64>> = (0..support.len()).map(|_| gaussian(rng)).collect();
    Signal::from_spectrum(support.n(), support, &coeffs).unwrap()
}
