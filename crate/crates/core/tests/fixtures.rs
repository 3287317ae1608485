//! Frozen values. Each table was produced by an oracle that shares no code
//! with the library (bit scans, orbit scans, direct formulas), and the
//! oracle is re-run here where it is cheap.

mod common;

use common::{bracelet_counts_by_scan, gaussian, rng, set, universal_by_scan};
use num_complex::Complex;
use unisample::fourier::{bandlimited_basis, find_sampling_set, interpolating_basis};
use unisample::index::bracelet_count;
use unisample::uncertainty::{
    a_n_delta, kneser_fixtures, largest_admissible_d, support_profile, zero_set_target,
};
use unisample::*;

fn modulus(p: usize, m: u32) -> PrimePowerModulus {
    PrimePowerModulus::new(p, m).unwrap()
}

fn counts(p: usize, m: u32) -> Vec<u64> {
    let md = modulus(p, m);
    (0..=md.n())
        .map(|d| count_universal(d, md).unwrap().value.try_into().unwrap())
        .collect()
}

fn scan_counts(p: usize, m: u32) -> Vec<u64> {
    let n = p.pow(m);
    let mut out = vec![0u64; n + 1];
    for mask in 0..(1u64 << n) {
        if universal_by_scan(mask, p, m) {
            out[mask.count_ones() as usize] += 1;
        }
    }
    out
}

#[test]
fn universal_counts_for_small_moduli() {
    let n8 = [1, 8, 16, 32, 16, 32, 16, 8, 1];
    let n9 = [1, 9, 27, 27, 81, 81, 27, 27, 9, 1];
    let n16 = [
        1, 16, 64, 256, 256, 1024, 1024, 1024, 256, 1024, 1024, 1024, 256, 256, 64, 16, 1,
    ];
    assert_eq!(counts(2, 3), n8);
    assert_eq!(counts(3, 2), n9);
    assert_eq!(counts(2, 4), n16);
    assert_eq!(scan_counts(2, 3), n8);
    assert_eq!(scan_counts(3, 2), n9);
    assert_eq!(scan_counts(2, 4), n16);
}

#[test]
fn universal_counts_for_twenty_five() {
    let n25: [u64; 26] = [
        1, 25, 250, 1250, 3125, 3125, 31250, 125000, 250000, 250000, 100000, 500000, 1000000,
        1000000, 500000, 100000, 250000, 250000, 125000, 31250, 3125, 3125, 1250, 250, 25, 1,
    ];
    assert_eq!(counts(5, 2), n25);
    let md = modulus(5, 2);
    for d in [0, 1, 2, 3, 4, 5, 6, 19, 20, 21, 22, 23, 24, 25] {
        let brute = count_by_brute_force(d, md, 1 << 24).unwrap();
        assert_eq!(brute.value, n25[d].into(), "d={d}");
    }
}

#[test]
fn universal_counts_for_twenty_seven_within_budget() {
    let md = modulus(3, 3);
    for d in (0..=6).chain(21..=27) {
        let brute = count_by_brute_force(d, md, 1 << 20).unwrap();
        assert_eq!(brute, count_universal(d, md).unwrap(), "d={d}");
    }
    assert!(matches!(
        count_by_brute_force(13, md, 1 << 20),
        Err(Error::BudgetExceeded { .. })
    ));
}

#[test]
fn nine_choose_seven() {
    let md = modulus(3, 2);
    assert_eq!(count_universal(7, md).unwrap().value, 27u32.into());
    let by_hand = (0u64..1 << 9)
        .filter(|m| m.count_ones() == 7 && universal_by_scan(*m, 3, 2))
        .count();
    assert_eq!(by_hand, 27);
}

#[test]
fn bracelets_of_length_twelve() {
    let frozen = [1u64, 1, 6, 12, 29, 38, 50, 38, 29, 12, 6, 1, 1];
    assert_eq!(bracelet_counts_by_scan(12), frozen);
    for (d, &want) in frozen.iter().enumerate() {
        assert_eq!(bracelet_count(12, d).unwrap(), want.into());
    }
}

#[test]
fn bracelet_formula_matches_orbit_scan() {
    for n in 1..=14 {
        let scan = bracelet_counts_by_scan(n);
        for (d, &want) in scan.iter().enumerate() {
            assert_eq!(bracelet_count(n, d).unwrap(), want.into(), "n={n} d={d}");
        }
    }
}

#[test]
fn interpolating_basis_depends_only_on_the_space() {
    let mut g = rng(11);
    let support = set(16, &[1, 4, 5, 9, 14]);
    let samples = set(16, &[0, 2, 3, 7, 12]);
    let basis = bandlimited_basis::<f64>(&support);
    let mix = CMatrix::from_fn(5, 5, |_, _| gaussian(&mut g));
    let other = basis.matmul(&mix);
    let u = interpolating_basis(&basis, &samples).unwrap();
    let v = interpolating_basis(&other, &samples).unwrap();
    assert!(u.max_abs_diff(&v) < 1e-10);
    // Reconstruction is the combination of columns weighted by the samples.
    let coeffs: Vec<Complex<f64>> = (0..5).map(|_| gaussian(&mut g)).collect();
    let f = Signal::from_spectrum(16, &support, &coeffs).unwrap();
    let rebuilt = u.matvec(&f.sample(&samples).unwrap());
    assert!(Signal::new(rebuilt).unwrap().relative_error(&f) < 1e-10);
}

#[test]
fn sampling_sets_from_bases() {
    let identity = CMatrix::<f64>::from_fn(10, 4, |r, c| {
        Complex::new(if r == c { 1.0 } else { 0.0 }, 0.0)
    });
    assert_eq!(find_sampling_set(&identity).unwrap(), IndexSet::range(10, 0, 4));

    let mut g = rng(5);
    for d in 1..=16 {
        let support = common::random_subset(16, d, &mut g);
        let rows = find_sampling_set(&bandlimited_basis::<f64>(&support)).unwrap();
        assert_eq!(rows.len(), d);
        assert!(is_invertible(&rows, &support, 1e-10).unwrap().is_full_rank());
    }
    let full = IndexSet::full(16);
    assert_eq!(find_sampling_set(&bandlimited_basis::<f64>(&full)).unwrap(), full);
}

#[test]
fn duality_on_nine() {
    let md = modulus(3, 2);
    let s = set(9, &[0, 1, 2, 3, 6]);
    let inner = maximal_universal(&s.complement(), md).unwrap();
    assert_eq!(inner.size, 2);
    let outer = minimal_universal(&s, md).unwrap();
    assert_eq!(outer.size, 7);
    assert!(s.is_subset_of(&outer.example));
    // Smallest universal superset by scanning all supersets.
    let base = s.to_mask();
    let smallest = (0u64..1 << 9)
        .filter(|m| m & base == base && universal_by_scan(*m, 3, 2))
        .map(|m| m.count_ones())
        .min()
        .unwrap();
    assert_eq!(smallest, 7);
}

#[test]
fn worked_example_construction_of_size_five() {
    let md = modulus(2, 5);
    let s = set(32, &[0, 1, 2, 3, 4, 6, 7, 8, 9, 10, 12, 14, 15]);
    let sub = universal_subset_of_size(&s, md, 5).unwrap();
    assert_eq!(sub, set(32, &[0, 1, 2, 3, 4]));
    assert!(universal_by_scan(sub.to_mask(), 2, 5));
}

#[test]
fn zero_set_target_dominates_shifted_threshold() {
    for n in [64usize, 243, 1024, 3125, 1 << 16] {
        for delta in [0.25, 0.5, 1.0, 2.0] {
            let a = a_n_delta(n, delta);
            for r in 1..=n / 2 {
                let lhs = a - r as f64;
                assert!(lhs <= zero_set_target(n, r, delta) + 1e-9, "n={n} δ={delta} r={r}");
            }
        }
    }
}

#[test]
fn random_parameter_fixtures() {
    assert!((a_n_delta(1024, 1.0) - 268.0758662569691).abs() < 1e-9);
    // N ln(N/(N−s)) against (1+δ) d ln d, worked directly.
    let lhs = 243.0 * (243.0f64 / 13.0).ln();
    let side = |d: f64| 1.5 * d * d.ln();
    assert!(side(102.0) <= lhs && side(103.0) > lhs);
    assert_eq!(largest_admissible_d(243, 230, 0.5), 102);
}

#[test]
fn random_experiment_runs() {
    let maximal = random_maximal_experiment(modulus(3, 5), 230, 102, 0.5, 200, 7).unwrap();
    assert_eq!(maximal.successes, 199);
    assert!(maximal.consistent);
    assert!((maximal.theoretical_bound - (1.0 - 102f64.powf(-0.5))).abs() < 1e-12);

    let signal = random_signal_uncertainty(modulus(2, 10), 4, 1.0, 100, 7).unwrap();
    assert_eq!(signal.successes, 100);
    assert!(signal.consistent);
    let a = a_n_delta(1024, 1.0);
    assert!((signal.theoretical_bound - (1.0 - 1.0 / (a - 4.0))).abs() < 1e-12);
}

#[test]
fn dc_plus_tone_profile() {
    let support = set(8, &[0, 3]);
    let coeffs = [Complex::new(2.0, 0.0), Complex::new(0.0, -1.5)];
    let f = Signal::from_spectrum(8, &support, &coeffs).unwrap();
    let spectrum = f.dft();
    let prof = support_profile(&spectrum, 1e-9 * spectrum.max_abs());
    assert_eq!(prof.support, support);
    assert_eq!(prof.zero_set.len(), 6);
    // |2 − 1.5i ζ^{-3j}| never vanishes, so the signal has full support.
    assert_eq!(support_profile(&f, 1e-9 * f.max_abs()).support.len(), 8);
}

#[test]
fn kneser_examples_as_recorded() {
    let fx = kneser_fixtures();
    assert_eq!(fx[0].computed_sumset, set(8, &[0, 1, 4, 5]));
    assert!(fx[0].matches_statement);
    assert_eq!(fx[1].computed_sumset, set(16, &[0, 2, 4, 6]));
    assert_eq!(fx[1].stated_sumset, vec![0, 2, 4, 6, 8, 10]);
    assert!(!fx[1].matches_statement);
}
