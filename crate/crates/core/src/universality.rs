//! Universality criteria and constructions over a prime-power modulus.
//!
//! A set `I` in `[0:p^M-1]` is universal when every `|I| x |I|` DFT submatrix
//! with rows `I` is invertible. Over `N = p^M` this is equivalent to a
//! balance condition on the congruence tree: at every level `k` the residue
//! counts `chi_k(a)` differ by at most one. The same tree drives the greedy
//! peeling algorithm that extracts a largest universal subset as a disjoint
//! union of elementary pieces.

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{invalid, Error, Result};
use crate::index::{
    chi_star, digit_reverse_set, dispersion, residue_histogram, IndexSet, PrimePowerModulus,
    ResidueHistogram,
};

/// A level `k` and residues `a`, `b` with `|chi_k(a) - chi_k(b)| >= 2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub k: u32,
    pub a: usize,
    pub b: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct UniversalityVerdict {
    pub universal: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

impl UniversalityVerdict {
    fn from_histogram(h: &ResidueHistogram) -> Self {
        let witness = h.levels().find_map(|(k, row)| {
            let lo = *row.iter().min()?;
            let hi = *row.iter().max()?;
            if hi - lo <= 1 {
                return None;
            }
            // First a (then b) in ascending order that violates the balance bound.
            let a = row.iter().position(|&c| c >= lo + 2 || c + 2 <= hi)?;
            let b = row.iter().position(|&c| c.abs_diff(row[a]) >= 2)?;
            Some(Witness { k, a, b })
        });
        Self {
            universal: witness.is_none(),
            witness,
        }
    }
}

/// Balance test on residue counts: `max_a chi_k(a) - min_a chi_k(a) <= 1` at
/// every level.
pub fn is_universal(set: &IndexSet, modulus: PrimePowerModulus) -> Result<UniversalityVerdict> {
    let h = residue_histogram(set, modulus)?;
    Ok(UniversalityVerdict::from_histogram(&h))
}

/// Compares the residue-count multiset at every level with that of `[0:d-1]`.
pub fn is_universal_via_chi_star(set: &IndexSet, modulus: PrimePowerModulus) -> Result<bool> {
    let h = residue_histogram(set, modulus)?;
    let star = chi_star(set.len(), modulus)?;
    Ok((0..=modulus.m()).all(|k| h.multiset(k) == star.multiset(k)))
}

/// Digit-reverses the set and checks that it is uniformly dispersed over the
/// blocks `[a p^(M-k) : (a+1) p^(M-k) - 1]`.
pub fn is_universal_via_dispersion(set: &IndexSet, modulus: PrimePowerModulus) -> Result<bool> {
    let reversed = digit_reverse_set(set, modulus)?;
    let phi = dispersion(&reversed, modulus)?;
    let balanced = phi.levels().all(|(_, row)| {
        let lo = row.iter().min().copied().unwrap_or(0);
        let hi = row.iter().max().copied().unwrap_or(0);
        hi - lo <= 1
    });
    Ok(balanced)
}

/// p-adic valuations of `A = prod_{i<j} (m_j - m_i)` and `B = prod_{i<j} (j - i)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SchurValuation {
    pub valuation_numerator: u64,
    pub valuation_denominator: u64,
    /// `mu = A / B` is coprime to `p`; sufficient (not necessary) for universality.
    pub coprime: bool,
}

fn valuation_from_histogram(h: &ResidueHistogram) -> u64 {
    let pairs = |k: u32| -> u64 {
        h.level(k)
            .iter()
            .map(|&c| (c as u64) * (c as u64).saturating_sub(1) / 2)
            .sum()
    };
    let m = h.modulus().m();
    (1..=m)
        .map(|k| {
            let finer = if k < m { pairs(k + 1) } else { 0 };
            u64::from(k) * (pairs(k) - finer)
        })
        .sum()
}

/// Computes the valuations from residue counts without forming `A` or `B`.
pub fn schur_valuation(set: &IndexSet, modulus: PrimePowerModulus) -> Result<SchurValuation> {
    if set.is_empty() {
        return Err(invalid("Schur ratio is undefined for the empty set"));
    }
    let num = valuation_from_histogram(&residue_histogram(set, modulus)?);
    let den = valuation_from_histogram(&chi_star(set.len(), modulus)?);
    Ok(SchurValuation {
        valuation_numerator: num,
        valuation_denominator: den,
        coprime: num == den,
    })
}

/// A `k`-elementary set: exactly one element in each class modulo `p^k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ElementaryPiece {
    pub k: u32,
    pub elements: IndexSet,
}

impl Serialize for ElementaryPiece {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("ElementaryPiece", 2)?;
        st.serialize_field("k", &self.k)?;
        st.serialize_field("indices", self.elements.as_slice())?;
        st.end()
    }
}

/// Ordered elementary pieces `(k_r, I_r)` whose disjoint union is universal.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct UniversalDecomposition {
    pub pieces: Vec<ElementaryPiece>,
}

impl UniversalDecomposition {
    pub fn levels(&self) -> Vec<u32> {
        self.pieces.iter().map(|p| p.k).collect()
    }

    pub fn total_size(&self) -> usize {
        self.pieces.iter().map(|p| p.elements.len()).sum()
    }

    /// Union of all pieces as an index set over `[0:n-1]`.
    pub fn union(&self, n: usize) -> IndexSet {
        let mut all: Vec<usize> = self.pieces.iter().flat_map(|p| p.elements.iter()).collect();
        all.sort_unstable();
        IndexSet::from_sorted_unchecked(n, all)
    }

    /// Checks the structural conditions that certify universality of the union:
    /// nonincreasing levels each repeated at most `p - 1` times, disjoint
    /// `k_r`-elementary pieces, and piece `r` avoiding the classes modulo
    /// `p^(k_j + 1)` hit by every earlier piece `j`.
    pub fn satisfies_invariants(&self, modulus: PrimePowerModulus) -> bool {
        let p = modulus.p();
        let levels = self.levels();
        if levels.windows(2).any(|w| w[0] < w[1]) {
            return false;
        }
        if levels
            .chunk_by(|a, b| a == b)
            .any(|run| run.len() > p - 1)
        {
            return false;
        }
        let mut seen = vec![false; modulus.n()];
        for (r, piece) in self.pieces.iter().enumerate() {
            if piece.elements.n() != modulus.n() || piece.k > modulus.m() {
                return false;
            }
            let q = modulus.pow(piece.k);
            if piece.elements.len() != q {
                return false;
            }
            let mut hit = vec![false; q];
            for i in piece.elements.iter() {
                if std::mem::replace(&mut hit[i % q], true) || seen[i] {
                    return false;
                }
                seen[i] = true;
            }
            for earlier in &self.pieces[..r] {
                if piece
                    .elements
                    .iter()
                    .any(|x| separation_class(earlier, x, modulus))
                {
                    return false;
                }
            }
        }
        true
    }
}

/// Whether `x` lies in `L_j`: congruent modulo `p^(k_j + 1)` to an element of
/// the piece.
fn separation_class(piece: &ElementaryPiece, x: usize, modulus: PrimePowerModulus) -> bool {
    if piece.k >= modulus.m() {
        return piece.elements.contains(x);
    }
    let q = modulus.pow(piece.k + 1);
    piece.elements.iter().any(|e| e % q == x % q)
}

enum LevelRule<'a> {
    /// Largest level with no empty congruence class.
    Greedy,
    /// Levels fixed in advance.
    Prescribed(&'a [u32]),
}

/// Largest `k <= M` such that every class modulo `p^k` meets `working`.
fn deepest_covered_level(working: &[usize], modulus: PrimePowerModulus) -> u32 {
    let mut k = 0;
    while k < modulus.m() {
        let q = modulus.pow(k + 1);
        if working.len() < q {
            break;
        }
        let mut hit = vec![false; q];
        let mut distinct = 0;
        for &i in working {
            if !std::mem::replace(&mut hit[i % q], true) {
                distinct += 1;
            }
        }
        if distinct < q {
            break;
        }
        k += 1;
    }
    k
}

/// The elementary peeling loop: pick one element (the smallest) from each
/// class modulo `p^k`, then discard every remaining element sharing a class
/// modulo `p^(k+1)` with a picked one.
fn peel(
    set: &IndexSet,
    modulus: PrimePowerModulus,
    rule: LevelRule<'_>,
) -> std::result::Result<UniversalDecomposition, u32> {
    let mut working: Vec<usize> = set.as_slice().to_vec();
    let mut pieces = Vec::new();
    let mut step = 0;
    loop {
        let k = match rule {
            LevelRule::Greedy => {
                if working.is_empty() {
                    break;
                }
                deepest_covered_level(&working, modulus)
            }
            LevelRule::Prescribed(levels) => match levels.get(step) {
                Some(&k) => k,
                None => break,
            },
        };
        let q = modulus.pow(k);
        let mut chosen: Vec<Option<usize>> = vec![None; q];
        for &i in &working {
            chosen[i % q].get_or_insert(i);
        }
        let mut picked: Vec<usize> = chosen.into_iter().collect::<Option<Vec<_>>>().ok_or(k)?;
        picked.sort_unstable();

        if k >= modulus.m() {
            working.retain(|i| picked.binary_search(i).is_err());
        } else {
            let q1 = modulus.pow(k + 1);
            let mut blocked = vec![false; q1];
            for &i in &picked {
                blocked[i % q1] = true;
            }
            working.retain(|&i| !blocked[i % q1]);
        }
        pieces.push(ElementaryPiece {
            k,
            elements: IndexSet::from_sorted_unchecked(modulus.n(), picked),
        });
        step += 1;
    }
    Ok(UniversalDecomposition { pieces })
}

/// A largest universal subset together with its elementary decomposition.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MaximalUniversal {
    pub size: usize,
    pub example: IndexSet,
    pub decomposition: UniversalDecomposition,
}

/// Size and one example of a largest universal subset of `set`.
///
/// The size is `sum_r p^(k_r)` over the greedy levels. Within each
/// congruence class the smallest remaining element is chosen, which makes the
/// example deterministic.
pub fn maximal_universal(set: &IndexSet, modulus: PrimePowerModulus) -> Result<MaximalUniversal> {
    modulus.check(set)?;
    let decomposition = peel(set, modulus, LevelRule::Greedy)
        .expect("greedy levels always have every class populated");
    let example = decomposition.union(modulus.n());
    Ok(MaximalUniversal {
        size: example.len(),
        example,
        decomposition,
    })
}

/// Base-`p` digits of `d` expanded with repetitions, largest level first.
pub fn levels_of_size(d: usize, p: usize) -> Vec<u32> {
    let mut levels = Vec::new();
    let mut rest = d;
    let mut k = 0;
    while rest > 0 {
        levels.extend(std::iter::repeat(k).take(rest % p));
        rest /= p;
        k += 1;
    }
    levels.reverse();
    levels
}

/// A universal subset of `set` with exactly `d` elements.
pub fn universal_subset_of_size(
    set: &IndexSet,
    modulus: PrimePowerModulus,
    d: usize,
) -> Result<IndexSet> {
    modulus.check(set)?;
    if d == 0 || d > set.len() {
        return Err(invalid(format!(
            "target size {d} must lie in [1:{}]",
            set.len()
        )));
    }
    let maximal = maximal_universal(set, modulus)?;
    if d > maximal.size {
        return Err(Error::Infeasible {
            requested: d,
            maximal: maximal.size,
        });
    }
    let levels = levels_of_size(d, modulus.p());
    let decomposition =
        peel(set, modulus, LevelRule::Prescribed(&levels)).map_err(|_| Error::Infeasible {
            requested: d,
            maximal: maximal.size,
        })?;
    Ok(decomposition.union(modulus.n()))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MinimalUniversal {
    pub size: usize,
    pub example: IndexSet,
}

/// A smallest universal superset: the complement of a largest universal
/// subset of the complement.
pub fn minimal_universal(set: &IndexSet, modulus: PrimePowerModulus) -> Result<MinimalUniversal> {
    modulus.check(set)?;
    let inner = maximal_universal(&set.complement(), modulus)?;
    let example = inner.example.complement();
    Ok(MinimalUniversal {
        size: example.len(),
        example,
    })
}

/// Splits a universal set into elementary pieces; fails with the balance
/// witness when the set is not universal.
pub fn decompose(set: &IndexSet, modulus: PrimePowerModulus) -> Result<UniversalDecomposition> {
    let verdict = is_universal(set, modulus)?;
    if !verdict.universal {
        return Err(Error::NotUniversal(verdict));
    }
    let maximal = maximal_universal(set, modulus)?;
    debug_assert_eq!(&maximal.example, set);
    Ok(maximal.decomposition)
}

/// Bounds on the largest universal subset read off the residue counts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct MaximalSizeBounds {
    /// Deepest level with no empty class.
    pub full_level: u32,
    /// `p^full_level`.
    pub lower: usize,
    /// Smaller of `p^(full_level + 1) - 1` and the number of occupied classes
    /// at the first level that has an empty class.
    pub upper: usize,
}

pub fn maximal_size_bounds(set: &IndexSet, modulus: PrimePowerModulus) -> Result<MaximalSizeBounds> {
    let h = residue_histogram(set, modulus)?;
    if set.is_empty() {
        return Ok(MaximalSizeBounds {
            full_level: 0,
            lower: 0,
            upper: 0,
        });
    }
    let full_level = deepest_covered_level(set.as_slice(), modulus);
    let lower = modulus.pow(full_level);
    let upper = if full_level == modulus.m() {
        modulus.n()
    } else {
        let occupied = h.level(full_level + 1).iter().filter(|&&c| c > 0).count();
        occupied.min(modulus.pow(full_level + 1) - 1)
    };
    Ok(MaximalSizeBounds {
        full_level,
        lower,
        upper,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_integer::Integer;
    use num_traits::{One, Zero};

    fn md(p: usize, m: u32) -> PrimePowerModulus {
        PrimePowerModulus::new(p, m).unwrap()
    }

    fn set(n: usize, e: &[usize]) -> IndexSet {
        IndexSet::new(n, e.to_vec()).unwrap()
    }

    /// Valuation of an explicit product, by repeated division.
    fn brute_valuation(values: &[i64], p: i64) -> u64 {
        let mut prod = BigInt::one();
        for i in 0..values.len() {
            for j in i + 1..values.len() {
                prod *= values[j] - values[i];
            }
        }
        let p = BigInt::from(p);
        let mut v = 0;
        loop {
            let (q, r) = prod.div_rem(&p);
            if !r.is_zero() {
                return v;
            }
            prod = q;
            v += 1;
        }
    }

    #[test]
    fn verdict_examples() {
        let v = is_universal(&set(8, &[0, 1, 3, 4, 6]), md(2, 3)).unwrap();
        assert!(v.universal && v.witness.is_none());

        let v = is_universal(&set(8, &[0, 1, 4, 5]), md(2, 3)).unwrap();
        assert!(!v.universal);
        assert_eq!(v.witness, Some(Witness { k: 2, a: 0, b: 2 }));

        for d in 0..=27 {
            assert!(is_universal(&IndexSet::range(27, 0, d), md(3, 3)).unwrap().universal);
        }
    }

    #[test]
    fn verdict_json() {
        let v = is_universal(&set(8, &[0, 1, 4, 5]), md(2, 3)).unwrap();
        assert_eq!(
            serde_json::to_string(&v).unwrap(),
            r#"{"universal":false,"witness":{"k":2,"a":0,"b":2}}"#
        );
        let v = is_universal(&set(8, &[0, 1]), md(2, 3)).unwrap();
        assert_eq!(serde_json::to_string(&v).unwrap(), r#"{"universal":true}"#);
    }

    #[test]
    fn chi_star_criterion_examples() {
        assert!(is_universal_via_chi_star(&set(8, &[0, 1, 3, 4, 6]), md(2, 3)).unwrap());
        assert!(is_universal_via_chi_star(&IndexSet::empty(8), md(2, 3)).unwrap());
        assert!(!is_universal_via_chi_star(&set(9, &[0, 1, 2, 3, 6]), md(3, 2)).unwrap());
    }

    #[test]
    fn dispersion_criterion_examples() {
        assert!(is_universal_via_dispersion(&set(8, &[0, 1, 3, 4, 6]), md(2, 3)).unwrap());
        assert!(is_universal_via_dispersion(&IndexSet::full(16), md(2, 4)).unwrap());
        assert!(!is_universal_via_dispersion(&set(8, &[0, 1, 4, 5]), md(2, 3)).unwrap());
    }

    #[test]
    fn criteria_agree_on_all_small_sets() {
        for &(p, m) in &[(2, 3), (3, 2), (2, 4), (5, 1), (7, 1)] {
            let modulus = md(p, m);
            for mask in 0..1u64 << modulus.n() {
                let s = IndexSet::from_mask(modulus.n(), mask);
                let ii = is_universal(&s, modulus).unwrap().universal;
                assert_eq!(ii, is_universal_via_chi_star(&s, modulus).unwrap(), "{s}");
                assert_eq!(ii, is_universal_via_dispersion(&s, modulus).unwrap(), "{s}");
            }
        }
    }

    #[test]
    fn witness_recomputes() {
        let modulus = md(2, 4);
        for mask in 0..1u64 << 16 {
            let s = IndexSet::from_mask(16, mask);
            let v = is_universal(&s, modulus).unwrap();
            if let Some(w) = v.witness {
                let h = residue_histogram(&s, modulus).unwrap();
                assert!(h.count(w.k, w.a).abs_diff(h.count(w.k, w.b)) >= 2);
            }
        }
    }

    #[test]
    fn schur_valuation_examples() {
        let v = schur_valuation(&set(8, &[0, 1, 3, 4, 6]), md(2, 3)).unwrap();
        assert_eq!(v.valuation_numerator, brute_valuation(&[0, 1, 3, 4, 6], 2));
        assert_eq!(v.valuation_denominator, brute_valuation(&[0, 1, 2, 3, 4], 2));
        assert!(v.coprime);

        let prime = md(7, 1);
        for mask in 1..1u64 << 7 {
            assert!(schur_valuation(&IndexSet::from_mask(7, mask), prime).unwrap().coprime);
        }
        for d in 1..=16 {
            assert!(schur_valuation(&IndexSet::range(16, 0, d), md(2, 4)).unwrap().coprime);
        }
        assert!(schur_valuation(&IndexSet::empty(8), md(2, 3)).is_err());
    }

    #[test]
    fn schur_valuation_matches_exact_products() {
        for &(p, m) in &[(2u32, 4u32), (3, 2)] {
            let modulus = md(p as usize, m);
            for mask in 1..1u64 << modulus.n() {
                let s = IndexSet::from_mask(modulus.n(), mask);
                if s.len() > 9 {
                    continue;
                }
                let elems: Vec<i64> = s.iter().map(|e| e as i64).collect();
                let v = schur_valuation(&s, modulus).unwrap();
                assert_eq!(v.valuation_numerator, brute_valuation(&elems, p as i64));
                assert!(v.valuation_numerator >= v.valuation_denominator);
                if v.coprime {
                    assert!(is_universal(&s, modulus).unwrap().universal);
                }
            }
        }
    }

    #[test]
    fn maximal_worked_example() {
        let i = set(32, &[0, 1, 2, 3, 4, 6, 7, 8, 9, 10, 12, 14, 15]);
        let r = maximal_universal(&i, md(2, 5)).unwrap();
        assert_eq!(r.size, 7);
        assert_eq!(r.example.as_slice(), &[0, 1, 2, 3, 4, 6, 7]);
        assert_eq!(r.decomposition.levels(), vec![2, 1, 0]);
        assert_eq!(r.decomposition.pieces[1].elements.as_slice(), &[4, 7]);
    }

    #[test]
    fn maximal_base_three_example() {
        let r = maximal_universal(&set(9, &[0, 1, 2, 3, 6]), md(3, 2)).unwrap();
        assert_eq!(r.size, 4);
        assert!(r.example == set(9, &[0, 1, 2, 3]) || r.example == set(9, &[0, 1, 2, 6]));
    }

    #[test]
    fn maximal_of_universal_and_empty() {
        let u = set(8, &[0, 1, 3, 4, 6]);
        let r = maximal_universal(&u, md(2, 3)).unwrap();
        assert_eq!(r.example, u);
        let e = maximal_universal(&IndexSet::empty(8), md(2, 3)).unwrap();
        assert_eq!(e.size, 0);
        assert!(e.example.is_empty());
    }

    #[test]
    fn prescribed_size_examples() {
        let modulus = md(3, 2);
        let full = IndexSet::full(9);
        let j = universal_subset_of_size(&full, modulus, 7).unwrap();
        assert_eq!(j.len(), 7);
        let dec = decompose(&j, modulus).unwrap();
        assert_eq!(dec.levels(), vec![1, 1, 0]);

        let i = set(32, &[0, 1, 2, 3, 4, 6, 7, 8, 9, 10, 12, 14, 15]);
        let j = universal_subset_of_size(&i, md(2, 5), 5).unwrap();
        assert_eq!(j.len(), 5);
        assert!(j.is_subset_of(&i));
        assert!(is_universal(&j, md(2, 5)).unwrap().universal);
        assert_eq!(
            universal_subset_of_size(&i, md(2, 5), 7).unwrap(),
            maximal_universal(&i, md(2, 5)).unwrap().example
        );
        assert!(matches!(
            universal_subset_of_size(&i, md(2, 5), 8),
            Err(Error::Infeasible { requested: 8, maximal: 7 })
        ));
        assert!(universal_subset_of_size(&i, md(2, 5), 0).is_err());
    }

    #[test]
    fn levels_of_size_expansion() {
        assert_eq!(levels_of_size(7, 3), vec![1, 1, 0]);
        assert_eq!(levels_of_size(7, 2), vec![2, 1, 0]);
        assert_eq!(levels_of_size(9, 3), vec![2]);
        assert!(levels_of_size(0, 5).is_empty());
    }

    #[test]
    fn prescribed_sizes_exhaustive() {
        for &(p, m) in &[(2, 3), (3, 2), (2, 4)] {
            let modulus = md(p, m);
            for mask in 1..1u64 << modulus.n() {
                let s = IndexSet::from_mask(modulus.n(), mask);
                let max = maximal_universal(&s, modulus).unwrap().size;
                for d in 1..=max {
                    let j = universal_subset_of_size(&s, modulus, d).unwrap();
                    assert_eq!(j.len(), d);
                    assert!(j.is_subset_of(&s));
                    assert!(is_universal(&j, modulus).unwrap().universal, "{s} d={d}");
                }
            }
        }
    }

    #[test]
    fn minimal_examples() {
        let modulus = md(3, 2);
        let u = set(9, &[0, 1, 2, 3]);
        let r = minimal_universal(&u, modulus).unwrap();
        assert_eq!((r.size, &r.example), (4, &u));

        let i = set(9, &[0, 1, 2, 3, 6]);
        let r = minimal_universal(&i, modulus).unwrap();
        let inner = maximal_universal(&set(9, &[4, 5, 7, 8]), modulus).unwrap();
        assert_eq!(r.size, 9 - inner.size);
        assert!(i.is_subset_of(&r.example));
        assert!(is_universal(&r.example, modulus).unwrap().universal);

        let r = minimal_universal(&IndexSet::full(9), modulus).unwrap();
        assert_eq!(r.size, 9);
    }

    #[test]
    fn decompose_examples() {
        let modulus = md(2, 3);
        let dec = decompose(&set(8, &[0, 1, 3, 4, 6]), modulus).unwrap();
        assert_eq!(dec.levels(), vec![2, 0]);
        assert_eq!(dec.pieces[0].elements.len(), 4);
        assert!(dec.satisfies_invariants(modulus));
        assert_eq!(
            serde_json::to_string(&dec).unwrap(),
            r#"{"pieces":[{"k":2,"indices":[0,1,3,6]},{"k":0,"indices":[4]}]}"#
        );

        let elementary = set(8, &[0, 2, 5, 7]);
        let dec = decompose(&elementary, modulus).unwrap();
        assert_eq!(dec.pieces.len(), 1);
        assert_eq!(dec.pieces[0].elements, elementary);

        match decompose(&set(8, &[0, 1, 4, 5]), modulus) {
            Err(Error::NotUniversal(v)) => assert!(v.witness.is_some()),
            other => panic!("expected failure, got {other:?}"),
        }
    }

    #[test]
    fn decomposition_invariants_exhaustive() {
        for &(p, m) in &[(2, 4), (3, 2)] {
            let modulus = md(p, m);
            for mask in 0..1u64 << modulus.n() {
                let s = IndexSet::from_mask(modulus.n(), mask);
                let r = maximal_universal(&s, modulus).unwrap();
                assert!(r.decomposition.satisfies_invariants(modulus), "{s}");
                assert!(r.example.is_subset_of(&s));
                assert!(is_universal(&r.example, modulus).unwrap().universal);
                if let Ok(dec) = decompose(&s, modulus) {
                    assert_eq!(dec.levels(), levels_of_size(s.len(), p));
                }
            }
        }
    }

    #[test]
    fn non_prime_power_is_refused() {
        assert!(matches!(
            PrimePowerModulus::from_n(12),
            Err(Error::NotPrimePower { .. })
        ));
    }
}
