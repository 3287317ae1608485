//! Small dense complex linear algebra: one-sided Jacobi SVD, completely
//! pivoted LU with a refinement step, and greedy row selection.
//!
//! Dimensions here are at most a few dozen, so everything is a plain
//! row-major `Vec` and nothing is blocked or vectorised.

use std::ops::{Index, IndexMut};

use num_complex::Complex;
use num_traits::{One, Zero};

use crate::scalar::Real;

#[derive(Debug, Clone, PartialEq)]
pub struct CMatrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<Complex<T>>,
}

impl<T: Real> CMatrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Complex::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Complex::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex<T>) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Self { rows, cols, data }
    }

    pub fn from_rows(rows: usize, cols: usize, data: Vec<Complex<T>>) -> Self {
        assert_eq!(data.len(), rows * cols);
        Self { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, r: usize) -> &[Complex<T>] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<Complex<T>> {
        (0..self.rows).map(|r| self[(r, c)]).collect()
    }

    /// Rows selected by `idx`, in that order.
    pub fn select_rows(&self, idx: &[usize]) -> Self {
        let mut data = Vec::with_capacity(idx.len() * self.cols);
        for &r in idx {
            data.extend_from_slice(self.row(r));
        }
        Self {
            rows: idx.len(),
            cols: self.cols,
            data,
        }
    }

    pub fn conj_transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self[(c, r)].conj())
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows);
        let mut out = Self::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(r, k)];
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    out.data[r * other.cols + c] += a * other[(k, c)];
                }
            }
        }
        out
    }

    pub fn matvec(&self, x: &[Complex<T>]) -> Vec<Complex<T>> {
        assert_eq!(self.cols, x.len());
        (0..self.rows)
            .map(|r| self.row(r).iter().zip(x).map(|(&a, &b)| a * b).sum())
            .collect()
    }

    pub fn max_abs_diff(&self, other: &Self) -> T {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(T::zero(), T::max)
    }
}

impl<T> Index<(usize, usize)> for CMatrix<T> {
    type Output = Complex<T>;

    fn index(&self, (r, c): (usize, usize)) -> &Complex<T> {
        &self.data[r * self.cols + c]
    }
}

impl<T> IndexMut<(usize, usize)> for CMatrix<T> {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Complex<T> {
        &mut self.data[r * self.cols + c]
    }
}

pub fn norm2<T: Real>(v: &[Complex<T>]) -> T {
    v.iter().map(|z| z.norm_sqr()).sum::<T>().sqrt()
}

/// Singular values (descending) and, optionally, right singular vectors as
/// the columns of `v` in the same order.
#[derive(Debug, Clone)]
pub struct Svd<T> {
    pub singular_values: Vec<T>,
    pub v: Option<CMatrix<T>>,
}

const MAX_SWEEPS: usize = 80;

/// One-sided (Hestenes) Jacobi: orthogonalises the columns of `a` with
/// complex plane rotations; column norms converge to the singular values.
pub fn jacobi_svd<T: Real>(a: &CMatrix<T>, want_v: bool) -> Svd<T> {
    let m = a.rows;
    let n = a.cols;
    // Column-major working copy for contiguous column access.
    let mut cols: Vec<Vec<Complex<T>>> = (0..n).map(|c| a.column(c)).collect();
    let mut v = want_v.then(|| CMatrix::<T>::identity(n));
    let eps = T::epsilon();

    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for i in 0..n {
            for j in i + 1..n {
                let (alpha, beta, gamma) = {
                    let (ci, cj) = (&cols[i], &cols[j]);
                    let mut alpha = T::zero();
                    let mut beta = T::zero();
                    let mut gamma = Complex::<T>::zero();
                    for k in 0..m {
                        alpha += ci[k].norm_sqr();
                        beta += cj[k].norm_sqr();
                        gamma += ci[k].conj() * cj[k];
                    }
                    (alpha, beta, gamma)
                };
                let g = gamma.norm();
                if g == T::zero() || g <= eps * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                let phase = gamma / g;
                let two = T::one() + T::one();
                let zeta = (beta - alpha) / (two * g);
                let t = zeta.signum() / (zeta.abs() + (T::one() + zeta * zeta).sqrt());
                let c = T::one() / (T::one() + t * t).sqrt();
                let s = c * t;
                // Column j is first multiplied by conj(phase) so that the
                // inner product becomes real, then a real rotation is applied.
                let rotate = |x: &mut Vec<Complex<T>>, y: &mut Vec<Complex<T>>| {
                    for k in 0..x.len() {
                        let xi = x[k];
                        let yj = y[k] * phase.conj();
                        x[k] = xi * c - yj * s;
                        y[k] = xi * s + yj * c;
                    }
                };
                let (lo, hi) = cols.split_at_mut(j);
                rotate(&mut lo[i], &mut hi[0]);
                if let Some(vm) = v.as_mut() {
                    let mut vi = vm.column(i);
                    let mut vj = vm.column(j);
                    rotate(&mut vi, &mut vj);
                    for k in 0..n {
                        vm[(k, i)] = vi[k];
                        vm[(k, j)] = vj[k];
                    }
                }
            }
        }
        if !rotated {
            break;
        }
    }

    let mut order: Vec<(T, usize)> = cols.iter().enumerate().map(|(c, col)| (norm2(col), c)).collect();
    order.sort_by(|a, b| b.0.partial_cmp(&a.0).unwrap_or(std::cmp::Ordering::Equal));
    // A wide matrix has at most `m` nonzero singular values; the trailing
    // columns converge to zero and are kept so `v` stays square.
    let singular_values = order.iter().map(|&(s, _)| s).collect();
    let v = v.map(|vm| CMatrix::from_fn(n, n, |r, c| vm[(r, order[c].1)]));
    Svd { singular_values, v }
}

/// Singular values of `a`, descending, truncated to `min(rows, cols)`.
pub fn singular_values<T: Real>(a: &CMatrix<T>) -> Vec<T> {
    let src = if a.rows < a.cols {
        a.conj_transpose()
    } else {
        a.clone()
    };
    jacobi_svd(&src, false).singular_values
}

/// `P A Q = L U` with complete pivoting.
#[derive(Debug, Clone)]
pub struct LuFactorization<T> {
    lu: CMatrix<T>,
    row_perm: Vec<usize>,
    col_perm: Vec<usize>,
}

impl<T: Real> LuFactorization<T> {
    /// Returns `None` when a pivot vanishes.
    pub fn new(a: &CMatrix<T>) -> Option<Self> {
        assert_eq!(a.rows, a.cols, "LU needs a square matrix");
        let n = a.rows;
        let mut lu = a.clone();
        let mut row_perm: Vec<usize> = (0..n).collect();
        let mut col_perm: Vec<usize> = (0..n).collect();
        for k in 0..n {
            let mut best = (k, k, T::zero());
            for r in k..n {
                for c in k..n {
                    let v = lu[(r, c)].norm();
                    if v > best.2 {
                        best = (r, c, v);
                    }
                }
            }
            let (pr, pc, pv) = best;
            if pv == T::zero() {
                return None;
            }
            if pr != k {
                for c in 0..n {
                    lu.data.swap(k * n + c, pr * n + c);
                }
                row_perm.swap(k, pr);
            }
            if pc != k {
                for r in 0..n {
                    lu.data.swap(r * n + k, r * n + pc);
                }
                col_perm.swap(k, pc);
            }
            let pivot = lu[(k, k)];
            for r in k + 1..n {
                let factor = lu[(r, k)] / pivot;
                lu[(r, k)] = factor;
                for c in k + 1..n {
                    let u = lu[(k, c)];
                    lu[(r, c)] -= factor * u;
                }
            }
        }
        Some(Self {
            lu,
            row_perm,
            col_perm,
        })
    }

    pub fn solve(&self, b: &[Complex<T>]) -> Vec<Complex<T>> {
        let n = self.lu.rows;
        assert_eq!(b.len(), n);
        let mut y: Vec<Complex<T>> = self.row_perm.iter().map(|&r| b[r]).collect();
        for r in 0..n {
            for c in 0..r {
                let l = self.lu[(r, c)];
                let yc = y[c];
                y[r] -= l * yc;
            }
        }
        for r in (0..n).rev() {
            for c in r + 1..n {
                let u = self.lu[(r, c)];
                let yc = y[c];
                y[r] -= u * yc;
            }
            y[r] = y[r] / self.lu[(r, r)];
        }
        let mut x = vec![Complex::zero(); n];
        for (k, &c) in self.col_perm.iter().enumerate() {
            x[c] = y[k];
        }
        x
    }
}

/// Solves `a x = b` with one step of iterative refinement.
pub fn solve_refined<T: Real>(a: &CMatrix<T>, b: &[Complex<T>]) -> Option<Vec<Complex<T>>> {
    let lu = LuFactorization::new(a)?;
    let mut x = lu.solve(b);
    let ax = a.matvec(&x);
    let residual: Vec<Complex<T>> = b.iter().zip(&ax).map(|(bi, ai)| bi - ai).collect();
    let dx = lu.solve(&residual);
    for (xi, di) in x.iter_mut().zip(dx) {
        *xi += di;
    }
    Some(x)
}

/// Solves `a X = b` column by column.
pub fn solve_matrix<T: Real>(a: &CMatrix<T>, b: &CMatrix<T>) -> Option<CMatrix<T>> {
    let lu = LuFactorization::new(a)?;
    let mut out = CMatrix::zeros(a.cols, b.cols);
    for c in 0..b.cols {
        let rhs = b.column(c);
        let mut x = lu.solve(&rhs);
        let ax = a.matvec(&x);
        let residual: Vec<Complex<T>> = rhs.iter().zip(&ax).map(|(bi, ai)| bi - ai).collect();
        for (xi, di) in x.iter_mut().zip(lu.solve(&residual)) {
            *xi += di;
        }
        for (r, v) in x.into_iter().enumerate() {
            out[(r, c)] = v;
        }
    }
    Some(out)
}

/// Greedy volume-maximising row selection (row-pivoted Gram-Schmidt).
///
/// Each step takes the row with the largest component orthogonal to the rows
/// already chosen. Returns the chosen rows in selection order, or `None` when
/// the residual falls below `tol` times the largest initial row norm before
/// `a.cols()` rows are found.
pub fn greedy_row_selection<T: Real>(a: &CMatrix<T>, tol: T) -> Option<Vec<usize>> {
    let d = a.cols;
    let mut residual = a.clone();
    let mut chosen = Vec::with_capacity(d);
    let mut taken = vec![false; a.rows];
    let scale = (0..a.rows).map(|r| norm2(a.row(r))).fold(T::zero(), T::max);
    if scale == T::zero() && d > 0 {
        return None;
    }
    for _ in 0..d {
        let (best, best_norm) = (0..a.rows)
            .filter(|&r| !taken[r])
            .map(|r| (r, norm2(residual.row(r))))
            .fold((usize::MAX, T::zero()), |acc, x| if x.1 > acc.1 { x } else { acc });
        if best == usize::MAX || best_norm <= tol * scale {
            return None;
        }
        taken[best] = true;
        chosen.push(best);
        let q: Vec<Complex<T>> = residual.row(best).iter().map(|z| z / best_norm).collect();
        for r in 0..a.rows {
            let coeff: Complex<T> = residual
                .row(r)
                .iter()
                .zip(&q)
                .map(|(x, qk)| x * qk.conj())
                .sum();
            for (k, qk) in q.iter().enumerate() {
                residual[(r, k)] -= coeff * qk;
            }
        }
    }
    Some(chosen)
}
