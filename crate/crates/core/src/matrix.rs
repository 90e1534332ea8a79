//! Dense complex square matrices.
//!
//! Entries are stored row-major: entry `(i, j)` lives at `i * dim + j`.
//! The file formats in the CLI depend on this ordering.

use std::fmt;
use std::ops::{Index, IndexMut};

use crate::{Error, Result};

pub type Complex = num_complex::Complex64;

/// Relative pivot threshold for [`ComplexMat::lu_invert`].
///
/// A pivot is rejected when its magnitude is at most this fraction of the
/// largest magnitude found in the same column of the input matrix.
pub const SINGULAR_RTOL: f64 = 1e-12;

#[derive(Clone, PartialEq)]
pub struct ComplexMat {
    dim: usize,
    data: Vec<Complex>,
}

impl ComplexMat {
    /// Builds a matrix from row-major entries.
    pub fn new(dim: usize, data: Vec<Complex>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::EmptyMatrix);
        }
        if data.len() != dim * dim {
            return Err(Error::EntryCount {
                dim,
                expected: dim * dim,
                got: data.len(),
            });
        }
        if let Some(k) = data.iter().position(|z| !z.is_finite()) {
            return Err(Error::NonFiniteEntry {
                row: k / dim,
                col: k % dim,
            });
        }
        Ok(Self { dim, data })
    }

    pub fn zeros(dim: usize) -> Result<Self> {
        Self::new(dim, vec![Complex::new(0.0, 0.0); dim * dim])
    }

    pub fn identity(dim: usize) -> Result<Self> {
        let mut m = Self::zeros(dim)?;
        for i in 0..dim {
            m[(i, i)] = Complex::new(1.0, 0.0);
        }
        Ok(m)
    }

    pub fn from_diag(diag: &[Complex]) -> Result<Self> {
        let n = diag.len();
        let mut data = vec![Complex::new(0.0, 0.0); n * n];
        for (i, &d) in diag.iter().enumerate() {
            data[i * n + i] = d;
        }
        Self::new(n, data)
    }

    /// Real matrix from row slices. All rows must have the same length as
    /// the number of rows.
    pub fn from_real_rows(rows: &[&[f64]]) -> Result<Self> {
        let dim = rows.len();
        let data: Vec<Complex> = rows
            .iter()
            .flat_map(|r| r.iter().map(|&v| Complex::new(v, 0.0)))
            .collect();
        Self::new(dim, data)
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Row-major view of the entries.
    pub fn entries(&self) -> &[Complex] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[Complex] {
        &self.data[i * self.dim..(i + 1) * self.dim]
    }

    pub fn transpose(&self) -> Self {
        let n = self.dim;
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(self[(j, i)]);
            }
        }
        Self { dim: n, data }
    }

    /// Multiplies every entry by a real scalar.
    pub fn scale(&self, alpha: f64) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|z| z * alpha).collect(),
        }
    }

    /// Standard matrix product `self * rhs`.
    pub fn mat_mul(&self, rhs: &Self) -> Result<Self> {
        if self.dim != rhs.dim {
            return Err(Error::DimensionMismatch {
                left: self.dim,
                right: rhs.dim,
            });
        }
        let n = self.dim;
        let mut out = vec![Complex::new(0.0, 0.0); n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.data[i * n + k];
                if a == Complex::new(0.0, 0.0) {
                    continue;
                }
                let rrow = &rhs.data[k * n..(k + 1) * n];
                for (o, &b) in out[i * n..(i + 1) * n].iter_mut().zip(rrow) {
                    *o += a * b;
                }
            }
        }
        Ok(Self { dim: n, data: out })
    }

    /// Inverse via LU decomposition with partial (row) pivoting.
    ///
    /// Fails with [`Error::Singular`] carrying the elimination step whose
    /// pivot fell below [`SINGULAR_RTOL`] times the largest magnitude of the
    /// corresponding input column.
    pub fn lu_invert(&self) -> Result<Self> {
        let n = self.dim;
        let col_scale: Vec<f64> = (0..n)
            .map(|j| (0..n).map(|i| self[(i, j)].norm()).fold(0.0, f64::max))
            .collect();

        let mut lu = self.data.clone();
        let mut perm: Vec<usize> = (0..n).collect();

        for k in 0..n {
            let (p, pmag) =
                (k..n)
                    .map(|i| (i, lu[i * n + k].norm()))
                    .fold(
                        (k, -1.0),
                        |best, cur| if cur.1 > best.1 { cur } else { best },
                    );
            if col_scale[k] == 0.0 || pmag <= SINGULAR_RTOL * col_scale[k] {
                return Err(Error::Singular { pivot: k });
            }
            if p != k {
                for j in 0..n {
                    lu.swap(k * n + j, p * n + j);
                }
                perm.swap(k, p);
            }
            let pivot = lu[k * n + k];
            for i in (k + 1)..n {
                let l = cdiv(lu[i * n + k], pivot);
                lu[i * n + k] = l;
                for j in (k + 1)..n {
                    let u = lu[k * n + j];
                    lu[i * n + j] -= l * u;
                }
            }
        }

        // Solve LU x = P e_j for every column j.
        let mut inv = vec![Complex::new(0.0, 0.0); n * n];
        let mut col = vec![Complex::new(0.0, 0.0); n];
        for j in 0..n {
            for (i, c) in col.iter_mut().enumerate() {
                *c = if perm[i] == j {
                    Complex::new(1.0, 0.0)
                } else {
                    Complex::new(0.0, 0.0)
                };
            }
            for i in 1..n {
                let mut s = col[i];
                for k in 0..i {
                    s -= lu[i * n + k] * col[k];
                }
                col[i] = s;
            }
            for i in (0..n).rev() {
                let mut s = col[i];
                for k in (i + 1)..n {
                    s -= lu[i * n + k] * col[k];
                }
                col[i] = cdiv(s, lu[i * n + i]);
            }
            for i in 0..n {
                inv[i * n + j] = col[i];
            }
        }
        Self::new(n, inv)
    }

    /// Squared Frobenius norm: sum of `re^2 + im^2` over all entries.
    pub fn frobenius_sq(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum()
    }

    /// Largest entry-wise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> Result<f64> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                left: self.dim,
                right: other.dim,
            });
        }
        Ok(self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }

    /// Induced 1-norm (maximum absolute column sum).
    pub fn norm_one(&self) -> f64 {
        (0..self.dim)
            .map(|j| (0..self.dim).map(|i| self[(i, j)].norm()).sum::<f64>())
            .fold(0.0, f64::max)
    }
}

/// Complex division by Smith's method. `num_complex` divides through
/// `|b|^2`, which underflows for entries near 1e-160 and below.
#[inline]
fn cdiv(a: Complex, b: Complex) -> Complex {
    if b.re.abs() >= b.im.abs() {
        let r = b.im / b.re;
        let d = b.re + b.im * r;
        Complex::new((a.re + a.im * r) / d, (a.im - a.re * r) / d)
    } else {
        let r = b.re / b.im;
        let d = b.re * r + b.im;
        Complex::new((a.re * r + a.im) / d, (a.im * r - a.re) / d)
    }
}

impl Index<(usize, usize)> for ComplexMat {
    type Output = Complex;

    fn index(&self, (i, j): (usize, usize)) -> &Complex {
        assert!(i < self.dim && j < self.dim, "index out of bounds");
        &self.data[i * self.dim + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex {
        assert!(i < self.dim && j < self.dim, "index out of bounds");
        &mut self.data[i * self.dim + j]
    }
}

impl fmt::Debug for ComplexMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMat {}x{} [", self.dim, self.dim)?;
        for i in 0..self.dim {
            write!(f, "  ")?;
            for z in self.row(i) {
                write!(f, "{:+.6}{:+.6}i ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::sample_rayleigh;
    use proptest::prelude::*;

    fn c(re: f64) -> Complex {
        Complex::new(re, 0.0)
    }

    fn residual_vs_identity(m: &ComplexMat, inv: &ComplexMat) -> f64 {
        let prod = m.mat_mul(inv).unwrap();
        prod.max_abs_diff(&ComplexMat::identity(m.dim()).unwrap())
            .unwrap()
    }

    #[test]
    fn construction_rejects_bad_input() {
        assert_eq!(ComplexMat::new(0, vec![]), Err(Error::EmptyMatrix));
        assert!(matches!(
            ComplexMat::new(2, vec![c(1.0); 3]),
            Err(Error::EntryCount {
                expected: 4,
                got: 3,
                ..
            })
        ));
        let mut data = vec![c(1.0); 4];
        data[3] = Complex::new(f64::NAN, 0.0);
        assert_eq!(
            ComplexMat::new(2, data),
            Err(Error::NonFiniteEntry { row: 1, col: 1 })
        );
    }

    #[test]
    fn identity_products() {
        let i2 = ComplexMat::identity(2).unwrap();
        assert_eq!(i2.mat_mul(&i2).unwrap(), i2);

        let a = ComplexMat::from_diag(&[c(2.0), c(1.0)]).unwrap();
        let b = ComplexMat::from_diag(&[c(0.5), c(1.0)]).unwrap();
        assert_eq!(a.mat_mul(&b).unwrap(), i2);
    }

    #[test]
    fn mat_mul_dimension_mismatch() {
        let a = ComplexMat::identity(2).unwrap();
        let b = ComplexMat::identity(3).unwrap();
        assert_eq!(
            a.mat_mul(&b),
            Err(Error::DimensionMismatch { left: 2, right: 3 })
        );
    }

    #[test]
    fn mat_mul_complex_entries() {
        // [[i, 1], [0, 2]] * [[1, -i], [1, 0]] = [[i+1, 1], [2, 0]]
        let a = ComplexMat::new(2, vec![Complex::new(0.0, 1.0), c(1.0), c(0.0), c(2.0)]).unwrap();
        let b = ComplexMat::new(2, vec![c(1.0), Complex::new(0.0, -1.0), c(1.0), c(0.0)]).unwrap();
        let p = a.mat_mul(&b).unwrap();
        assert_eq!(p[(0, 0)], Complex::new(1.0, 1.0));
        assert_eq!(p[(0, 1)], c(1.0));
        assert_eq!(p[(1, 0)], c(2.0));
        assert_eq!(p[(1, 1)], c(0.0));
    }

    #[test]
    fn random_4x4_times_inverse() {
        let a = sample_rayleigh(4, 11).unwrap();
        let inv = a.lu_invert().unwrap();
        assert!(residual_vs_identity(&a, &inv) < 1e-10);
    }

    #[test]
    fn invert_identity_and_diagonal() {
        let i3 = ComplexMat::identity(3).unwrap();
        assert_eq!(i3.lu_invert().unwrap(), i3);

        let d = ComplexMat::from_diag(&[c(2.0), c(1.0)]).unwrap();
        let expected = ComplexMat::from_diag(&[c(0.5), c(1.0)]).unwrap();
        assert_eq!(d.lu_invert().unwrap(), expected);
    }

    #[test]
    fn invert_seeded_8x8() {
        let m = sample_rayleigh(8, 2024).unwrap();
        let inv = m.lu_invert().unwrap();
        assert!(residual_vs_identity(&m, &inv) < 1e-9);
    }

    #[test]
    fn invert_needs_pivoting() {
        // Zero leading entry: fails without row exchanges.
        let m = ComplexMat::from_real_rows(&[&[0.0, 1.0], &[1.0, 0.0]]).unwrap();
        assert_eq!(m.lu_invert().unwrap(), m);
    }

    #[test]
    fn singular_reports_pivot() {
        let m = ComplexMat::from_real_rows(&[&[1.0, 2.0], &[2.0, 4.0]]).unwrap();
        assert_eq!(m.lu_invert(), Err(Error::Singular { pivot: 1 }));

        let z = ComplexMat::from_real_rows(&[&[0.0, 1.0], &[0.0, 3.0]]).unwrap();
        assert_eq!(z.lu_invert(), Err(Error::Singular { pivot: 0 }));
    }

    #[test]
    fn small_but_well_conditioned_is_not_singular() {
        let m = ComplexMat::identity(3).unwrap().scale(1e-200);
        let inv = m.lu_invert().unwrap();
        assert!((inv[(0, 0)].re - 1e200).abs() / 1e200 < 1e-15);
    }

    #[test]
    fn smith_division() {
        let a = Complex::new(1.0, 2.0);
        let b = Complex::new(3.0, -4.0);
        assert!((cdiv(a, b) - a / b).norm() < 1e-16);
        let tiny = Complex::new(1e-200, 1e-200);
        assert!((cdiv(tiny, tiny) - Complex::new(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn frobenius_examples() {
        assert_eq!(ComplexMat::identity(2).unwrap().frobenius_sq(), 2.0);
        assert_eq!(ComplexMat::identity(5).unwrap().frobenius_sq(), 5.0);
        let d = ComplexMat::from_diag(&[c(0.5), c(1.0)]).unwrap();
        assert_eq!(d.frobenius_sq(), 1.25);
        let ones = ComplexMat::from_real_rows(&[&[1.0, 1.0], &[1.0, 1.0]]).unwrap();
        assert_eq!(ones.frobenius_sq(), 4.0);
        let z = ComplexMat::new(1, vec![Complex::new(3.0, 4.0)]).unwrap();
        assert_eq!(z.frobenius_sq(), 25.0);
    }

    fn cond_one(m: &ComplexMat, inv: &ComplexMat) -> f64 {
        m.norm_one() * inv.norm_one()
    }

    proptest! {
        #[test]
        fn inverse_residual_small(n in 1usize..10, seed in any::<u64>()) {
            let m = sample_rayleigh(n, seed).unwrap();
            if let Ok(inv) = m.lu_invert() {
                prop_assume!(cond_one(&m, &inv) < 1e8);
                prop_assert!(residual_vs_identity(&m, &inv) < 1e-9);
            }
        }

        #[test]
        fn double_inverse_roundtrip(n in 1usize..8, seed in any::<u64>()) {
            let m = sample_rayleigh(n, seed).unwrap();
            let inv = m.lu_invert().unwrap();
            prop_assume!(cond_one(&m, &inv) < 1e6);
            let back = inv.lu_invert().unwrap();
            prop_assert!(back.max_abs_diff(&m).unwrap() < 1e-8);
        }

        #[test]
        fn frobenius_transpose_invariant(n in 1usize..10, seed in any::<u64>()) {
            let m = sample_rayleigh(n, seed).unwrap();
            let f = m.frobenius_sq();
            prop_assert!(f >= 0.0);
            // Same multiset of entries; compare against a sorted summation of both.
            let mut a: Vec<f64> = m.entries().iter().map(|z| z.norm_sqr()).collect();
            let mut b: Vec<f64> = m.transpose().entries().iter().map(|z| z.norm_sqr()).collect();
            a.sort_by(f64::total_cmp);
            b.sort_by(f64::total_cmp);
            prop_assert_eq!(a.iter().sum::<f64>(), b.iter().sum::<f64>());
            let ft = m.transpose().frobenius_sq();
            prop_assert!((f - ft).abs() <= 1e-14 * f);
        }
    }
}
