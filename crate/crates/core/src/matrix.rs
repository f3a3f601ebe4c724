//! Dense square matrices over either exact Gaussian rationals or complex
//! floats, with just the operations the holonomy machinery needs: products,
//! conjugate transpose, determinants and max-entry residual norms.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

/// Exact complex entries: Gaussian numbers with rational parts.
pub type GaussRat = Complex<BigRational>;

/// Float complex entries.
pub type C64 = Complex<f64>;

fn fabs(x: f64) -> f64 {
    if x < 0.0 {
        -x
    } else {
        x
    }
}

/// Entry arithmetic shared by the exact and float matrix models.
/// `EXACT` distinguishes the modes: exact entries are compared against zero
/// exactly, float entries against a tolerance.
pub trait MatEntry: Clone + PartialEq + fmt::Debug {
    const EXACT: bool;

    fn zero() -> Self;
    fn one() -> Self;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn div(&self, other: &Self) -> Self;
    fn conj(&self) -> Self;
    fn is_zero(&self) -> bool;
    /// max(|re|, |im|), approximately for exact entries (reporting only).
    fn abs_bound(&self) -> f64;
    /// |im| as a float (realness residual).
    fn imag_abs(&self) -> f64;
    fn imag_is_zero(&self) -> bool;
    fn from_integer(n: i64) -> Self;
}

impl MatEntry for GaussRat {
    const EXACT: bool = true;

    fn zero() -> Self {
        Complex::new(BigRational::zero(), BigRational::zero())
    }

    fn one() -> Self {
        Complex::new(BigRational::one(), BigRational::zero())
    }

    fn add(&self, other: &Self) -> Self {
        self + other
    }

    fn sub(&self, other: &Self) -> Self {
        self - other
    }

    fn mul(&self, other: &Self) -> Self {
        self * other
    }

    fn div(&self, other: &Self) -> Self {
        self / other
    }

    fn conj(&self) -> Self {
        Complex::new(self.re.clone(), -self.im.clone())
    }

    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    fn abs_bound(&self) -> f64 {
        let re = fabs(self.re.to_f64().unwrap_or(f64::INFINITY));
        let im = fabs(self.im.to_f64().unwrap_or(f64::INFINITY));
        if re > im {
            re
        } else {
            im
        }
    }

    fn imag_abs(&self) -> f64 {
        fabs(self.im.to_f64().unwrap_or(f64::INFINITY))
    }

    fn imag_is_zero(&self) -> bool {
        self.im.is_zero()
    }

    fn from_integer(n: i64) -> Self {
        Complex::new(BigRational::from_integer(BigInt::from(n)), BigRational::zero())
    }
}

impl MatEntry for C64 {
    const EXACT: bool = false;

    fn zero() -> Self {
        Complex::new(0.0, 0.0)
    }

    fn one() -> Self {
        Complex::new(1.0, 0.0)
    }

    fn add(&self, other: &Self) -> Self {
        self + other
    }

    fn sub(&self, other: &Self) -> Self {
        self - other
    }

    fn mul(&self, other: &Self) -> Self {
        self * other
    }

    fn div(&self, other: &Self) -> Self {
        self / other
    }

    fn conj(&self) -> Self {
        Complex::new(self.re, -self.im)
    }

    fn is_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }

    fn abs_bound(&self) -> f64 {
        let re = fabs(self.re);
        let im = fabs(self.im);
        if re > im {
            re
        } else {
            im
        }
    }

    fn imag_abs(&self) -> f64 {
        fabs(self.im)
    }

    fn imag_is_zero(&self) -> bool {
        self.im == 0.0
    }

    fn from_integer(n: i64) -> Self {
        Complex::new(n as f64, 0.0)
    }
}

/// Square matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix<T> {
    n: usize,
    data: Vec<T>,
}

impl<T: MatEntry> Matrix<T> {
    pub fn identity(n: usize) -> Self {
        let mut data = vec![T::zero(); n * n];
        for i in 0..n {
            data[i * n + i] = T::one();
        }
        Matrix { n, data }
    }

    /// Build from rows; `None` unless the shape is n×n with n ≥ 1.
    pub fn from_rows(rows: Vec<Vec<T>>) -> Option<Self> {
        let n = rows.len();
        if n == 0 || rows.iter().any(|r| r.len() != n) {
            return None;
        }
        Some(Matrix {
            n,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.n + j] = v;
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n, "matrix dimension mismatch");
        let n = self.n;
        let mut out = Matrix {
            n,
            data: vec![T::zero(); n * n],
        };
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let v = out.get(i, j).add(&a.mul(other.get(k, j)));
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n, "matrix dimension mismatch");
        Matrix {
            n: self.n,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a.sub(b))
                .collect(),
        }
    }

    pub fn conj_transpose(&self) -> Self {
        let n = self.n;
        let mut out = self.clone();
        for i in 0..n {
            for j in 0..n {
                out.set(i, j, self.get(j, i).conj());
            }
        }
        out
    }

    /// Largest entry magnitude bound (max-entry norm, up to the re/im split).
    pub fn max_abs(&self) -> f64 {
        self.data
            .iter()
            .map(MatEntry::abs_bound)
            .fold(0.0, f64::max)
    }

    pub fn max_imag_abs(&self) -> f64 {
        self.data.iter().map(MatEntry::imag_abs).fold(0.0, f64::max)
    }

    pub fn is_exactly_zero(&self) -> bool {
        self.data.iter().all(MatEntry::is_zero)
    }

    pub fn is_exactly_real(&self) -> bool {
        self.data.iter().all(MatEntry::imag_is_zero)
    }

    /// Determinant by Gaussian elimination with largest-pivot selection.
    pub fn det(&self) -> T {
        let n = self.n;
        let mut a = self.clone();
        let mut det = T::one();
        for col in 0..n {
            let pivot = (col..n)
                .filter(|r| !a.get(*r, col).is_zero())
                .max_by(|x, y| {
                    a.get(*x, col)
                        .abs_bound()
                        .partial_cmp(&a.get(*y, col).abs_bound())
                        .unwrap_or(core::cmp::Ordering::Equal)
                });
            let Some(p) = pivot else {
                return T::zero();
            };
            if p != col {
                for j in 0..n {
                    let tmp = a.get(col, j).clone();
                    a.set(col, j, a.get(p, j).clone());
                    a.set(p, j, tmp);
                }
                det = T::zero().sub(&det);
            }
            let d = a.get(col, col).clone();
            det = det.mul(&d);
            for r in (col + 1)..n {
                if a.get(r, col).is_zero() {
                    continue;
                }
                let f = a.get(r, col).div(&d);
                for j in col..n {
                    let v = a.get(r, j).sub(&f.mul(a.get(col, j)));
                    a.set(r, j, v);
                }
            }
        }
        det
    }
}
