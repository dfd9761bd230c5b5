//! Exact square matrices over the rationals.
//!
//! Entries are stored as integer numerators over one shared positive
//! denominator. Every matrix the library builds (twist matrices, reflections,
//! Coxeter transformations) is integral, so the denominator is almost always 1
//! and arithmetic stays in `BigInt`.

use std::fmt;
use std::ops::{Mul, Neg};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExactMatrix {
    dim: usize,
    num: Vec<BigInt>,
    den: BigInt,
}

impl ExactMatrix {
    pub fn zeros(dim: usize) -> Self {
        assert!(dim > 0, "matrix dimension must be positive");
        Self {
            dim,
            num: vec![BigInt::zero(); dim * dim],
            den: BigInt::one(),
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.num[i * dim + i] = BigInt::one();
        }
        m
    }

    /// Builds an integer matrix from rows. Panics unless the rows form a square.
    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Self {
        let dim = rows.len();
        assert!(dim > 0, "matrix dimension must be positive");
        let mut num = Vec::with_capacity(dim * dim);
        for r in rows {
            assert_eq!(r.len(), dim, "matrix rows must form a square");
            num.extend(r.iter().cloned().map(Into::into));
        }
        Self {
            dim,
            num,
            den: BigInt::one(),
        }
    }

    /// Builds a matrix from exact rational entries in row-major order.
    pub fn from_rationals(dim: usize, entries: &[BigRational]) -> Self {
        assert!(dim > 0, "matrix dimension must be positive");
        assert_eq!(entries.len(), dim * dim);
        let den = entries
            .iter()
            .fold(BigInt::one(), |acc, e| acc.lcm(e.denom()));
        let num = entries
            .iter()
            .map(|e| e.numer() * (&den / e.denom()))
            .collect();
        let mut m = Self { dim, num, den };
        m.reduce();
        m
    }

    pub fn permutation(perm: &[usize]) -> Self {
        let dim = perm.len();
        let mut m = Self::zeros(dim);
        for (col, &row) in perm.iter().enumerate() {
            m.num[row * dim + col] = BigInt::one();
        }
        m
    }

    fn reduce(&mut self) {
        if self.den.is_one() {
            return;
        }
        let g = self.num.iter().fold(self.den.clone(), |acc, x| acc.gcd(x));
        if !g.is_one() {
            for x in self.num.iter_mut() {
                *x /= &g;
            }
            self.den /= &g;
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, row: usize, col: usize) -> BigRational {
        BigRational::new(self.num[row * self.dim + col].clone(), self.den.clone())
    }

    /// Integer entry; panics on a non-integral matrix.
    pub fn int(&self, row: usize, col: usize) -> &BigInt {
        assert!(self.is_integral(), "matrix is not integral");
        &self.num[row * self.dim + col]
    }

    pub fn set_int(&mut self, row: usize, col: usize, value: impl Into<BigInt>) {
        let v: BigInt = value.into();
        self.num[row * self.dim + col] = v * &self.den;
    }

    pub fn is_integral(&self) -> bool {
        self.den.is_one()
    }

    /// Common denominator `d` such that `d · self` is integral.
    pub fn denominator(&self) -> &BigInt {
        &self.den
    }

    /// Numerators over [`Self::denominator`], row-major.
    pub fn numerators(&self) -> &[BigInt] {
        &self.num
    }

    pub fn is_nonnegative(&self) -> bool {
        self.first_negative().is_none()
    }

    /// Position of the first strictly negative entry in row-major order.
    pub fn first_negative(&self) -> Option<(usize, usize)> {
        self.num
            .iter()
            .position(Signed::is_negative)
            .map(|k| (k / self.dim, k % self.dim))
    }

    /// Entrywise comparison `self >= other`.
    pub fn dominates(&self, other: &Self) -> bool {
        assert_eq!(self.dim, other.dim);
        self.num
            .iter()
            .zip(&other.num)
            .all(|(a, b)| a * &other.den >= b * &self.den)
    }

    pub fn transpose(&self) -> Self {
        let n = self.dim;
        let mut num = vec![BigInt::zero(); n * n];
        for i in 0..n {
            for j in 0..n {
                num[j * n + i] = self.num[i * n + j].clone();
            }
        }
        Self {
            dim: n,
            num,
            den: self.den.clone(),
        }
    }

    pub fn trace(&self) -> BigRational {
        let t = (0..self.dim).fold(BigInt::zero(), |acc, i| acc + &self.num[i * self.dim + i]);
        BigRational::new(t, self.den.clone())
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> BigRational {
        let n = self.dim;
        let mut a = self.num.clone();
        let mut sign = false;
        let mut prev = BigInt::one();
        for k in 0..n {
            if a[k * n + k].is_zero() {
                let Some(p) = (k + 1..n).find(|&r| !a[r * n + k].is_zero()) else {
                    return BigRational::zero();
                };
                for c in 0..n {
                    a.swap(k * n + c, p * n + c);
                }
                sign = !sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[i * n + j] * &a[k * n + k] - &a[i * n + k] * &a[k * n + j];
                    a[i * n + j] = v / &prev;
                }
            }
            prev = a[k * n + k].clone();
        }
        let det = if sign { -prev } else { prev };
        BigRational::new(det, self.den.pow(n as u32))
    }

    /// Entries as `f64`, row-major.
    pub fn to_f64(&self) -> Vec<f64> {
        let d = self.den.to_f64().unwrap_or(f64::NAN);
        self.num
            .iter()
            .map(|x| x.to_f64().unwrap_or(f64::NAN) / d)
            .collect()
    }

    /// Integer entries as `i64`, if the matrix is integral and they all fit.
    pub fn to_i64(&self) -> Option<Vec<i64>> {
        if !self.is_integral() {
            return None;
        }
        self.num.iter().map(ToPrimitive::to_i64).collect()
    }

    pub fn rows_i64(&self) -> Option<Vec<Vec<i64>>> {
        let flat = self.to_i64()?;
        Some(flat.chunks(self.dim).map(<[i64]>::to_vec).collect())
    }

    /// `p · self · p^T` for a permutation matrix `p` given as an index map.
    pub fn permute(&self, perm: &[usize]) -> Self {
        let n = self.dim;
        assert_eq!(perm.len(), n);
        let mut num = vec![BigInt::zero(); n * n];
        for i in 0..n {
            for j in 0..n {
                num[perm[i] * n + perm[j]] = self.num[i * n + j].clone();
            }
        }
        Self {
            dim: n,
            num,
            den: self.den.clone(),
        }
    }
}

impl Mul for &ExactMatrix {
    type Output = ExactMatrix;

    fn mul(self, rhs: &ExactMatrix) -> ExactMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        let n = self.dim;
        let mut num = vec![BigInt::zero(); n * n];
        for i in 0..n {
            for k in 0..n {
                let a = &self.num[i * n + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = &rhs.num[k * n + j];
                    if !b.is_zero() {
                        num[i * n + j] += a * b;
                    }
                }
            }
        }
        let mut out = ExactMatrix {
            dim: n,
            num,
            den: &self.den * &rhs.den,
        };
        out.reduce();
        out
    }
}

impl Mul for ExactMatrix {
    type Output = ExactMatrix;
    fn mul(self, rhs: ExactMatrix) -> ExactMatrix {
        &self * &rhs
    }
}

impl Neg for ExactMatrix {
    type Output = ExactMatrix;
    fn neg(mut self) -> ExactMatrix {
        for x in self.num.iter_mut() {
            *x = -std::mem::take(x);
        }
        self
    }
}

impl fmt::Display for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.dim;
        for i in 0..n {
            write!(f, "[")?;
            for j in 0..n {
                if j > 0 {
                    write!(f, ", ")?;
                }
                let e = self.get(i, j);
                if e.is_integer() {
                    write!(f, "{}", e.numer())?;
                } else {
                    write!(f, "{}/{}", e.numer(), e.denom())?;
                }
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> ExactMatrix {
        ExactMatrix::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>())
    }

    #[test]
    fn product_and_identity() {
        let a = m(&[&[1, 1], &[0, 1]]);
        let b = m(&[&[1, 0], &[1, 1]]);
        assert_eq!(&b * &a, m(&[&[1, 1], &[1, 2]]));
        assert_eq!(&a * &ExactMatrix::identity(2), a);
    }

    #[test]
    fn rational_entries_share_a_reduced_denominator() {
        let half = BigRational::new(1.into(), 2.into());
        let third = BigRational::new(1.into(), 3.into());
        let x = ExactMatrix::from_rationals(2, &[half.clone(), third, BigRational::zero(), half]);
        assert_eq!(x.denominator(), &BigInt::from(6));
        assert!(!x.is_integral());
        let two = ExactMatrix::from_rationals(1, &[BigRational::new(4.into(), 2.into())]);
        assert!(two.is_integral());
        let sq = &x * &x;
        assert_eq!(sq.get(0, 1), BigRational::new(1.into(), 3.into()));
    }

    #[test]
    fn nonnegativity_and_domination() {
        let a = m(&[&[2, 1], &[1, 1]]);
        let b = m(&[&[1, 1], &[0, 1]]);
        assert!(a.is_nonnegative());
        assert!(a.dominates(&b));
        assert!(!b.dominates(&a));
        let c = -a;
        assert_eq!(c.first_negative(), Some((0, 0)));
    }

    #[test]
    fn bareiss_determinant() {
        assert_eq!(m(&[&[2, 1], &[1, 1]]).determinant(), BigRational::one());
        assert_eq!(
            m(&[&[0, 2, 1], &[1, 0, 0], &[3, 1, 4]]).determinant(),
            BigRational::from_integer((-7).into())
        );
        assert_eq!(m(&[&[1, 2], &[2, 4]]).determinant(), BigRational::zero());
    }
}
