//! Univariate polynomials with exact integer coefficients.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Integer polynomial, coefficients stored constant term first.
///
/// The representation is normalised: no trailing zero coefficients, so the
/// zero polynomial is the empty vector and the last stored coefficient is the
/// leading one.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::from_i64(&[1])
    }

    /// The monomial `t^k`.
    pub fn monomial(k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = BigInt::one();
        Self { coeffs }
    }

    /// `t^k - 1`.
    pub fn power_minus_one(k: usize) -> Self {
        let mut p = Self::monomial(k);
        p.coeffs[0] -= 1;
        Self::new(p.coeffs)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn leading(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_one()
    }

    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c))
    }

    /// Divides out the content, keeping the sign of the leading coefficient.
    pub fn primitive_part(&self) -> Self {
        let c = self.content();
        if c.is_zero() || c.is_one() {
            return self.clone();
        }
        Self::new(self.coeffs.iter().map(|a| a / &c).collect())
    }

    /// Primitive part normalised to a positive leading coefficient.
    pub fn normalized(&self) -> Self {
        let p = self.primitive_part();
        if p.leading().is_negative() {
            -p
        } else {
            p
        }
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * BigInt::from(k))
                .collect(),
        )
    }

    pub fn scale(&self, s: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    /// Exact value at a rational point.
    pub fn eval_rational(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + BigRational::from_integer(c.clone());
        }
        acc
    }

    /// `den^deg · p(num/den)`, an integer with the sign of `p(num/den)` (den > 0).
    fn homogeneous_value(&self, x: &BigRational) -> BigInt {
        let num = x.numer();
        let den = x.denom();
        let mut acc = BigInt::zero();
        let mut den_pow = BigInt::one();
        // Horner in num with compensating powers of den.
        for c in self.coeffs.iter().rev() {
            acc = acc * num + c * &den_pow;
            den_pow *= den;
        }
        acc
    }

    /// Exact sign of the polynomial at a rational point.
    pub fn sign_at(&self, x: &BigRational) -> Ordering {
        self.homogeneous_value(x).cmp(&BigInt::zero())
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * x + c.to_f64().unwrap_or(f64::NAN))
    }

    pub fn eval_complex(&self, z: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, c| {
                acc * z + Complex64::new(c.to_f64().unwrap_or(f64::NAN), 0.0)
            })
    }

    /// Sign of the polynomial as `t -> +inf` (or `-inf` when `at_minus_infinity`).
    pub fn sign_at_infinity(&self, at_minus_infinity: bool) -> Ordering {
        let s = self.leading().cmp(&BigInt::zero());
        if at_minus_infinity && self.degree() % 2 == 1 {
            s.reverse()
        } else {
            s
        }
    }

    /// Pseudo-remainder `lc(d)^(deg self - deg d + 1) · self mod d`, exact over the integers.
    pub fn pseudo_rem(&self, d: &Self) -> Self {
        assert!(!d.is_zero(), "pseudo-remainder by zero polynomial");
        let dd = d.degree();
        let lc = d.leading();
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return self.clone();
        }
        let steps = r.len() - dd;
        for _ in 0..steps {
            // r <- lc·r - r_lead·t^(deg r - dd)·d, then drop the leading term.
            let rl = r.last().cloned().unwrap_or_default();
            let shift = r.len() - 1 - dd;
            for c in r.iter_mut() {
                *c *= &lc;
            }
            for (k, dc) in d.coeffs.iter().enumerate() {
                r[shift + k] -= &rl * dc;
            }
            r.pop();
        }
        Self::new(r)
    }

    /// Exact quotient when `d` divides `self` over the integers.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        if self.degree() < d.degree() {
            return None;
        }
        let lc = d.leading();
        let mut r = self.coeffs.clone();
        let dd = d.degree();
        let mut q = vec![BigInt::zero(); r.len() - dd];
        for shift in (0..q.len()).rev() {
            let top = r[shift + dd].clone();
            let (quot, rem) = top.div_rem(&lc);
            if !rem.is_zero() {
                return None;
            }
            for (k, dc) in d.coeffs.iter().enumerate() {
                r[shift + k] -= &quot * dc;
            }
            q[shift] = quot;
        }
        if r.iter().all(Zero::is_zero) {
            Some(Self::new(q))
        } else {
            None
        }
    }

    /// Greatest common divisor over the rationals, returned primitive with positive leading coefficient.
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.normalized();
        let mut b = other.normalized();
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.pseudo_rem(&b).normalized();
            a = b;
            b = r;
        }
        a.normalized()
    }

    /// Squarefree part `p / gcd(p, p')`, primitive with positive leading coefficient.
    pub fn squarefree_part(&self) -> Self {
        if self.degree() == 0 {
            return self.normalized();
        }
        let g = self.gcd(&self.derivative());
        if g.degree() == 0 {
            return self.normalized();
        }
        let p = self.normalized();
        // p is primitive and g primitive, so the quotient is integral by Gauss's lemma.
        p.div_exact(&g)
            .expect("gcd divides polynomial")
            .normalized()
    }

    /// Yun's squarefree factorisation: `(factor, multiplicity)` pairs, factors primitive and nonconstant.
    pub fn squarefree_factors(&self) -> Vec<(Self, usize)> {
        let mut out = Vec::new();
        if self.degree() == 0 {
            return out;
        }
        let p = self.normalized();
        let dp = p.derivative();
        let a0 = p.gcd(&dp);
        let mut b = p.div_exact(&a0).expect("gcd divides p").normalized();
        let mut c = dp_div(&dp, &a0);
        let mut d = c.sub(&b.derivative());
        let mut k = 1;
        loop {
            let a = b.gcd(&d);
            if a.degree() > 0 {
                out.push((a.clone(), k));
            }
            b = b.div_exact(&a).expect("gcd divides b").normalized();
            if b.degree() == 0 {
                break;
            }
            c = dp_div(&d, &a);
            d = c.sub(&b.derivative());
            k += 1;
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|k| self.coeff(k) - other.coeff(k)).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|k| self.coeff(k) + other.coeff(k)).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    /// `p(-t)`.
    pub fn reflect(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| if k % 2 == 1 { -c } else { c.clone() })
                .collect(),
        )
    }
}

/// Quotient by a primitive factor; integral by Gauss's lemma whenever it exists over the rationals.
fn dp_div(num: &IntPolynomial, den: &IntPolynomial) -> IntPolynomial {
    num.div_exact(den)
        .expect("non-exact division in squarefree factorisation")
}

impl std::ops::Neg for IntPolynomial {
    type Output = IntPolynomial;
    fn neg(self) -> Self::Output {
        IntPolynomial::new(self.coeffs.into_iter().map(|c| -c).collect())
    }
}

impl fmt::Display for IntPolynomial {
    /// Renders as `t^2 - 6t + 1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let show_mag = k == 0 || !mag.is_one();
            if show_mag {
                write!(f, "{mag}")?;
            }
            match k {
                0 => {}
                1 => write!(f, "t")?,
                _ => write!(f, "t^{k}")?,
            }
        }
        Ok(())
    }
}
