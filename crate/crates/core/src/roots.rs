//! Certified real-root isolation and numeric complex roots.
//!
//! The largest real root is isolated with a Sturm sequence over exact
//! rational endpoints, then refined by sign-change bisection on the
//! squarefree part. Floating point is only used to propose brackets; every
//! bracket is accepted or rejected by exact sign evaluation.

use std::cmp::Ordering;

use nalgebra::{DMatrix, Schur};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::poly::IntPolynomial;

/// A real algebraic number pinned down by an isolating interval.
#[derive(Clone, Debug, PartialEq)]
pub struct RootApproximation {
    /// Best `f64` estimate of the root.
    pub value: f64,
    /// Upper bound on `|value - root|`.
    pub radius: f64,
    /// Closed interval containing exactly one real root of the source polynomial.
    pub interval: (BigRational, BigRational),
}

impl RootApproximation {
    fn from_interval(lo: BigRational, hi: BigRational) -> Self {
        let mid = (&lo + &hi) / BigRational::from_integer(2.into());
        let value = rational_to_f64(&mid);
        let v = BigRational::from_float(value).expect("finite root estimate");
        let dist = std::cmp::max((&v - &lo).abs(), (&hi - &v).abs());
        let radius = if dist.is_zero() {
            0.0
        } else {
            next_up(rational_to_f64(&dist).max(0.0))
        };
        Self {
            value,
            radius,
            interval: (lo, hi),
        }
    }

    pub fn exact(x: BigRational) -> Self {
        Self::from_interval(x.clone(), x)
    }

    /// True if the certified interval lies within `tol` of `x`.
    pub fn agrees_with(&self, x: f64, tol: f64) -> bool {
        (self.value - x).abs() <= tol + self.radius
    }

    pub fn lower(&self) -> f64 {
        rational_to_f64(&self.interval.0)
    }

    pub fn upper(&self) -> f64 {
        rational_to_f64(&self.interval.1)
    }

    /// Divides the root (and its interval) by a positive integer.
    pub(crate) fn divide_by(&self, d: &BigInt) -> Self {
        if d.is_one() {
            return self.clone();
        }
        let d = BigRational::from_integer(d.clone());
        Self::from_interval(&self.interval.0 / &d, &self.interval.1 / &d)
    }
}

impl Serialize for RootApproximation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("RootApproximation", 4)?;
        st.serialize_field("value", &self.value)?;
        st.serialize_field("radius", &self.radius)?;
        st.serialize_field("lower", &self.interval.0.to_string())?;
        st.serialize_field("upper", &self.interval.1.to_string())?;
        st.end()
    }
}

fn rational_to_f64(x: &BigRational) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

fn next_up(x: f64) -> f64 {
    if x == 0.0 {
        return f64::MIN_POSITIVE;
    }
    f64::from_bits(x.to_bits() + 1)
}

/// Sturm sequence `p, p', -rem(p, p'), ...` with every term scaled by a positive constant.
pub fn sturm_sequence(p: &IntPolynomial) -> Vec<IntPolynomial> {
    let mut seq = vec![p.primitive_part(), p.derivative().primitive_part()];
    loop {
        let n = seq.len();
        let (a, b) = (&seq[n - 2], &seq[n - 1]);
        if b.degree() == 0 {
            break;
        }
        let k = a.degree() + 1 - b.degree();
        let mut r = a.pseudo_rem(b);
        // pseudo_rem multiplies by lc(b)^k; undo a negative factor so only -rem remains.
        let flip = b.leading().is_negative() && k % 2 == 1;
        if !flip {
            r = -r;
        }
        if r.is_zero() {
            break;
        }
        seq.push(r.primitive_part());
    }
    seq
}

fn variations(signs: impl Iterator<Item = Ordering>) -> usize {
    let mut last = Ordering::Equal;
    let mut count = 0;
    for s in signs {
        if s == Ordering::Equal {
            continue;
        }
        if last != Ordering::Equal && s != last {
            count += 1;
        }
        last = s;
    }
    count
}

fn variations_at(seq: &[IntPolynomial], x: &BigRational) -> usize {
    variations(seq.iter().map(|q| q.sign_at(x)))
}

fn variations_at_infinity(seq: &[IntPolynomial], minus: bool) -> usize {
    variations(seq.iter().map(|q| q.sign_at_infinity(minus)))
}

/// Number of distinct real roots of the sequence's head in `(x, +inf)`; `x` must not be a root.
pub fn roots_above(seq: &[IntPolynomial], x: &BigRational) -> usize {
    variations_at(seq, x) - variations_at_infinity(seq, false)
}

/// Number of distinct real roots.
pub fn count_real_roots(p: &IntPolynomial) -> usize {
    if p.degree() == 0 {
        return 0;
    }
    let seq = sturm_sequence(p);
    variations_at_infinity(&seq, true) - variations_at_infinity(&seq, false)
}

/// Integer `B` with every complex root strictly inside `|z| < B` (Cauchy bound).
pub fn cauchy_bound(p: &IntPolynomial) -> BigInt {
    let lc = p.leading().abs();
    let max = p.coeffs()[..p.degree()]
        .iter()
        .map(Signed::abs)
        .max()
        .unwrap_or_default();
    // 1 + max|a_i| / |a_n|, rounded up, plus one for strictness.
    BigInt::from(2) + (max + &lc - 1u32) / lc
}

/// Picks a split point strictly between `lo` and `hi` that is not a root of `p`.
fn split_point(p: &IntPolynomial, lo: &BigRational, hi: &BigRational) -> BigRational {
    let width = hi - lo;
    for (a, b) in [(1, 2), (1, 3), (2, 3), (2, 5), (3, 5), (3, 7), (4, 7)] {
        let x = lo + &width * BigRational::new(a.into(), b.into());
        if p.sign_at(&x) != Ordering::Equal {
            return x;
        }
    }
    // p has finitely many roots; dyadic fallbacks terminate.
    let mut k = 3u32;
    loop {
        let x = lo + &width * BigRational::new(1.into(), BigInt::from(2).pow(k) + 1);
        if p.sign_at(&x) != Ordering::Equal {
            return x;
        }
        k += 1;
    }
}

/// Largest real root, certified to within `tol`.
///
/// Returns [`Error::NoRealRoot`] for constants and for polynomials without
/// real roots.
pub fn largest_real_root(p: &IntPolynomial, tol: f64) -> Result<RootApproximation> {
    if p.degree() == 0 || p.is_zero() {
        return Err(Error::NoRealRoot);
    }
    let tol = if tol.is_finite() && tol > 0.0 {
        tol
    } else {
        1e-12
    };
    let seq = sturm_sequence(p);
    let bound = BigRational::from_integer(cauchy_bound(p));
    let mut lo = -bound.clone();
    let mut hi = bound;
    if roots_above(&seq, &lo) == 0 {
        return Err(Error::NoRealRoot);
    }
    // Invariant: no roots in (hi, inf), at least one in (lo, inf).
    while roots_above(&seq, &lo) > 1 {
        let mid = split_point(p, &lo, &hi);
        if roots_above(&seq, &mid) >= 1 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    refine(&p.squarefree_part(), lo, hi, tol)
}

/// Refines a bracket `(lo, hi)` holding exactly one simple root of squarefree `q`.
pub(crate) fn refine(
    q: &IntPolynomial,
    mut lo: BigRational,
    mut hi: BigRational,
    tol: f64,
) -> Result<RootApproximation> {
    let tol_q = BigRational::from_float(tol).expect("finite tolerance");
    let s_lo = q.sign_at(&lo);
    let s_hi = q.sign_at(&hi);
    if s_lo == Ordering::Equal {
        return Ok(RootApproximation::exact(lo));
    }
    if s_hi == Ordering::Equal {
        return Ok(RootApproximation::exact(hi));
    }
    debug_assert_ne!(s_lo, s_hi, "bracket must straddle a sign change");

    // Newton in f64 proposes a narrow bracket; exact signs decide.
    if let Some(x) = newton_guess(q, rational_to_f64(&lo), rational_to_f64(&hi)) {
        // Integer roots (permutation and unipotent spectra) are returned exactly.
        let r = x.round();
        if (x - r).abs() < 1e-9 {
            let r = BigRational::from_float(r).expect("finite");
            if r > lo && r < hi && q.sign_at(&r) == Ordering::Equal {
                return Ok(RootApproximation::exact(r));
            }
        }
        let half = tol / 4.0;
        let a = BigRational::from_float(x - half).expect("finite");
        let b = BigRational::from_float(x + half).expect("finite");
        if a > lo && b < hi {
            let sa = q.sign_at(&a);
            let sb = q.sign_at(&b);
            if sa == Ordering::Equal {
                return Ok(RootApproximation::exact(a));
            }
            if sb == Ordering::Equal {
                return Ok(RootApproximation::exact(b));
            }
            if sa == s_lo && sb == s_hi {
                return Ok(RootApproximation::from_interval(a, b));
            }
        }
    }

    let two = BigRational::from_integer(2.into());
    while &hi - &lo > tol_q {
        let mid = (&lo + &hi) / &two;
        match q.sign_at(&mid) {
            Ordering::Equal => return Ok(RootApproximation::exact(mid)),
            s if s == s_lo => lo = mid,
            _ => hi = mid,
        }
    }
    let r = BigRational::from_float(rational_to_f64(&lo).round()).expect("finite");
    if r >= lo && r <= hi && q.sign_at(&r) == Ordering::Equal {
        return Ok(RootApproximation::exact(r));
    }
    Ok(RootApproximation::from_interval(lo, hi))
}

fn newton_guess(q: &IntPolynomial, lo: f64, hi: f64) -> Option<f64> {
    if !(lo.is_finite() && hi.is_finite()) {
        return None;
    }
    let dq = q.derivative();
    let mut x = 0.5 * (lo + hi);
    for _ in 0..100 {
        let fx = q.eval_f64(x);
        let dfx = dq.eval_f64(x);
        if dfx == 0.0 || !fx.is_finite() {
            return None;
        }
        let next = x - fx / dfx;
        if !(next > lo && next < hi) {
            return None;
        }
        if (next - x).abs() <= 1e-15 * x.abs().max(1.0) {
            return Some(next);
        }
        x = next;
    }
    Some(x)
}

/// Numeric complex roots with multiplicity.
///
/// Each squarefree factor is solved through its companion matrix and the
/// roots are polished by Newton's method, so repeated roots do not lose
/// accuracy.
pub fn complex_roots(p: &IntPolynomial) -> Vec<Complex64> {
    let mut out = Vec::with_capacity(p.degree());
    for (factor, mult) in p.squarefree_factors() {
        for z in squarefree_roots(&factor) {
            out.extend(std::iter::repeat_n(z, mult));
        }
    }
    out
}

fn squarefree_roots(q: &IntPolynomial) -> Vec<Complex64> {
    let d = q.degree();
    if d == 0 {
        return Vec::new();
    }
    let lc = q.leading().to_f64().unwrap_or(f64::NAN);
    let mut companion = DMatrix::<f64>::zeros(d, d);
    for i in 1..d {
        companion[(i, i - 1)] = 1.0;
    }
    for i in 0..d {
        companion[(i, d - 1)] = -q.coeff(i).to_f64().unwrap_or(f64::NAN) / lc;
    }
    let dq = q.derivative();
    companion_eigenvalues(&companion)
        .into_iter()
        .map(|z| polish(q, &dq, z))
        .collect()
}

/// Eigenvalues through a capped Schur iteration. Symmetric root
/// configurations can stall the unshifted iteration, so a few real shifts
/// are tried; Newton polishing afterwards restores full accuracy.
fn companion_eigenvalues(c: &DMatrix<f64>) -> Vec<Complex64> {
    let d = c.nrows();
    for shift in [0.0, 0.375, -0.625, 1.125, -1.5] {
        let shifted = c + DMatrix::<f64>::identity(d, d) * shift;
        if let Some(schur) = Schur::try_new(shifted, f64::EPSILON, 1000 * d) {
            return schur
                .complex_eigenvalues()
                .iter()
                .map(|z| z - shift)
                .collect();
        }
    }
    unreachable!("Schur iteration failed for every shift")
}

fn polish(q: &IntPolynomial, dq: &IntPolynomial, mut z: Complex64) -> Complex64 {
    for _ in 0..8 {
        let d = dq.eval_complex(z);
        if d.norm() == 0.0 {
            break;
        }
        let step = q.eval_complex(z) / d;
        if !step.re.is_finite() || !step.im.is_finite() {
            break;
        }
        z -= step;
        if step.norm() <= 1e-16 * z.norm().max(1.0) {
            break;
        }
    }
    z
}

/// Largest modulus among the complex roots (numeric).
pub fn max_modulus(p: &IntPolynomial) -> f64 {
    complex_roots(p)
        .iter()
        .map(|z| z.norm())
        .fold(0.0, f64::max)
}

/// Minimal polynomial over the integers of a certified real root of `p`.
///
/// Searches for the smallest-degree integer factor of `p` vanishing on the
/// root's isolating interval, built from conjugation-closed subsets of the
/// numeric roots and confirmed by exact division. Gives up (`None`) when the
/// relevant squarefree factor has degree above `max_degree`.
pub fn minimal_polynomial(
    p: &IntPolynomial,
    root: &RootApproximation,
    max_degree: usize,
) -> Option<IntPolynomial> {
    let (lo, hi) = &root.interval;
    let holds_root = |f: &IntPolynomial| {
        if lo == hi {
            f.sign_at(lo) == Ordering::Equal
        } else {
            let (a, b) = (f.sign_at(lo), f.sign_at(hi));
            a == Ordering::Equal || b == Ordering::Equal || a != b
        }
    };
    let factor = p
        .squarefree_factors()
        .into_iter()
        .map(|(f, _)| f)
        .find(|f| holds_root(f))?;
    if factor.degree() > max_degree {
        return None;
    }
    let roots = squarefree_roots(&factor);
    let target = roots
        .iter()
        .enumerate()
        .filter(|(_, z)| z.im.abs() < 1e-6)
        .min_by(|a, b| {
            (a.1.re - root.value)
                .abs()
                .total_cmp(&(b.1.re - root.value).abs())
        })?
        .0;
    let others: Vec<usize> = (0..roots.len()).filter(|&k| k != target).collect();
    let lc = factor.leading();
    for size in 0..others.len() {
        let mut found = None;
        for_each_subset(others.len(), size, &mut |subset| {
            if found.is_some() {
                return;
            }
            let mut chosen = vec![roots[target]];
            chosen.extend(subset.iter().map(|&k| roots[others[k]]));
            if let Some(cand) = integer_candidate(&chosen, &lc) {
                if factor.div_exact(&cand).is_some() && holds_root(&cand) {
                    found = Some(cand);
                }
            }
        });
        if let Some(f) = found {
            return Some(f.normalized());
        }
    }
    Some(factor.normalized())
}

fn for_each_subset(n: usize, k: usize, f: &mut dyn FnMut(&[usize])) {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
        if cur.len() == k {
            f(cur);
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, n, k, cur, f);
            cur.pop();
        }
    }
    go(0, n, k, &mut Vec::with_capacity(k), f);
}

/// Rounds `prod (t - z)` to integers if it is close to an integer polynomial
/// whose leading coefficient divides `lc`.
fn integer_candidate(zs: &[Complex64], lc: &BigInt) -> Option<IntPolynomial> {
    let mut c = vec![Complex64::new(1.0, 0.0)];
    for &z in zs {
        let mut next = vec![Complex64::new(0.0, 0.0); c.len() + 1];
        for (k, &a) in c.iter().enumerate() {
            next[k + 1] += a;
            next[k] -= a * z;
        }
        c = next;
    }
    // Try leading coefficients dividing lc (primitive factors of a polynomial with leading lc).
    let lc_abs = lc.abs().to_u64()?;
    for lead in 1..=lc_abs.min(64) {
        if lc_abs % lead != 0 {
            continue;
        }
        let scale = lead as f64;
        let mut ints = Vec::with_capacity(c.len());
        let mut ok = true;
        for a in &c {
            let v = a * scale;
            let r = v.re.round();
            if v.im.abs() > 1e-6 * (1.0 + r.abs()) || (v.re - r).abs() > 1e-6 * (1.0 + r.abs()) {
                ok = false;
                break;
            }
            ints.push(BigInt::from(r as i64));
        }
        if ok {
            return Some(IntPolynomial::new(ints));
        }
    }
    None
}
