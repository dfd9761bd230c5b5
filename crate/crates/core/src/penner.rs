//! Penner's construction as matrix algebra.
//!
//! Two multicurves `α = α_1 ∪ … ∪ α_n` and `β = β_1 ∪ … ∪ β_m` are described
//! by their geometric intersection numbers `X[i][j] = i(α_i, β_j)`. A product
//! of positive twists along `α`-components and negative twists along
//! `β`-components acts on the curve basis by the nonnegative matrices
//! `I + R_c`, where `R_c` keeps only row `c` of the block intersection matrix
//! `[[0, X], [Xᵀ, 0]]`. The dilatation is the Perron-Frobenius eigenvalue of
//! the product.
//!
//! Convention: the first letter of a word is applied first, so its matrix is
//! the rightmost factor.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::Serialize;

use crate::coxeter::{MixedSignCoxeterGraph, ReflectionOrder, Sign};
use crate::error::{Error, Result};
use crate::graph::SimpleGraph;
use crate::matrix::ExactMatrix;
use crate::poly::IntPolynomial;
use crate::roots::{largest_real_root, RootApproximation};
use crate::spectral::{char_poly, spectral_radius};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Side {
    Alpha,
    Beta,
}

/// One component of either multicurve.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Curve {
    pub side: Side,
    pub index: usize,
}

impl Curve {
    pub fn alpha(index: usize) -> Self {
        Self {
            side: Side::Alpha,
            index,
        }
    }

    pub fn beta(index: usize) -> Self {
        Self {
            side: Side::Beta,
            index,
        }
    }
}

impl fmt::Display for Curve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self.side {
            Side::Alpha => 'a',
            Side::Beta => 'b',
        };
        write!(f, "{c}{}", self.index + 1)
    }
}

/// Two multicurves through their geometric intersection matrix `X` (n × m).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct IntersectionPattern {
    n: usize,
    m: usize,
    x: Vec<Vec<u32>>,
}

impl IntersectionPattern {
    pub fn new(x: Vec<Vec<u32>>) -> Result<Self> {
        let n = x.len();
        if n == 0 {
            return Err(Error::InvalidParameter(
                "pattern needs at least one alpha curve".into(),
            ));
        }
        let m = x[0].len();
        if m == 0 {
            return Err(Error::InvalidParameter(
                "pattern needs at least one beta curve".into(),
            ));
        }
        if x.iter().any(|row| row.len() != m) {
            return Err(Error::InvalidParameter(
                "intersection matrix is not rectangular".into(),
            ));
        }
        Ok(Self { n, m, x })
    }

    /// Pattern of an alternating-sign graph: `+` vertices become `α` curves,
    /// `-` vertices `β` curves, each side numbered by ascending vertex index.
    /// Also returns the curve assigned to every vertex.
    pub fn from_alternating(g: &MixedSignCoxeterGraph) -> Result<(Self, Vec<Curve>)> {
        if !g.is_alternating() {
            return Err(Error::InvalidParameter(
                "signs do not alternate along edges".into(),
            ));
        }
        let mut curves = Vec::with_capacity(g.vertex_count());
        let (mut na, mut nb) = (0, 0);
        for &s in g.signs() {
            if s == Sign::Plus {
                curves.push(Curve::alpha(na));
                na += 1;
            } else {
                curves.push(Curve::beta(nb));
                nb += 1;
            }
        }
        if na == 0 || nb == 0 {
            return Err(Error::InvalidParameter(
                "both multicurves must be nonempty".into(),
            ));
        }
        let mut x = vec![vec![0; nb]; na];
        for (a, b) in g.graph().edges() {
            let (ca, cb) = (curves[a], curves[b]);
            let (al, be) = if ca.side == Side::Alpha {
                (ca, cb)
            } else {
                (cb, ca)
            };
            x[al.index][be.index] = 1;
        }
        Ok((Self::new(x)?, curves))
    }

    /// Single-intersection pattern of a bipartite graph, `α` on the class of vertex 0.
    pub fn from_graph(graph: &SimpleGraph) -> Result<(Self, Vec<Curve>)> {
        let g = MixedSignCoxeterGraph::with_pattern(
            graph.clone(),
            crate::coxeter::SignPattern::Alternating,
        )?;
        Self::from_alternating(&g)
    }

    pub fn alpha_count(&self) -> usize {
        self.n
    }

    pub fn beta_count(&self) -> usize {
        self.m
    }

    pub fn curve_count(&self) -> usize {
        self.n + self.m
    }

    pub fn x(&self) -> &[Vec<u32>] {
        &self.x
    }

    pub fn intersection(&self, alpha: usize, beta: usize) -> u32 {
        self.x[alpha][beta]
    }

    /// Row/column of a curve in the `(n+m)`-dimensional curve basis.
    pub fn basis_index(&self, c: Curve) -> usize {
        match c.side {
            Side::Alpha => c.index,
            Side::Beta => self.n + c.index,
        }
    }

    pub fn curves(&self) -> impl Iterator<Item = Curve> + '_ {
        (0..self.n)
            .map(Curve::alpha)
            .chain((0..self.m).map(Curve::beta))
    }

    fn check_curve(&self, c: Curve) -> Result<()> {
        let (len, side) = match c.side {
            Side::Alpha => (self.n, "alpha"),
            Side::Beta => (self.m, "beta"),
        };
        if c.index >= len {
            return Err(Error::IndexOutOfRange {
                side,
                index: c.index,
                len,
            });
        }
        Ok(())
    }

    /// Bipartite intersection graph on `n + m` vertices; multiplicities are dropped.
    pub fn intersection_graph(&self) -> SimpleGraph {
        let mut edges = Vec::new();
        for i in 0..self.n {
            for j in 0..self.m {
                if self.x[i][j] > 0 {
                    edges.push((i, self.n + j));
                }
            }
        }
        SimpleGraph::new(self.n + self.m, &edges).expect("bipartite edges are simple")
    }

    /// Connected intersection graph: a necessary condition for the union to fill.
    pub fn is_filling_candidate(&self) -> bool {
        self.intersection_graph().is_connected()
    }

    /// The word applying one negative twist along every `β` curve, then one
    /// positive twist along every `α` curve.
    pub fn bipartite_word(&self) -> TwistWord {
        TwistWord(
            (0..self.m)
                .map(|j| Letter::new(Curve::beta(j)))
                .chain((0..self.n).map(|i| Letter::new(Curve::alpha(i))))
                .collect(),
        )
    }
}

/// A single twist. `α` twists are positive and `β` twists negative.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Letter {
    pub curve: Curve,
    pub sign: Sign,
}

impl Letter {
    /// The letter with the sign the construction requires for this curve.
    pub fn new(curve: Curve) -> Self {
        let sign = match curve.side {
            Side::Alpha => Sign::Plus,
            Side::Beta => Sign::Minus,
        };
        Self { curve, sign }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = if self.sign == Sign::Plus { '+' } else { '-' };
        write!(f, "{}{s}", self.curve)
    }
}

/// Twists in application order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Default)]
pub struct TwistWord(pub Vec<Letter>);

impl TwistWord {
    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Cyclic rotation moving the first `k` letters to the end.
    pub fn rotate(&self, k: usize) -> Self {
        let mut v = self.0.clone();
        if !v.is_empty() {
            let k = k % v.len();
            v.rotate_left(k);
        }
        Self(v)
    }

    pub fn from_curves(curves: impl IntoIterator<Item = Curve>) -> Self {
        Self(curves.into_iter().map(Letter::new).collect())
    }
}

impl fmt::Display for TwistWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, l) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl FromStr for TwistWord {
    type Err = Error;

    /// Parses whitespace- or comma-separated letters such as `a1+ b2-`
    /// (1-based indices, explicit sign).
    fn from_str(s: &str) -> Result<Self> {
        let mut out = Vec::new();
        for tok in s
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty())
        {
            let bad = || Error::InvalidWord(format!("cannot parse letter {tok:?}"));
            let mut chars = tok.chars();
            let side = match chars.next().ok_or_else(bad)?.to_ascii_lowercase() {
                'a' => Side::Alpha,
                'b' => Side::Beta,
                _ => return Err(bad()),
            };
            let rest: String = chars.collect();
            let (digits, sign) = match rest.chars().last() {
                Some('+') => (&rest[..rest.len() - 1], Sign::Plus),
                Some('-') => (&rest[..rest.len() - 1], Sign::Minus),
                _ => return Err(bad()),
            };
            let index: usize = digits.parse().map_err(|_| bad())?;
            if index == 0 {
                return Err(bad());
            }
            out.push(Letter {
                curve: Curve {
                    side,
                    index: index - 1,
                },
                sign,
            });
        }
        Ok(TwistWord(out))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum WordProblem {
    /// A component the word never twists along.
    UntwistedComponent(Curve),
    /// An `α` letter with sign `-` or a `β` letter with sign `+`.
    SignDiscipline { position: usize, letter: Letter },
    /// A letter naming a component the pattern does not have.
    OutOfRange { position: usize, letter: Letter },
}

impl fmt::Display for WordProblem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WordProblem::UntwistedComponent(c) => write!(f, "untwisted component {c}"),
            WordProblem::SignDiscipline { position, letter } => {
                write!(
                    f,
                    "sign discipline: letter {letter} at position {}",
                    position + 1
                )
            }
            WordProblem::OutOfRange { position, letter } => {
                write!(
                    f,
                    "letter {letter} at position {} names no component",
                    position + 1
                )
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WordReport {
    pub alpha_counts: Vec<usize>,
    pub beta_counts: Vec<usize>,
    pub problems: Vec<WordProblem>,
}

impl WordReport {
    pub fn is_valid(&self) -> bool {
        self.problems.is_empty()
    }
}

pub fn validate_word(p: &IntersectionPattern, w: &TwistWord) -> WordReport {
    let mut alpha_counts = vec![0; p.n];
    let mut beta_counts = vec![0; p.m];
    let mut problems = Vec::new();
    for (position, &letter) in w.0.iter().enumerate() {
        if p.check_curve(letter.curve).is_err() {
            problems.push(WordProblem::OutOfRange { position, letter });
            continue;
        }
        if letter != Letter::new(letter.curve) {
            problems.push(WordProblem::SignDiscipline { position, letter });
        }
        match letter.curve.side {
            Side::Alpha => alpha_counts[letter.curve.index] += 1,
            Side::Beta => beta_counts[letter.curve.index] += 1,
        }
    }
    for c in p.curves() {
        let count = match c.side {
            Side::Alpha => alpha_counts[c.index],
            Side::Beta => beta_counts[c.index],
        };
        if count == 0 {
            problems.push(WordProblem::UntwistedComponent(c));
        }
    }
    WordReport {
        alpha_counts,
        beta_counts,
        problems,
    }
}

/// Block matrix `[[0, X], [Xᵀ, 0]]` in the basis `α_1..α_n, β_1..β_m`.
pub fn geometric_intersection_matrix(p: &IntersectionPattern) -> ExactMatrix {
    let size = p.curve_count();
    let mut g = ExactMatrix::zeros(size);
    for i in 0..p.n {
        for j in 0..p.m {
            let v = p.x[i][j];
            g.set_int(i, p.n + j, v);
            g.set_int(p.n + j, i, v);
        }
    }
    g
}

/// `I + R_c`, where `R_c` keeps only the row of curve `c`.
pub fn twist_matrix(p: &IntersectionPattern, c: Curve) -> Result<ExactMatrix> {
    p.check_curve(c)?;
    let g = geometric_intersection_matrix(p);
    let size = p.curve_count();
    let row = p.basis_index(c);
    let mut t = ExactMatrix::identity(size);
    for col in 0..size {
        let v = g.int(row, col).clone();
        if v != BigInt::from(0) {
            t.set_int(row, col, v);
        }
    }
    Ok(t)
}

/// `M_φ`: product of twist matrices, first letter rightmost.
pub fn penner_product(p: &IntersectionPattern, w: &TwistWord) -> Result<ExactMatrix> {
    let report = validate_word(p, w);
    if let Some(problem) = report.problems.first() {
        return Err(Error::InvalidWord(problem.to_string()));
    }
    if let Some(flat) = product_i64(p, w) {
        let size = p.curve_count();
        let rows: Vec<Vec<i64>> = flat.chunks(size).map(<[i64]>::to_vec).collect();
        return Ok(ExactMatrix::from_rows(&rows));
    }
    let mut acc = ExactMatrix::identity(p.curve_count());
    for l in &w.0 {
        acc = &twist_matrix(p, l.curve)? * &acc;
    }
    Ok(acc)
}

/// Product by row operations in `i64`; `None` on overflow. Assumes a valid word.
fn product_i64(p: &IntersectionPattern, w: &TwistWord) -> Option<Vec<i64>> {
    let size = p.curve_count();
    let mut m = vec![0i64; size * size];
    for i in 0..size {
        m[i * size + i] = 1;
    }
    let mut row = vec![0i64; size];
    for l in &w.0 {
        // (I + R_c)·M: row c gains Σ_k G[c][k]·(row k of M).
        let c = p.basis_index(l.curve);
        row.copy_from_slice(&m[c * size..(c + 1) * size]);
        let partners: Box<dyn Iterator<Item = (usize, i64)>> = match l.curve.side {
            Side::Alpha => Box::new((0..p.m).map(|j| (p.n + j, p.x[l.curve.index][j] as i64))),
            Side::Beta => Box::new((0..p.n).map(|i| (i, p.x[i][l.curve.index] as i64))),
        };
        for (k, g) in partners {
            if g == 0 {
                continue;
            }
            for col in 0..size {
                row[col] = row[col].checked_add(g.checked_mul(m[k * size + col])?)?;
            }
        }
        m[c * size..(c + 1) * size].copy_from_slice(&row);
    }
    Some(m)
}

/// Certified dilatation of the mapping class given by `w`.
pub fn dilatation(p: &IntersectionPattern, w: &TwistWord, tol: f64) -> Result<RootApproximation> {
    spectral_radius(&penner_product(p, w)?, tol)
}

/// Pattern and twist word of the mapping class realising the Coxeter
/// transformation of an alternating-sign graph: one twist per vertex, in
/// the order the reflections are applied.
pub fn coxeter_word(
    g: &MixedSignCoxeterGraph,
    order: &ReflectionOrder,
) -> Result<(IntersectionPattern, TwistWord)> {
    let (p, curves) = IntersectionPattern::from_alternating(g)?;
    if order.as_slice().len() != curves.len() {
        return Err(Error::InvalidParameter(
            "order must list every vertex".into(),
        ));
    }
    let w = TwistWord::from_curves(order.as_slice().iter().map(|&v| curves[v]));
    Ok((p, w))
}

/// Lower bound from a pair of components meeting `x >= 2` times: the larger
/// root of `t^2 - (2 + x^2)t + 1`, the spectral radius of
/// `[[1 + x^2, x], [x, 1]]`, which every product twisting both curves dominates.
#[derive(Clone, Debug, Serialize)]
pub struct DoubleIntersectionCertificate {
    pub alpha: usize,
    pub beta: usize,
    pub x: u32,
    pub polynomial: String,
    pub bound: RootApproximation,
}

pub fn double_intersection_certificate(
    p: &IntersectionPattern,
    tol: f64,
) -> Option<DoubleIntersectionCertificate> {
    let mut best: Option<(usize, usize, u32)> = None;
    for i in 0..p.n {
        for j in 0..p.m {
            let v = p.x[i][j];
            if v >= 2 && best.is_none_or(|(_, _, b)| v > b) {
                best = Some((i, j, v));
            }
        }
    }
    let (alpha, beta, x) = best?;
    let poly = double_intersection_polynomial(x);
    let bound = largest_real_root(&poly, tol).expect("quadratic with positive discriminant");
    Some(DoubleIntersectionCertificate {
        alpha,
        beta,
        x,
        polynomial: poly.to_string(),
        bound,
    })
}

/// `t^2 - (2 + x^2)t + 1`.
pub fn double_intersection_polynomial(x: u32) -> IntPolynomial {
    let x = i64::from(x);
    IntPolynomial::from_i64(&[1, -(2 + x * x), 1])
}

/// Outcome of [`minimize_over_words`].
#[derive(Clone, Debug, Serialize)]
pub struct WordSearchResult {
    pub word: TwistWord,
    pub value: RootApproximation,
    pub char_poly: String,
    /// Words evaluated (one per class under commutation and rotation).
    pub candidates: usize,
    pub distinct_char_polys: usize,
    pub extra_twist_check: Option<ExtraTwistCheck>,
}

/// Result of inserting up to `depth` additional letters into the minimiser.
#[derive(Clone, Debug, Serialize)]
pub struct ExtraTwistCheck {
    pub depth: usize,
    pub words_checked: usize,
    pub smallest: f64,
    pub never_decreases: bool,
}

pub const MAX_SEARCH_CURVES: usize = 12;

/// Smallest dilatation over words twisting every component exactly once.
///
/// Twists along disjoint curves commute, so a cyclic word is determined by
/// its alternating sequence of `α`-blocks and `β`-blocks; conjugation by a
/// rotation preserves the spectrum. Candidates are therefore enumerated as
/// `A_1 B_1 … A_k B_k` with `α_1 ∈ A_1` and ascending order inside blocks,
/// which covers every rotation class of single-twist words. Ties (within
/// `2·tol`) go to the lexicographically least word.
pub fn minimize_over_words(
    p: &IntersectionPattern,
    max_extra_twists: usize,
    tol: f64,
) -> Result<WordSearchResult> {
    if p.curve_count() > MAX_SEARCH_CURVES {
        return Err(Error::TooLarge {
            size: p.curve_count(),
            limit: MAX_SEARCH_CURVES,
        });
    }
    let words = single_twist_words(p);
    let mut evaluator = Evaluator::new(p, tol);
    let values = evaluator.evaluate(&words)?;
    let min = values.iter().map(|r| r.value).fold(f64::INFINITY, f64::min);
    let (best_idx, _) = words
        .iter()
        .enumerate()
        .filter(|(k, _)| values[*k].value <= min + 2.0 * tol)
        .min_by(|a, b| a.1.cmp(b.1))
        .expect("at least one candidate word");
    let word = words[best_idx].clone();
    let value = values[best_idx].clone();
    let extra_twist_check = (max_extra_twists > 0)
        .then(|| evaluator.extra_twist_check(&word, &value, max_extra_twists))
        .transpose()?;
    let char_poly = char_poly(&penner_product(p, &word)?).to_string();
    Ok(WordSearchResult {
        word,
        value,
        char_poly,
        candidates: words.len(),
        distinct_char_polys: evaluator.cache.len(),
        extra_twist_check,
    })
}

/// All alternating block words `A_1 B_1 … A_k B_k` with `α_1 ∈ A_1`.
pub fn single_twist_words(p: &IntersectionPattern) -> Vec<TwistWord> {
    let mut out = Vec::new();
    for k in 1..=p.n.min(p.m) {
        let alpha_parts = ordered_partitions(p.n, k, true);
        let beta_parts = ordered_partitions(p.m, k, false);
        for a in &alpha_parts {
            for b in &beta_parts {
                let mut letters = Vec::with_capacity(p.curve_count());
                for block in 0..k {
                    letters.extend(a[block].iter().map(|&i| Letter::new(Curve::alpha(i))));
                    letters.extend(b[block].iter().map(|&j| Letter::new(Curve::beta(j))));
                }
                out.push(TwistWord(letters));
            }
        }
    }
    out
}

/// Ordered partitions of `0..n` into `k` nonempty blocks (blocks ascending).
/// With `pin_first`, element 0 lies in the first block.
fn ordered_partitions(n: usize, k: usize, pin_first: bool) -> Vec<Vec<Vec<usize>>> {
    let mut out = Vec::new();
    let mut labels = vec![0usize; n];
    fn go(
        pos: usize,
        n: usize,
        k: usize,
        pin_first: bool,
        labels: &mut Vec<usize>,
        out: &mut Vec<Vec<Vec<usize>>>,
    ) {
        if pos == n {
            let mut blocks = vec![Vec::new(); k];
            for (e, &l) in labels.iter().enumerate() {
                blocks[l].push(e);
            }
            if blocks.iter().all(|b| !b.is_empty()) {
                out.push(blocks);
            }
            return;
        }
        let choices = if pos == 0 && pin_first { 0..1 } else { 0..k };
        for l in choices {
            labels[pos] = l;
            go(pos + 1, n, k, pin_first, labels, out);
        }
    }
    go(0, n, k, pin_first, &mut labels, &mut out);
    out
}

/// Batch evaluator caching certified roots by characteristic polynomial.
struct Evaluator<'a> {
    pattern: &'a IntersectionPattern,
    tol: f64,
    cache: HashMap<IntPolynomial, RootApproximation>,
}

impl<'a> Evaluator<'a> {
    fn new(pattern: &'a IntersectionPattern, tol: f64) -> Self {
        Self {
            pattern,
            tol,
            cache: HashMap::new(),
        }
    }

    fn evaluate(&mut self, words: &[TwistWord]) -> Result<Vec<RootApproximation>> {
        let p = self.pattern;
        let polys: Vec<IntPolynomial> = words
            .par_iter()
            .map(|w| penner_product(p, w).map(|m| char_poly(&m)))
            .collect::<Result<_>>()?;
        let mut fresh: Vec<&IntPolynomial> = polys
            .iter()
            .filter(|q| !self.cache.contains_key(q))
            .collect();
        fresh.sort();
        fresh.dedup();
        let tol = self.tol;
        let roots: Vec<(IntPolynomial, RootApproximation)> = fresh
            .par_iter()
            .map(|q| largest_real_root(q, tol).map(|r| ((*q).clone(), r)))
            .collect::<Result<_>>()?;
        self.cache.extend(roots);
        Ok(polys.iter().map(|q| self.cache[q].clone()).collect())
    }

    fn extra_twist_check(
        &mut self,
        word: &TwistWord,
        value: &RootApproximation,
        depth: usize,
    ) -> Result<ExtraTwistCheck> {
        let curves: Vec<Curve> = self.pattern.curves().collect();
        let mut frontier = vec![word.clone()];
        let mut words_checked = 0;
        let mut smallest = f64::INFINITY;
        let mut never_decreases = true;
        for _ in 0..depth {
            let mut next = Vec::new();
            for w in &frontier {
                for pos in 0..=w.len() {
                    for &c in &curves {
                        let mut v = w.0.clone();
                        v.insert(pos, Letter::new(c));
                        next.push(TwistWord(v));
                    }
                }
            }
            next.sort();
            next.dedup();
            let vals = self.evaluate(&next)?;
            words_checked += next.len();
            for r in &vals {
                smallest = smallest.min(r.value);
                if r.value + r.radius < value.value - value.radius - 2.0 * self.tol {
                    never_decreases = false;
                }
            }
            frontier = next;
        }
        Ok(ExtraTwistCheck {
            depth,
            words_checked,
            smallest,
            never_decreases,
        })
    }
}
