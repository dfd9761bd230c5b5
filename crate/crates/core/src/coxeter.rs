//! Mixed-sign Coxeter graphs and their Coxeter transformations.
//!
//! A mixed-sign Coxeter graph is a simple graph with a sign on every vertex.
//! The sign fixes the diagonal of the symmetric bilinear form `B`
//! (`B(v_i, v_i) = -2·sign_i`, off-diagonal entries are the adjacency matrix),
//! and each vertex gives a reflection of `R^V` orthogonal to it with respect
//! to `B`. Products of all reflections, each used once, are the Coxeter
//! transformations; minus a Coxeter transformation is the homological action
//! of the corresponding mapping class.

use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::SimpleGraph;
use crate::matrix::ExactMatrix;
use crate::poly::IntPolynomial;
use crate::roots::{complex_roots, largest_real_root, RootApproximation};
use crate::spectral::{char_poly, solve_reciprocal_sum};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn flip(self) -> Self {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

/// Which sign assignment to put on a named diagram.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SignPattern {
    /// Every vertex `+` (the classical case).
    AllPlus,
    /// Signs follow the bipartition; the class of the lowest vertex gets `+`.
    Alternating,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct MixedSignCoxeterGraph {
    graph: SimpleGraph,
    signs: Vec<Sign>,
}

impl MixedSignCoxeterGraph {
    pub fn new(graph: SimpleGraph, signs: Vec<Sign>) -> Result<Self> {
        if graph.vertex_count() == 0 {
            return Err(Error::InvalidParameter("graph has no vertices".into()));
        }
        if signs.len() != graph.vertex_count() {
            return Err(Error::InvalidParameter(format!(
                "{} signs for {} vertices",
                signs.len(),
                graph.vertex_count()
            )));
        }
        Ok(Self { graph, signs })
    }

    pub fn with_pattern(graph: SimpleGraph, pattern: SignPattern) -> Result<Self> {
        match pattern {
            SignPattern::AllPlus => {
                let n = graph.vertex_count();
                Self::new(graph, vec![Sign::Plus; n])
            }
            SignPattern::Alternating => {
                let colors = graph.bipartition().ok_or(Error::NotBipartite)?;
                let signs = colors
                    .into_iter()
                    .map(|c| if c { Sign::Minus } else { Sign::Plus })
                    .collect();
                Self::new(graph, signs)
            }
        }
    }

    pub fn graph(&self) -> &SimpleGraph {
        &self.graph
    }

    pub fn signs(&self) -> &[Sign] {
        &self.signs
    }

    pub fn vertex_count(&self) -> usize {
        self.graph.vertex_count()
    }

    /// Every edge joins vertices of opposite sign.
    pub fn is_alternating(&self) -> bool {
        self.graph
            .edges()
            .iter()
            .all(|&(a, b)| self.signs[a] != self.signs[b])
    }

    pub fn is_classical(&self) -> bool {
        self.signs.iter().all(|&s| s == Sign::Plus)
    }

    /// The same graph with every sign flipped.
    pub fn flipped(&self) -> Self {
        Self {
            graph: self.graph.clone(),
            signs: self.signs.iter().map(|s| s.flip()).collect(),
        }
    }
}

/// A permutation of the vertices giving the order in which reflections are applied.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct ReflectionOrder(Vec<usize>);

impl ReflectionOrder {
    pub fn new(order: Vec<usize>, n: usize) -> Result<Self> {
        let mut seen = vec![false; n];
        if order.len() != n {
            return Err(Error::InvalidParameter(format!(
                "order lists {} vertices, graph has {n}",
                order.len()
            )));
        }
        for &v in &order {
            if v >= n || seen[v] {
                return Err(Error::InvalidParameter(format!(
                    "order is not a permutation of 0..{n}"
                )));
            }
            seen[v] = true;
        }
        Ok(Self(order))
    }

    pub fn identity(n: usize) -> Self {
        Self((0..n).collect())
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }
}

/// Symmetric bilinear form `B`.
pub fn bilinear_form(g: &MixedSignCoxeterGraph) -> ExactMatrix {
    let mut b = g.graph.adjacency_matrix();
    for (i, s) in g.signs.iter().enumerate() {
        b.set_int(i, i, -2 * s.value());
    }
    b
}

/// Matrix of `s_i(v_j) = v_j - 2·B(v_i, v_j)/B(v_i, v_i)·v_i` in the vertex basis
/// (column `j` is the image of `v_j`).
pub fn reflection(g: &MixedSignCoxeterGraph, i: usize) -> ExactMatrix {
    let n = g.vertex_count();
    assert!(i < n, "vertex {i} out of range");
    let b = bilinear_form(g);
    let bii = b.get(i, i);
    let two = BigRational::from_integer(2.into());
    let mut entries = vec![BigRational::zero(); n * n];
    for j in 0..n {
        entries[j * n + j] = BigRational::from_integer(1.into());
    }
    for j in 0..n {
        let coeff = &two * b.get(i, j) / &bii;
        entries[i * n + j] -= coeff;
    }
    ExactMatrix::from_rationals(n, &entries)
}

/// Product of all reflections; the first vertex of `order` is applied first.
pub fn coxeter_transformation(g: &MixedSignCoxeterGraph, order: &ReflectionOrder) -> ExactMatrix {
    let n = g.vertex_count();
    assert_eq!(order.0.len(), n, "order must list every vertex");
    if let Some(rows) = coxeter_rows_i64(g, order) {
        return ExactMatrix::from_rows(&rows);
    }
    order
        .0
        .iter()
        .fold(ExactMatrix::identity(n), |acc, &v| &reflection(g, v) * &acc)
}

/// Same product by row operations: `s_v` differs from the identity only in
/// row `v`, which is `-e_v + sign_v·Σ_{u ~ v} e_u`. `None` on overflow.
fn coxeter_rows_i64(g: &MixedSignCoxeterGraph, order: &ReflectionOrder) -> Option<Vec<Vec<i64>>> {
    let n = g.vertex_count();
    let mut m: Vec<Vec<i64>> = (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect();
    for &v in &order.0 {
        let s = g.signs[v].value();
        let mut row: Vec<i64> = m[v].iter().map(|x| -x).collect();
        for &u in g.graph.neighbors(v) {
            for (r, x) in row.iter_mut().zip(&m[u]) {
                *r = r.checked_add(s.checked_mul(*x)?)?;
            }
        }
        m[v] = row;
    }
    Some(m)
}

/// One bipartition class first, then the other, ascending within each class.
///
/// With alternating signs the `-` class goes first; otherwise the class not
/// containing vertex 0 does.
pub fn bipartite_order(g: &MixedSignCoxeterGraph) -> Result<ReflectionOrder> {
    let colors = g.graph.bipartition().ok_or(Error::NotBipartite)?;
    let n = g.vertex_count();
    let first: Vec<bool> = if g.is_alternating() {
        g.signs.iter().map(|&s| s == Sign::Minus).collect()
    } else {
        colors
    };
    let mut order: Vec<usize> = (0..n).filter(|&v| first[v]).collect();
    order.extend((0..n).filter(|&v| !first[v]));
    Ok(ReflectionOrder(order))
}

/// Minus the Coxeter transformation.
pub fn homological_action(g: &MixedSignCoxeterGraph, order: &ReflectionOrder) -> ExactMatrix {
    -coxeter_transformation(g, order)
}

/// Spectral data of a (generally signed) integer matrix.
#[derive(Clone, Debug, Serialize)]
pub struct CoxeterSpectrum {
    pub char_poly: String,
    #[serde(skip)]
    pub poly: IntPolynomial,
    /// Largest modulus among all eigenvalues (numeric).
    pub spectral_radius: f64,
    /// Certified largest real eigenvalue, when it attains the spectral radius.
    pub certified: Option<RootApproximation>,
}

pub fn spectrum(m: &ExactMatrix, tol: f64) -> CoxeterSpectrum {
    let poly = char_poly(m);
    let roots = complex_roots(&poly);
    let spectral_radius = roots.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let certified = largest_real_root(&poly, tol)
        .ok()
        .filter(|r| (r.value - spectral_radius).abs() <= 1e-6 * spectral_radius.max(1.0));
    // The certified root is exact where the floating estimate is not.
    let spectral_radius = certified.as_ref().map_or(spectral_radius, |r| r.value);
    CoxeterSpectrum {
        char_poly: poly.to_string(),
        poly,
        spectral_radius,
        certified,
    }
}

/// Eigenvalues (numeric, with multiplicity) of an integer matrix.
pub fn eigenvalues(m: &ExactMatrix) -> Vec<Complex64> {
    complex_roots(&char_poly(m))
}

/// Dilatation of the alternating-sign class from the real part of a
/// unit-circle eigenvalue of the classical one: the larger root of
/// `lambda + 1/lambda = 4 - 2·Re(mu)`.
pub fn classical_to_alternating(mu_real_part: f64) -> Result<f64> {
    solve_reciprocal_sum(4.0 - 2.0 * mu_real_part)
}

/// Alexander polynomial of the torus knot `T(2, 2g+1)`,
/// `(t^(4g+2) - 1)(t - 1) / ((t^(2g+1) - 1)(t^2 - 1))`, by exact division.
pub fn alexander_torus_2_odd(g: u32) -> Result<IntPolynomial> {
    if g == 0 {
        return Err(Error::InvalidParameter("genus must be at least 1".into()));
    }
    let g = g as usize;
    let num = IntPolynomial::power_minus_one(4 * g + 2).mul(&IntPolynomial::power_minus_one(1));
    let den = IntPolynomial::power_minus_one(2 * g + 1).mul(&IntPolynomial::power_minus_one(2));
    Ok(num.div_exact(&den).expect("cyclotomic quotient is exact"))
}

/// Roots of `alexander_torus_2_odd(g)`, found among the `(4g+2)`-th roots of unity.
pub fn alexander_roots(g: u32) -> Result<Vec<Complex64>> {
    let delta = alexander_torus_2_odd(g)?;
    let order = 4 * g as usize + 2;
    let roots: Vec<Complex64> = (0..order)
        .map(|k| Complex64::from_polar(1.0, 2.0 * PI * k as f64 / order as f64))
        .filter(|&z| delta.eval_complex(z).norm() < 1e-8)
        .collect();
    debug_assert_eq!(roots.len(), delta.degree());
    Ok(roots)
}

/// Smallest real part among the roots of the `T(2, 2g+1)` Alexander polynomial.
pub fn alexander_min_real_part(g: u32) -> Result<f64> {
    Ok(alexander_roots(g)?
        .iter()
        .map(|z| z.re)
        .fold(f64::INFINITY, f64::min))
}

/// `2 - c + sqrt(3 - 4c + c^2)` with `c = cos((2g-1)π/(2g+1))`.
pub fn lambda_closed_form(g: u32) -> f64 {
    assert!(g >= 1, "genus must be at least 1");
    let c = ((2 * g - 1) as f64 / (2 * g + 1) as f64 * PI).cos();
    2.0 - c + (3.0 - 4.0 * c + c * c).sqrt()
}

/// Named simply-laced diagrams and the two non-tree shapes the search needs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum DynkinType {
    A(usize),
    D(usize),
    E6,
    E7,
    E8,
    /// Affine `D~_n` on `n + 1` vertices.
    AffineD(usize),
    AffineE6,
    AffineE7,
    AffineE8,
    /// Cycle of the given length.
    Cycle(usize),
    /// Six-cycle with one pendant vertex. This shape is an assumption: it
    /// is bipartite, contains `E_7`, avoids 4-cycles and affine subgraphs,
    /// and has seven vertices, but the intended diagram may differ. Treat
    /// values derived from it as indicative.
    EnrichedSixCycle,
}

impl DynkinType {
    pub fn is_affine(self) -> bool {
        matches!(
            self,
            DynkinType::AffineD(_)
                | DynkinType::AffineE6
                | DynkinType::AffineE7
                | DynkinType::AffineE8
        )
    }

    pub fn vertex_count(self) -> usize {
        match self {
            DynkinType::A(n) | DynkinType::D(n) | DynkinType::Cycle(n) => n,
            DynkinType::E6 => 6,
            DynkinType::E7 | DynkinType::EnrichedSixCycle => 7,
            DynkinType::E8 => 8,
            DynkinType::AffineD(n) => n + 1,
            DynkinType::AffineE6 => 7,
            DynkinType::AffineE7 => 8,
            DynkinType::AffineE8 => 9,
        }
    }

    /// The underlying graph, with the vertex numbering used throughout.
    pub fn graph(self) -> Result<SimpleGraph> {
        let bad = |msg: &str| Err(Error::InvalidParameter(format!("{self}: {msg}")));
        let with_leaf = |path: usize, at: usize| {
            let mut g = SimpleGraph::path(path);
            g.add_vertex(&[at]);
            g
        };
        Ok(match self {
            DynkinType::A(n) => {
                if n < 1 {
                    return bad("need n >= 1");
                }
                SimpleGraph::path(n)
            }
            DynkinType::D(n) => {
                if n < 4 {
                    return bad("need n >= 4");
                }
                with_leaf(n - 1, 1)
            }
            DynkinType::E6 => with_leaf(5, 2),
            DynkinType::E7 => with_leaf(6, 2),
            DynkinType::E8 => with_leaf(7, 2),
            DynkinType::AffineD(n) => {
                if n < 4 {
                    return bad("need n >= 4");
                }
                let mut g = with_leaf(n - 1, 1);
                g.add_vertex(&[n - 3]);
                g
            }
            DynkinType::AffineE6 => {
                let mut g = with_leaf(5, 2);
                g.add_vertex(&[5]);
                g
            }
            DynkinType::AffineE7 => with_leaf(7, 3),
            DynkinType::AffineE8 => with_leaf(8, 2),
            DynkinType::Cycle(n) => {
                if n < 4 || n % 2 == 1 {
                    return bad("need an even length >= 4");
                }
                SimpleGraph::cycle(n)
            }
            DynkinType::EnrichedSixCycle => {
                let mut g = SimpleGraph::cycle(6);
                g.add_vertex(&[0]);
                g
            }
        })
    }

    /// Recognises a graph up to isomorphism among the named shapes.
    pub fn identify(g: &SimpleGraph) -> Option<Self> {
        let n = g.vertex_count();
        if n == 0 || !g.is_connected() {
            return None;
        }
        let degrees: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
        let max_deg = degrees.iter().copied().max().unwrap_or(0);
        if g.is_tree() {
            if max_deg <= 2 {
                return Some(DynkinType::A(n));
            }
            let branch: Vec<usize> = (0..n).filter(|&v| degrees[v] >= 3).collect();
            if branch.len() == 1 {
                let c = branch[0];
                let mut arms: Vec<usize> = g
                    .neighbors(c)
                    .iter()
                    .map(|&w| arm_length(g, c, w))
                    .collect();
                arms.sort_unstable();
                return match arms.as_slice() {
                    [1, 1, 1, 1] => Some(DynkinType::AffineD(4)),
                    [1, 1, k] => Some(DynkinType::D(k + 3)),
                    [1, 2, 2] => Some(DynkinType::E6),
                    [1, 2, 3] => Some(DynkinType::E7),
                    [1, 2, 4] => Some(DynkinType::E8),
                    [2, 2, 2] => Some(DynkinType::AffineE6),
                    [1, 3, 3] => Some(DynkinType::AffineE7),
                    [1, 2, 5] => Some(DynkinType::AffineE8),
                    _ => None,
                };
            }
            if branch.len() == 2 && branch.iter().all(|&b| degrees[b] == 3) {
                let leaf_pairs = branch
                    .iter()
                    .all(|&b| g.neighbors(b).iter().filter(|&&w| degrees[w] == 1).count() == 2);
                if leaf_pairs && degrees.iter().filter(|&&d| d == 1).count() == 4 {
                    return Some(DynkinType::AffineD(n - 1));
                }
            }
            return None;
        }
        if degrees.iter().all(|&d| d == 2) {
            return n.is_multiple_of(2).then_some(DynkinType::Cycle(n));
        }
        if n == 7 && g.edge_count() == 7 {
            let leaves = g.leaves();
            if leaves.len() == 1 {
                let core = g.remove_vertex(leaves[0]);
                let is_cycle = core.is_connected() && (0..6).all(|v| core.degree(v) == 2);
                if is_cycle {
                    return Some(DynkinType::EnrichedSixCycle);
                }
            }
        }
        None
    }
}

/// Number of vertices on the arm leaving `center` through `first` (a path in a tree).
fn arm_length(g: &SimpleGraph, center: usize, first: usize) -> usize {
    let (mut prev, mut cur, mut len) = (center, first, 1);
    loop {
        let next: Vec<usize> = g
            .neighbors(cur)
            .iter()
            .copied()
            .filter(|&w| w != prev)
            .collect();
        match next.as_slice() {
            [w] => {
                prev = cur;
                cur = *w;
                len += 1;
            }
            _ => return len,
        }
    }
}

impl fmt::Display for DynkinType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DynkinType::A(n) => write!(f, "A_{n}"),
            DynkinType::D(n) => write!(f, "D_{n}"),
            DynkinType::E6 => write!(f, "E_6"),
            DynkinType::E7 => write!(f, "E_7"),
            DynkinType::E8 => write!(f, "E_8"),
            DynkinType::AffineD(n) => write!(f, "~D_{n}"),
            DynkinType::AffineE6 => write!(f, "~E_6"),
            DynkinType::AffineE7 => write!(f, "~E_7"),
            DynkinType::AffineE8 => write!(f, "~E_8"),
            DynkinType::Cycle(n) => write!(f, "{n}-cycle"),
            DynkinType::EnrichedSixCycle => write!(f, "enriched 6-cycle"),
        }
    }
}

/// The named diagram with the requested signs.
pub fn dynkin_graph(kind: DynkinType, signs: SignPattern) -> Result<MixedSignCoxeterGraph> {
    MixedSignCoxeterGraph::with_pattern(kind.graph()?, signs)
}

/// Dilatation `3 + 2√2` of an affine diagram with alternating signs, paired
/// with the directly computed spectral radius of its homological action.
#[derive(Clone, Debug, Serialize)]
pub struct AffineDilatation {
    pub diagram: DynkinType,
    pub closed_form: f64,
    pub computed: RootApproximation,
    pub spectral_radius: f64,
}

pub fn affine_alternating_dilatation(
    g: &MixedSignCoxeterGraph,
    tol: f64,
) -> Result<AffineDilatation> {
    let diagram = DynkinType::identify(g.graph())
        .filter(|d| d.is_affine())
        .ok_or(Error::NotAffine)?;
    if !g.is_alternating() {
        return Err(Error::InvalidParameter(
            "affine check needs alternating signs".into(),
        ));
    }
    let closed_form = classical_to_alternating(-1.0)?;
    let h = homological_action(g, &bipartite_order(g)?);
    let spec = spectrum(&h, tol);
    let computed = largest_real_root(&spec.poly, tol)?;
    Ok(AffineDilatation {
        diagram,
        closed_form,
        computed,
        spectral_radius: spec.spectral_radius,
    })
}

/// `cos` of the angle of the dominant Alexander root; used by the closed form.
pub fn dominant_alexander_angle(g: u32) -> f64 {
    ((2 * g - 1) as f64 / (2 * g + 1) as f64 * PI).cos()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> ExactMatrix {
        ExactMatrix::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>())
    }

    fn a2_mixed() -> MixedSignCoxeterGraph {
        MixedSignCoxeterGraph::new(SimpleGraph::path(2), vec![Sign::Plus, Sign::Minus]).unwrap()
    }

    #[test]
    fn bilinear_form_examples() {
        let single = MixedSignCoxeterGraph::new(SimpleGraph::path(1), vec![Sign::Plus]).unwrap();
        assert_eq!(bilinear_form(&single), m(&[&[-2]]));
        assert_eq!(bilinear_form(&a2_mixed()), m(&[&[-2, 1], &[1, 2]]));
        let c4 = dynkin_graph(DynkinType::Cycle(4), SignPattern::Alternating).unwrap();
        assert_eq!(
            bilinear_form(&c4),
            m(&[&[-2, 1, 0, 1], &[1, 2, 1, 0], &[0, 1, -2, 1], &[1, 0, 1, 2]])
        );
    }

    #[test]
    fn reflection_examples() {
        let g = a2_mixed();
        // s_1: v_1 -> -v_1, v_2 -> v_2 + v_1
        assert_eq!(reflection(&g, 0), m(&[&[-1, 1], &[0, 1]]));
        // s_2: v_1 -> v_1 - v_2, v_2 -> -v_2
        assert_eq!(reflection(&g, 1), m(&[&[1, 0], &[-1, -1]]));
    }

    #[test]
    fn coxeter_transformation_examples() {
        let single = MixedSignCoxeterGraph::new(SimpleGraph::path(1), vec![Sign::Plus]).unwrap();
        assert_eq!(
            coxeter_transformation(&single, &ReflectionOrder::identity(1)),
            m(&[&[-1]])
        );
        assert_eq!(
            homological_action(&single, &ReflectionOrder::identity(1)),
            m(&[&[1]])
        );
        let g = a2_mixed();
        let order = ReflectionOrder::new(vec![1, 0], 2).unwrap();
        assert_eq!(
            coxeter_transformation(&g, &order),
            m(&[&[-2, -1], &[-1, -1]])
        );
        assert_eq!(bipartite_order(&g).unwrap(), order);
        assert_eq!(homological_action(&g, &order), m(&[&[2, 1], &[1, 1]]));
    }

    #[test]
    fn row_operations_match_reflection_products() {
        let graph = DynkinType::EnrichedSixCycle.graph().unwrap();
        for bits in [0u32, 0b1010101, 0b0110011, 0b1111111] {
            let signs = (0..7)
                .map(|v| {
                    if bits >> v & 1 == 1 {
                        Sign::Minus
                    } else {
                        Sign::Plus
                    }
                })
                .collect();
            let g = MixedSignCoxeterGraph::new(graph.clone(), signs).unwrap();
            let order = ReflectionOrder::new(vec![3, 0, 6, 1, 5, 2, 4], 7).unwrap();
            let slow = order
                .as_slice()
                .iter()
                .fold(ExactMatrix::identity(7), |acc, &v| {
                    &reflection(&g, v) * &acc
                });
            assert_eq!(coxeter_transformation(&g, &order), slow);
        }
    }

    #[test]
    fn bipartite_orders() {
        let c4 = dynkin_graph(DynkinType::Cycle(4), SignPattern::Alternating).unwrap();
        assert_eq!(bipartite_order(&c4).unwrap().as_slice(), &[1, 3, 0, 2]);
        let a4 = dynkin_graph(DynkinType::A(4), SignPattern::Alternating).unwrap();
        assert_eq!(bipartite_order(&a4).unwrap().as_slice(), &[1, 3, 0, 2]);
        let tri = MixedSignCoxeterGraph::with_pattern(SimpleGraph::cycle(3), SignPattern::AllPlus)
            .unwrap();
        assert_eq!(bipartite_order(&tri), Err(Error::NotBipartite));
        assert_eq!(
            MixedSignCoxeterGraph::with_pattern(SimpleGraph::cycle(3), SignPattern::Alternating),
            Err(Error::NotBipartite)
        );
    }

    #[test]
    fn reflection_order_validation() {
        assert!(ReflectionOrder::new(vec![0, 0], 2).is_err());
        assert!(ReflectionOrder::new(vec![0], 2).is_err());
        assert!(ReflectionOrder::new(vec![0, 2], 2).is_err());
    }

    #[test]
    fn alexander_polynomials() {
        assert_eq!(
            alexander_torus_2_odd(1).unwrap(),
            IntPolynomial::from_i64(&[1, -1, 1])
        );
        assert_eq!(
            alexander_torus_2_odd(2).unwrap(),
            IntPolynomial::from_i64(&[1, -1, 1, -1, 1])
        );
        for g in 1..=12 {
            let d = alexander_torus_2_odd(g).unwrap();
            assert_eq!(d.degree(), 2 * g as usize);
            assert_eq!(
                d.eval_rational(&BigRational::from_integer(1.into())),
                BigRational::from_integer(1.into())
            );
            for z in complex_roots(&d) {
                assert!((z.norm() - 1.0).abs() < 1e-12);
            }
            assert_eq!(alexander_roots(g).unwrap().len(), 2 * g as usize);
        }
        assert!(alexander_torus_2_odd(0).is_err());
    }

    #[test]
    fn dominant_alexander_root_is_xi_power() {
        for g in 1..=10u32 {
            let expected = dominant_alexander_angle(g);
            assert!((alexander_min_real_part(g).unwrap() - expected).abs() < 1e-12);
        }
    }

    #[test]
    fn classical_to_alternating_examples() {
        assert_eq!(classical_to_alternating(1.0).unwrap(), 1.0);
        assert!((classical_to_alternating(-1.0).unwrap() - (3.0 + 8f64.sqrt())).abs() < 1e-14);
        assert!((classical_to_alternating(0.5).unwrap() - (3.0 + 5f64.sqrt()) / 2.0).abs() < 1e-14);
    }

    #[test]
    fn closed_form_values() {
        assert!((lambda_closed_form(1) - (3.0 + 5f64.sqrt()) / 2.0).abs() < 1e-12);
        assert!((lambda_closed_form(3) - 5.049).abs() < 1e-3);
        assert!((lambda_closed_form(4) - 5.345).abs() < 1e-3);
    }

    #[test]
    fn diagram_shapes() {
        assert_eq!(DynkinType::A(2).graph().unwrap(), SimpleGraph::path(2));
        let d4t = DynkinType::AffineD(4).graph().unwrap();
        assert_eq!(d4t.vertex_count(), 5);
        assert_eq!((0..5).map(|v| d4t.degree(v)).max(), Some(4));
        for kind in [
            DynkinType::A(7),
            DynkinType::D(4),
            DynkinType::D(9),
            DynkinType::E6,
            DynkinType::E7,
            DynkinType::E8,
            DynkinType::AffineD(4),
            DynkinType::AffineD(5),
            DynkinType::AffineD(8),
            DynkinType::AffineE6,
            DynkinType::AffineE7,
            DynkinType::AffineE8,
            DynkinType::Cycle(6),
            DynkinType::EnrichedSixCycle,
        ] {
            let g = kind.graph().unwrap();
            assert_eq!(g.vertex_count(), kind.vertex_count(), "{kind}");
            assert_eq!(DynkinType::identify(&g), Some(kind), "{kind}");
        }
        assert!(DynkinType::D(3).graph().is_err());
        assert!(DynkinType::Cycle(5).graph().is_err());
    }

    #[test]
    fn affine_d4_dilatation() {
        let g = dynkin_graph(DynkinType::AffineD(4), SignPattern::Alternating).unwrap();
        let a = affine_alternating_dilatation(&g, 1e-12).unwrap();
        let target = 3.0 + 2.0 * 2f64.sqrt();
        assert!((a.closed_form - target).abs() < 1e-14);
        assert!(a.computed.agrees_with(target, 1e-9));
        assert!((a.spectral_radius - target).abs() < 1e-9);
        let a4 = dynkin_graph(DynkinType::A(4), SignPattern::Alternating).unwrap();
        assert_eq!(
            affine_alternating_dilatation(&a4, 1e-12).unwrap_err(),
            Error::NotAffine
        );
    }

    #[test]
    fn a4_alternating_matches_closed_form() {
        let g = dynkin_graph(DynkinType::A(4), SignPattern::Alternating).unwrap();
        let s = spectrum(
            &homological_action(&g, &bipartite_order(&g).unwrap()),
            1e-12,
        );
        let r = s.certified.expect("largest real root attains the radius");
        assert!((r.value - 4.390_256_884_515_5).abs() < 1e-9);
        assert!((r.value - lambda_closed_form(2)).abs() < 1e-9);
    }
}
