//! Cell decompositions cut out by a filling pair of multicurves.
//!
//! The intersection points are the 0-cells, the arcs between consecutive
//! points on a curve the 1-cells, and the complementary regions the 2-cells.
//! A framing (the cyclic order of points along each curve plus the sense of
//! every crossing) determines this decomposition as a combinatorial map.
//!
//! Every point carries four half-edges, indexed `4p + k` with
//! `k = 0: α forward, 1: β forward, 2: α backward, 3: β backward`. A positive
//! crossing rotates `0 → 1 → 2 → 3`, a negative one `0 → 3 → 2 → 1`. The arc
//! pairing joins the forward half-edge at a point with the backward half-edge
//! at the next point along the same curve. Faces are the orbits of
//! rotation ∘ pairing.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::coxeter::Sign;
use crate::error::{Error, Result};
use crate::graph::SimpleGraph;
use crate::penner::IntersectionPattern;

/// Upper limit on framings enumerated by [`genus_distribution`].
pub const MAX_FRAMINGS: u128 = 1 << 22;

/// A single-intersection pattern with a cyclic order of points along every
/// curve and a sense for every crossing.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FramedPattern {
    pattern: IntersectionPattern,
    /// For `α_i`, the `β` indices it meets, in order along `α_i`.
    alpha_orders: Vec<Vec<usize>>,
    /// For `β_j`, the `α` indices it meets, in order along `β_j`.
    beta_orders: Vec<Vec<usize>>,
    /// One sign per intersection point, points sorted by `(α, β)`.
    orientations: Vec<Sign>,
}

impl FramedPattern {
    pub fn new(
        pattern: IntersectionPattern,
        alpha_orders: Vec<Vec<usize>>,
        beta_orders: Vec<Vec<usize>>,
        orientations: Vec<Sign>,
    ) -> Result<Self> {
        check_frameable(&pattern)?;
        let n = pattern.alpha_count();
        let m = pattern.beta_count();
        if alpha_orders.len() != n || beta_orders.len() != m {
            return Err(Error::InvalidMap(
                "one cyclic order per curve is required".into(),
            ));
        }
        for (i, order) in alpha_orders.iter().enumerate() {
            let expected: Vec<usize> = (0..m)
                .filter(|&j| pattern.intersection(i, j) == 1)
                .collect();
            check_order(order, &expected, &format!("a{}", i + 1))?;
        }
        for (j, order) in beta_orders.iter().enumerate() {
            let expected: Vec<usize> = (0..n)
                .filter(|&i| pattern.intersection(i, j) == 1)
                .collect();
            check_order(order, &expected, &format!("b{}", j + 1))?;
        }
        let points = points(&pattern).len();
        if orientations.len() != points {
            return Err(Error::InvalidMap(format!(
                "{} crossing orientations given for {points} intersection points",
                orientations.len()
            )));
        }
        Ok(Self {
            pattern,
            alpha_orders,
            beta_orders,
            orientations,
        })
    }

    /// Ascending cyclic orders and positive crossings.
    pub fn standard(pattern: IntersectionPattern) -> Result<Self> {
        check_frameable(&pattern)?;
        let (a, b) = neighbour_lists(&pattern);
        let v = points(&pattern).len();
        Self::new(pattern, a, b, vec![Sign::Plus; v])
    }

    pub fn pattern(&self) -> &IntersectionPattern {
        &self.pattern
    }

    pub fn alpha_orders(&self) -> &[Vec<usize>] {
        &self.alpha_orders
    }

    pub fn beta_orders(&self) -> &[Vec<usize>] {
        &self.beta_orders
    }

    pub fn orientations(&self) -> &[Sign] {
        &self.orientations
    }

    /// Intersection points `(α, β)` in the order used by [`Self::orientations`].
    pub fn points(&self) -> Vec<(usize, usize)> {
        points(&self.pattern)
    }
}

fn check_order(order: &[usize], expected: &[usize], curve: &str) -> Result<()> {
    let mut sorted = order.to_vec();
    sorted.sort_unstable();
    if sorted != expected {
        return Err(Error::InvalidMap(format!(
            "cyclic order along {curve} must list each of its intersection points once"
        )));
    }
    Ok(())
}

fn check_frameable(p: &IntersectionPattern) -> Result<()> {
    if p.x().iter().flatten().any(|&v| v > 1) {
        return Err(Error::InvalidParameter(
            "framed patterns need intersection numbers 0 or 1".into(),
        ));
    }
    let g = p.intersection_graph();
    if let Some(v) = (0..g.vertex_count()).find(|&v| g.degree(v) == 0) {
        let c = p.curves().nth(v).expect("vertex is a curve");
        return Err(Error::InvalidParameter(format!(
            "curve {c} meets no other curve"
        )));
    }
    if !g.is_connected() {
        return Err(Error::InvalidParameter(
            "intersection graph is disconnected".into(),
        ));
    }
    Ok(())
}

fn points(p: &IntersectionPattern) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for i in 0..p.alpha_count() {
        for j in 0..p.beta_count() {
            if p.intersection(i, j) > 0 {
                out.push((i, j));
            }
        }
    }
    out
}

fn neighbour_lists(p: &IntersectionPattern) -> (Vec<Vec<usize>>, Vec<Vec<usize>>) {
    let a = (0..p.alpha_count())
        .map(|i| {
            (0..p.beta_count())
                .filter(|&j| p.intersection(i, j) > 0)
                .collect()
        })
        .collect();
    let b = (0..p.beta_count())
        .map(|j| {
            (0..p.alpha_count())
                .filter(|&i| p.intersection(i, j) > 0)
                .collect()
        })
        .collect();
    (a, b)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CellCounts {
    pub zero_cells: usize,
    pub one_cells: usize,
    pub two_cells: usize,
    pub euler_characteristic: i64,
    /// `None` when `χ` is odd or exceeds 2, which no closed orientable surface allows.
    pub genus: Option<u32>,
}

impl CellCounts {
    fn from_counts(v: usize, f: usize) -> Self {
        let e = 2 * v;
        let chi = v as i64 - e as i64 + f as i64;
        let genus = (chi <= 2 && chi % 2 == 0).then(|| ((2 - chi) / 2) as u32);
        Self {
            zero_cells: v,
            one_cells: e,
            two_cells: f,
            euler_characteristic: chi,
            genus,
        }
    }
}

pub fn trace_faces(f: &FramedPattern) -> Result<CellCounts> {
    let pts = f.points();
    let v = pts.len();
    let index: BTreeMap<(usize, usize), usize> =
        pts.iter().enumerate().map(|(k, &p)| (p, k)).collect();
    let mut pair = vec![usize::MAX; 4 * v];
    let mut link = |from: usize, to: usize| -> Result<()> {
        if pair[from] != usize::MAX || pair[to] != usize::MAX {
            return Err(Error::InvalidMap("half-edge paired twice".into()));
        }
        pair[from] = to;
        pair[to] = from;
        Ok(())
    };
    for (i, order) in f.alpha_orders.iter().enumerate() {
        for t in 0..order.len() {
            let here = index[&(i, order[t])];
            let next = index[&(i, order[(t + 1) % order.len()])];
            link(4 * here, 4 * next + 2)?;
        }
    }
    for (j, order) in f.beta_orders.iter().enumerate() {
        for t in 0..order.len() {
            let here = index[&(order[t], j)];
            let next = index[&(order[(t + 1) % order.len()], j)];
            link(4 * here + 1, 4 * next + 3)?;
        }
    }
    if pair.contains(&usize::MAX) {
        return Err(Error::InvalidMap("unpaired half-edge".into()));
    }
    let rotate = |h: usize| {
        let (p, k) = (h / 4, h % 4);
        let step = if f.orientations[p] == Sign::Plus {
            1
        } else {
            3
        };
        4 * p + (k + step) % 4
    };
    let mut seen = vec![false; 4 * v];
    let mut faces = 0;
    for start in 0..4 * v {
        if seen[start] {
            continue;
        }
        faces += 1;
        let mut h = start;
        while !seen[h] {
            seen[h] = true;
            h = rotate(pair[h]);
        }
    }
    Ok(CellCounts::from_counts(v, faces))
}

/// Number of framings of a pattern: `∏ (deg c − 1)!` over curves, times `2^V`.
pub fn framing_count(p: &IntersectionPattern) -> u128 {
    let g = p.intersection_graph();
    let orders: u128 = (0..g.vertex_count())
        .map(|v| (1..g.degree(v).max(1) as u128).product::<u128>())
        .product();
    orders.saturating_mul(
        1u128
            .checked_shl(g.edge_count() as u32)
            .unwrap_or(u128::MAX),
    )
}

/// Every framing, with cyclic orders normalised to start at their smallest entry.
pub fn all_framings(p: &IntersectionPattern) -> Result<Vec<FramedPattern>> {
    let choices = order_choices(p)?;
    let v = points(p).len();
    let mut out = Vec::new();
    for choice in &choices {
        for bits in 0..(1u64 << v) {
            out.push(framing_from(p, choice, bits));
        }
    }
    Ok(out)
}

/// Every combination of cyclic orders, one list per curve (`α` first).
fn order_choices(p: &IntersectionPattern) -> Result<Vec<Vec<Vec<usize>>>> {
    check_frameable(p)?;
    let count = framing_count(p);
    if count > MAX_FRAMINGS {
        return Err(Error::TooLarge {
            size: count.min(usize::MAX as u128) as usize,
            limit: MAX_FRAMINGS as usize,
        });
    }
    let (a, b) = neighbour_lists(p);
    let mut choices: Vec<Vec<Vec<usize>>> = vec![Vec::new()];
    for list in a.iter().chain(b.iter()) {
        let options = cyclic_orders(list);
        let mut next = Vec::with_capacity(choices.len() * options.len());
        for prefix in &choices {
            for o in &options {
                let mut c = prefix.clone();
                c.push(o.clone());
                next.push(c);
            }
        }
        choices = next;
    }
    Ok(choices)
}

fn framing_from(p: &IntersectionPattern, choice: &[Vec<usize>], bits: u64) -> FramedPattern {
    let n = p.alpha_count();
    let v = points(p).len();
    FramedPattern {
        pattern: p.clone(),
        alpha_orders: choice[..n].to_vec(),
        beta_orders: choice[n..].to_vec(),
        orientations: (0..v)
            .map(|k| {
                if bits >> k & 1 == 0 {
                    Sign::Plus
                } else {
                    Sign::Minus
                }
            })
            .collect(),
    }
}

/// Cyclic orders of `items` with the first element fixed.
fn cyclic_orders(items: &[usize]) -> Vec<Vec<usize>> {
    if items.len() <= 2 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    let mut rest = items[1..].to_vec();
    permutations(&mut rest, 0, &mut |perm| {
        let mut o = vec![items[0]];
        o.extend_from_slice(perm);
        out.push(o);
    });
    out
}

fn permutations(v: &mut Vec<usize>, k: usize, visit: &mut impl FnMut(&[usize])) {
    if k == v.len() {
        visit(v);
        return;
    }
    for i in k..v.len() {
        v.swap(k, i);
        permutations(v, k + 1, visit);
        v.swap(k, i);
    }
}

/// Number of framings realising each 2-cell count.
pub fn face_count_distribution(p: &IntersectionPattern) -> Result<BTreeMap<usize, u64>> {
    let choices = order_choices(p)?;
    let v = points(p).len();
    let partial: Vec<BTreeMap<usize, u64>> = choices
        .par_iter()
        .map(|choice| {
            let mut local = BTreeMap::new();
            for bits in 0..(1u64 << v) {
                let faces = trace_faces(&framing_from(p, choice, bits))?.two_cells;
                *local.entry(faces).or_insert(0) += 1;
            }
            Ok(local)
        })
        .collect::<Result<_>>()?;
    let mut out = BTreeMap::new();
    for local in partial {
        for (f, c) in local {
            *out.entry(f).or_insert(0) += c;
        }
    }
    Ok(out)
}

/// Number of framings filling each genus.
pub fn genus_distribution(p: &IntersectionPattern) -> Result<BTreeMap<u32, u64>> {
    let v = points(p).len();
    let mut out = BTreeMap::new();
    for (f, count) in face_count_distribution(p)? {
        let genus = CellCounts::from_counts(v, f)
            .genus
            .ok_or_else(|| Error::InvalidMap(format!("{f} faces on {v} points")))?;
        *out.entry(genus).or_insert(0) += count;
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum TreeFamily {
    A,
    D,
}

/// Genus filled by the `A_n` or `D_n` pattern under every framing.
pub fn tree_fill_genus(family: TreeFamily, n: usize) -> Result<u32> {
    match family {
        TreeFamily::A if n >= 2 => Ok((n / 2) as u32),
        TreeFamily::D if n >= 4 => Ok(((n - 1) / 2) as u32),
        TreeFamily::A => Err(Error::InvalidParameter(format!(
            "A_{n} does not fill; need n >= 2"
        ))),
        TreeFamily::D => Err(Error::InvalidParameter(format!(
            "D_{n} is undefined; need n >= 4"
        ))),
    }
}

/// Largest genus a `len`-cycle pattern can fill: the face count is even, hence at least two.
pub fn cycle_fill_genus_bound(len: usize) -> Result<u32> {
    if len < 4 || len % 2 == 1 {
        return Err(Error::InvalidParameter(format!(
            "cycle length {len} must be even and at least 4"
        )));
    }
    Ok((len / 2) as u32)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Parity {
    Even,
    Odd,
}

/// Parity of the 2-cell count: `χ = V − 2V + F` is even and `V = #edges`,
/// so `F ≡ #edges (mod 2)` for every framing.
pub fn face_parity(g: &SimpleGraph) -> Parity {
    if g.edge_count().is_multiple_of(2) {
        Parity::Even
    } else {
        Parity::Odd
    }
}

/// Genus bound from the smallest face count allowed by [`face_parity`].
pub fn parity_genus_bound(g: &SimpleGraph) -> Result<u32> {
    if g.edge_count() == 0 || !g.is_connected() {
        return Err(Error::InvalidParameter(
            "need a connected graph with an edge".into(),
        ));
    }
    let e = g.edge_count();
    let min_faces = if face_parity(g) == Parity::Odd { 1 } else { 2 };
    Ok(((2 + e - min_faces) / 2) as u32)
}
