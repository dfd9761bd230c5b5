//! Backtracking subgraph monomorphism for small graphs.

use std::collections::VecDeque;

use crate::graph::SimpleGraph;

/// An injective vertex map `h → g` sending edges to edges (not necessarily
/// induced), as `map[v_h] = v_g`.
pub fn contains_subgraph(g: &SimpleGraph, h: &SimpleGraph) -> Option<Vec<usize>> {
    let nh = h.vertex_count();
    if nh == 0 {
        return Some(Vec::new());
    }
    if nh > g.vertex_count() || h.edge_count() > g.edge_count() {
        return None;
    }
    let order = search_order(h);
    let mut map = vec![usize::MAX; nh];
    let mut used = vec![false; g.vertex_count()];
    extend(g, h, &order, 0, &mut map, &mut used).then_some(map)
}

/// Vertices of `h`, each component started at its highest-degree vertex and
/// traversed breadth first so that later vertices usually have a placed neighbour.
fn search_order(h: &SimpleGraph) -> Vec<usize> {
    let n = h.vertex_count();
    let mut seen = vec![false; n];
    let mut order = Vec::with_capacity(n);
    let mut starts: Vec<usize> = (0..n).collect();
    starts.sort_by_key(|&v| std::cmp::Reverse(h.degree(v)));
    for s in starts {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut queue = VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            order.push(v);
            for &w in h.neighbors(v) {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
    }
    order
}

fn extend(
    g: &SimpleGraph,
    h: &SimpleGraph,
    order: &[usize],
    depth: usize,
    map: &mut [usize],
    used: &mut [bool],
) -> bool {
    if depth == order.len() {
        return true;
    }
    let v = order[depth];
    let anchor = h
        .neighbors(v)
        .iter()
        .find(|&&w| map[w] != usize::MAX)
        .copied();
    let candidates: Vec<usize> = match anchor {
        Some(w) => g.neighbors(map[w]).to_vec(),
        None => (0..g.vertex_count()).collect(),
    };
    for c in candidates {
        if used[c] || g.degree(c) < h.degree(v) {
            continue;
        }
        let fits = h
            .neighbors(v)
            .iter()
            .all(|&w| map[w] == usize::MAX || g.has_edge(c, map[w]));
        if !fits {
            continue;
        }
        map[v] = c;
        used[c] = true;
        if extend(g, h, order, depth + 1, map, used) {
            return true;
        }
        map[v] = usize::MAX;
        used[c] = false;
    }
    false
}
