#![allow(dead_code)]

use penner_core::graph::SimpleGraph;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Tree decoded from a Prüfer sequence.
pub fn tree_from_pruefer(n: usize, seq: &[usize]) -> SimpleGraph {
    if n == 1 {
        return SimpleGraph::empty(1);
    }
    let mut degree = vec![1usize; n];
    for &s in seq {
        degree[s] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    for &s in seq {
        let leaf = (0..n).find(|&v| degree[v] == 1).expect("a leaf exists");
        edges.push((leaf, s));
        degree[leaf] -= 1;
        degree[s] -= 1;
    }
    let rest: Vec<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    edges.push((rest[0], rest[1]));
    SimpleGraph::new(n, &edges).expect("Prüfer decoding gives a tree")
}

pub fn random_tree(rng: &mut impl Rng, n: usize) -> SimpleGraph {
    let seq: Vec<usize> = (0..n.saturating_sub(2))
        .map(|_| rng.gen_range(0..n))
        .collect();
    tree_from_pruefer(n, &seq)
}

/// Every labelled tree on `n` vertices (`n^(n-2)` of them).
pub fn all_labelled_trees(n: usize) -> Vec<SimpleGraph> {
    if n <= 2 {
        return vec![if n == 2 {
            SimpleGraph::path(2)
        } else {
            SimpleGraph::empty(n)
        }];
    }
    let len = n - 2;
    let total = n.pow(len as u32);
    (0..total)
        .map(|mut code| {
            let seq: Vec<usize> = (0..len)
                .map(|_| {
                    let d = code % n;
                    code /= n;
                    d
                })
                .collect();
            tree_from_pruefer(n, &seq)
        })
        .collect()
}

pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

pub fn sorted(mut v: Vec<f64>) -> Vec<f64> {
    v.sort_by(f64::total_cmp);
    v
}

pub fn close_multisets(a: Vec<f64>, b: Vec<f64>, tol: f64) -> bool {
    let (a, b) = (sorted(a), sorted(b));
    a.len() == b.len() && a.iter().zip(&b).all(|(x, y)| (x - y).abs() <= tol)
}
