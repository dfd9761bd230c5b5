mod common;

use num_bigint::BigInt;
use num_rational::BigRational;
use penner_core::coxeter::{bipartite_order, homological_action};
use penner_core::penner::{
    dilatation, geometric_intersection_matrix, minimize_over_words, penner_product, Curve, Letter,
};
use penner_core::spectral::char_poly;
use penner_core::{
    ExactMatrix, IntersectionPattern, MixedSignCoxeterGraph, SignPattern, TwistWord,
};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::Rng;

const TOL: f64 = 1e-12;

fn pattern_strategy(
    max_n: usize,
    max_m: usize,
    max_x: u32,
) -> impl Strategy<Value = IntersectionPattern> {
    (1..=max_n, 1..=max_m)
        .prop_flat_map(move |(n, m)| {
            proptest::collection::vec(proptest::collection::vec(0..=max_x, m), n)
        })
        .prop_map(|x| IntersectionPattern::new(x).unwrap())
        .prop_filter("connected", IntersectionPattern::is_filling_candidate)
}

/// A valid word: every curve at least once, up to `extra` further letters, shuffled.
fn random_word(rng: &mut impl Rng, p: &IntersectionPattern, extra: usize) -> TwistWord {
    let curves: Vec<Curve> = p.curves().collect();
    let mut letters: Vec<Letter> = curves.iter().map(|&c| Letter::new(c)).collect();
    for _ in 0..rng.gen_range(0..=extra) {
        letters.push(Letter::new(*curves.choose(rng).unwrap()));
    }
    letters.shuffle(rng);
    TwistWord(letters)
}

fn word_strategy(
    p: IntersectionPattern,
    extra: usize,
) -> impl Strategy<Value = (IntersectionPattern, TwistWord)> {
    any::<u64>().prop_map(move |seed| {
        let w = random_word(&mut common::rng(seed), &p, extra);
        (p.clone(), w)
    })
}

/// `R_c`: the twist matrix minus the identity.
fn off_identity(p: &IntersectionPattern, c: Curve) -> ExactMatrix {
    let g = geometric_intersection_matrix(p);
    let size = p.curve_count();
    let row = p.basis_index(c);
    let mut r = ExactMatrix::zeros(size);
    for col in 0..size {
        r.set_int(row, col, g.int(row, col).clone());
    }
    r
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn char_poly_is_invariant_under_rotation(
        (p, w) in pattern_strategy(4, 4, 3).prop_flat_map(|p| word_strategy(p, 4)),
        k in 0usize..16,
    ) {
        let a = char_poly(&penner_product(&p, &w).unwrap());
        let b = char_poly(&penner_product(&p, &w.rotate(k)).unwrap());
        prop_assert_eq!(a, b);
    }

    #[test]
    fn products_are_unimodular_and_dominate_their_letters(
        (p, w) in pattern_strategy(4, 4, 3).prop_flat_map(|p| word_strategy(p, 6)),
    ) {
        let m = penner_product(&p, &w).unwrap();
        prop_assert_eq!(m.determinant(), BigRational::from_integer(BigInt::from(1)));
        prop_assert!(m.is_nonnegative());
        let mut floor = ExactMatrix::identity(p.curve_count());
        let mut seen: Vec<Curve> = w.letters().iter().map(|l| l.curve).collect();
        seen.sort();
        seen.dedup();
        for c in seen {
            let r = off_identity(&p, c);
            let sum: Vec<Vec<BigInt>> = (0..p.curve_count())
                .map(|i| (0..p.curve_count()).map(|j| floor.int(i, j) + r.int(i, j)).collect())
                .collect();
            floor = ExactMatrix::from_rows(&sum);
        }
        prop_assert!(m.dominates(&floor));
    }

    #[test]
    fn appending_a_letter_never_decreases_the_dilatation(
        (p, w) in pattern_strategy(3, 3, 2).prop_flat_map(|p| word_strategy(p, 2)),
    ) {
        let base = dilatation(&p, &w, TOL).unwrap();
        for c in p.curves() {
            let mut longer = w.clone();
            longer.0.push(Letter::new(c));
            let v = dilatation(&p, &longer, TOL).unwrap();
            prop_assert!(v.value >= base.value - 2.0 * TOL);
            let mut front = w.clone();
            front.0.insert(0, Letter::new(c));
            prop_assert!(dilatation(&p, &front, TOL).unwrap().value >= base.value - 2.0 * TOL);
        }
    }

    #[test]
    fn random_words_respect_the_sqrt5_floor(
        (p, w) in pattern_strategy(5, 5, 3).prop_filter("n + m <= 10", |p| p.curve_count() <= 10)
            .prop_flat_map(|p| word_strategy(p, 3)),
    ) {
        let v = dilatation(&p, &w, TOL).unwrap();
        prop_assert!(v.value >= 5f64.sqrt() - 1e-9);
    }
}

/// Patterns with the given shape and entries `0..=max_x` whose intersection graph is connected.
fn all_patterns(n: usize, m: usize, max_x: u32) -> Vec<IntersectionPattern> {
    let cells = n * m;
    let base = max_x as usize + 1;
    (0..base.pow(cells as u32))
        .filter_map(|mut code| {
            let mut x = vec![vec![0u32; m]; n];
            for cell in x.iter_mut().flatten() {
                *cell = (code % base) as u32;
                code /= base;
            }
            let p = IntersectionPattern::new(x).unwrap();
            p.is_filling_candidate().then_some(p)
        })
        .collect()
}

#[test]
fn exhaustive_small_patterns_respect_the_sqrt5_floor() {
    let floor = 5f64.sqrt() - 1e-9;
    for (n, m, max_x) in [
        (1, 1, 4),
        (1, 2, 2),
        (1, 3, 2),
        (2, 2, 2),
        (1, 4, 2),
        (2, 3, 2),
        (1, 5, 1),
        (2, 4, 1),
        (3, 3, 1),
    ] {
        for p in all_patterns(n, m, max_x) {
            let r = minimize_over_words(&p, 0, TOL).unwrap();
            assert!(
                r.value.value >= floor,
                "{:?} gives {}",
                p.x(),
                r.value.value
            );
        }
    }
}

/// Minimum over every ordering of the curves with `α_1` first.
fn brute_force_minimum(p: &IntersectionPattern) -> f64 {
    let rest: Vec<Curve> = p.curves().skip(1).collect();
    common::permutations(rest.len())
        .into_iter()
        .map(|perm| {
            let mut curves = vec![Curve::alpha(0)];
            curves.extend(perm.iter().map(|&k| rest[k]));
            dilatation(p, &TwistWord::from_curves(curves), TOL)
                .unwrap()
                .value
        })
        .fold(f64::INFINITY, f64::min)
}

#[test]
fn block_enumeration_matches_brute_force() {
    let mut rng = common::rng(23);
    let mut checked = 0;
    while checked < 40 {
        let n = rng.gen_range(1..=3);
        let m = rng.gen_range(1..=(7 - n).min(4));
        let x: Vec<Vec<u32>> = (0..n)
            .map(|_| (0..m).map(|_| rng.gen_range(0..=2)).collect())
            .collect();
        let p = IntersectionPattern::new(x).unwrap();
        if !p.is_filling_candidate() {
            continue;
        }
        let fast = minimize_over_words(&p, 0, TOL).unwrap();
        let slow = brute_force_minimum(&p);
        assert!(
            (fast.value.value - slow).abs() <= 2.0 * TOL + fast.value.radius,
            "{:?}",
            p.x()
        );
        assert!(fast.value.value <= slow + 2.0 * TOL);
        checked += 1;
    }
}

#[test]
fn tree_patterns_give_one_value_for_every_order() {
    for size in 2..=6 {
        for tree in common::all_labelled_trees(size).into_iter().step_by(5) {
            let (p, _) = IntersectionPattern::from_graph(&tree).unwrap();
            let curves: Vec<Curve> = p.curves().collect();
            let reference = char_poly(&penner_product(&p, &p.bipartite_word()).unwrap());
            for perm in common::permutations(curves.len()) {
                let w = TwistWord::from_curves(perm.iter().map(|&k| curves[k]));
                assert_eq!(char_poly(&penner_product(&p, &w).unwrap()), reference);
            }
        }
    }
}

#[test]
fn penner_and_coxeter_agree_on_alternating_trees() {
    let mut rng = common::rng(31);
    for size in 2..=9 {
        for _ in 0..8 {
            let tree = common::random_tree(&mut rng, size);
            let g = MixedSignCoxeterGraph::with_pattern(tree, SignPattern::Alternating).unwrap();
            let (p, _) = IntersectionPattern::from_alternating(&g).unwrap();
            assert_eq!(
                char_poly(&penner_product(&p, &p.bipartite_word()).unwrap()),
                char_poly(&homological_action(&g, &bipartite_order(&g).unwrap()))
            );
        }
    }
}

#[test]
fn minimiser_extra_twist_check_holds() {
    for x in [
        vec![vec![1, 1], vec![1, 0]],
        vec![vec![1, 1, 0], vec![0, 1, 1]],
        vec![vec![2, 1]],
    ] {
        let p = IntersectionPattern::new(x).unwrap();
        let r = minimize_over_words(&p, 2, TOL).unwrap();
        let check = r.extra_twist_check.unwrap();
        assert!(check.never_decreases);
        assert!(check.smallest >= r.value.value - 2.0 * TOL);
    }
}
