//! End-to-end acceptance checks. Each criterion prints one PASS/FAIL line;
//! the process exits non-zero if any fails.

use std::process::ExitCode;
use std::time::Instant;

use num_traits::One;
use penner_core::coxeter::{
    affine_alternating_dilatation, alexander_min_real_part, bilinear_form, bipartite_order,
    classical_to_alternating, coxeter_transformation, dynkin_graph, eigenvalues,
    homological_action, lambda_closed_form, reflection, spectrum,
};
use penner_core::penner::{
    coxeter_word, dilatation, double_intersection_certificate, double_intersection_polynomial,
    minimize_over_words, penner_product, Curve,
};
use penner_core::search::{connected_bipartite_graphs, minimal_dilatation, table1, GenusEntry};
use penner_core::spectral::char_poly;
use penner_core::topology::face_count_distribution;
use penner_core::{
    DynkinType, ExactMatrix, IntPolynomial, IntersectionPattern, MixedSignCoxeterGraph,
    ReflectionOrder, SearchMode, Sign, SignPattern, SimpleGraph, TwistWord,
};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const TOL: f64 = 1e-13;

type Outcome = Result<String, String>;
type Check = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn silver() -> f64 {
    3.0 + 2.0 * 2f64.sqrt()
}

fn alternating_penner(kind: DynkinType) -> (IntersectionPattern, TwistWord) {
    let p = IntersectionPattern::from_graph(&kind.graph().unwrap())
        .unwrap()
        .0;
    let w = p.bipartite_word();
    (p, w)
}

fn closed_form() -> Outcome {
    let expected = [2.6180340, 4.3902571, 5.0489, 5.3449];
    let reference = [(1, (3.0 + 5f64.sqrt()) / 2.0), (3, 5.049), (4, 5.345)];
    let values: Vec<f64> = (1..=4).map(lambda_closed_form).collect();
    for (g, (&v, &e)) in values.iter().zip(&expected).enumerate() {
        ensure((v - e).abs() < 1e-3, || {
            format!("lambda_{} = {v}, expected {e}", g + 1)
        })?;
    }
    for (g, r) in reference {
        let v = values[g - 1];
        ensure((v - r).abs() < 1e-3, || {
            format!("lambda_{g} = {v}, reference {r}")
        })?;
    }
    Ok(format!("lambda_1..4 = {values:.7?}"))
}

fn three_routes() -> Outcome {
    let mut worst = 0f64;
    for g in 1..=10u32 {
        let a = lambda_closed_form(g);
        let b = classical_to_alternating(alexander_min_real_part(g).map_err(|e| e.to_string())?)
            .map_err(|e| e.to_string())?;
        let (p, w) = alternating_penner(DynkinType::A(2 * g as usize));
        let c = dilatation(&p, &w, TOL).map_err(|e| e.to_string())?.value;
        let spread = (a - b).abs().max((a - c).abs()).max((b - c).abs());
        worst = worst.max(spread);
        ensure(spread < 1e-9, || {
            format!("g = {g}: closed {a}, alexander {b}, penner {c}")
        })?;
    }
    Ok(format!("g = 1..10, largest disagreement {worst:.1e}"))
}

fn table() -> Outcome {
    let rows = table1(TOL).map_err(|e| e.to_string())?;
    let expected = [
        (DynkinType::A(6), 5.049, 3),
        (DynkinType::A(8), 5.345, 4),
        (DynkinType::E6, 5.552, 3),
        (DynkinType::E7, 5.704, 3),
        (DynkinType::E8, 5.783, 4),
    ];
    for (row, (kind, value, genus)) in rows.iter().zip(expected) {
        ensure(row.diagram == kind, || {
            format!("row {} where {kind} expected", row.diagram)
        })?;
        ensure((row.dilatation.value - value).abs() < 1e-3, || {
            format!("{kind}: {} vs {value}", row.dilatation.value)
        })?;
        ensure(row.genus == GenusEntry::Exact(genus), || {
            format!("{kind}: genus {}", row.genus)
        })?;
    }
    let enriched = rows.last().ok_or("no enriched row")?;
    ensure(enriched.diagram == DynkinType::EnrichedSixCycle, || {
        "last row is not the enriched 6-cycle".into()
    })?;
    ensure(enriched.genus == GenusEntry::AtMost(4), || {
        format!("enriched genus {}", enriched.genus)
    })?;
    ensure(enriched.dilatation.value > 5.7, || {
        format!("enriched value {}", enriched.dilatation.value)
    })?;
    Ok(rows
        .iter()
        .map(|r| format!("{} g {} {:.4}", r.diagram, r.genus, r.dilatation.value))
        .collect::<Vec<_>>()
        .join(", "))
}

fn double_intersection() -> Outcome {
    let p = IntersectionPattern::new(vec![vec![2]]).unwrap();
    let w = p.bipartite_word();
    let m = penner_product(&p, &w).map_err(|e| e.to_string())?;
    let poly = char_poly(&m);
    ensure(poly == IntPolynomial::from_i64(&[1, -6, 1]), || {
        format!("char poly {poly}")
    })?;
    let v = dilatation(&p, &w, 1e-14).map_err(|e| e.to_string())?;
    ensure(v.agrees_with(silver(), 1e-12), || {
        format!("X = [2] gives {}", v.value)
    })?;
    for x in 2..=6u32 {
        let p = IntersectionPattern::new(vec![vec![x, 1], vec![0, 1]]).unwrap();
        let cert = double_intersection_certificate(&p, TOL).ok_or("no certificate")?;
        let s = f64::from(2 + x * x);
        let larger = (s + (s * s - 4.0).sqrt()) / 2.0;
        ensure(
            cert.x == x && cert.polynomial == double_intersection_polynomial(x).to_string(),
            || format!("x = {x}: certificate {}", cert.polynomial),
        )?;
        ensure(cert.bound.agrees_with(larger, 1e-9), || {
            format!("x = {x}: bound {}", cert.bound.value)
        })?;
        let best = minimize_over_words(&p, 0, TOL).map_err(|e| e.to_string())?;
        ensure(best.value.value >= cert.bound.value - 1e-9, || {
            format!("x = {x}: word {} beats the bound", best.word)
        })?;
    }
    Ok(format!("X = [2] -> {poly}, root {:.15}", v.value))
}

fn affine() -> Outcome {
    let kinds = [
        DynkinType::AffineD(4),
        DynkinType::AffineD(5),
        DynkinType::AffineD(6),
        DynkinType::AffineD(7),
        DynkinType::AffineD(8),
        DynkinType::AffineE6,
        DynkinType::AffineE7,
        DynkinType::AffineE8,
    ];
    for kind in kinds {
        let g = dynkin_graph(kind, SignPattern::Alternating).map_err(|e| e.to_string())?;
        let d = affine_alternating_dilatation(&g, TOL).map_err(|e| e.to_string())?;
        ensure(d.computed.agrees_with(silver(), 1e-9), || {
            format!("{kind}: {}", d.computed.value)
        })?;
        ensure((d.spectral_radius - silver()).abs() < 1e-9, || {
            format!("{kind}: spectral radius {}", d.spectral_radius)
        })?;
        let classical = dynkin_graph(kind, SignPattern::AllPlus).map_err(|e| e.to_string())?;
        let order = bipartite_order(&classical).map_err(|e| e.to_string())?;
        for z in eigenvalues(&coxeter_transformation(&classical, &order)) {
            if z.im.abs() > 1e-9 {
                ensure((z.norm() - 1.0).abs() < 1e-9, || {
                    format!("{kind}: eigenvalue {z} off the circle")
                })?;
            }
        }
        let action = eigenvalues(&homological_action(&classical, &order));
        ensure(
            action
                .iter()
                .any(|z| (z.re + 1.0).abs() < 1e-6 && z.im.abs() < 1e-6),
            || format!("{kind}: -1 is not an eigenvalue of the classical homological action"),
        )?;
    }
    Ok(format!("{} affine diagrams at 3 + 2 sqrt 2", kinds.len()))
}

fn four_cycle() -> Outcome {
    let g =
        dynkin_graph(DynkinType::Cycle(4), SignPattern::Alternating).map_err(|e| e.to_string())?;
    let bipartite = bipartite_order(&g).map_err(|e| e.to_string())?;
    let action = spectrum(&homological_action(&g, &bipartite), TOL);
    ensure(
        action
            .poly
            .squarefree_factors()
            .iter()
            .any(|(f, _)| *f == IntPolynomial::from_i64(&[1, -6, 1])),
        || {
            format!(
                "bipartite char poly {} lacks t^2 - 6t + 1",
                action.char_poly
            )
        },
    )?;
    let certified = action.certified.ok_or("bipartite radius not certified")?;
    ensure(certified.agrees_with(silver(), 1e-12), || {
        format!("bipartite order gives {}", certified.value)
    })?;
    let realised = |order: &ReflectionOrder| -> Result<f64, String> {
        let (p, w) = coxeter_word(&g, order).map_err(|e| e.to_string())?;
        Ok(dilatation(&p, &w, TOL).map_err(|e| e.to_string())?.value)
    };
    let bip = realised(&bipartite)?;
    let cyc = realised(&ReflectionOrder::identity(4))?;
    ensure((bip - silver()).abs() < 1e-12, || {
        format!("bipartite mapping class gives {bip}")
    })?;
    ensure(cyc - silver() > 1e-6, || {
        format!("cyclic mapping class gives {cyc}")
    })?;
    Ok(format!("bipartite {bip:.12}, cyclic {cyc:.12}"))
}

fn all_orderings(p: &IntersectionPattern) -> Vec<TwistWord> {
    let curves: Vec<Curve> = p.curves().collect();
    let mut out = Vec::new();
    let mut perm: Vec<usize> = (0..curves.len()).collect();
    permute(&mut perm, 0, &mut |perm| {
        out.push(TwistWord::from_curves(perm.iter().map(|&k| curves[k])));
    });
    out
}

fn permute(v: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
    if k == v.len() {
        f(v);
        return;
    }
    for i in k..v.len() {
        v.swap(k, i);
        permute(v, k + 1, f);
        v.swap(k, i);
    }
}

fn sqrt5_floor() -> Outcome {
    let floor = 5f64.sqrt() - 1e-9;
    let mut patterns = 0;
    let mut words = 0;
    for n in 1..=4 {
        for m in 1..=5 - n {
            let cells = (n * m) as u32;
            for mut code in 0..3usize.pow(cells) {
                let mut x = vec![vec![0u32; m]; n];
                for cell in x.iter_mut().flatten() {
                    *cell = (code % 3) as u32;
                    code /= 3;
                }
                let p = IntersectionPattern::new(x).unwrap();
                if !p.is_filling_candidate() {
                    continue;
                }
                patterns += 1;
                for w in all_orderings(&p) {
                    words += 1;
                    let v = dilatation(&p, &w, TOL).map_err(|e| e.to_string())?.value;
                    ensure(v >= floor, || format!("{:?} with {w} gives {v}", p.x()))?;
                }
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut random = 0;
    while random < 500 {
        let total = rng.gen_range(2..=8);
        let n = rng.gen_range(1..total);
        let m = total - n;
        let x: Vec<Vec<u32>> = (0..n)
            .map(|_| {
                (0..m)
                    .map(|_| {
                        if rng.gen_bool(0.45) {
                            rng.gen_range(1..=3)
                        } else {
                            0
                        }
                    })
                    .collect()
            })
            .collect();
        let p = IntersectionPattern::new(x).unwrap();
        if !p.is_filling_candidate() {
            continue;
        }
        random += 1;
        let best = minimize_over_words(&p, 0, TOL).map_err(|e| e.to_string())?;
        ensure(best.value.value >= floor, || {
            format!("{:?} with {} gives {}", p.x(), best.word, best.value.value)
        })?;
    }
    Ok(format!(
        "{patterns} exhaustive patterns ({words} words), {random} random patterns"
    ))
}

fn framing_independence() -> Outcome {
    let mut trees = 0;
    for n in 2..=7 {
        for g in connected_bipartite_graphs(n)
            .into_iter()
            .filter(SimpleGraph::is_tree)
        {
            let p = IntersectionPattern::from_graph(&g).unwrap().0;
            let dist = face_count_distribution(&p).map_err(|e| e.to_string())?;
            ensure(dist.len() == 1, || {
                format!("tree {:?} gives face counts {dist:?}", g.edges())
            })?;
            trees += 1;
            let faces = *dist.keys().next().unwrap();
            let expected = match DynkinType::identify(&g) {
                Some(DynkinType::A(k)) => Some(if k % 2 == 0 { 1 } else { 2 }),
                Some(DynkinType::D(k)) => Some(if k % 2 == 1 { 2 } else { 3 }),
                _ => None,
            };
            if let Some(e) = expected {
                ensure(faces == e, || {
                    format!("{:?}: {faces} faces, expected {e}", g.edges())
                })?;
            }
        }
    }
    Ok(format!("{trees} trees on 2..7 vertices"))
}

fn monotone_limit() -> Outcome {
    let values: Vec<f64> = (1..=50).map(lambda_closed_form).collect();
    if let Some(k) = values.windows(2).position(|w| w[1] <= w[0]) {
        return Err(format!("lambda_{} >= lambda_{}", k + 1, k + 2));
    }
    let (l10, l50) = (values[9], values[49]);
    ensure(l50 < silver(), || format!("lambda_50 = {l50}"))?;
    ensure(silver() - l50 < silver() - l10, || {
        "gap does not shrink".into()
    })?;
    Ok(format!("lambda_50 = {l50:.12}, gap {:.3e}", silver() - l50))
}

fn exact_structure() -> Outcome {
    let mut graphs: Vec<SimpleGraph> = (1..=5).flat_map(connected_bipartite_graphs).collect();
    graphs.extend([SimpleGraph::cycle(3), SimpleGraph::cycle(5)]);
    let mut reflections = 0;
    for g in &graphs {
        let n = g.vertex_count();
        for bits in 0..1u32 << n {
            let signs = (0..n)
                .map(|v| {
                    if bits >> v & 1 == 0 {
                        Sign::Plus
                    } else {
                        Sign::Minus
                    }
                })
                .collect();
            let sg = MixedSignCoxeterGraph::new(g.clone(), signs).unwrap();
            let b = bilinear_form(&sg);
            for i in 0..n {
                let s = reflection(&sg, i);
                ensure(&s * &s == ExactMatrix::identity(n), || {
                    format!("s_{i} is not an involution")
                })?;
                ensure(&(&s.transpose() * &b) * &s == b, || {
                    format!("s_{i} does not preserve B")
                })?;
                reflections += 1;
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let mut products = 0;
    while products < 300 {
        let n = rng.gen_range(1..=4);
        let m = rng.gen_range(1..=4);
        let x: Vec<Vec<u32>> = (0..n)
            .map(|_| (0..m).map(|_| rng.gen_range(0..=3)).collect())
            .collect();
        let p = IntersectionPattern::new(x).unwrap();
        let mut curves: Vec<Curve> = p.curves().collect();
        for _ in 0..rng.gen_range(0..4) {
            curves.push(curves[rng.gen_range(0..curves.len())]);
        }
        curves.shuffle(&mut rng);
        let w = TwistWord::from_curves(curves);
        let det = penner_product(&p, &w)
            .map_err(|e| e.to_string())?
            .determinant();
        ensure(det.is_one(), || {
            format!("{:?} with {w} has determinant {det}", p.x())
        })?;
        products += 1;
    }
    let mut orders = 0;
    for n in 1..=6 {
        for tree in connected_bipartite_graphs(n)
            .into_iter()
            .filter(SimpleGraph::is_tree)
        {
            for pattern in [SignPattern::AllPlus, SignPattern::Alternating] {
                let g = MixedSignCoxeterGraph::with_pattern(tree.clone(), pattern).unwrap();
                let reference =
                    char_poly(&coxeter_transformation(&g, &ReflectionOrder::identity(n)));
                let mut perm: Vec<usize> = (0..n).collect();
                let mut bad = None;
                permute(&mut perm, 0, &mut |perm| {
                    orders += 1;
                    let order = ReflectionOrder::new(perm.to_vec(), n).unwrap();
                    if bad.is_none() && char_poly(&coxeter_transformation(&g, &order)) != reference
                    {
                        bad = Some(perm.to_vec());
                    }
                });
                if let Some(perm) = bad {
                    return Err(format!(
                        "tree {:?}, order {perm:?} changes the char poly",
                        tree.edges()
                    ));
                }
            }
        }
    }
    Ok(format!(
        "{reflections} reflections, {products} products, {orders} tree orders"
    ))
}

fn search_certification() -> Outcome {
    let mut summary = Vec::new();
    for g in 1..=4u32 {
        let r = minimal_dilatation(g, SearchMode::Certified, TOL).map_err(|e| e.to_string())?;
        let witness = DynkinType::A(2 * g as usize);
        ensure(r.witness == witness, || {
            format!("g = {g}: witness {}", r.witness)
        })?;
        ensure((r.value - lambda_closed_form(g)).abs() < 1e-9, || {
            format!("g = {g}: value {}", r.value)
        })?;
        ensure(r.audit.iter().any(|c| c.diagram == witness), || {
            format!("g = {g}: witness not audited")
        })?;
        ensure(
            r.audit.iter().all(|c| c.value.value >= r.value - 1e-9),
            || format!("g = {g}: audit has a smaller candidate"),
        )?;
        summary.push(format!(
            "g {g}: {}",
            r.audit
                .iter()
                .map(|c| c.diagram.to_string())
                .collect::<Vec<_>>()
                .join("/")
        ));
    }
    Ok(summary.join("; "))
}

fn main() -> ExitCode {
    let criteria: [Check; 11] = [
        ("closed form for genus 1..4", closed_form),
        ("three-route agreement, genus 1..10", three_routes),
        ("comparison table", table),
        ("double intersection bound", double_intersection),
        ("affine diagrams", affine),
        ("four-cycle orders", four_cycle),
        ("sqrt 5 floor", sqrt5_floor),
        ("framing independence for trees", framing_independence),
        ("monotonicity and limit", monotone_limit),
        ("exact structure", exact_structure),
        ("certified search, genus 1..4", search_certification),
    ];
    let filter: Vec<String> = std::env::args()
        .skip(1)
        .filter(|a| !a.starts_with('-'))
        .collect();
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        if !filter.is_empty() && !filter.iter().any(|f| name.contains(f.as_str())) {
            continue;
        }
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name} ({secs:.2} s): {detail}", k + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name} ({secs:.2} s): {why}", k + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
