use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use penner_core::coxeter::{
    bipartite_order, classical_to_alternating, coxeter_transformation, homological_action,
    lambda_closed_form, spectrum,
};
use penner_core::document::{parse_family, signed_graph, SignSpec};
use penner_core::penner::{
    coxeter_word, double_intersection_certificate, penner_product, validate_word,
};
use penner_core::search::{self, classify, minimal_dilatation, Exclusion, FillEvidence};
use penner_core::spectral::{char_poly, spectral_radius_report};
use penner_core::topology::{
    cycle_fill_genus_bound, genus_distribution, parity_genus_bound, trace_faces, CellCounts,
};
use penner_core::{
    DynkinType, ExactMatrix, FramedPattern, IntersectionPattern, MixedSignCoxeterGraph,
    PatternDocument, ReflectionOrder, RootApproximation, SearchMode, TwistWord,
};
use serde::Serialize;
use serde_json::{json, Value};

use crate::format::{minpoly, sci, sig, Table};
use crate::CliError;

pub struct Report {
    pub text: String,
    pub json: Value,
}

pub struct Source {
    pub file: Option<PathBuf>,
    pub family: Option<String>,
    pub n: Option<usize>,
    pub signs: Option<String>,
}

fn load(path: &Path) -> Result<PatternDocument, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io {
        path: path.to_path_buf(),
        message: e.to_string(),
    })?;
    Ok(PatternDocument::parse(&text)?)
}

fn sign_spec(s: &str) -> Result<SignSpec, CliError> {
    if s.chars().any(|c| c.is_ascii_digit()) {
        let list = s
            .split([',', ' '])
            .filter(|t| !t.is_empty())
            .map(|t| {
                t.parse::<i64>()
                    .map_err(|_| CliError::Usage(format!("bad sign {t:?}")))
            })
            .collect::<Result<_, _>>()?;
        Ok(SignSpec::Explicit(list))
    } else {
        Ok(SignSpec::Named(s.to_string()))
    }
}

fn family_graph(
    family: &str,
    n: Option<usize>,
    signs: Option<&str>,
) -> Result<MixedSignCoxeterGraph, CliError> {
    let kind = parse_family(family, n)?;
    let spec = sign_spec(signs.unwrap_or("alternating"))?;
    Ok(signed_graph(kind.graph()?, &spec)?)
}

impl Source {
    fn coxeter_graph(&self) -> Result<MixedSignCoxeterGraph, CliError> {
        match (&self.file, &self.family) {
            (Some(path), None) => {
                let doc = load(path)?;
                if let Some(signs) = &self.signs {
                    let g = doc.coxeter_graph()?;
                    Ok(signed_graph(g.graph().clone(), &sign_spec(signs)?)?)
                } else {
                    Ok(doc.coxeter_graph()?)
                }
            }
            (None, Some(family)) => family_graph(family, self.n, self.signs.as_deref()),
            _ => Err(CliError::Usage("give a document or --family".into())),
        }
    }

    /// Pattern, with its framing when the document has one.
    fn pattern(&self) -> Result<(IntersectionPattern, Option<FramedPattern>), CliError> {
        match (&self.file, &self.family) {
            (Some(path), None) => {
                let doc = load(path)?;
                let framing = doc.framed_pattern()?;
                Ok((doc.intersection_pattern()?, framing))
            }
            (None, Some(family)) => {
                let g = family_graph(family, self.n, Some("alternating"))?;
                Ok((IntersectionPattern::from_alternating(&g)?.0, None))
            }
            _ => Err(CliError::Usage("give a document or --family".into())),
        }
    }
}

fn root_json(r: &RootApproximation, min_poly: &Option<String>) -> Value {
    json!({
        "value": r.value,
        "display": sig(r.value),
        "radius": r.radius,
        "lower": r.interval.0.to_string(),
        "upper": r.interval.1.to_string(),
        "minimal_polynomial": min_poly,
    })
}

fn root_text(r: &RootApproximation) -> String {
    format!("{} (+/- {})", sig(r.value), sci(r.radius))
}

fn pattern_text(p: &IntersectionPattern) -> String {
    let rows: Vec<String> = p
        .x()
        .iter()
        .map(|r| r.iter().map(u32::to_string).collect::<Vec<_>>().join(" "))
        .collect();
    format!(
        "{} x {} [{}]",
        p.alpha_count(),
        p.beta_count(),
        rows.join("; ")
    )
}

fn matrix_rows(m: &ExactMatrix) -> Vec<Vec<String>> {
    (0..m.dim())
        .map(|i| (0..m.dim()).map(|j| m.get(i, j).to_string()).collect())
        .collect()
}

#[derive(Serialize)]
struct Certificate {
    kind: &'static str,
    detail: String,
    bound: f64,
    polynomial: String,
}

pub fn dilatation(path: &Path, word: Option<&str>, tol: f64) -> Result<Report, CliError> {
    let doc = load(path)?;
    let p = doc.intersection_pattern()?;
    let w: TwistWord = match word {
        Some(s) => s.parse()?,
        None => doc.word()?.unwrap_or_else(|| p.bipartite_word()),
    };
    let check = validate_word(&p, &w);
    if !check.is_valid() {
        return Err(CliError::Word(
            check.problems.iter().map(ToString::to_string).collect(),
        ));
    }
    let m = penner_product(&p, &w)?;
    let spec = spectral_radius_report(&m, tol)?;
    let min_poly = minpoly(&spec.poly, &spec.root);

    let mut certificates = Vec::new();
    let mut survivor = None;
    if let Some(c) = double_intersection_certificate(&p, tol) {
        certificates.push(Certificate {
            kind: "double_intersection",
            detail: format!("a{} and b{} meet {} times", c.alpha + 1, c.beta + 1, c.x),
            bound: c.bound.value,
            polynomial: c.polynomial,
        });
    } else if p.is_filling_candidate() {
        let report = classify(&p.intersection_graph())?;
        let silver = classical_to_alternating(-1.0)?;
        match report.excluded_by {
            Some(Exclusion::AffineSubgraph { diagram, .. }) => certificates.push(Certificate {
                kind: "affine_subgraph",
                detail: format!("intersection graph contains {diagram}"),
                bound: silver,
                polynomial: "t^2 - 6t + 1".into(),
            }),
            Some(Exclusion::FourCycleSubgraph { .. }) => certificates.push(Certificate {
                kind: "four_cycle_subgraph",
                detail: "intersection graph contains a 4-cycle".into(),
                bound: silver,
                polynomial: "t^2 - 6t + 1".into(),
            }),
            _ => survivor = report.surviving_type,
        }
    }

    let mut t = Table::new();
    t.row("pattern", pattern_text(&p))
        .row("word", w.to_string())
        .row("dilatation", root_text(&spec.root))
        .row("char poly", spec.char_poly.clone())
        .row(
            "minimal poly",
            min_poly.clone().unwrap_or_else(|| "degree > 16".into()),
        );
    if let Some(kind) = survivor {
        t.row("graph type", kind.to_string());
    }
    for c in &certificates {
        t.row(
            "certificate",
            format!(
                "{}: {}, bound {} ({})",
                c.kind,
                c.detail,
                sig(c.bound),
                c.polynomial
            ),
        );
    }
    let json = json!({
        "pattern": p.x(),
        "word": w.to_string(),
        "dilatation": root_json(&spec.root, &min_poly),
        "char_poly": spec.char_poly,
        "power_estimate": spec.power_estimate,
        "graph_type": survivor.map(|k| k.to_string()),
        "certificates": certificates,
    });
    Ok(Report {
        text: t.render(),
        json,
    })
}

fn parse_order(spec: &str, g: &MixedSignCoxeterGraph) -> Result<ReflectionOrder, CliError> {
    let n = g.vertex_count();
    match spec {
        "bipartite" => Ok(bipartite_order(g)?),
        "identity" | "cyclic" => Ok(ReflectionOrder::identity(n)),
        list => {
            let order = list
                .split([',', ' '])
                .filter(|t| !t.is_empty())
                .map(|t| match t.parse::<usize>() {
                    Ok(v) if v >= 1 => Ok(v - 1),
                    _ => Err(CliError::Usage(format!(
                        "bad vertex {t:?} in --order (1-based)"
                    ))),
                })
                .collect::<Result<Vec<_>, _>>()?;
            Ok(ReflectionOrder::new(order, n)?)
        }
    }
}

fn graph_name(g: &MixedSignCoxeterGraph) -> String {
    let kind =
        DynkinType::identify(g.graph()).map_or_else(|| "graph".to_string(), |k| k.to_string());
    let signs: Vec<&str> = g
        .signs()
        .iter()
        .map(|s| if s.value() > 0 { "+" } else { "-" })
        .collect();
    let plural = |k: usize, word: &str| format!("{k} {word}{}", if k == 1 { "" } else { "s" });
    format!(
        "{kind} ({}, {}), signs {}",
        plural(g.vertex_count(), "vertex").replace("vertexs", "vertices"),
        plural(g.graph().edge_count(), "edge"),
        signs.join(" ")
    )
}

pub fn coxeter(source: &Source, order: &str, tol: f64) -> Result<Report, CliError> {
    let g = source.coxeter_graph()?;
    let order = parse_order(order, &g)?;
    let c = coxeter_transformation(&g, &order);
    let h = homological_action(&g, &order);
    let spec = spectrum(&h, tol);
    let cox_poly = char_poly(&c).to_string();
    let is_tree = g.graph().is_tree();
    let order_text: Vec<String> = order
        .as_slice()
        .iter()
        .map(|v| (v + 1).to_string())
        .collect();

    // Dilatation of the mapping class realising the transformation.
    let mapping_class = if g.is_alternating() && g.graph().is_connected() && g.vertex_count() >= 2 {
        let (p, w) = coxeter_word(&g, &order)?;
        let m = penner_product(&p, &w)?;
        let r = spectral_radius_report(&m, tol)?;
        let mp = minpoly(&r.poly, &r.root);
        Some((w, r, mp))
    } else {
        None
    };

    let mut t = Table::new();
    t.row("graph", graph_name(&g))
        .row("order", order_text.join(" "))
        .row("coxeter poly", cox_poly.clone())
        .row("action poly", spec.char_poly.clone())
        .row(
            "action radius",
            match &spec.certified {
                Some(r) => format!("{} (certified)", root_text(r)),
                None => format!(
                    "{} (attained off the real axis; numeric)",
                    sig(spec.spectral_radius)
                ),
            },
        );
    if g.vertex_count() <= 8 {
        for (i, row) in matrix_rows(&h).iter().enumerate() {
            t.row(
                if i == 0 { "action" } else { "" },
                format!("[{}]", row.join(" ")),
            );
        }
    }
    if let Some((w, r, mp)) = &mapping_class {
        t.row("mapping class", w.to_string())
            .row("dilatation", root_text(&r.root))
            .row(
                "minimal poly",
                mp.clone().unwrap_or_else(|| "degree > 16".into()),
            );
    }
    if is_tree {
        t.row(
            "note",
            "tree: the characteristic polynomial is the same for every order",
        );
    }
    let json = json!({
        "graph": graph_name(&g),
        "order": order.as_slice().iter().map(|v| v + 1).collect::<Vec<_>>(),
        "coxeter_char_poly": cox_poly,
        "action_char_poly": spec.char_poly,
        "action_spectral_radius": spec.spectral_radius,
        "action_certified": spec.certified.as_ref().map(|r| root_json(r, &minpoly(&spec.poly, r))),
        "action": matrix_rows(&h),
        "mapping_class": mapping_class.as_ref().map(|(w, r, mp)| json!({
            "word": w.to_string(),
            "dilatation": root_json(&r.root, mp),
        })),
        "order_invariant": is_tree,
    });
    Ok(Report {
        text: t.render(),
        json,
    })
}

fn cells_text(c: &CellCounts) -> String {
    format!(
        "V = {}, E = {}, F = {}, chi = {}",
        c.zero_cells, c.one_cells, c.two_cells, c.euler_characteristic
    )
}

pub fn genus(source: &Source, distribution: bool) -> Result<Report, CliError> {
    let (p, framing) = source.pattern()?;
    let graph = p.intersection_graph();
    let mut t = Table::new();
    t.row("pattern", pattern_text(&p));
    let mut json = json!({ "pattern": p.x() });

    if let Some(f) = &framing {
        let cells = trace_faces(f)?;
        t.row("cells", cells_text(&cells)).row(
            "genus",
            cells.genus.map_or_else(
                || "not a closed orientable surface".into(),
                |g| g.to_string(),
            ),
        );
        json["cells"] = json!(cells);
        json["genus"] = json!(cells.genus);
    } else if graph.is_tree() {
        let cells = trace_faces(&FramedPattern::standard(p.clone())?)?;
        t.row("cells", cells_text(&cells))
            .row(
                "genus",
                cells.genus.map_or_else(|| "-".into(), |g| g.to_string()),
            )
            .row("note", "tree: every framing fills the same surface");
        json["cells"] = json!(cells);
        json["genus"] = json!(cells.genus);
    } else {
        let bound = match DynkinType::identify(&graph) {
            Some(DynkinType::Cycle(len)) => cycle_fill_genus_bound(len)?,
            _ => parity_genus_bound(&graph)?,
        };
        t.row("genus", format!("<= {bound}"));
        if !distribution {
            t.row(
                "note",
                "depends on the framing; --distribution counts framings per genus",
            );
        }
        json["genus_bound"] = json!(bound);
    }
    if distribution {
        let dist: BTreeMap<u32, u64> = genus_distribution(&p)?;
        let total: u64 = dist.values().sum();
        let parts: Vec<String> = dist
            .iter()
            .map(|(g, c)| format!("genus {g}: {c}"))
            .collect();
        t.row("framings", format!("{total} ({})", parts.join(", ")));
        json["distribution"] = json!(dist);
    }
    Ok(Report {
        text: t.render(),
        json,
    })
}

fn tree_pattern(kind: DynkinType) -> Result<IntersectionPattern, CliError> {
    Ok(IntersectionPattern::from_graph(&kind.graph()?)?.0)
}

fn word_minpoly(
    p: &IntersectionPattern,
    w: &TwistWord,
    tol: f64,
) -> Result<(RootApproximation, Option<String>), CliError> {
    let r = spectral_radius_report(&penner_product(p, w)?, tol)?;
    let mp = minpoly(&r.poly, &r.root);
    Ok((r.root, mp))
}

fn fill_text(f: &FillEvidence) -> String {
    match f {
        FillEvidence::EveryFraming => "every framing".into(),
        FillEvidence::SomeFramings { filling, total } => format!("{filling}/{total} framings"),
    }
}

pub fn minimize(genus: u32, mode: SearchMode, tol: f64) -> Result<Report, CliError> {
    let r = minimal_dilatation(genus, mode, tol)?;
    let (_, mp) = word_minpoly(&r.pattern, &r.word, tol)?;
    let mut t = Table::new();
    t.row("genus", genus.to_string())
        .row("mode", mode.to_string())
        .row(
            "dilatation",
            match &r.certified {
                Some(c) => root_text(c),
                None => sig(r.value),
            },
        )
        .row(
            "minimal poly",
            mp.clone().unwrap_or_else(|| "degree > 16".into()),
        )
        .row("witness", format!("({}, alternating)", r.witness))
        .row("word", r.word.to_string())
        .row("argument", r.argument.clone());
    let mut text = t.render();
    if !r.audit.is_empty() {
        text.push_str("\naudit\n");
        let width = r
            .audit
            .iter()
            .map(|c| c.diagram.to_string().len())
            .max()
            .unwrap_or(0);
        for c in &r.audit {
            text.push_str(&format!(
                "  {:<width$}  {}  {}  {}\n",
                c.diagram.to_string(),
                sig(c.value.value),
                fill_text(&c.fill),
                c.word
            ));
        }
    }
    let audit: Vec<Value> = r
        .audit
        .iter()
        .map(|c| {
            json!({
                "diagram": c.diagram.to_string(),
                "fill": c.fill,
                "word": c.word,
                "dilatation": root_json(&c.value, &None),
                "char_poly": c.char_poly,
            })
        })
        .collect();
    let json = json!({
        "genus": genus,
        "mode": mode,
        "value": r.value,
        "display": sig(r.value),
        "certified": r.certified.as_ref().map(|c| root_json(c, &mp)),
        "minimal_polynomial": mp,
        "witness": r.witness.to_string(),
        "pattern": r.pattern.x(),
        "word": r.word.to_string(),
        "argument": r.argument,
        "audit": audit,
    });
    Ok(Report { text, json })
}

pub fn table1(tol: f64) -> Result<Report, CliError> {
    let rows = search::table1(tol)?;
    let mut text = format!(
        "{:<18}  {:<6}  {:<12}  {}\n",
        "diagram", "genus", "dilatation", "minimal poly"
    );
    let mut out = Vec::new();
    for row in &rows {
        let w: TwistWord = row.word.parse()?;
        let (_, mp) = word_minpoly(&tree_pattern(row.diagram)?, &w, tol)?;
        text.push_str(&format!(
            "{:<18}  {:<6}  {:<12}  {}\n",
            row.diagram.to_string(),
            row.genus.to_string(),
            sig(row.dilatation.value),
            mp.clone().unwrap_or_else(|| "degree > 16".into())
        ));
        out.push(json!({
            "diagram": row.diagram.to_string(),
            "genus": row.genus,
            "dilatation": root_json(&row.dilatation, &mp),
            "word": row.word,
            "lower_bound": row.lower_bound.map(|(k, v)| json!({ "subgraph": k.to_string(), "value": v })),
        }));
    }
    for row in &rows {
        if let Some((k, v)) = row.lower_bound {
            text.push_str(&format!(
                "\n{} contains {k}, so its dilatation is at least {}\n",
                row.diagram,
                sig(v)
            ));
        }
    }
    Ok(Report {
        text,
        json: Value::Array(out),
    })
}

pub fn limits(gmax: u32) -> Result<Report, CliError> {
    if gmax == 0 {
        return Err(penner_core::Error::InvalidGenus(0).into());
    }
    let limit = classical_to_alternating(-1.0)?;
    let mut text = String::from("g,lambda,gap\n");
    let mut rows = Vec::new();
    for g in 1..=gmax {
        let v = lambda_closed_form(g);
        text.push_str(&format!("{g},{},{}\n", sig(v), sig(limit - v)));
        rows.push(json!({ "g": g, "lambda": v, "gap": limit - v }));
    }
    Ok(Report {
        text,
        json: json!({ "limit": limit, "rows": rows }),
    })
}
