//! Human-writable TOML documents describing patterns, framings and signed graphs.
//!
//! ```toml
//! format = 1
//!
//! [pattern]
//! x = [[1, 0], [1, 1]]
//! word = "b1- b2- a1+ a2+"
//!
//! [framing]
//! alpha = [[1], [1, 2]]
//! beta = [[1, 2], [2]]
//! orientation = [[1, 1, 1], [2, 1, -1], [2, 2, 1]]
//!
//! [graph]
//! family = "A"
//! n = 4
//! signs = "alternating"
//! ```
//!
//! Indices are 1-based. A `[graph]` section gives either `vertices` and
//! `edges` or a `family` (with `n` where needed); `signs` is `"alternating"`,
//! `"plus"` or an explicit list of `1`/`-1`. Crossings missing from
//! `orientation` are positive.

use serde::{Deserialize, Serialize};

use crate::coxeter::{DynkinType, MixedSignCoxeterGraph, Sign, SignPattern};
use crate::error::{Error, Result};
use crate::graph::SimpleGraph;
use crate::penner::{IntersectionPattern, TwistWord};
use crate::topology::FramedPattern;

pub const FORMAT_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PatternDocument {
    pub format: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pattern: Option<PatternSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub framing: Option<FramingSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub graph: Option<GraphSection>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PatternSection {
    pub x: Vec<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub word: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FramingSection {
    pub alpha: Vec<Vec<usize>>,
    pub beta: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub orientation: Vec<[i64; 3]>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphSection {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vertices: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub edges: Option<Vec<[usize; 2]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub signs: Option<SignSpec>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SignSpec {
    Named(String),
    Explicit(Vec<i64>),
}

fn doc_err(msg: impl Into<String>) -> Error {
    Error::Document(msg.into())
}

impl PatternDocument {
    pub fn parse(text: &str) -> Result<Self> {
        let doc: Self = toml::from_str(text).map_err(|e| doc_err(e.to_string()))?;
        if doc.format != FORMAT_VERSION {
            return Err(doc_err(format!(
                "unsupported format {}, expected {FORMAT_VERSION}",
                doc.format
            )));
        }
        if doc.pattern.is_none() && doc.graph.is_none() {
            return Err(doc_err("document needs a [pattern] or a [graph] section"));
        }
        Ok(doc)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("document serialises")
    }

    /// Document holding a pattern, optionally with a word and a framing.
    pub fn from_pattern(
        p: &IntersectionPattern,
        word: Option<&TwistWord>,
        framing: Option<&FramedPattern>,
    ) -> Self {
        let x = p
            .x()
            .iter()
            .map(|row| row.iter().map(|&v| i64::from(v)).collect())
            .collect();
        let framing = framing.map(|f| FramingSection {
            alpha: one_based(f.alpha_orders()),
            beta: one_based(f.beta_orders()),
            orientation: f
                .points()
                .iter()
                .zip(f.orientations())
                .map(|(&(i, j), s)| [i as i64 + 1, j as i64 + 1, s.value()])
                .collect(),
        });
        Self {
            format: FORMAT_VERSION,
            pattern: Some(PatternSection {
                x,
                word: word.map(ToString::to_string),
            }),
            framing,
            graph: None,
        }
    }

    /// Document holding a signed graph by vertex and edge lists.
    pub fn from_graph(g: &MixedSignCoxeterGraph) -> Self {
        let edges = g
            .graph()
            .edges()
            .into_iter()
            .map(|(a, b)| [a + 1, b + 1])
            .collect();
        Self {
            format: FORMAT_VERSION,
            pattern: None,
            framing: None,
            graph: Some(GraphSection {
                family: None,
                n: None,
                vertices: Some(g.vertex_count()),
                edges: Some(edges),
                signs: Some(SignSpec::Explicit(
                    g.signs().iter().map(|s| s.value()).collect(),
                )),
            }),
        }
    }

    /// The pattern from `[pattern]`, or from an alternating `[graph]`.
    pub fn intersection_pattern(&self) -> Result<IntersectionPattern> {
        if let Some(sec) = &self.pattern {
            return pattern_from_rows(&sec.x);
        }
        let g = self.coxeter_graph()?;
        Ok(IntersectionPattern::from_alternating(&g)?.0)
    }

    pub fn word(&self) -> Result<Option<TwistWord>> {
        self.pattern
            .as_ref()
            .and_then(|s| s.word.as_deref())
            .map(str::parse)
            .transpose()
    }

    pub fn framed_pattern(&self) -> Result<Option<FramedPattern>> {
        let Some(sec) = &self.framing else {
            return Ok(None);
        };
        let p = self.intersection_pattern()?;
        let alpha = zero_based(&sec.alpha, "framing.alpha")?;
        let beta = zero_based(&sec.beta, "framing.beta")?;
        let mut orientations = Vec::new();
        let mut points = Vec::new();
        for i in 0..p.alpha_count() {
            for j in 0..p.beta_count() {
                if p.intersection(i, j) > 0 {
                    points.push((i, j));
                    orientations.push(Sign::Plus);
                }
            }
        }
        for &[i, j, s] in &sec.orientation {
            let k = points
                .iter()
                .position(|&(a, b)| a as i64 + 1 == i && b as i64 + 1 == j)
                .ok_or_else(|| {
                    doc_err(format!(
                        "orientation [{i}, {j}, {s}] names no intersection point"
                    ))
                })?;
            orientations[k] = match s {
                1 => Sign::Plus,
                -1 => Sign::Minus,
                _ => return Err(doc_err(format!("crossing sign must be 1 or -1, got {s}"))),
            };
        }
        FramedPattern::new(p, alpha, beta, orientations).map(Some)
    }

    pub fn coxeter_graph(&self) -> Result<MixedSignCoxeterGraph> {
        let sec = self
            .graph
            .as_ref()
            .ok_or_else(|| doc_err("document has no [graph] section"))?;
        let graph = match (&sec.family, sec.vertices, &sec.edges) {
            (Some(family), None, None) => parse_family(family, sec.n)?.graph()?,
            (None, Some(n), edges) => {
                let edges = edges
                    .iter()
                    .flatten()
                    .map(|&[a, b]| {
                        if a == 0 || b == 0 {
                            Err(doc_err("graph vertices are numbered from 1"))
                        } else {
                            Ok((a - 1, b - 1))
                        }
                    })
                    .collect::<Result<Vec<_>>>()?;
                SimpleGraph::new(n, &edges)?
            }
            _ => {
                return Err(doc_err(
                    "[graph] needs either `family` or `vertices` (with `edges`), not both",
                ))
            }
        };
        let signs = sec
            .signs
            .clone()
            .unwrap_or(SignSpec::Named("alternating".into()));
        signed_graph(graph, &signs)
    }
}

/// Applies a sign specification to a graph.
pub fn signed_graph(graph: SimpleGraph, signs: &SignSpec) -> Result<MixedSignCoxeterGraph> {
    match signs {
        SignSpec::Named(name) => {
            let pattern = match name.as_str() {
                "alternating" | "+-" | "±" => SignPattern::Alternating,
                "plus" | "+" | "classical" => SignPattern::AllPlus,
                other => return Err(doc_err(format!("unknown sign pattern {other:?}"))),
            };
            MixedSignCoxeterGraph::with_pattern(graph, pattern)
        }
        SignSpec::Explicit(list) => {
            let signs = list
                .iter()
                .map(|&s| match s {
                    1 => Ok(Sign::Plus),
                    -1 => Ok(Sign::Minus),
                    _ => Err(doc_err(format!("vertex sign must be 1 or -1, got {s}"))),
                })
                .collect::<Result<Vec<_>>>()?;
            MixedSignCoxeterGraph::new(graph, signs)
        }
    }
}

/// Names accepted for diagram families: `A`, `D`, `E6`, `E7`, `E8`,
/// `affine-D`, `affine-E6`, `affine-E7`, `affine-E8`, `cycle`, `enriched`.
pub fn parse_family(name: &str, n: Option<usize>) -> Result<DynkinType> {
    let need_n = || n.ok_or_else(|| Error::InvalidParameter(format!("family {name} needs n")));
    let lower = name.to_ascii_lowercase().replace('_', "-");
    let lower = match lower.strip_prefix('~') {
        Some(rest) => format!("affine-{}", rest.trim_start_matches('-')),
        None => lower,
    };
    let kind = match lower.as_str() {
        "a" => DynkinType::A(need_n()?),
        "d" => DynkinType::D(need_n()?),
        "e6" => DynkinType::E6,
        "e7" => DynkinType::E7,
        "e8" => DynkinType::E8,
        "affine-d" | "d-affine" => DynkinType::AffineD(need_n()?),
        "affine-e6" => DynkinType::AffineE6,
        "affine-e7" => DynkinType::AffineE7,
        "affine-e8" => DynkinType::AffineE8,
        "cycle" => DynkinType::Cycle(need_n()?),
        "enriched" | "enriched-6-cycle" | "enriched-cycle" => DynkinType::EnrichedSixCycle,
        _ => return Err(Error::InvalidParameter(format!("unknown family {name:?}"))),
    };
    kind.graph()?;
    Ok(kind)
}

fn pattern_from_rows(rows: &[Vec<i64>]) -> Result<IntersectionPattern> {
    let x = rows
        .iter()
        .enumerate()
        .map(|(i, row)| {
            row.iter()
                .enumerate()
                .map(|(j, &v)| {
                    u32::try_from(v).map_err(|_| {
                        doc_err(format!(
                            "x[{}][{}] = {v} is not a nonnegative intersection number",
                            i + 1,
                            j + 1
                        ))
                    })
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    IntersectionPattern::new(x)
}

fn one_based(orders: &[Vec<usize>]) -> Vec<Vec<usize>> {
    orders
        .iter()
        .map(|o| o.iter().map(|&k| k + 1).collect())
        .collect()
}

fn zero_based(orders: &[Vec<usize>], what: &str) -> Result<Vec<Vec<usize>>> {
    orders
        .iter()
        .map(|o| {
            o.iter()
                .map(|&k| {
                    k.checked_sub(1)
                        .ok_or_else(|| doc_err(format!("{what} is 1-based")))
                })
                .collect()
        })
        .collect()
}
