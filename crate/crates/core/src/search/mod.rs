//! Pruning intersection patterns down to the families that can realise the
//! smallest dilatation, and the certified minimisation over what survives.
//!
//! A pattern is excluded when two components meet at least twice, or when
//! its intersection graph contains a 4-cycle or an affine diagram
//! `D~_n, E~_6, E~_7, E~_8`: each of these forces dilatation at least
//! `3 + 2√2`. Every connected bipartite graph left over is `A_n`, `D_n`,
//! `E_6`, `E_7`, `E_8`, an even cycle of length at least 6, or the enriched
//! 6-cycle.

mod enumerate;
mod minimal;
mod subgraph;

use serde::Serialize;

use crate::coxeter::DynkinType;
use crate::error::{Error, Result};
use crate::graph::SimpleGraph;
use crate::penner::{double_intersection_certificate, IntersectionPattern};

pub use enumerate::connected_bipartite_graphs;
pub use minimal::{
    minimal_dilatation, table1, Candidate, FillEvidence, GenusEntry, MinimalDilatation, SearchMode,
    Table1Row,
};
pub use subgraph::contains_subgraph;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Exclusion {
    DoubleIntersection {
        alpha: usize,
        beta: usize,
        x: u32,
    },
    AffineSubgraph {
        diagram: DynkinType,
        embedding: Vec<usize>,
    },
    FourCycleSubgraph {
        embedding: Vec<usize>,
    },
}

impl Exclusion {
    pub fn reason(&self) -> &'static str {
        match self {
            Exclusion::DoubleIntersection { .. } => "double_intersection",
            Exclusion::AffineSubgraph { .. } => "affine_subgraph",
            Exclusion::FourCycleSubgraph { .. } => "four_cycle_subgraph",
        }
    }
}

/// Exactly one of the two fields is set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AdmissibilityReport {
    pub excluded_by: Option<Exclusion>,
    pub surviving_type: Option<DynkinType>,
}

impl AdmissibilityReport {
    fn excluded(e: Exclusion) -> Self {
        Self {
            excluded_by: Some(e),
            surviving_type: None,
        }
    }

    fn survivor(t: DynkinType) -> Self {
        Self {
            excluded_by: None,
            surviving_type: Some(t),
        }
    }

    pub fn is_excluded(&self) -> bool {
        self.excluded_by.is_some()
    }
}

/// Affine diagrams that fit inside a graph on `n` vertices, smallest first.
fn affine_diagrams(n: usize) -> Vec<DynkinType> {
    let mut out: Vec<DynkinType> = (4..n).map(DynkinType::AffineD).collect();
    out.extend([
        DynkinType::AffineE6,
        DynkinType::AffineE7,
        DynkinType::AffineE8,
    ]);
    out.retain(|d| d.vertex_count() <= n);
    out
}

/// Classifies a connected bipartite intersection graph.
pub fn classify(g: &SimpleGraph) -> Result<AdmissibilityReport> {
    if g.vertex_count() == 0 || !g.is_connected() || !g.is_bipartite() {
        return Err(Error::InvalidParameter(
            "classification needs a connected bipartite graph".into(),
        ));
    }
    if g.vertex_count() >= 4 {
        if let Some(embedding) = contains_subgraph(g, &SimpleGraph::cycle(4)) {
            return Ok(AdmissibilityReport::excluded(
                Exclusion::FourCycleSubgraph { embedding },
            ));
        }
    }
    for diagram in affine_diagrams(g.vertex_count()) {
        let h = diagram.graph()?;
        if let Some(embedding) = contains_subgraph(g, &h) {
            return Ok(AdmissibilityReport::excluded(Exclusion::AffineSubgraph {
                diagram,
                embedding,
            }));
        }
    }
    match DynkinType::identify(g) {
        Some(
            t @ (DynkinType::A(_)
            | DynkinType::D(_)
            | DynkinType::E6
            | DynkinType::E7
            | DynkinType::E8
            | DynkinType::EnrichedSixCycle),
        ) => Ok(AdmissibilityReport::survivor(t)),
        Some(t @ DynkinType::Cycle(n)) if n >= 6 => Ok(AdmissibilityReport::survivor(t)),
        other => Err(Error::UnclassifiedSurvivor(format!(
            "{} vertices, edges {:?}, recognised as {:?}",
            g.vertex_count(),
            g.edges(),
            other.map(|t| t.to_string())
        ))),
    }
}

/// Classifies a pattern, taking intersection multiplicities into account.
pub fn classify_pattern(p: &IntersectionPattern) -> Result<AdmissibilityReport> {
    if let Some(c) = double_intersection_certificate(p, crate::spectral::DEFAULT_TOL) {
        return Ok(AdmissibilityReport::excluded(
            Exclusion::DoubleIntersection {
                alpha: c.alpha,
                beta: c.beta,
                x: c.x,
            },
        ));
    }
    classify(&p.intersection_graph())
}
