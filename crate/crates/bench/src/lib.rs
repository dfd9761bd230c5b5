//! Fixtures shared by the benchmarks.

use penner_core::{DynkinType, IntersectionPattern, TwistWord};

/// Pattern and bipartite word of a named diagram.
pub fn diagram(kind: DynkinType) -> (IntersectionPattern, TwistWord) {
    let p = IntersectionPattern::from_graph(&kind.graph().expect("valid diagram"))
        .expect("bipartite diagram")
        .0;
    let w = p.bipartite_word();
    (p, w)
}
