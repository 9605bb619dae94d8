//! Triangle-path convexity on general graphs.
//!
//! A set is t-convex exactly when it is P3-convex (no outside vertex sees
//! two members) and monophonically convex (no component of `G - S` touches
//! two non-adjacent members). The hull grows a set by the witness of
//! whichever condition fails until both hold.

use serde::Serialize;

use crate::graph::Graph;
use crate::vertex_set::VertexSet;

/// Why a set fails to be t-convex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConvexityWitness {
    /// The set is t-convex.
    None,
    /// `vertex` lies outside the set with at least two neighbors inside.
    P3Violation { vertex: usize },
    /// `pair` are non-adjacent members that both have a neighbor in
    /// `component`, a component of `G - S`.
    MonoViolation { pair: (usize, usize), component: VertexSet },
}

impl ConvexityWitness {
    pub fn is_none(&self) -> bool {
        matches!(self, ConvexityWitness::None)
    }

    pub fn to_json(&self) -> WitnessJson {
        match self {
            ConvexityWitness::None => WitnessJson { kind: "none", vertex: None, pair: None, component: None },
            ConvexityWitness::P3Violation { vertex } => {
                WitnessJson { kind: "p3-violation", vertex: Some(*vertex), pair: None, component: None }
            }
            ConvexityWitness::MonoViolation { pair, component } => WitnessJson {
                kind: "mono-violation",
                vertex: None,
                pair: Some([pair.0, pair.1]),
                component: Some(component.to_vec()),
            },
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct WitnessJson {
    pub kind: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub vertex: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pair: Option<[usize; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub component: Option<Vec<usize>>,
}

/// First vertex outside `s` with two or more neighbors in `s`.
pub fn p3_violation(g: &Graph, s: &VertexSet) -> Option<usize> {
    if s.len() < 2 {
        return None;
    }
    (0..g.n()).find(|&v| !s.contains(v) && g.neighbors(v).intersection_len(s) >= 2)
}

pub fn is_p3_convex(g: &Graph, s: &VertexSet) -> bool {
    p3_violation(g, s).is_none()
}

/// First component of `G - s` (by minimum vertex) attached to two
/// non-adjacent members of `s`, with the smallest such pair.
pub fn mono_violation(g: &Graph, s: &VertexSet) -> Option<((usize, usize), VertexSet)> {
    if s.len() < 2 {
        return None;
    }
    for comp in g.connected_components(s) {
        let attached = g.neighborhood_of(&comp).intersection(s);
        if let Some(pair) = g.non_adjacent_pair(&attached) {
            return Some((pair, comp));
        }
    }
    None
}

pub fn is_m_convex(g: &Graph, s: &VertexSet) -> bool {
    mono_violation(g, s).is_none()
}

/// Tests t-convexity; P3 violations are reported before monophonic ones.
pub fn is_t_convex(g: &Graph, s: &VertexSet) -> (bool, ConvexityWitness) {
    if let Some(vertex) = p3_violation(g, s) {
        return (false, ConvexityWitness::P3Violation { vertex });
    }
    if let Some((pair, component)) = mono_violation(g, s) {
        return (false, ConvexityWitness::MonoViolation { pair, component });
    }
    (true, ConvexityWitness::None)
}

/// The smallest t-convex superset of `s`.
pub fn t_convex_hull(g: &Graph, s: &VertexSet) -> VertexSet {
    let mut hull = s.clone();
    loop {
        match is_t_convex(g, &hull).1 {
            ConvexityWitness::None => return hull,
            ConvexityWitness::P3Violation { vertex } => {
                hull.insert(vertex);
            }
            ConvexityWitness::MonoViolation { pair: (u, v), mut component } => {
                component.insert(u);
                component.insert(v);
                let path = g
                    .shortest_path(u, v, &component)
                    .expect("endpoints were added to the search set")
                    .expect("both endpoints have a neighbor in the connected component");
                for &w in path.vertices() {
                    hull.insert(w);
                }
            }
        }
    }
}

pub fn is_t_hull_set(g: &Graph, s: &VertexSet) -> bool {
    t_convex_hull(g, s).is_full()
}
