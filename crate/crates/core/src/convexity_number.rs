//! Maximum proper t-convex set of a connected graph.
//!
//! Every proper convex set arises from one atom `F` and a proper convex set
//! `C` of `F`: take `C` together with every component of `G - C` that
//! avoids the rest of `F`. The answer is the largest such extension.

use serde::Serialize;

use crate::convexity::is_t_convex;
use crate::decomposition::{decompose, Decomposition};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::prime::PrimeGraph;
use crate::vertex_set::VertexSet;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConvexityNumberResult {
    pub value: usize,
    /// A proper t-convex set of size `value`.
    pub witness: VertexSet,
    pub atom_index: usize,
    /// The convex set of the atom that `witness` extends.
    pub seed: VertexSet,
}

#[derive(Clone, Debug, Serialize)]
pub struct ConvexityNumberJson {
    pub value: usize,
    pub witness: Vec<usize>,
    pub atom_index: usize,
    pub seed: Vec<usize>,
}

impl ConvexityNumberResult {
    pub fn to_json(&self) -> ConvexityNumberJson {
        ConvexityNumberJson {
            value: self.value,
            witness: self.witness.to_vec(),
            atom_index: self.atom_index,
            seed: self.seed.to_vec(),
        }
    }
}

/// `c` together with the vertices of every component of `G - c` that
/// contains no vertex of atom `i` outside `c`.
pub fn extension_size(g: &Graph, dec: &Decomposition, i: usize, c: &VertexSet) -> VertexSet {
    let mut out = c.clone();
    if c.is_empty() {
        return out;
    }
    let rest = dec.atom(i).difference(c);
    for comp in g.connected_components(c) {
        if !comp.intersects(&rest) {
            out.union_with(&comp);
        }
    }
    out
}

/// Like [`extension_size`] but first checks that `c` is a proper t-convex
/// set of the atom.
pub fn extension_size_checked(g: &Graph, dec: &Decomposition, i: usize, c: &VertexSet) -> Result<VertexSet> {
    let atom = dec.atom(i);
    if !c.is_subset(atom) || c == atom {
        return Err(Error::Contract("seed must be a proper subset of the atom".into()));
    }
    let (sub, map) = g.induced(atom);
    let local = VertexSet::from_vertices(
        sub.n(),
        map.iter().enumerate().filter(|(_, &v)| c.contains(v)).map(|(i, _)| i),
    );
    if !PrimeGraph::assume(&sub).is_t_convex(&local) {
        return Err(Error::Contract("seed is not t-convex in the atom".into()));
    }
    Ok(extension_size(g, dec, i, c))
}

/// Lifts a family of local vertex sets of an induced subgraph back to `g`.
fn lift(universe: usize, map: &[usize], local: &VertexSet) -> VertexSet {
    VertexSet::from_vertices(universe, local.iter().map(|v| map[v]))
}

/// The t-convexity number. Requires `g` connected with at least two
/// vertices.
pub fn convexity_number(g: &Graph) -> Result<ConvexityNumberResult> {
    if g.n() < 2 {
        return Err(Error::Validation("convexity number needs at least two vertices".into()));
    }
    let dec = decompose(g)?;
    convexity_number_with(g, &dec)
}

pub fn convexity_number_with(g: &Graph, dec: &Decomposition) -> Result<ConvexityNumberResult> {
    let n = g.n();
    let mut best: Option<ConvexityNumberResult> = None;
    for (i, atom) in dec.atoms().iter().enumerate() {
        let (sub, map) = g.induced(atom);
        let family = PrimeGraph::assume(&sub).enumerate_convex_sets();
        for local in family.iter() {
            if local.is_full() || local.is_empty() {
                continue;
            }
            let seed = lift(n, &map, local);
            let ext = extension_size(g, dec, i, &seed);
            if best.as_ref().is_none_or(|b| ext.len() > b.value) {
                best = Some(ConvexityNumberResult { value: ext.len(), witness: ext, atom_index: i, seed });
            }
        }
    }
    let best = best.ok_or_else(|| Error::Internal("no proper convex set found".into()))?;
    if best.witness.is_full() || !is_t_convex(g, &best.witness).0 {
        return Err(Error::Internal(format!("witness {:?} is not a proper t-convex set", best.witness)));
    }
    Ok(best)
}
