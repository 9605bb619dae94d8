//! Shortcuts that hold when the graph has no clique separator.
//!
//! On a prime graph every non-adjacent pair hulls the whole graph, so a
//! proper t-convex set is a clique that no outside vertex sees twice, and a
//! hull is either one P3 step away from its seed or everything.

use std::collections::BTreeSet;

use crate::decomposition::is_prime;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::vertex_set::VertexSet;

/// A graph known (or asserted) to be prime.
#[derive(Clone, Copy, Debug)]
pub struct PrimeGraph<'g> {
    graph: &'g Graph,
}

impl<'g> PrimeGraph<'g> {
    /// Wraps `g` after confirming it is connected and prime.
    pub fn checked(graph: &'g Graph) -> Result<Self> {
        match is_prime(graph) {
            Ok(true) => Ok(PrimeGraph { graph }),
            Ok(false) => Err(Error::Contract("graph has a clique separator".into())),
            Err(e) => Err(Error::Contract(format!("graph is not prime: {e}"))),
        }
    }

    /// Wraps `g` without checking. Results are meaningless if `g` is
    /// reducible.
    pub fn assume(graph: &'g Graph) -> Self {
        PrimeGraph { graph }
    }

    pub fn graph(&self) -> &'g Graph {
        self.graph
    }

    fn p3_step(&self, s: &VertexSet) -> VertexSet {
        let g = self.graph;
        let mut out = s.clone();
        for v in 0..g.n() {
            if !s.contains(v) && g.neighbors(v).intersection_len(s) >= 2 {
                out.insert(v);
            }
        }
        out
    }

    pub fn is_t_convex(&self, s: &VertexSet) -> bool {
        let g = self.graph;
        if s.is_full() {
            return true;
        }
        g.is_clique(s) && (0..g.n()).all(|v| s.contains(v) || g.neighbors(v).intersection_len(s) <= 1)
    }

    pub fn t_hull(&self, s: &VertexSet) -> VertexSet {
        let g = self.graph;
        if !g.is_clique(s) {
            return g.vertices();
        }
        let step = self.p3_step(s);
        if self.is_t_convex(&step) {
            step
        } else {
            g.vertices()
        }
    }

    pub fn is_t_hull_set(&self, s: &VertexSet) -> bool {
        self.t_hull(s).is_full()
    }

    /// Every t-convex set, sorted by size and then lexicographically.
    ///
    /// Seeds the family with the empty set, the singletons and `V`, then
    /// walks a worklist of edges: each edge `uv` proposes `{u, v}` plus the
    /// common neighbors of `u` and `v`, and retires all edges inside that
    /// proposal.
    pub fn enumerate_convex_sets(&self) -> PrimeConvexFamily {
        let g = self.graph;
        let n = g.n();
        let mut sets = vec![VertexSet::new(n), g.vertices()];
        sets.extend((0..n).map(|v| VertexSet::singleton(n, v)));
        let mut worklist: BTreeSet<(usize, usize)> = g.edges().collect();
        while let Some((u, v)) = worklist.pop_first() {
            let mut proposal = g.neighbors(u).intersection(g.neighbors(v));
            proposal.insert(u);
            proposal.insert(v);
            if self.is_t_convex(&proposal) {
                sets.push(proposal.clone());
            }
            for a in &proposal {
                for b in g.neighbors(a).intersection(&proposal).iter().filter(|&b| b > a) {
                    worklist.remove(&(a, b));
                }
            }
        }
        sets.sort_by(|a, b| a.cmp_size_lex(b));
        sets.dedup();
        PrimeConvexFamily { sets }
    }
}

/// All t-convex sets of a prime graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeConvexFamily {
    pub sets: Vec<VertexSet>,
}

impl PrimeConvexFamily {
    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, VertexSet> {
        self.sets.iter()
    }

    pub fn to_json(&self) -> Vec<Vec<usize>> {
        self.sets.iter().map(VertexSet::to_vec).collect()
    }
}

pub fn prime_is_t_convex(g: &Graph, s: &VertexSet) -> Result<bool> {
    Ok(PrimeGraph::checked(g)?.is_t_convex(s))
}

pub fn prime_t_hull(g: &Graph, s: &VertexSet) -> Result<VertexSet> {
    Ok(PrimeGraph::checked(g)?.t_hull(s))
}

pub fn enumerate_prime_convex_sets(g: &Graph) -> Result<PrimeConvexFamily> {
    Ok(PrimeGraph::checked(g)?.enumerate_convex_sets())
}
