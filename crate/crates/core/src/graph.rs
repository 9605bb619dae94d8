//! Simple undirected graphs over dense vertex ids, plus the traversals the
//! convexity algorithms are built on.

use std::collections::VecDeque;
use std::fmt::Write as _;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::vertex_set::VertexSet;

/// A finite, simple, undirected graph on vertices `0..n`.
///
/// Immutable once built. Adjacency is stored as one [`VertexSet`] per vertex.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Graph {
    adjacency: Vec<VertexSet>,
    edge_count: usize,
}

impl Graph {
    /// The graph on `n` vertices with no edges.
    pub fn empty(n: usize) -> Self {
        Graph { adjacency: vec![VertexSet::new(n); n], edge_count: 0 }
    }

    /// Builds a graph from an edge list. Duplicate edges collapse; self-loops
    /// and out-of-range endpoints are rejected.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Graph::empty(n);
        for (u, v) in edges {
            g.insert_edge(u, v)?;
        }
        Ok(g)
    }

    fn insert_edge(&mut self, u: usize, v: usize) -> Result<()> {
        let n = self.n();
        if u >= n || v >= n {
            return Err(Error::Validation(format!("edge ({u}, {v}) references a vertex outside 0..{n}")));
        }
        if u == v {
            return Err(Error::Validation(format!("self-loop at vertex {u}")));
        }
        if self.adjacency[u].insert(v) {
            self.adjacency[v].insert(u);
            self.edge_count += 1;
        }
        Ok(())
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.adjacency.len()
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.edge_count
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &VertexSet {
        &self.adjacency[v]
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adjacency[u].contains(v)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n())
    }

    /// Empty set over this graph's universe.
    pub fn no_vertices(&self) -> VertexSet {
        VertexSet::new(self.n())
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n()).flat_map(move |u| self.adjacency[u].iter().filter(move |&v| v > u).map(move |v| (u, v)))
    }

    /// Union of the neighborhoods of `set`.
    pub fn neighborhood_of(&self, set: &VertexSet) -> VertexSet {
        let mut out = self.no_vertices();
        for v in set {
            out.union_with(&self.adjacency[v]);
        }
        out
    }

    pub fn is_clique(&self, set: &VertexSet) -> bool {
        set.iter().all(|v| {
            let mut rest = set.clone();
            rest.remove(v);
            rest.is_subset(&self.adjacency[v])
        })
    }

    /// Two distinct non-adjacent members of `set`, smallest pair first.
    pub fn non_adjacent_pair(&self, set: &VertexSet) -> Option<(usize, usize)> {
        for u in set {
            let mut missing = set.difference(&self.adjacency[u]);
            missing.remove(u);
            if let Some(v) = missing.iter().find(|&v| v > u) {
                return Some((u, v));
            }
        }
        None
    }

    pub fn is_connected(&self) -> bool {
        self.n() == 0 || self.connected_components(&self.no_vertices()).len() == 1
    }

    /// Components of `G - removed`, each as a vertex set, ordered by their
    /// minimum vertex.
    pub fn connected_components(&self, removed: &VertexSet) -> Vec<VertexSet> {
        let mut unseen = removed.complement();
        let mut out = Vec::new();
        while let Some(root) = unseen.first() {
            let comp = self.reach_within(root, &unseen);
            unseen.difference_with(&comp);
            out.push(comp);
        }
        out
    }

    /// The component of `G[within]` containing `root`.
    pub fn reach_within(&self, root: usize, within: &VertexSet) -> VertexSet {
        let mut comp = self.no_vertices();
        comp.insert(root);
        let mut frontier = comp.clone();
        while !frontier.is_empty() {
            let mut next = self.neighborhood_of(&frontier);
            next.intersect_with(within);
            next.difference_with(&comp);
            comp.union_with(&next);
            frontier = next;
        }
        comp
    }

    /// A shortest `u`–`v` path in `G[within]`. Among equal-length paths the
    /// one whose vertex sequence steps to the smallest id is chosen.
    pub fn shortest_path(&self, u: usize, v: usize, within: &VertexSet) -> Result<Option<Path>> {
        if !within.contains(u) || !within.contains(v) {
            return Err(Error::Precondition(format!("path endpoints {u}, {v} must lie in the search set")));
        }
        if u == v {
            return Ok(Some(Path(vec![u])));
        }
        // BFS from the target gives distances; walking from `u` towards
        // smaller distance, smallest id first, yields the canonical path.
        let n = self.n();
        let mut dist = vec![usize::MAX; n];
        dist[v] = 0;
        let mut queue = VecDeque::from([v]);
        while let Some(x) = queue.pop_front() {
            if x == u {
                break;
            }
            for y in self.adjacency[x].iter() {
                if within.contains(y) && dist[y] == usize::MAX {
                    dist[y] = dist[x] + 1;
                    queue.push_back(y);
                }
            }
        }
        if dist[u] == usize::MAX {
            return Ok(None);
        }
        let mut path = vec![u];
        let mut cur = u;
        while cur != v {
            cur = self.adjacency[cur]
                .iter()
                .find(|&y| within.contains(y) && dist[y] == dist[cur] - 1)
                .ok_or_else(|| Error::Internal("broken BFS layering".into()))?;
            path.push(cur);
        }
        Ok(Some(Path(path)))
    }

    /// The subgraph induced by `set`, together with the map from its local
    /// ids back to ids of `self` (ascending).
    pub fn induced(&self, set: &VertexSet) -> (Graph, Vec<usize>) {
        let global: Vec<usize> = set.to_vec();
        let mut local = vec![usize::MAX; self.n()];
        for (i, &v) in global.iter().enumerate() {
            local[v] = i;
        }
        let k = global.len();
        let mut adjacency = vec![VertexSet::new(k); k];
        let mut edge_count = 0;
        for (i, &v) in global.iter().enumerate() {
            for w in self.adjacency[v].intersection(set).iter() {
                adjacency[i].insert(local[w]);
                if local[w] > i {
                    edge_count += 1;
                }
            }
        }
        (Graph { adjacency, edge_count }, global)
    }

    /// Parses `text` in the given format.
    pub fn parse(text: &str, format: Format) -> Result<Graph> {
        match format {
            Format::EdgeList => parse_edge_list(text),
            Format::Dimacs => parse_dimacs(text),
        }
    }

    /// Serializes in the given format; [`Graph::parse`] reads it back.
    pub fn serialize(&self, format: Format) -> String {
        let mut out = String::new();
        match format {
            Format::EdgeList => {
                let _ = writeln!(out, "{}", self.n());
                for (u, v) in self.edges() {
                    let _ = writeln!(out, "{u} {v}");
                }
            }
            Format::Dimacs => {
                let _ = writeln!(out, "p edge {} {}", self.n(), self.m());
                for (u, v) in self.edges() {
                    let _ = writeln!(out, "e {} {}", u + 1, v + 1);
                }
            }
        }
        out
    }
}

/// Text formats accepted by [`Graph::parse`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    /// `u v` per line, 0-based, `#` comments. An optional first line holding
    /// a single integer declares the vertex count; otherwise it is one more
    /// than the largest id seen.
    EdgeList,
    /// `p edge n m` header followed by `e u v` lines, 1-based.
    Dimacs,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Format> {
        match s {
            "edge-list" | "edgelist" | "edges" => Ok(Format::EdgeList),
            "dimacs" => Ok(Format::Dimacs),
            other => Err(Error::Validation(format!("unknown graph format '{other}'"))),
        }
    }
}

fn parse_id(tok: &str, line: usize) -> Result<usize> {
    tok.parse::<usize>()
        .map_err(|_| Error::Parse { line, message: format!("expected a vertex id, found '{tok}'") })
}

fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut declared: Option<usize> = None;
    let mut edges = Vec::new();
    let mut seen_content = false;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let toks: Vec<&str> = body.split_whitespace().collect();
        match toks.as_slice() {
            [count] if !seen_content => declared = Some(parse_id(count, line)?),
            [u, v] => edges.push((parse_id(u, line)?, parse_id(v, line)?)),
            _ => return Err(Error::Parse { line, message: format!("expected 'u v', found '{body}'") }),
        }
        seen_content = true;
    }
    let n = declared.unwrap_or_else(|| edges.iter().map(|&(u, v)| u.max(v) + 1).max().unwrap_or(0));
    Graph::from_edges(n, edges)
}

fn parse_dimacs(text: &str) -> Result<Graph> {
    let mut n: Option<usize> = None;
    let mut edges = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let toks: Vec<&str> = raw.split_whitespace().collect();
        match toks.as_slice() {
            [] => continue,
            ["c", ..] => continue,
            ["p", _kind, count, _m] => {
                if n.is_some() {
                    return Err(Error::Parse { line, message: "duplicate 'p' header".into() });
                }
                n = Some(parse_id(count, line)?);
            }
            ["e", u, v] => {
                if n.is_none() {
                    return Err(Error::Parse { line, message: "edge before 'p' header".into() });
                }
                let u = parse_id(u, line)?;
                let v = parse_id(v, line)?;
                if u == 0 || v == 0 {
                    return Err(Error::Validation(format!("line {line}: DIMACS vertex ids are 1-based")));
                }
                edges.push((u - 1, v - 1));
            }
            _ => {
                return Err(Error::Parse {
                    line,
                    message: format!("unrecognized DIMACS line '{}'", raw.trim()),
                })
            }
        }
    }
    let n = n.ok_or(Error::Parse { line: 0, message: "missing 'p edge n m' header".into() })?;
    Graph::from_edges(n, edges)
}

/// A sequence of distinct vertices, consecutive ones adjacent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Path(pub Vec<usize>);

impl Path {
    pub fn vertices(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn to_set(&self, universe: usize) -> VertexSet {
        VertexSet::from_vertices(universe, self.0.iter().copied())
    }

    /// Whether this is a path of `g` with no repeated vertex.
    pub fn is_valid_in(&self, g: &Graph) -> bool {
        let mut seen = g.no_vertices();
        self.0.iter().all(|&v| v < g.n() && seen.insert(v))
            && self.0.windows(2).all(|w| g.has_edge(w[0], w[1]))
    }

    /// Whether no two non-consecutive vertices of the path are adjacent.
    pub fn is_induced_in(&self, g: &Graph) -> bool {
        let p = &self.0;
        (0..p.len()).all(|i| (i + 2..p.len()).all(|j| !g.has_edge(p[i], p[j])))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::GraphKind;
    use proptest::prelude::*;

    fn set(n: usize, vs: &[usize]) -> VertexSet {
        VertexSet::from_vertices(n, vs.iter().copied())
    }

    #[test]
    fn edge_list_path() {
        let g = Graph::parse("3\n0 1\n1 2\n", Format::EdgeList).unwrap();
        assert_eq!(g, GraphKind::Path(3).build().unwrap());
        let g = Graph::parse("# P3\n0 1 # first\n\n1 2\n", Format::EdgeList).unwrap();
        assert_eq!((g.n(), g.m()), (3, 2));
    }

    #[test]
    fn dimacs_is_one_based() {
        let g = Graph::parse("c path\np edge 4 3\ne 1 2\ne 2 3\ne 3 4\n", Format::Dimacs).unwrap();
        assert_eq!(g, GraphKind::Path(4).build().unwrap());
    }

    #[test]
    fn rejects_self_loop() {
        assert!(matches!(Graph::parse("0 0", Format::EdgeList), Err(Error::Validation(_))));
    }

    #[test]
    fn rejects_out_of_range_and_garbage() {
        assert!(matches!(Graph::parse("2\n0 5\n", Format::EdgeList), Err(Error::Validation(_))));
        assert_eq!(
            Graph::parse("2\n0 1\n0 x\n", Format::EdgeList),
            Err(Error::Parse { line: 3, message: "expected a vertex id, found 'x'".into() })
        );
        assert!(matches!(Graph::parse("p edge 3 1\ne 0 1\n", Format::Dimacs), Err(Error::Validation(_))));
        assert!(matches!(Graph::parse("e 1 2\n", Format::Dimacs), Err(Error::Parse { line: 1, .. })));
    }

    #[test]
    fn duplicate_edges_collapse() {
        let g = Graph::parse("0 1\n1 0\n0 1\n", Format::EdgeList).unwrap();
        assert_eq!(g.m(), 1);
    }

    #[test]
    fn components_examples() {
        let p4 = GraphKind::Path(4).build().unwrap();
        assert_eq!(p4.connected_components(&set(4, &[1])), vec![set(4, &[0]), set(4, &[2, 3])]);
        assert_eq!(p4.connected_components(&set(4, &[])), vec![p4.vertices()]);
        let c5 = GraphKind::Cycle(5).build().unwrap();
        assert_eq!(c5.connected_components(&set(5, &[0, 2])), vec![set(5, &[1]), set(5, &[3, 4])]);
    }

    #[test]
    fn shortest_path_examples() {
        let p4 = GraphKind::Path(4).build().unwrap();
        let all = p4.vertices();
        assert_eq!(p4.shortest_path(0, 3, &all).unwrap(), Some(Path(vec![0, 1, 2, 3])));
        assert_eq!(p4.shortest_path(2, 2, &all).unwrap(), Some(Path(vec![2])));
        assert!(p4.shortest_path(0, 3, &set(4, &[0, 1, 3])).unwrap().is_none());
        assert!(matches!(p4.shortest_path(0, 3, &set(4, &[0, 1])), Err(Error::Precondition(_))));

        let c5 = GraphKind::Cycle(5).build().unwrap();
        // Excluding vertex 4 forces the long way round.
        assert_eq!(c5.shortest_path(0, 3, &set(5, &[0, 1, 2, 3])).unwrap(), Some(Path(vec![0, 1, 2, 3])));
        // Ties go to the smaller next vertex.
        let c4 = GraphKind::Cycle(4).build().unwrap();
        assert_eq!(c4.shortest_path(0, 2, &c4.vertices()).unwrap(), Some(Path(vec![0, 1, 2])));
    }

    #[test]
    fn induced_subgraph_maps_ids() {
        let c5 = GraphKind::Cycle(5).build().unwrap();
        let (sub, map) = c5.induced(&set(5, &[0, 1, 4]));
        assert_eq!(map, vec![0, 1, 4]);
        assert_eq!(sub.m(), 2);
        assert!(sub.has_edge(0, 2) && sub.has_edge(0, 1) && !sub.has_edge(1, 2));
    }

    fn arb_graph() -> impl Strategy<Value = Graph> {
        (1usize..14, any::<u64>(), 0.0f64..1.0)
            .prop_map(|(n, seed, p)| GraphKind::Random { n, p, seed, connected: false }.build().unwrap())
    }

    proptest! {
        #[test]
        fn adjacency_invariants(g in arb_graph()) {
            let mut total = 0;
            for u in 0..g.n() {
                prop_assert!(!g.has_edge(u, u));
                for v in g.neighbors(u) {
                    prop_assert!(g.has_edge(v, u));
                }
                total += g.degree(u);
            }
            prop_assert_eq!(total, 2 * g.m());
        }

        #[test]
        fn serialize_round_trip(g in arb_graph()) {
            for fmt in [Format::EdgeList, Format::Dimacs] {
                let text = g.serialize(fmt);
                prop_assert_eq!(&Graph::parse(&text, fmt).unwrap(), &g);
            }
        }

        #[test]
        fn components_partition(g in arb_graph(), removed in proptest::collection::vec(0usize..14, 0..5)) {
            let removed = VertexSet::from_vertices(g.n(), removed.into_iter().filter(|&v| v < g.n()));
            let comps = g.connected_components(&removed);
            let mut cover = g.no_vertices();
            for (i, c) in comps.iter().enumerate() {
                prop_assert!(!c.intersects(&cover));
                prop_assert!(!c.intersects(&removed));
                cover.union_with(c);
                for d in &comps[i + 1..] {
                    prop_assert!(!g.neighborhood_of(c).intersects(d));
                }
            }
            prop_assert_eq!(cover, removed.complement());
        }

        #[test]
        fn shortest_paths_are_induced(g in arb_graph(), a in 0usize..14, b in 0usize..14) {
            let (a, b) = (a % g.n(), b % g.n());
            if let Some(p) = g.shortest_path(a, b, &g.vertices()).unwrap() {
                prop_assert!(p.is_valid_in(&g));
                prop_assert!(p.is_induced_in(&g));
                prop_assert_eq!(p.vertices()[0], a);
                prop_assert_eq!(*p.vertices().last().unwrap(), b);
            }
        }
    }
}
