//! Named graph families and seeded random graphs used as a test corpus.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::Graph;

#[derive(Clone, Debug, PartialEq)]
pub enum GraphKind {
    Path(usize),
    Cycle(usize),
    Complete(usize),
    /// `K_{1,k}`: center 0, leaves `1..=k`.
    Star(usize),
    /// Two triangles sharing vertex 0: `{0,1,2}` and `{0,3,4}`.
    Bowtie,
    /// `k` triangles `{0, 2i-1, 2i}` sharing the center 0.
    TriangleStar(usize),
    /// `G(n, p)` from a ChaCha8 stream seeded with `seed`. When `connected`
    /// is set, components are chained by one random edge each, in order of
    /// their smallest vertex.
    Random {
        n: usize,
        p: f64,
        seed: u64,
        connected: bool,
    },
}

impl GraphKind {
    pub fn random_connected(n: usize, p: f64, seed: u64) -> Self {
        GraphKind::Random { n, p, seed, connected: true }
    }

    pub fn build(&self) -> Result<Graph> {
        let need = |ok: bool, what: &str| {
            if ok {
                Ok(())
            } else {
                Err(Error::Validation(format!("{self}: {what}")))
            }
        };
        match *self {
            GraphKind::Path(n) => {
                need(n >= 1, "needs n >= 1")?;
                Graph::from_edges(n, (1..n).map(|i| (i - 1, i)))
            }
            GraphKind::Cycle(n) => {
                need(n >= 3, "needs n >= 3")?;
                Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n)))
            }
            GraphKind::Complete(n) => {
                need(n >= 1, "needs n >= 1")?;
                Graph::from_edges(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))))
            }
            GraphKind::Star(k) => {
                need(k >= 1, "needs k >= 1")?;
                Graph::from_edges(k + 1, (1..=k).map(|i| (0, i)))
            }
            GraphKind::Bowtie => GraphKind::TriangleStar(2).build(),
            GraphKind::TriangleStar(k) => {
                need(k >= 1, "needs k >= 1")?;
                let edges = (1..=k).flat_map(|i| [(0, 2 * i - 1), (0, 2 * i), (2 * i - 1, 2 * i)]);
                Graph::from_edges(2 * k + 1, edges)
            }
            GraphKind::Random { n, p, seed, connected } => {
                need(n >= 1, "needs n >= 1")?;
                need((0.0..=1.0).contains(&p), "needs 0 <= p <= 1")?;
                Ok(random_graph(n, p, seed, connected))
            }
        }
    }
}

fn random_graph(n: usize, p: f64, seed: u64, connected: bool) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    let g = Graph::from_edges(n, edges.iter().copied()).expect("generated edges are in range");
    if !connected {
        return g;
    }
    let comps = g.connected_components(&g.no_vertices());
    if comps.len() <= 1 {
        return g;
    }
    let mut joined: Vec<usize> = comps[0].to_vec();
    for comp in &comps[1..] {
        let members = comp.to_vec();
        let a = *members.choose(&mut rng).expect("components are nonempty");
        let b = *joined.choose(&mut rng).expect("components are nonempty");
        edges.push((a.min(b), a.max(b)));
        joined.extend(members);
    }
    Graph::from_edges(n, edges).expect("generated edges are in range")
}

/// Every connected graph on vertex set `0..n` (labeled, so isomorphic
/// copies are all included), in order of edge bitmask.
pub fn connected_labeled_graphs(n: usize) -> Vec<Graph> {
    assert!(n <= 7, "labeled enumeration is only meant for tiny n");
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    (0u64..1 << pairs.len())
        .map(|mask| {
            let edges = pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e);
            Graph::from_edges(n, edges).expect("pairs are in range")
        })
        .filter(Graph::is_connected)
        .collect()
}

const CORPUS_DENSITIES: [f64; 5] = [0.2, 0.3, 0.4, 0.5, 0.6];

/// `count` seeded random connected graphs on `n` vertices, cycling through
/// a spread of edge densities. Graph `k` uses seed
/// `base * 10^9 + n * 10^6 + k`, so base 0 is the reference corpus.
pub fn random_corpus(n: usize, count: usize, base: u64) -> Vec<GraphKind> {
    (0..count)
        .map(|k| {
            let p = CORPUS_DENSITIES[k % CORPUS_DENSITIES.len()];
            let seed = base.wrapping_mul(1_000_000_000).wrapping_add(n as u64 * 1_000_000 + k as u64);
            GraphKind::random_connected(n, p, seed)
        })
        .collect()
}

impl fmt::Display for GraphKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphKind::Path(n) => write!(f, "path:{n}"),
            GraphKind::Cycle(n) => write!(f, "cycle:{n}"),
            GraphKind::Complete(n) => write!(f, "complete:{n}"),
            GraphKind::Star(k) => write!(f, "star:{k}"),
            GraphKind::Bowtie => write!(f, "bowtie"),
            GraphKind::TriangleStar(k) => write!(f, "triangle_star:{k}"),
            GraphKind::Random { n, p, seed, connected: true } => {
                write!(f, "random_connected:{n}:{p}:{seed}")
            }
            GraphKind::Random { n, p, seed, connected: false } => {
                write!(f, "random:{n}:{p}:{seed}")
            }
        }
    }
}

/// Parses `kind[:param[:param..]]`, e.g. `cycle:5`, `bowtie`,
/// `random_connected:10:0.3:1`. A missing random seed defaults to 0.
impl GraphKind {
    /// Parses a spec like [`FromStr`], but random kinds written without a
    /// seed (`random_connected:N:P`) take `seed` instead of 0.
    pub fn parse_seeded(spec: &str, seed: u64) -> Result<GraphKind> {
        let is_random = spec.starts_with("random:") || spec.starts_with("random_connected:");
        if is_random && spec.split(':').count() == 3 {
            return format!("{spec}:{seed}").parse();
        }
        spec.parse()
    }
}

impl FromStr for GraphKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut parts = s.split(':');
        let kind = parts.next().unwrap_or_default();
        let params: Vec<&str> = parts.collect();
        let bad = || Error::Validation(format!("cannot parse graph spec '{s}'"));
        let int = |i: usize| -> Result<usize> { params.get(i).and_then(|t| t.parse().ok()).ok_or_else(bad) };
        let arity = |k: usize| if params.len() == k { Ok(()) } else { Err(bad()) };
        let kind = match kind {
            "path" => {
                arity(1)?;
                GraphKind::Path(int(0)?)
            }
            "cycle" => {
                arity(1)?;
                GraphKind::Cycle(int(0)?)
            }
            "complete" => {
                arity(1)?;
                GraphKind::Complete(int(0)?)
            }
            "star" => {
                arity(1)?;
                GraphKind::Star(int(0)?)
            }
            "bowtie" => {
                arity(0)?;
                GraphKind::Bowtie
            }
            "triangle_star" => {
                arity(1)?;
                GraphKind::TriangleStar(int(0)?)
            }
            "random_connected" | "random" => {
                if !(2..=3).contains(&params.len()) {
                    return Err(bad());
                }
                let p: f64 = params[1].parse().map_err(|_| bad())?;
                let seed = match params.get(2) {
                    Some(t) => t.parse().map_err(|_| bad())?,
                    None => 0,
                };
                GraphKind::Random { n: int(0)?, p, seed, connected: kind == "random_connected" }
            }
            _ => return Err(bad()),
        };
        Ok(kind)
    }
}
