//! Exponential reference implementations taken straight from the
//! definitions: enumerate triangle paths, close sets under their interval,
//! scan all subsets. Only usable on small graphs; every entry point checks
//! an [`OracleBudget`] first.
//!
//! None of this calls into the polynomial algorithms. Graphs are read once
//! into bitmask adjacency and everything else runs on `u32` masks.

use crate::error::{Error, Result};
use crate::graph::{Graph, Path};
use crate::vertex_set::VertexSet;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleBudget {
    /// Largest graph for which triangle paths are enumerated.
    pub max_path_n: usize,
    /// Largest graph for subset scans.
    pub max_subset_n: usize,
    /// Cap on paths enumerated between one pair of vertices.
    pub max_paths: usize,
}

impl Default for OracleBudget {
    fn default() -> Self {
        OracleBudget { max_path_n: 9, max_subset_n: 16, max_paths: 1_000_000 }
    }
}

impl OracleBudget {
    fn check(&self, n: usize, cap: usize, what: &str) -> Result<()> {
        if n > cap {
            Err(Error::Budget(format!("{what} refuses n = {n} (cap {cap})")))
        } else {
            Ok(())
        }
    }
}

fn adjacency_masks(g: &Graph) -> Vec<u32> {
    (0..g.n()).map(|u| (0..g.n()).filter(|&v| g.has_edge(u, v)).fold(0u32, |m, v| m | 1 << v)).collect()
}

fn to_mask(s: &VertexSet) -> u32 {
    s.iter().fold(0, |m, v| m | 1 << v)
}

fn from_mask(n: usize, mask: u32) -> VertexSet {
    VertexSet::from_vertices(n, (0..n).filter(|&v| mask >> v & 1 == 1))
}

/// Depth-first enumeration of triangle paths from `u` to `v`, pruning as
/// soon as a new vertex is adjacent to one three or more places back.
fn triangle_paths_masked(
    adj: &[u32],
    u: usize,
    v: usize,
    max_paths: usize,
    mut visit: impl FnMut(&[usize]),
) -> Result<()> {
    if u == v {
        visit(&[u]);
        return Ok(());
    }
    let mut path = vec![u];
    let mut count = 0usize;
    fn recurse(
        adj: &[u32],
        v: usize,
        path: &mut Vec<usize>,
        used: u32,
        count: &mut usize,
        max_paths: usize,
        visit: &mut dyn FnMut(&[usize]),
    ) -> Result<()> {
        let last = *path.last().expect("path starts nonempty");
        let k = path.len();
        // Vertices at positions <= k - 2 relative to the new position k.
        let far: u32 = path[..k.saturating_sub(2)].iter().fold(0, |m, &x| m | 1 << x);
        let mut options = adj[last] & !used;
        while options != 0 {
            let w = options.trailing_zeros() as usize;
            options &= options - 1;
            if adj[w] & far != 0 {
                continue;
            }
            path.push(w);
            if w == v {
                *count += 1;
                if *count > max_paths {
                    return Err(Error::Budget(format!("more than {max_paths} paths")));
                }
                visit(path);
            } else {
                recurse(adj, v, path, used | 1 << w, count, max_paths, visit)?;
            }
            path.pop();
        }
        Ok(())
    }
    recurse(adj, v, &mut path, 1 << u, &mut count, max_paths, &mut visit)
}

/// All triangle paths between `u` and `v`.
pub fn enumerate_triangle_paths(g: &Graph, u: usize, v: usize) -> Result<Vec<Path>> {
    enumerate_triangle_paths_with(g, u, v, OracleBudget::default())
}

pub fn enumerate_triangle_paths_with(
    g: &Graph,
    u: usize,
    v: usize,
    budget: OracleBudget,
) -> Result<Vec<Path>> {
    budget.check(g.n(), budget.max_path_n, "triangle path enumeration")?;
    let adj = adjacency_masks(g);
    let mut out = Vec::new();
    triangle_paths_masked(&adj, u, v, budget.max_paths, |p| out.push(Path(p.to_vec())))?;
    Ok(out)
}

/// Whether `path` (assumed to be a simple path) has no edge between
/// positions more than two apart.
pub fn is_triangle_path(g: &Graph, path: &Path) -> bool {
    let p = path.vertices();
    path.is_valid_in(g) && (0..p.len()).all(|i| (i + 3..p.len()).all(|j| !g.has_edge(p[i], p[j])))
}

/// Brute-force triangle-path convexity for one small graph, with every
/// pairwise interval enumerated up front.
#[derive(Clone, Debug)]
pub struct Oracle {
    n: usize,
    adj: Vec<u32>,
    pair_interval: Vec<u32>,
}

impl Oracle {
    pub fn new(g: &Graph) -> Result<Self> {
        Self::with_budget(g, OracleBudget::default())
    }

    pub fn with_budget(g: &Graph, budget: OracleBudget) -> Result<Self> {
        let n = g.n();
        budget.check(n, budget.max_path_n, "interval oracle")?;
        let adj = adjacency_masks(g);
        let mut pair_interval = vec![0u32; n * n];
        for u in 0..n {
            for v in u..n {
                let mut acc = 0u32;
                triangle_paths_masked(&adj, u, v, budget.max_paths, |p| {
                    acc |= p.iter().fold(0, |m, &x| m | 1 << x)
                })?;
                pair_interval[u * n + v] = acc;
                pair_interval[v * n + u] = acc;
            }
        }
        Ok(Oracle { n, adj, pair_interval })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn full(&self) -> u32 {
        if self.n == 32 {
            !0
        } else {
            (1u32 << self.n) - 1
        }
    }

    pub fn interval(&self, s: u32) -> u32 {
        if s.count_ones() < 2 {
            return s;
        }
        let mut acc = 0;
        let mut a = s;
        while a != 0 {
            let u = a.trailing_zeros() as usize;
            a &= a - 1;
            let mut b = a;
            while b != 0 {
                let v = b.trailing_zeros() as usize;
                b &= b - 1;
                acc |= self.pair_interval[u * self.n + v];
            }
        }
        acc
    }

    pub fn hull(&self, s: u32) -> u32 {
        let mut cur = s;
        loop {
            let next = self.interval(cur);
            if next == cur {
                return cur;
            }
            cur = next;
        }
    }

    pub fn is_convex(&self, s: u32) -> bool {
        self.interval(s) == s
    }

    /// Largest proper convex set size (0 when `n <= 1`).
    pub fn convexity_number(&self) -> usize {
        let full = self.full();
        (0..full).filter(|&s| self.is_convex(s)).map(|s| s.count_ones() as usize).max().unwrap_or(0)
    }

    /// Smallest hull set size, scanning subsets by increasing size.
    pub fn hull_number(&self) -> usize {
        let full = self.full();
        for k in 0..=self.n {
            if (0..=full).any(|s| s.count_ones() as usize == k && self.hull(s) == full) {
                return k;
            }
        }
        self.n
    }

    pub fn adjacency(&self) -> &[u32] {
        &self.adj
    }
}

pub fn brute_interval(g: &Graph, s: &VertexSet) -> Result<VertexSet> {
    let o = Oracle::new(g)?;
    Ok(from_mask(g.n(), o.interval(to_mask(s))))
}

pub fn brute_hull(g: &Graph, s: &VertexSet) -> Result<VertexSet> {
    let o = Oracle::new(g)?;
    Ok(from_mask(g.n(), o.hull(to_mask(s))))
}

pub fn brute_is_convex(g: &Graph, s: &VertexSet) -> Result<bool> {
    Ok(Oracle::new(g)?.is_convex(to_mask(s)))
}

pub fn brute_convexity_number(g: &Graph) -> Result<usize> {
    Ok(Oracle::new(g)?.convexity_number())
}

pub fn brute_hull_number(g: &Graph) -> Result<usize> {
    Ok(Oracle::new(g)?.hull_number())
}

/// Number of components of `G[mask]`.
fn component_count(adj: &[u32], mask: u32) -> usize {
    let mut left = mask;
    let mut count = 0;
    while left != 0 {
        let mut comp = left & left.wrapping_neg();
        loop {
            let grown = comp | comp.iter_neighbors(adj) & mask;
            if grown == comp {
                break;
            }
            comp = grown;
        }
        left &= !comp;
        count += 1;
    }
    count
}

trait MaskNeighbors {
    fn iter_neighbors(self, adj: &[u32]) -> u32;
}

impl MaskNeighbors for u32 {
    fn iter_neighbors(self, adj: &[u32]) -> u32 {
        let mut acc = 0;
        let mut m = self;
        while m != 0 {
            acc |= adj[m.trailing_zeros() as usize];
            m &= m - 1;
        }
        acc
    }
}

fn is_clique_mask(adj: &[u32], mask: u32) -> bool {
    let mut m = mask;
    while m != 0 {
        let v = m.trailing_zeros() as usize;
        m &= m - 1;
        if mask & !(1 << v) & !adj[v] != 0 {
            return false;
        }
    }
    true
}

/// Iterates all submasks of `mask`, including 0 and `mask`.
fn submasks(mask: u32) -> impl Iterator<Item = u32> {
    let mut next = Some(mask);
    std::iter::from_fn(move || {
        let cur = next?;
        next = if cur == 0 { None } else { Some((cur - 1) & mask) };
        Some(cur)
    })
}

/// `G[mask]` is prime when no clique of it (the empty one included) leaves
/// two or more components behind.
fn is_prime_mask(adj: &[u32], mask: u32) -> bool {
    submasks(mask).all(|k| !is_clique_mask(adj, k) || component_count(adj, mask & !k) <= 1)
}

/// Maximal vertex sets inducing prime subgraphs, sorted lexicographically.
pub fn brute_atoms(g: &Graph) -> Result<Vec<VertexSet>> {
    let budget = OracleBudget::default();
    budget.check(g.n(), 12, "atom oracle")?;
    let n = g.n();
    let adj = adjacency_masks(g);
    let primes: Vec<u32> = (1u32..1 << n).filter(|&m| is_prime_mask(&adj, m)).collect();
    let mut atoms: Vec<VertexSet> = primes
        .iter()
        .filter(|&&m| !primes.iter().any(|&p| p != m && p & m == m))
        .map(|&m| from_mask(n, m))
        .collect();
    atoms.sort_by(|a, b| a.cmp_lex(b));
    Ok(atoms)
}

pub fn brute_is_prime(g: &Graph) -> Result<bool> {
    OracleBudget::default().check(g.n(), 12, "primality oracle")?;
    let adj = adjacency_masks(g);
    let full = if g.n() == 0 { 0 } else { (1u32 << g.n()) - 1 };
    Ok(is_prime_mask(&adj, full))
}

/// Maximal cliques, sorted lexicographically.
pub fn brute_maximal_cliques(g: &Graph) -> Result<Vec<VertexSet>> {
    let budget = OracleBudget::default();
    budget.check(g.n(), budget.max_subset_n, "clique oracle")?;
    let n = g.n();
    let adj = adjacency_masks(g);
    let cliques: Vec<u32> = (1u32..1 << n).filter(|&m| is_clique_mask(&adj, m)).collect();
    let mut out: Vec<VertexSet> = cliques
        .iter()
        .filter(|&&m| (0..n).all(|v| m >> v & 1 == 1 || m & !adj[v] != 0))
        .map(|&m| from_mask(n, m))
        .collect();
    out.sort_by(|a, b| a.cmp_lex(b));
    Ok(out)
}

/// The convex family contains the empty set and `V` and is closed under
/// pairwise intersection.
pub fn check_convexity_axioms(g: &Graph) -> Result<bool> {
    OracleBudget::default().check(g.n(), 5, "axiom check")?;
    let o = Oracle::new(g)?;
    let full = o.full();
    let family: Vec<u32> = (0..=full).filter(|&s| o.is_convex(s)).collect();
    let has_ends = family.contains(&0) && family.contains(&full);
    let closed = family.iter().all(|&a| family.iter().all(|&b| o.is_convex(a & b)));
    Ok(has_ends && closed)
}

/// A family of checks run by [`cross_validate`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Check {
    Convexity,
    Hull,
    Atoms,
    DOrdering,
    ConvexityNumber,
    HullNumber,
    Characterization,
    PrimeEnumeration,
    PrimePairHull,
    PrimeLargeSets,
    PrimeIntersections,
    Axioms,
}

impl Check {
    pub fn name(self) -> &'static str {
        match self {
            Check::Convexity => "convexity",
            Check::Hull => "hull",
            Check::Atoms => "atoms",
            Check::DOrdering => "d-ordering",
            Check::ConvexityNumber => "convexity-number",
            Check::HullNumber => "hull-number",
            Check::Characterization => "characterization",
            Check::PrimeEnumeration => "prime-enumeration",
            Check::PrimePairHull => "prime-pair-hull",
            Check::PrimeLargeSets => "prime-large-sets",
            Check::PrimeIntersections => "prime-intersections",
            Check::Axioms => "axioms",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mismatch {
    pub check: Check,
    pub detail: String,
}

/// Outcome of cross-validating one graph: how many comparisons each check
/// made, and every disagreement found.
#[derive(Clone, Debug, Default)]
pub struct CrossReport {
    pub comparisons: std::collections::BTreeMap<Check, usize>,
    pub mismatches: Vec<Mismatch>,
}

impl CrossReport {
    fn tally(&mut self, check: Check, ok: bool, detail: impl FnOnce() -> String) {
        *self.comparisons.entry(check).or_default() += 1;
        if !ok {
            self.mismatches.push(Mismatch { check, detail: detail() });
        }
    }

    pub fn merge(&mut self, other: CrossReport) {
        for (k, v) in other.comparisons {
            *self.comparisons.entry(k).or_default() += v;
        }
        self.mismatches.extend(other.mismatches);
    }

    pub fn is_clean(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Compares every polynomial routine against the brute-force oracle on one
/// connected graph with at most `max_path_n` vertices.
pub fn cross_validate(g: &Graph) -> Result<CrossReport> {
    use crate::convexity::{is_t_convex, t_convex_hull};
    use crate::convexity_number::convexity_number_with;
    use crate::decomposition::{decompose, verify_d_ordering};
    use crate::hull_number::{hull_number, is_hull_set_by_characterization};
    use crate::prime::PrimeGraph;

    let n = g.n();
    if !g.is_connected() || n == 0 {
        return Err(Error::Validation("cross-validation needs a connected graph".into()));
    }
    let o = Oracle::new(g)?;
    let full = o.full();
    let mut rep = CrossReport::default();
    let dec = decompose(g)?;

    let mut convex_masks = Vec::new();
    for mask in 0..=full {
        let s = from_mask(n, mask);
        let fast = is_t_convex(g, &s).0;
        let slow = o.is_convex(mask);
        rep.tally(Check::Convexity, fast == slow, || format!("set {s:?}: fast {fast}, brute {slow}"));
        if slow {
            convex_masks.push(mask);
        }
        let fast_h = to_mask(&t_convex_hull(g, &s));
        let slow_h = o.hull(mask);
        rep.tally(Check::Hull, fast_h == slow_h, || {
            format!("set {s:?}: fast {:?}, brute {:?}", from_mask(n, fast_h), from_mask(n, slow_h))
        });
    }

    let fast_atoms = crate::decomposition::sorted_family(dec.atoms());
    let slow_atoms = brute_atoms(g)?;
    rep.tally(Check::Atoms, fast_atoms == slow_atoms, || {
        format!("atoms {fast_atoms:?}, brute {slow_atoms:?}")
    });
    rep.tally(Check::DOrdering, verify_d_ordering(g, &dec), || format!("order {:?}", dec.atoms()));

    if n >= 2 {
        let fast = convexity_number_with(g, &dec)?.value;
        let slow = o.convexity_number();
        rep.tally(Check::ConvexityNumber, fast == slow, || format!("fast {fast}, brute {slow}"));
    }
    let fast = hull_number(g)?.value;
    let slow = o.hull_number();
    rep.tally(Check::HullNumber, fast == slow, || format!("fast {fast}, brute {slow}"));

    if dec.len() >= 2 {
        for mask in 0..=full {
            if mask.count_ones() < 2 {
                continue;
            }
            let s = from_mask(n, mask);
            let by_char = is_hull_set_by_characterization(g, &dec, &s)?;
            let by_hull = o.hull(mask) == full;
            rep.tally(Check::Characterization, by_char == by_hull, || {
                format!("set {s:?}: characterization {by_char}, hull {by_hull}")
            });
        }
    } else {
        let family: Vec<u32> = PrimeGraph::assume(g).enumerate_convex_sets().iter().map(to_mask).collect();
        let mut expected = convex_masks.clone();
        expected.sort_by(|a, b| from_mask(n, *a).cmp_size_lex(&from_mask(n, *b)));
        rep.tally(Check::PrimeEnumeration, family == expected, || {
            format!("enumerated {} sets, brute {}", family.len(), expected.len())
        });
        for (u, &row) in o.adj.iter().enumerate() {
            for v in u + 1..n {
                if row >> v & 1 == 0 {
                    let pair = 1 << u | 1 << v;
                    rep.tally(Check::PrimePairHull, o.hull(pair) == full, || {
                        format!("pair ({u}, {v}) does not hull")
                    });
                }
            }
        }
        let large = convex_masks.iter().filter(|&&m| m != full && m.count_ones() >= 3).count();
        rep.tally(Check::PrimeLargeSets, n <= 1 || large < n, || {
            format!("{large} convex sets with >= 3 vertices on n = {n}")
        });
        let proper: Vec<u32> =
            convex_masks.iter().copied().filter(|&m| m != full && m.count_ones() >= 2).collect();
        for (i, &a) in proper.iter().enumerate() {
            for &b in &proper[i + 1..] {
                rep.tally(Check::PrimeIntersections, (a & b).count_ones() <= 1, || {
                    format!("{:?} and {:?} share two vertices", from_mask(n, a), from_mask(n, b))
                });
            }
        }
    }

    if n <= 5 {
        let ok = check_convexity_axioms(g)?;
        rep.tally(Check::Axioms, ok, || "convex family violates the axioms".into());
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::GraphKind;

    fn set(n: usize, vs: &[usize]) -> VertexSet {
        VertexSet::from_vertices(n, vs.iter().copied())
    }

    fn paths(g: &Graph, u: usize, v: usize) -> Vec<Vec<usize>> {
        let mut p: Vec<Vec<usize>> =
            enumerate_triangle_paths(g, u, v).unwrap().into_iter().map(|p| p.0).collect();
        p.sort();
        p
    }

    #[test]
    fn triangle_path_examples() {
        let k3 = GraphKind::Complete(3).build().unwrap();
        assert_eq!(paths(&k3, 0, 1), vec![vec![0, 1], vec![0, 2, 1]]);
        let c4 = GraphKind::Cycle(4).build().unwrap();
        // 0,3,2,1 has its only chord 0-1 three positions apart.
        assert_eq!(paths(&c4, 0, 1), vec![vec![0, 1]]);
        let p4 = GraphKind::Path(4).build().unwrap();
        assert_eq!(paths(&p4, 0, 3), vec![vec![0, 1, 2, 3]]);
    }

    #[test]
    fn interval_examples() {
        let c5 = GraphKind::Cycle(5).build().unwrap();
        assert_eq!(brute_interval(&c5, &set(5, &[0, 2])).unwrap(), c5.vertices());
        assert_eq!(brute_interval(&c5, &set(5, &[0, 1])).unwrap(), set(5, &[0, 1]));
        assert_eq!(brute_interval(&c5, &set(5, &[4])).unwrap(), set(5, &[4]));
    }

    #[test]
    fn parameter_examples() {
        let k4 = GraphKind::Complete(4).build().unwrap();
        assert_eq!(brute_convexity_number(&k4).unwrap(), 1);
        assert_eq!(brute_hull_number(&k4).unwrap(), 2);
        let p5 = GraphKind::Path(5).build().unwrap();
        assert_eq!(brute_convexity_number(&p5).unwrap(), 4);
        assert_eq!(brute_hull_number(&p5).unwrap(), 2);
        let bowtie = GraphKind::Bowtie.build().unwrap();
        assert_eq!(brute_convexity_number(&bowtie).unwrap(), 3);
        assert_eq!(brute_hull_number(&bowtie).unwrap(), 2);
    }

    #[test]
    fn atom_examples() {
        let bowtie = GraphKind::Bowtie.build().unwrap();
        assert_eq!(brute_atoms(&bowtie).unwrap(), vec![set(5, &[0, 1, 2]), set(5, &[0, 3, 4])]);
        let c5 = GraphKind::Cycle(5).build().unwrap();
        assert_eq!(brute_atoms(&c5).unwrap(), vec![c5.vertices()]);
        // K4 minus the edge 2-3: the shared edge 0-1 separates the apexes.
        let diamond = Graph::from_edges(4, [(0, 1), (0, 2), (1, 2), (0, 3), (1, 3)]).unwrap();
        assert_eq!(brute_atoms(&diamond).unwrap(), vec![set(4, &[0, 1, 2]), set(4, &[0, 1, 3])]);
    }

    #[test]
    fn axiom_examples() {
        for kind in [GraphKind::Cycle(5), GraphKind::Complete(3), GraphKind::Path(4)] {
            assert!(check_convexity_axioms(&kind.build().unwrap()).unwrap());
        }
    }

    #[test]
    fn budgets_refuse() {
        let big = GraphKind::Path(10).build().unwrap();
        assert!(matches!(Oracle::new(&big), Err(Error::Budget(_))));
        assert!(matches!(
            check_convexity_axioms(&GraphKind::Path(6).build().unwrap()),
            Err(Error::Budget(_))
        ));
        let tight = OracleBudget { max_paths: 1, ..OracleBudget::default() };
        let k4 = GraphKind::Complete(4).build().unwrap();
        assert!(matches!(enumerate_triangle_paths_with(&k4, 0, 1, tight), Err(Error::Budget(_))));
    }
}
