//! Decomposition by clique minimal separators into maximal prime subgraphs
//! ("atoms"), arranged in an order where every overlap with the earlier
//! atoms lies inside a single earlier atom.
//!
//! The atoms are found from a minimal triangulation computed with MCS-M:
//! walking the minimal elimination ordering, every generator whose
//! higher-numbered neighborhood is a clique of the input graph splits off
//! one atom.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::vertex_set::VertexSet;

/// Atoms `F_1..F_t` with their overlap sets `R_i = F_i ∩ (F_1 ∪ .. ∪ F_{i-1})`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    atoms: Vec<VertexSet>,
    r_sets: Vec<VertexSet>,
    r_union: VertexSet,
}

impl Decomposition {
    /// Builds a decomposition from an atom order, deriving the overlap sets.
    /// No validation happens here; see [`verify_d_ordering`].
    pub fn from_atoms(universe: usize, atoms: Vec<VertexSet>) -> Self {
        let mut seen = VertexSet::new(universe);
        let mut r_sets = Vec::with_capacity(atoms.len().saturating_sub(1));
        let mut r_union = VertexSet::new(universe);
        for (i, a) in atoms.iter().enumerate() {
            if i > 0 {
                let r = a.intersection(&seen);
                r_union.union_with(&r);
                r_sets.push(r);
            }
            seen.union_with(a);
        }
        Decomposition { atoms, r_sets, r_union }
    }

    pub fn atoms(&self) -> &[VertexSet] {
        &self.atoms
    }

    pub fn atom(&self, i: usize) -> &VertexSet {
        &self.atoms[i]
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    /// Overlap sets `R_2..R_t`, one per atom after the first.
    pub fn r_sets(&self) -> &[VertexSet] {
        &self.r_sets
    }

    /// `R_i` for the 0-based atom index `i >= 1`.
    pub fn r_set(&self, i: usize) -> &VertexSet {
        &self.r_sets[i - 1]
    }

    /// Union of all overlap sets.
    pub fn r_union(&self) -> &VertexSet {
        &self.r_union
    }

    pub fn to_json(&self) -> DecompositionJson {
        DecompositionJson {
            atoms: self.atoms.iter().map(VertexSet::to_vec).collect(),
            r_sets: self.r_sets.iter().map(VertexSet::to_vec).collect(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct DecompositionJson {
    pub atoms: Vec<Vec<usize>>,
    pub r_sets: Vec<Vec<usize>>,
}

struct Triangulation {
    /// Minimal elimination ordering: `elimination[0]` is eliminated first.
    elimination: Vec<usize>,
    /// Neighbors in the triangulation numbered after each vertex.
    higher: Vec<VertexSet>,
    /// Vertices whose higher neighborhood is a minimal separator of the
    /// triangulation.
    generators: Vec<bool>,
}

/// MCS-M with generator detection.
fn mcs_m(g: &Graph) -> Triangulation {
    let n = g.n();
    let mut label = vec![0usize; n];
    let mut numbered = vec![false; n];
    let mut higher = vec![VertexSet::new(n); n];
    let mut generators = vec![false; n];
    let mut picks = Vec::with_capacity(n);
    let mut previous: Option<usize> = None;
    let mut reached = vec![false; n];
    let mut buckets: Vec<Vec<usize>> = vec![Vec::new(); n.max(1)];

    for _ in 0..n {
        let x = (0..n)
            .filter(|&v| !numbered[v])
            .max_by(|&a, &b| label[a].cmp(&label[b]).then(b.cmp(&a)))
            .expect("an unnumbered vertex remains");
        if previous.is_some_and(|s| label[x] <= s) {
            generators[x] = true;
        }
        previous = Some(label[x]);
        numbered[x] = true;

        reached.iter_mut().for_each(|r| *r = false);
        let mut hit = Vec::new();
        for y in g.neighbors(x).iter().filter(|&y| !numbered[y]) {
            reached[y] = true;
            buckets[label[y]].push(y);
            hit.push(y);
        }
        // Unnumbered z is hit when some path from x reaches it through
        // unnumbered vertices of label strictly below label[z].
        for j in 0..buckets.len() {
            while let Some(y) = buckets[j].pop() {
                for z in g.neighbors(y).iter() {
                    if numbered[z] || reached[z] {
                        continue;
                    }
                    reached[z] = true;
                    if label[z] > j {
                        hit.push(z);
                        buckets[label[z]].push(z);
                    } else {
                        buckets[j].push(z);
                    }
                }
            }
        }
        for y in hit {
            label[y] += 1;
            higher[y].insert(x);
        }
        picks.push(x);
    }
    picks.reverse();
    Triangulation { elimination: picks, higher, generators }
}

/// Splits `g` into atoms. Requires `g` connected with at least one vertex.
pub fn decompose(g: &Graph) -> Result<Decomposition> {
    if g.n() == 0 {
        return Err(Error::Validation("graph has no vertices".into()));
    }
    if !g.is_connected() {
        return Err(Error::Validation("graph is disconnected".into()));
    }
    let peeled = peel_atoms(g);
    let candidate = canonical_order(&peeled);
    if let Some(order) = candidate {
        let dec = Decomposition::from_atoms(g.n(), order);
        if verify_d_ordering(g, &dec) {
            return Ok(dec);
        }
    }
    // Peeling order reversed is a valid ordering on its own: each peeled
    // atom meets the later ones only in its separator.
    let mut fallback = peeled;
    fallback.reverse();
    let dec = Decomposition::from_atoms(g.n(), fallback);
    if verify_d_ordering(g, &dec) {
        Ok(dec)
    } else {
        Err(Error::Internal("decomposition failed verification".into()))
    }
}

fn peel_atoms(g: &Graph) -> Vec<VertexSet> {
    let tri = mcs_m(g);
    let mut remaining = g.vertices();
    let mut atoms = Vec::new();
    for &x in &tri.elimination {
        if !tri.generators[x] || !remaining.contains(x) {
            continue;
        }
        let sep = tri.higher[x].intersection(&remaining);
        if sep.is_empty() || !g.is_clique(&sep) {
            continue;
        }
        let component = g.reach_within(x, &remaining.difference(&sep));
        let atom = component.union(&sep);
        if atom == remaining {
            continue;
        }
        atoms.push(atom);
        remaining.difference_with(&component);
    }
    atoms.push(remaining);
    atoms
}

/// Greedy ordering: lexicographically smallest atom first, then repeatedly
/// the lexicographically smallest atom whose overlap with everything placed
/// so far is nonempty and lies inside one placed atom.
fn canonical_order(atoms: &[VertexSet]) -> Option<Vec<VertexSet>> {
    let mut pool: Vec<VertexSet> = atoms.to_vec();
    pool.sort_by(|a, b| a.cmp_lex(b));
    let mut placed = vec![pool.remove(0)];
    let mut seen = placed[0].clone();
    while !pool.is_empty() {
        let pick = pool.iter().position(|a| {
            let r = a.intersection(&seen);
            !r.is_empty() && placed.iter().any(|p| r.is_subset(p))
        })?;
        let a = pool.remove(pick);
        seen.union_with(&a);
        placed.push(a);
    }
    Some(placed)
}

/// Whether `g` has no clique separator. Requires `g` connected.
pub fn is_prime(g: &Graph) -> Result<bool> {
    Ok(decompose(g)?.len() == 1)
}

/// Whether the separator `sep` leaves at least two components of `g - sep`
/// whose neighborhoods cover all of `sep`, i.e. `sep` is a minimal
/// separator for some pair of vertices.
pub fn is_relative_minimal_separator(g: &Graph, sep: &VertexSet) -> bool {
    g.connected_components(sep).iter().filter(|c| sep.is_subset(&g.neighborhood_of(c))).count() >= 2
}

/// Checks every structural property a decomposition of `g` must have:
/// prime atoms that cover all vertices and edges, correct overlap sets,
/// each overlap a clique and a minimal separator lying inside an earlier
/// atom, and fewer atoms than vertices.
pub fn verify_d_ordering(g: &Graph, dec: &Decomposition) -> bool {
    let n = g.n();
    let atoms = dec.atoms();
    if atoms.is_empty() || atoms.iter().any(|a| a.universe() != n) {
        return false;
    }
    if n >= 2 && atoms.len() >= n {
        return false;
    }
    let recomputed = Decomposition::from_atoms(n, atoms.to_vec());
    if recomputed.r_sets != dec.r_sets || recomputed.r_union != dec.r_union {
        return false;
    }
    let mut cover = VertexSet::new(n);
    for a in atoms {
        cover.union_with(a);
    }
    if !cover.is_full() {
        return false;
    }
    if !g.edges().all(|(u, v)| atoms.iter().any(|a| a.contains(u) && a.contains(v))) {
        return false;
    }
    for (i, a) in atoms.iter().enumerate() {
        if atoms.iter().enumerate().any(|(j, b)| i != j && a.is_subset(b)) {
            return false;
        }
    }
    for (k, r) in dec.r_sets().iter().enumerate() {
        let i = k + 1;
        if !atoms[..i].iter().any(|p| r.is_subset(p)) {
            return false;
        }
        if !g.is_clique(r) || !is_relative_minimal_separator(g, r) {
            return false;
        }
    }
    atoms.iter().all(|a| {
        if atoms.len() == 1 && a.is_full() {
            // A connected graph's single atom is itself; primality is what
            // decomposition asserts, so only check it for proper pieces.
            return true;
        }
        let (sub, _) = g.induced(a);
        sub.is_connected() && peel_atoms(&sub).len() == 1
    })
}

/// A pivot of atom `i`, with the other atom `via` whose side of the shared
/// clique holds a vertex of the set outside atom `i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PivotWitness {
    pub vertex: usize,
    pub via: usize,
}

/// Every (pivot, witnessing atom) pair of atom `i` with respect to `s`.
///
/// For another atom `F'` sharing the clique `B = F_i ∩ F'`, the side of
/// `F'` is the component of `G - B` containing `F' \ B`. It only counts
/// when `B` actually separates: a side that also reaches `F_i \ B` is not
/// a side of `F'` at all.
pub fn pivot_witnesses(g: &Graph, dec: &Decomposition, i: usize, s: &VertexSet) -> Vec<PivotWitness> {
    let atom = dec.atom(i);
    let outside = s.difference(atom);
    let mut out = Vec::new();
    if outside.is_empty() {
        return out;
    }
    for (j, other) in dec.atoms().iter().enumerate() {
        if j == i {
            continue;
        }
        let shared = atom.intersection(other);
        if shared.is_empty() {
            continue;
        }
        let Some(root) = other.difference(&shared).first() else { continue };
        let side = g.reach_within(root, &shared.complement());
        if side.intersects(atom) || !side.intersects(&outside) {
            continue;
        }
        out.extend(shared.iter().map(|vertex| PivotWitness { vertex, via: j }));
    }
    out
}

/// Vertices of atom `i` that are pivots with respect to `s`: `v` is a pivot
/// when some other atom `F'` contains `v` and the side of `F'` across the
/// clique `F_i ∩ F'` contains a vertex of `s` outside `F_i`.
pub fn pivots(g: &Graph, dec: &Decomposition, i: usize, s: &VertexSet) -> VertexSet {
    let mut out = g.no_vertices();
    for w in pivot_witnesses(g, dec, i, s) {
        out.insert(w.vertex);
    }
    out
}

/// The breadth-first construction for pivots: search from atom `i` as one
/// super-source, then walk back from every vertex of `s` along decreasing
/// depth. The overlap vertices of atom `i` touched by those walks are
/// returned. This only sees entry points on shortest routes, so it can
/// report fewer vertices than [`pivots`].
pub fn pivots_by_search(g: &Graph, dec: &Decomposition, i: usize, s: &VertexSet) -> VertexSet {
    let n = g.n();
    let atom = dec.atom(i);
    let mut depth = vec![usize::MAX; n];
    let mut queue = std::collections::VecDeque::new();
    for v in atom {
        depth[v] = 1;
        queue.push_back(v);
    }
    while let Some(x) = queue.pop_front() {
        for y in g.neighbors(x) {
            if depth[y] == usize::MAX {
                depth[y] = depth[x] + 1;
                queue.push_back(y);
            }
        }
    }
    let mut marked = s.difference(atom);
    let mut stack: Vec<usize> = marked.to_vec();
    while let Some(u) = stack.pop() {
        for w in g.neighbors(u) {
            if depth[w] + 1 == depth[u] && marked.insert(w) {
                stack.push(w);
            }
        }
    }
    marked.intersect_with(atom);
    marked.intersect_with(dec.r_union());
    marked
}

/// Orders atom families for comparison: sorted lexicographically.
pub fn sorted_family(atoms: &[VertexSet]) -> Vec<VertexSet> {
    let mut v = atoms.to_vec();
    v.sort_by(|a, b| a.cmp_lex(b));
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::GraphKind;
    use proptest::prelude::*;

    fn set(n: usize, vs: &[usize]) -> VertexSet {
        VertexSet::from_vertices(n, vs.iter().copied())
    }

    fn sets(n: usize, family: &[&[usize]]) -> Vec<VertexSet> {
        family.iter().map(|vs| set(n, vs)).collect()
    }

    #[test]
    fn decomposition_examples() {
        let bowtie = GraphKind::Bowtie.build().unwrap();
        let dec = decompose(&bowtie).unwrap();
        assert_eq!(dec.atoms(), sets(5, &[&[0, 1, 2], &[0, 3, 4]]).as_slice());
        assert_eq!(dec.r_sets(), sets(5, &[&[0]]).as_slice());

        let c5 = GraphKind::Cycle(5).build().unwrap();
        let dec = decompose(&c5).unwrap();
        assert_eq!(dec.len(), 1);
        assert!(dec.atom(0).is_full());
        assert!(dec.r_sets().is_empty());

        let p4 = GraphKind::Path(4).build().unwrap();
        let dec = decompose(&p4).unwrap();
        assert_eq!(dec.atoms(), sets(4, &[&[0, 1], &[1, 2], &[2, 3]]).as_slice());
        assert_eq!(dec.r_sets(), sets(4, &[&[1], &[2]]).as_slice());
        assert_eq!(dec.r_union(), &set(4, &[1, 2]));
    }

    #[test]
    fn rejects_bad_input() {
        let g = Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
        assert!(matches!(decompose(&g), Err(Error::Validation(_))));
        assert!(matches!(decompose(&Graph::empty(0)), Err(Error::Validation(_))));
        let k1 = decompose(&Graph::empty(1)).unwrap();
        assert_eq!(k1.len(), 1);
    }

    #[test]
    fn primality_examples() {
        for kind in [GraphKind::Cycle(5), GraphKind::Complete(4), GraphKind::Cycle(4)] {
            assert!(is_prime(&kind.build().unwrap()).unwrap(), "{kind}");
        }
        for kind in [GraphKind::Path(3), GraphKind::Bowtie, GraphKind::Star(3)] {
            assert!(!is_prime(&kind.build().unwrap()).unwrap(), "{kind}");
        }
    }

    #[test]
    fn d_ordering_examples() {
        let p4 = GraphKind::Path(4).build().unwrap();
        let good = Decomposition::from_atoms(4, sets(4, &[&[0, 1], &[1, 2], &[2, 3]]));
        assert!(verify_d_ordering(&p4, &good));
        // {2,3} shares nothing with {0,1}.
        let reordered = Decomposition::from_atoms(4, sets(4, &[&[0, 1], &[2, 3], &[1, 2]]));
        assert!(!verify_d_ordering(&p4, &reordered));
        // Missing edge {2,3}.
        let short = Decomposition::from_atoms(4, sets(4, &[&[0, 1], &[1, 2]]));
        assert!(!verify_d_ordering(&p4, &short));
        // A non-prime piece.
        let lumped = Decomposition::from_atoms(4, sets(4, &[&[0, 1, 2], &[2, 3]]));
        assert!(!verify_d_ordering(&p4, &lumped));
    }

    #[test]
    fn relative_minimal_separators() {
        let p4 = GraphKind::Path(4).build().unwrap();
        assert!(is_relative_minimal_separator(&p4, &set(4, &[1])));
        assert!(!is_relative_minimal_separator(&p4, &set(4, &[0])));
        // {1,2} separates 0 from 3 but 0 only sees 1.
        assert!(!is_relative_minimal_separator(&p4, &set(4, &[1, 2])));
        let c4 = GraphKind::Cycle(4).build().unwrap();
        assert!(is_relative_minimal_separator(&c4, &set(4, &[0, 2])));
    }

    #[test]
    fn pivot_examples() {
        let bowtie = GraphKind::Bowtie.build().unwrap();
        let dec = decompose(&bowtie).unwrap();
        assert_eq!(pivots(&bowtie, &dec, 0, &set(5, &[3])), set(5, &[0]));
        assert_eq!(
            pivot_witnesses(&bowtie, &dec, 0, &set(5, &[3])),
            vec![PivotWitness { vertex: 0, via: 1 }]
        );
        assert!(pivots(&bowtie, &dec, 0, &set(5, &[1, 2])).is_empty());

        let star = GraphKind::TriangleStar(3).build().unwrap();
        let dec = decompose(&star).unwrap();
        let t1 = dec.atoms().iter().position(|a| a == &set(7, &[0, 1, 2])).unwrap();
        assert_eq!(pivots(&star, &dec, t1, &set(7, &[3, 5])), set(7, &[0]));
    }

    #[test]
    fn overlaps_that_do_not_separate_give_no_pivots() {
        // Triangles {0,1,2}, {1,2,3}, {2,3,4}: from the middle triangle's
        // view, atom {0,1,2} is across {1,2}, and vertex 4 lies on the far
        // side of {2,3}, not of {1,2}.
        let g = Graph::from_edges(5, [(0, 1), (0, 2), (1, 2), (1, 3), (2, 3), (2, 4), (3, 4)]).unwrap();
        let dec = decompose(&g).unwrap();
        let mid = dec.atoms().iter().position(|a| a == &set(5, &[1, 2, 3])).unwrap();
        assert_eq!(pivots(&g, &dec, mid, &set(5, &[4])), set(5, &[2, 3]));
        assert_eq!(pivots(&g, &dec, mid, &set(5, &[0])), set(5, &[1, 2]));
    }

    #[cfg(feature = "oracle")]
    mod against_oracle {
        use super::*;
        use crate::oracle::{brute_atoms, brute_maximal_cliques};

        #[test]
        fn small_graphs_exhaustively() {
            for n in 1..=5 {
                for g in crate::generate::connected_labeled_graphs(n) {
                    let dec = decompose(&g).unwrap();
                    assert!(verify_d_ordering(&g, &dec));
                    assert_eq!(sorted_family(dec.atoms()), sorted_family(&brute_atoms(&g).unwrap()));
                    for r in dec.r_sets() {
                        assert!(g.is_clique(r) && is_relative_minimal_separator(&g, r));
                    }
                }
            }
        }

        proptest! {
            #[test]
            fn atoms_match_definition(n in 2usize..=9, p in 0.1f64..0.7, seed in any::<u64>()) {
                let g = GraphKind::Random { n, p, seed, connected: true }.build().unwrap();
                let dec = decompose(&g).unwrap();
                prop_assert!(verify_d_ordering(&g, &dec));
                prop_assert_eq!(sorted_family(dec.atoms()), sorted_family(&brute_atoms(&g).unwrap()));
                if dec.atoms().iter().all(|a| g.is_clique(a)) {
                    // Chordal: the atoms are exactly the maximal cliques.
                    prop_assert_eq!(
                        sorted_family(dec.atoms()),
                        sorted_family(&brute_maximal_cliques(&g).unwrap())
                    );
                }
            }

            #[test]
            fn search_pivots_are_definitional_pivots(
                n in 2usize..=9, p in 0.1f64..0.5, seed in any::<u64>(), mask in any::<u32>(),
            ) {
                let g = GraphKind::Random { n, p, seed, connected: true }.build().unwrap();
                let dec = decompose(&g).unwrap();
                let s = VertexSet::from_vertices(n, (0..n).filter(|v| mask >> v & 1 == 1));
                for i in 0..dec.len() {
                    let exact = pivots(&g, &dec, i, &s);
                    prop_assert!(pivots_by_search(&g, &dec, i, &s).is_subset(&exact));
                    prop_assert!(exact.is_subset(dec.atom(i)));
                    prop_assert!(exact.is_subset(dec.r_union()));
                }
            }
        }
    }

    proptest! {
        #[test]
        fn trees_split_into_edges(n in 2usize..=30, seed in any::<u64>()) {
            use rand::{Rng, SeedableRng};
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let edges: Vec<(usize, usize)> = (1..n).map(|v| (rng.gen_range(0..v), v)).collect();
            let g = Graph::from_edges(n, edges).unwrap();
            let dec = decompose(&g).unwrap();
            prop_assert_eq!(dec.len(), n - 1);
            prop_assert!(dec.atoms().iter().all(|a| a.len() == 2));
            prop_assert!(verify_d_ordering(&g, &dec));
        }
    }
}
