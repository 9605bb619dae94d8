//! Minimum t-hull sets.
//!
//! A prime graph on two or more vertices always has hull number two. For a
//! reducible graph, hull sets are characterized atom by atom through
//! pivots (overlap vertices that the rest of the set can reach from
//! outside the atom). A minimum hull set is built by sweeping the atoms in
//! reverse order to find which atoms need a vertex of their own, then
//! forward to pick those vertices against the pivots that actually arise.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::convexity::t_convex_hull;
use crate::decomposition::{decompose, pivot_witnesses, pivots, Decomposition};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::prime::PrimeGraph;
use crate::vertex_set::VertexSet;

/// An atom as a standalone prime graph with id translation.
struct AtomView {
    graph: Graph,
    global: Vec<usize>,
    local: Vec<usize>,
}

impl AtomView {
    fn new(g: &Graph, atom: &VertexSet) -> Self {
        let (graph, global) = g.induced(atom);
        let mut local = vec![usize::MAX; g.n()];
        for (i, &v) in global.iter().enumerate() {
            local[v] = i;
        }
        AtomView { graph, global, local }
    }

    fn prime(&self) -> PrimeGraph<'_> {
        PrimeGraph::assume(&self.graph)
    }

    /// Restriction of a global set to the atom, in local ids.
    fn to_local(&self, s: &VertexSet) -> VertexSet {
        VertexSet::from_vertices(
            self.graph.n(),
            s.iter().filter(|&v| self.local[v] != usize::MAX).map(|v| self.local[v]),
        )
    }

    fn to_global(&self, s: &VertexSet, universe: usize) -> VertexSet {
        VertexSet::from_vertices(universe, s.iter().map(|v| self.global[v]))
    }

    fn hulls_atom(&self, s: &VertexSet) -> bool {
        self.prime().is_t_hull_set(&self.to_local(s))
    }

    fn hull(&self, s: &VertexSet, universe: usize) -> VertexSet {
        self.to_global(&self.prime().t_hull(&self.to_local(s)), universe)
    }

    fn pair_hulls(&self, u: usize, v: usize) -> bool {
        let mut s = VertexSet::new(self.graph.n());
        s.insert(self.local[u]);
        s.insert(self.local[v]);
        self.prime().is_t_hull_set(&s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Condition {
    /// Two pivots that together hull the atom.
    TwoPivots {
        pivots: (usize, usize),
    },
    /// A pivot reached through atom `via`, and a member of the set inside
    /// the atom but outside `via`, that together hull the atom.
    PivotAndMember {
        pivot: usize,
        via: usize,
        member: usize,
    },
    /// The set's own vertices inside the atom hull it.
    OwnVertices {
        vertices: VertexSet,
    },
    None,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SatisfactionVerdict {
    pub atom_index: usize,
    pub condition: Condition,
}

impl SatisfactionVerdict {
    pub fn is_satisfied(&self) -> bool {
        !matches!(self.condition, Condition::None)
    }
}

/// Which of the three satisfaction conditions (checked in order) set `s`
/// meets on atom `i`.
pub fn satisfies(g: &Graph, dec: &Decomposition, s: &VertexSet, i: usize) -> SatisfactionVerdict {
    let view = AtomView::new(g, dec.atom(i));
    let witnesses = pivot_witnesses(g, dec, i, s);
    let mut pivots: Vec<usize> = witnesses.iter().map(|w| w.vertex).collect();
    pivots.sort_unstable();
    pivots.dedup();

    let verdict = |condition| SatisfactionVerdict { atom_index: i, condition };
    for (k, &u) in pivots.iter().enumerate() {
        for &v in &pivots[k + 1..] {
            if view.pair_hulls(u, v) {
                return verdict(Condition::TwoPivots { pivots: (u, v) });
            }
        }
    }
    let inside = s.intersection(dec.atom(i));
    for w in &witnesses {
        let candidates = inside.difference(dec.atom(w.via));
        for member in &candidates {
            if view.pair_hulls(w.vertex, member) {
                return verdict(Condition::PivotAndMember { pivot: w.vertex, via: w.via, member });
            }
        }
    }
    if !inside.is_empty() && view.hulls_atom(&inside) {
        return verdict(Condition::OwnVertices { vertices: inside });
    }
    verdict(Condition::None)
}

/// Decides whether `s` hulls a reducible graph from the atom conditions
/// alone.
pub fn is_hull_set_by_characterization(g: &Graph, dec: &Decomposition, s: &VertexSet) -> Result<bool> {
    if dec.len() < 2 {
        return Err(Error::Contract(
            "characterization applies to reducible graphs; a prime graph is hulled by any non-adjacent pair"
                .into(),
        ));
    }
    Ok(s.len() >= 2 && (0..dec.len()).all(|i| satisfies(g, dec, s, i).is_satisfied()))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HullNumberResult {
    pub value: usize,
    pub hull_set: VertexSet,
}

#[derive(Clone, Debug, Serialize)]
pub struct HullNumberJson {
    pub value: usize,
    pub hull_set: Vec<usize>,
    pub verified: bool,
}

impl HullNumberResult {
    pub fn to_json(&self, verified: bool) -> HullNumberJson {
        HullNumberJson { value: self.value, hull_set: self.hull_set.to_vec(), verified }
    }
}

/// Result of the reverse sweep, keeping the per-atom gaps it had to fill.
#[derive(Clone, Debug)]
pub struct HullSweep {
    pub result: HullNumberResult,
    /// For each atom where a vertex was added during the sweep, the atom's
    /// vertices left outside the hull of its pivots and overlap set.
    pub gaps: Vec<VertexSet>,
}

/// A minimum t-hull set of a connected graph, verified against the
/// general hull routine before returning.
pub fn hull_number(g: &Graph) -> Result<HullNumberResult> {
    Ok(hull_number_sweep(g)?.result)
}

pub fn hull_number_sweep(g: &Graph) -> Result<HullSweep> {
    let n = g.n();
    if n == 0 {
        return Err(Error::Validation("graph has no vertices".into()));
    }
    let dec = decompose(g)?;
    let sweep = if dec.len() == 1 {
        let hull_set = prime_hull_set(g);
        HullSweep { result: HullNumberResult { value: hull_set.len(), hull_set }, gaps: Vec::new() }
    } else {
        reverse_sweep(g, &dec)?
    };
    if !t_convex_hull(g, &sweep.result.hull_set).is_full() {
        return Err(Error::Internal(format!(
            "computed set {:?} does not hull the graph",
            sweep.result.hull_set
        )));
    }
    Ok(sweep)
}

fn prime_hull_set(g: &Graph) -> VertexSet {
    let n = g.n();
    match n {
        1 => g.vertices(),
        _ => {
            let (u, v) = g.non_adjacent_pair(&g.vertices()).unwrap_or((0, 1));
            VertexSet::from_vertices(n, [u, v])
        }
    }
}

fn reverse_sweep(g: &Graph, dec: &Decomposition) -> Result<HullSweep> {
    let n = g.n();
    // Backward pass: find the atoms that need a vertex of their own. Whether
    // an atom needs one depends only on which later atoms received a vertex,
    // not on which vertex they received, so the provisional picks here only
    // stand in for their atom's side.
    let mut chosen = g.no_vertices();
    let mut filled: Vec<(usize, usize, VertexSet)> = Vec::new();
    for i in (1..dec.len()).rev() {
        let view = AtomView::new(g, dec.atom(i));
        let mut seed = pivots(g, dec, i, &chosen);
        seed.union_with(dec.r_set(i));
        if view.hulls_atom(&seed) {
            continue;
        }
        let closed = view.hull(&seed, n);
        let gap = dec.atom(i).difference(&closed);
        let pick = gap
            .iter()
            .find(|&v| {
                let mut trial = seed.clone();
                trial.insert(v);
                view.hulls_atom(&trial)
            })
            .ok_or_else(|| Error::Internal(format!("no completing vertex for atom {i}")))?;
        chosen.insert(pick);
        filled.push((i, pick, gap));
    }
    filled.reverse();

    // Forward pass: fix each provisional pick to a gap vertex that
    // satisfies its atom given the pivots the set actually produces, and
    // top up any atom the overlap sets only appeared to cover. Swapping a
    // pick within its atom leaves every earlier atom's verdict unchanged,
    // and adding vertices never breaks a satisfied atom.
    let mut picks = filled.iter().map(|(i, pick, gap)| (*i, (*pick, gap))).collect::<BTreeMap<_, _>>();
    for i in 0..dec.len() {
        if let Some((pick, gap)) = picks.remove(&i) {
            chosen.remove(pick);
            let v = gap
                .iter()
                .find(|&v| {
                    let mut trial = chosen.clone();
                    trial.insert(v);
                    satisfies(g, dec, &trial, i).is_satisfied()
                })
                .unwrap_or(pick);
            chosen.insert(v);
        }
        satisfy_atom(g, dec, i, &mut chosen)?;
    }
    while chosen.len() < 2 {
        let v = (0..n)
            .find(|&v| !chosen.contains(v))
            .ok_or_else(|| Error::Internal("graph too small for a hull pair".into()))?;
        chosen.insert(v);
    }
    let gaps = filled.into_iter().map(|(_, _, gap)| gap).collect();
    Ok(HullSweep { result: HullNumberResult { value: chosen.len(), hull_set: chosen }, gaps })
}

/// Adds the fewest vertices of atom `i` needed to satisfy it.
fn satisfy_atom(g: &Graph, dec: &Decomposition, i: usize, chosen: &mut VertexSet) -> Result<()> {
    if satisfies(g, dec, chosen, i).is_satisfied() {
        return Ok(());
    }
    let atom = dec.atom(i);
    let single = atom.iter().filter(|&v| !chosen.contains(v)).find(|&v| {
        let mut trial = chosen.clone();
        trial.insert(v);
        satisfies(g, dec, &trial, i).is_satisfied()
    });
    if let Some(v) = single {
        chosen.insert(v);
        return Ok(());
    }
    let view = AtomView::new(g, atom);
    let members = atom.to_vec();
    let (u, v) = members
        .iter()
        .enumerate()
        .flat_map(|(k, &u)| members[k + 1..].iter().map(move |&v| (u, v)))
        .find(|&(u, v)| view.pair_hulls(u, v))
        .ok_or_else(|| Error::Internal(format!("atom {i} has no hull pair")))?;
    chosen.insert(u);
    chosen.insert(v);
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::GraphKind;

    fn set(n: usize, vs: &[usize]) -> VertexSet {
        VertexSet::from_vertices(n, vs.iter().copied())
    }

    fn atom_index(dec: &Decomposition, atom: &VertexSet) -> usize {
        dec.atoms().iter().position(|a| a == atom).unwrap()
    }

    #[test]
    fn satisfaction_examples() {
        // triangle_star 3: center 0, triangles {0,1,2}, {0,3,4}, {0,5,6}.
        let g = GraphKind::TriangleStar(3).build().unwrap();
        let dec = decompose(&g).unwrap();
        let t1 = atom_index(&dec, &set(7, &[0, 1, 2]));
        let t3 = atom_index(&dec, &set(7, &[0, 5, 6]));
        let v = satisfies(&g, &dec, &set(7, &[1, 3, 5]), t1);
        assert!(matches!(v.condition, Condition::PivotAndMember { pivot: 0, member: 1, .. }));
        let v = satisfies(&g, &dec, &set(7, &[1, 3]), t3);
        assert_eq!(v.condition, Condition::None);

        let bowtie = GraphKind::Bowtie.build().unwrap();
        let dec = decompose(&bowtie).unwrap();
        let f = atom_index(&dec, &set(5, &[0, 1, 2]));
        // Conditions are tried in order, so the pivot 0 with member 1 wins
        // even though {1, 2} alone also hulls the triangle.
        let v = satisfies(&bowtie, &dec, &set(5, &[1, 2, 3]), f);
        assert_eq!(v.condition, Condition::PivotAndMember { pivot: 0, via: 1, member: 1 });
        assert!(AtomView::new(&bowtie, dec.atom(f)).hulls_atom(&set(5, &[1, 2])));
        // Without an outside vertex only the own-vertices condition applies.
        let v = satisfies(&bowtie, &dec, &set(5, &[1, 2]), f);
        assert_eq!(v.condition, Condition::OwnVertices { vertices: set(5, &[1, 2]) });
    }

    #[test]
    fn characterization_examples() {
        let bowtie = GraphKind::Bowtie.build().unwrap();
        let dec = decompose(&bowtie).unwrap();
        assert!(is_hull_set_by_characterization(&bowtie, &dec, &set(5, &[1, 3])).unwrap());
        assert!(!is_hull_set_by_characterization(&bowtie, &dec, &set(5, &[1])).unwrap());
        let ts = GraphKind::TriangleStar(3).build().unwrap();
        let dec = decompose(&ts).unwrap();
        assert!(!is_hull_set_by_characterization(&ts, &dec, &set(7, &[1, 3])).unwrap());
        let c5 = GraphKind::Cycle(5).build().unwrap();
        let dec = decompose(&c5).unwrap();
        assert!(matches!(
            is_hull_set_by_characterization(&c5, &dec, &set(5, &[0, 2])),
            Err(Error::Contract(_))
        ));
    }

    #[test]
    fn hull_number_examples() {
        let cases = [
            (GraphKind::Cycle(5), 2),
            (GraphKind::TriangleStar(3), 3),
            (GraphKind::Star(3), 3),
            (GraphKind::Complete(5), 2),
            (GraphKind::Path(6), 2),
            (GraphKind::Bowtie, 2),
            (GraphKind::Complete(1), 1),
        ];
        for (kind, value) in cases {
            let g = kind.build().unwrap();
            let r = hull_number(&g).unwrap();
            assert_eq!(r.value, value, "{kind}");
            assert!(t_convex_hull(&g, &r.hull_set).is_full());
        }
        let star = GraphKind::Star(3).build().unwrap();
        assert_eq!(hull_number(&star).unwrap().hull_set, set(4, &[1, 2, 3]));
    }

    #[test]
    fn rejects_disconnected() {
        let g = Graph::from_edges(3, [(0, 1)]).unwrap();
        assert!(matches!(hull_number(&g), Err(Error::Validation(_))));
    }

    #[test]
    fn pick_must_match_the_pivot_that_arrives() {
        // Atoms {0,5}, {1,2,5}, {2,3,4,5}: the 4-cycle receives only pivot 5
        // (through the pendant 0), so its own vertex must be 4, not 3.
        let g = Graph::from_edges(6, [(0, 5), (1, 2), (1, 5), (2, 4), (2, 5), (3, 4), (3, 5)]).unwrap();
        assert_eq!(hull_number(&g).unwrap().hull_set, set(6, &[0, 4]));
        // The overlap {0,1} of the middle triangle is never reached from
        // outside, so it needs a vertex of its own.
        let g = Graph::from_edges(6, [(0, 1), (0, 2), (0, 4), (1, 2), (1, 4), (3, 4), (4, 5)]).unwrap();
        assert_eq!(hull_number(&g).unwrap().value, 3);
    }

    fn assert_gaps_well_formed(sweep: &HullSweep) {
        for (k, gap) in sweep.gaps.iter().enumerate() {
            assert!(!gap.is_empty());
            assert!(gap.intersects(&sweep.result.hull_set));
            for other in &sweep.gaps[k + 1..] {
                assert!(!gap.intersects(other));
            }
        }
    }

    #[test]
    fn gaps_need_not_be_concave() {
        // Atoms {0,1}, {0,2,3}, {0,2,4}: the triangle {0,2,4} is hulled by
        // its overlap {0,2}, so only {0,2,3} gets a gap, {2,3}. Yet its
        // complement {0,1,4} hulls the whole graph (2 lies on 0-2-4, then 3
        // on 0-3-2), so the gap is not t-concave.
        let g = Graph::from_edges(5, [(0, 1), (0, 2), (0, 3), (0, 4), (2, 3), (2, 4)]).unwrap();
        let sweep = hull_number_sweep(&g).unwrap();
        assert_eq!(sweep.gaps, vec![set(5, &[2, 3])]);
        assert!(t_convex_hull(&g, &set(5, &[0, 1, 4])).is_full());
        assert_eq!(sweep.result.value, 2);
    }

    #[test]
    fn gaps_on_named_graphs() {
        for kind in [GraphKind::TriangleStar(3), GraphKind::Star(4), GraphKind::Path(6)] {
            let g = kind.build().unwrap();
            assert_gaps_well_formed(&hull_number_sweep(&g).unwrap());
        }
    }

    #[cfg(feature = "oracle")]
    proptest::proptest! {
        #[test]
        fn matches_oracle(n in 2usize..=9, p in 0.1f64..0.6, seed in proptest::prelude::any::<u64>()) {
            let g = GraphKind::Random { n, p, seed, connected: true }.build().unwrap();
            let sweep = hull_number_sweep(&g).unwrap();
            proptest::prop_assert_eq!(sweep.result.value, crate::oracle::brute_hull_number(&g).unwrap());
            assert_gaps_well_formed(&sweep);
            let dec = decompose(&g).unwrap();
            if dec.len() > 1 {
                proptest::prop_assert!(is_hull_set_by_characterization(&g, &dec, &sweep.result.hull_set).unwrap());
            }
        }
    }
}
