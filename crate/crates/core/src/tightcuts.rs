//! Tightness, tight-cut enumeration and ELP classification of cuts.

use std::ops::ControlFlow;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{boundary, Cut, Graph, VertexSet};
use crate::matching::{all_perfect_matchings, is_matching_covered};
use crate::structure::{
    barrier_unchecked, for_each_subset_of_size, two_separation_witnesses, Barrier, TwoSeparation,
    SUBSET_SCAN_LIMIT,
};

/// Vertex bound for the `2^(n-1)` shore scan in [`enumerate_tight_cuts`].
pub const SHORE_SCAN_LIMIT: usize = 16;

/// A barrier witness: `cut = ∂(barrier.odd_parts[component])`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BarrierWitness {
    pub barrier: Barrier,
    pub component: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CutClassification {
    pub tight: bool,
    pub trivial: bool,
    pub elp: bool,
    pub barrier_witnesses: Vec<BarrierWitness>,
    pub twosep_witnesses: Vec<TwoSeparation>,
}

/// All perfect matchings of a graph, stored as edge bitsets, for repeated
/// tightness queries.
pub struct TightnessOracle<'g> {
    g: &'g Graph,
    words: usize,
    matchings: Vec<u64>,
    ends: Vec<(usize, usize)>,
}

impl<'g> TightnessOracle<'g> {
    pub fn new(g: &'g Graph) -> Result<TightnessOracle<'g>> {
        let words = g.edge_count().div_ceil(64).max(1);
        let position: std::collections::HashMap<_, _> = g
            .edges()
            .iter()
            .enumerate()
            .map(|(k, e)| (e.id, k))
            .collect();
        let mut matchings = Vec::new();
        for m in all_perfect_matchings(g)? {
            let mut bits = vec![0u64; words];
            for id in &m.edges {
                let k = position[id];
                bits[k / 64] |= 1 << (k % 64);
            }
            matchings.extend(bits);
        }
        let ends = g
            .edges()
            .iter()
            .map(|e| {
                (
                    g.index_of(e.ends.0).expect("edge endpoint"),
                    g.index_of(e.ends.1).expect("edge endpoint"),
                )
            })
            .collect();
        Ok(TightnessOracle {
            g,
            words,
            matchings,
            ends,
        })
    }

    pub fn matching_count(&self) -> usize {
        self.matchings.len() / self.words
    }

    fn cut_bits(&self, inside: &[bool]) -> Vec<u64> {
        let mut bits = vec![0u64; self.words];
        for (k, &(a, b)) in self.ends.iter().enumerate() {
            if inside[a] != inside[b] {
                bits[k / 64] |= 1 << (k % 64);
            }
        }
        bits
    }

    fn tight_mask(&self, inside: &[bool]) -> bool {
        let cut = self.cut_bits(inside);
        self.matchings.chunks(self.words).all(|m| {
            let hits: u32 = m.iter().zip(&cut).map(|(a, b)| (a & b).count_ones()).sum();
            hits == 1
        })
    }

    /// Every perfect matching meets `∂(shore)` in exactly one edge.
    pub fn is_tight_shore(&self, shore: &VertexSet) -> bool {
        self.tight_mask(&self.g.mask_of(shore))
    }

    pub fn is_tight(&self, c: &Cut) -> bool {
        self.is_tight_shore(&c.shore)
    }

    /// Canonical tight cuts (shores holding the first vertex, odd size).
    pub fn tight_cuts(&self, nontrivial_only: bool) -> Result<Vec<Cut>> {
        let n = self.g.vertex_count();
        if n > SHORE_SCAN_LIMIT {
            return Err(Error::LimitExceeded {
                what: "tight cut shore scan",
                size: n,
                limit: SHORE_SCAN_LIMIT,
            });
        }
        let mut out = Vec::new();
        if n < 2 {
            return Ok(out);
        }
        let rest = n - 1;
        for mask in 0u32..(1u32 << rest) {
            let size = 1 + mask.count_ones() as usize;
            if size == n || size.is_multiple_of(2) {
                continue;
            }
            if nontrivial_only && (size == 1 || size == n - 1) {
                continue;
            }
            let mut inside = vec![false; n];
            inside[0] = true;
            for i in 0..rest {
                inside[i + 1] = (mask >> i) & 1 == 1;
            }
            if self.tight_mask(&inside) {
                let shore = self.g.set_of_indices((0..n).filter(|&i| inside[i]));
                out.push(boundary(self.g, &shore)?);
            }
        }
        out.sort();
        Ok(out)
    }
}

pub(crate) fn check_cut(g: &Graph, c: &Cut) -> Result<()> {
    g.check_subset(&c.shore)?;
    if &boundary(g, &c.shore)? != c {
        return Err(Error::ForeignCut);
    }
    Ok(())
}

fn require_matching_covered(g: &Graph) -> Result<()> {
    if is_matching_covered(g) {
        Ok(())
    } else {
        Err(Error::precondition("graph is not matching covered"))
    }
}

/// Every perfect matching meets `c` in exactly one edge.
pub fn is_tight(g: &Graph, c: &Cut) -> Result<bool> {
    check_cut(g, c)?;
    require_matching_covered(g)?;
    Ok(TightnessOracle::new(g)?.is_tight(c))
}

pub fn enumerate_tight_cuts(g: &Graph, nontrivial_only: bool) -> Result<Vec<Cut>> {
    require_matching_covered(g)?;
    TightnessOracle::new(g)?.tight_cuts(nontrivial_only)
}

/// Tightness plus every barrier and 2-separation witness for `c`.
pub fn classify_cut(g: &Graph, c: &Cut) -> Result<CutClassification> {
    check_cut(g, c)?;
    require_matching_covered(g)?;
    let tight = TightnessOracle::new(g)?.is_tight(c);
    classify_with_tightness(g, c, tight)
}

pub(crate) fn classify_with_tightness(
    g: &Graph,
    c: &Cut,
    tight: bool,
) -> Result<CutClassification> {
    let barrier_witnesses = barrier_witnesses(g, c)?;
    let twosep_witnesses = two_separation_witnesses(g, c);
    let elp = tight && (!barrier_witnesses.is_empty() || !twosep_witnesses.is_empty());
    Ok(CutClassification {
        tight,
        trivial: c.is_trivial(),
        elp,
        barrier_witnesses,
        twosep_witnesses,
    })
}

/// Barriers `B` of a matching covered graph with `c = ∂(V(H))` for an odd
/// component `H` of `G - B`.
///
/// `H` is one shore `S` and `B` contains every neighbour of `S`; any further
/// members lie away from `S` and, since barriers of matching covered graphs
/// are independent, form an independent set with the attachment set.
pub fn barrier_witnesses(g: &Graph, c: &Cut) -> Result<Vec<BarrierWitness>> {
    let mut out = Vec::new();
    for s in [&c.shore, &c.complement] {
        if s.len() % 2 == 0 || !g.is_connected_on(s) {
            continue;
        }
        let attach: VertexSet = s
            .iter()
            .flat_map(|v| g.neighbors(v).iter().collect::<Vec<_>>())
            .filter(|&w| !s.contains(w))
            .collect();
        if !independent(g, &attach) {
            continue;
        }
        let free: Vec<_> = g
            .vertices()
            .iter()
            .copied()
            .filter(|&v| {
                !s.contains(v) && !attach.contains(v) && g.neighbors(v).is_disjoint(&attach)
            })
            .collect();
        if free.len() > SUBSET_SCAN_LIMIT {
            return Err(Error::LimitExceeded {
                what: "barrier witness search",
                size: free.len(),
                limit: SUBSET_SCAN_LIMIT,
            });
        }
        for size in 0..=free.len() {
            let _ = for_each_subset_of_size(&free, size, |extra| {
                if !independent(g, extra) {
                    return ControlFlow::Continue(());
                }
                let b = attach.union(extra);
                if let Some(barrier) = barrier_unchecked(g, &b) {
                    if let Some(component) = barrier.odd_parts.iter().position(|p| p == s) {
                        out.push(BarrierWitness { barrier, component });
                    }
                }
                ControlFlow::Continue(())
            });
        }
    }
    out.sort_by(|a, b| {
        a.barrier
            .cmp(&b.barrier)
            .then(a.component.cmp(&b.component))
    });
    Ok(out)
}

fn independent(g: &Graph, set: &VertexSet) -> bool {
    set.iter().all(|v| g.neighbors(v).is_disjoint(set))
}

/// Whether `w` re-verifies as a barrier witness of `c` in `g`.
pub fn barrier_witness_holds(g: &Graph, c: &Cut, w: &BarrierWitness) -> bool {
    if g.check_subset(&w.barrier.members).is_err() || w.barrier.members.is_empty() {
        return false;
    }
    match barrier_unchecked(g, &w.barrier.members) {
        Some(b) => b
            .odd_parts
            .get(w.component)
            .is_some_and(|p| w.barrier.odd_parts.get(w.component) == Some(p) && c.has_shore(p)),
        None => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structure::find_2separations;
    use crate::structure::two_separation_cuts;

    fn cycle(n: u32) -> Graph {
        let edges: Vec<(u32, u32)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::new(n, &edges).unwrap()
    }

    fn k4() -> Graph {
        Graph::new(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap()
    }

    fn petersen() -> Graph {
        let mut e = Vec::new();
        for i in 0..5 {
            e.push((i, (i + 1) % 5));
            e.push((i, i + 5));
        }
        e.extend([(5, 7), (7, 9), (9, 6), (6, 8), (8, 5)]);
        Graph::new(10, &e).unwrap()
    }

    fn vs(ids: &[u32]) -> VertexSet {
        VertexSet::of(ids.iter().copied())
    }

    #[test]
    fn tightness_examples() {
        let c6 = cycle(6);
        assert!(is_tight(&c6, &boundary(&c6, &vs(&[0, 1, 2])).unwrap()).unwrap());
        assert!(!is_tight(&k4(), &boundary(&k4(), &vs(&[0, 1])).unwrap()).unwrap());
        for v in 0..4 {
            assert!(is_tight(&k4(), &boundary(&k4(), &vs(&[v])).unwrap()).unwrap());
        }
    }

    #[test]
    fn tight_cut_scans() {
        assert_eq!(enumerate_tight_cuts(&k4(), false).unwrap().len(), 4);
        assert!(enumerate_tight_cuts(&k4(), true).unwrap().is_empty());
        assert!(enumerate_tight_cuts(&petersen(), true).unwrap().is_empty());
        let c6 = cycle(6);
        let cuts = enumerate_tight_cuts(&c6, true).unwrap();
        let shores: Vec<_> = cuts.iter().map(|c| c.shore.ids()).collect();
        assert_eq!(shores, vec![vec![0, 1, 2], vec![0, 1, 5], vec![0, 4, 5]]);
    }

    #[test]
    fn classification_of_c6_path_cut() {
        let g = cycle(6);
        let c = boundary(&g, &vs(&[2, 3, 4])).unwrap();
        let cl = classify_cut(&g, &c).unwrap();
        assert!(cl.tight && cl.elp && !cl.trivial);
        let b = cl
            .barrier_witnesses
            .iter()
            .find(|w| w.barrier.members == vs(&[1, 5]))
            .expect("B = {1,5}");
        assert_eq!(b.barrier.odd_parts[b.component], vs(&[2, 3, 4]));
        assert!(!cl.twosep_witnesses.is_empty());
        for w in &cl.barrier_witnesses {
            assert!(barrier_witness_holds(&g, &c, w));
        }
    }

    #[test]
    fn classification_of_non_tight_and_trivial() {
        let cl = classify_cut(&k4(), &boundary(&k4(), &vs(&[0, 1])).unwrap()).unwrap();
        assert!(!cl.tight && !cl.elp);
        let g = cycle(6);
        let cl = classify_cut(&g, &boundary(&g, &vs(&[0])).unwrap()).unwrap();
        assert!(cl.tight && cl.trivial);
    }

    #[test]
    fn twosep_witnesses_agree_with_enumeration() {
        let g = cycle(8);
        for c in enumerate_tight_cuts(&g, true).unwrap() {
            let direct = two_separation_witnesses(&g, &c);
            let via_enum: Vec<_> = find_2separations(&g)
                .into_iter()
                .filter(|s| two_separation_cuts(&g, s).unwrap().contains(&c))
                .collect();
            assert_eq!(direct, via_enum);
        }
    }

    #[test]
    fn foreign_cut_is_rejected() {
        let c = boundary(&cycle(8), &vs(&[0, 1, 2])).unwrap();
        assert!(is_tight(&cycle(6), &c).is_err());
    }
}
