use std::collections::BTreeSet;

use proptest::prelude::*;

use tightcut::graph::{boundary, contract, crosses, Graph, Vertex, VertexSet};
use tightcut::instances::random_graph;
use tightcut::io::{parse_edge_list, write_edge_list};
use tightcut::matching::{
    admissible_edges, all_perfect_matchings, find_perfect_matching, is_matching_covered,
};
use tightcut::structure::{all_barriers, is_barrier, lift_barrier_over_odd_component};
use tightcut::tightcuts::TightnessOracle;

/// Any simple graph on `0..n`, edges picked by a bitmask over all pairs.
fn any_graph() -> impl Strategy<Value = Graph> {
    (2u32..=8).prop_flat_map(|n| {
        let pairs: Vec<(u32, u32)> = (0..n)
            .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
            .collect();
        proptest::collection::vec(any::<bool>(), pairs.len()).prop_map(move |keep| {
            let edges: Vec<(u32, u32)> = pairs
                .iter()
                .zip(keep)
                .filter(|(_, k)| *k)
                .map(|(p, _)| *p)
                .collect();
            Graph::new(n, &edges).unwrap()
        })
    })
}

fn covered_graph() -> impl Strategy<Value = Graph> {
    (prop_oneof![Just(4usize), Just(6), Just(8)], any::<u64>())
        .prop_map(|(n, s)| random_graph(n, s).unwrap())
}

/// Perfect matchings by plain backtracking, as edge-id sets.
fn brute_matchings(g: &Graph) -> Vec<BTreeSet<u32>> {
    fn go(
        g: &Graph,
        free: &mut Vec<Vertex>,
        acc: &mut BTreeSet<u32>,
        out: &mut Vec<BTreeSet<u32>>,
    ) {
        let Some(&v) = free.first() else {
            out.push(acc.clone());
            return;
        };
        for e in g.edges().iter().filter(|e| e.touches(v)) {
            let w = e.other(v);
            if let Some(pos) = free.iter().position(|&x| x == w) {
                let saved = free.clone();
                free.remove(pos);
                free.remove(0);
                acc.insert(e.id.0);
                go(g, free, acc, out);
                acc.remove(&e.id.0);
                *free = saved;
            }
        }
    }
    let mut out = Vec::new();
    go(
        g,
        &mut g.vertices().to_vec(),
        &mut BTreeSet::new(),
        &mut out,
    );
    out
}

/// Odd components of `g - b`, counted with a plain union-find.
fn odd_count(g: &Graph, b: &VertexSet) -> usize {
    let ids: Vec<Vertex> = g
        .vertices()
        .iter()
        .copied()
        .filter(|v| !b.contains(*v))
        .collect();
    let idx = |v: Vertex| ids.iter().position(|&x| x == v);
    let mut parent: Vec<usize> = (0..ids.len()).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        if p[x] != x {
            let r = find(p, p[x]);
            p[x] = r;
        }
        p[x]
    }
    for e in g.edges() {
        if let (Some(a), Some(c)) = (idx(e.ends.0), idx(e.ends.1)) {
            let (ra, rc) = (find(&mut parent, a), find(&mut parent, c));
            parent[ra] = rc;
        }
    }
    let mut sizes = std::collections::BTreeMap::new();
    for i in 0..ids.len() {
        *sizes.entry(find(&mut parent, i)).or_insert(0usize) += 1;
    }
    sizes.values().filter(|s| *s % 2 == 1).count()
}

fn shore_from_mask(g: &Graph, mask: u32) -> VertexSet {
    let n = g.vertex_count();
    let mut bits = mask % ((1 << n) - 1);
    if bits == 0 {
        bits = 1;
    }
    g.vertices()
        .iter()
        .enumerate()
        .filter(|(i, _)| bits >> i & 1 == 1)
        .map(|(_, &v)| v)
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn blossom_agrees_with_enumeration(g in any_graph()) {
        let brute = brute_matchings(&g);
        match find_perfect_matching(&g) {
            Some(m) => {
                prop_assert!(m.is_perfect_in(&g));
                prop_assert!(!brute.is_empty());
            }
            None => prop_assert!(brute.is_empty()),
        }
        let listed: BTreeSet<BTreeSet<u32>> = all_perfect_matchings(&g)
            .unwrap()
            .into_iter()
            .map(|m| m.edges.iter().map(|e| e.0).collect())
            .collect();
        prop_assert_eq!(listed, brute.iter().cloned().collect::<BTreeSet<_>>());
        let admissible: BTreeSet<u32> = admissible_edges(&g).iter().map(|e| e.0).collect();
        let used: BTreeSet<u32> = brute.iter().flatten().copied().collect();
        prop_assert_eq!(admissible, used);
    }

    #[test]
    fn tightness_matches_brute_force(g in covered_graph(), mask in any::<u32>()) {
        let x = shore_from_mask(&g, mask);
        let c = boundary(&g, &x).unwrap();
        let oracle = TightnessOracle::new(&g).unwrap().is_tight(&c);
        let brute = brute_matchings(&g)
            .iter()
            .all(|m| m.iter().filter(|e| c.boundary.iter().any(|b| b.0 == **e)).count() == 1);
        prop_assert_eq!(oracle, brute);
    }

    #[test]
    fn boundary_is_canonical(g in any_graph(), mask in any::<u32>()) {
        let x = shore_from_mask(&g, mask);
        let c = boundary(&g, &x).unwrap();
        let d = boundary(&g, &g.vertex_set().difference(&x)).unwrap();
        prop_assert_eq!(&c, &d);
        prop_assert_eq!(c.shore.first(), g.vertices().first().copied());
        prop_assert_eq!(c.shore.union(&c.complement), g.vertex_set());
        let across = g.edges().iter().filter(|e| x.contains(e.ends.0) != x.contains(e.ends.1)).count();
        prop_assert_eq!(c.boundary.len(), across);
    }

    #[test]
    fn crossing_is_symmetric(g in any_graph(), a in any::<u32>(), b in any::<u32>()) {
        let c = boundary(&g, &shore_from_mask(&g, a)).unwrap();
        let d = boundary(&g, &shore_from_mask(&g, b)).unwrap();
        prop_assert_eq!(crosses(&g, &c, &d).unwrap(), crosses(&g, &d, &c).unwrap());
        prop_assert!(!crosses(&g, &c, &c).unwrap());
    }

    #[test]
    fn contraction_keeps_edge_ids(g in any_graph(), mask in any::<u32>()) {
        let x = shore_from_mask(&g, mask);
        let label = g.fresh_vertex();
        let h = contract(&g, &x, label).unwrap();
        let kept: BTreeSet<u32> = g
            .edges()
            .iter()
            .filter(|e| !(x.contains(e.ends.0) && x.contains(e.ends.1)))
            .map(|e| e.id.0)
            .collect();
        prop_assert_eq!(h.edges().iter().map(|e| e.id.0).collect::<BTreeSet<_>>(), kept);
        prop_assert_eq!(h.origin(label), x.clone());
        let c = boundary(&g, &x).unwrap();
        let d = boundary(&h, &VertexSet::single(label)).unwrap();
        prop_assert_eq!(c.boundary, d.boundary);
    }

    #[test]
    fn edge_lists_roundtrip(g in any_graph()) {
        let text = write_edge_list(&g);
        let back = parse_edge_list(&text).unwrap();
        prop_assert_eq!(&back, &g);
        prop_assert_eq!(write_edge_list(&back), text);
    }

    #[test]
    fn barriers_match_odd_counts(g in covered_graph(), mask in any::<u32>()) {
        let b = shore_from_mask(&g, mask);
        let expected = odd_count(&g, &b) == b.len();
        prop_assert_eq!(is_barrier(&g, &b).unwrap().is_some(), expected);
    }

    #[test]
    fn lifted_barriers_are_barriers(g in covered_graph()) {
        prop_assume!(is_matching_covered(&g));
        for b in all_barriers(&g).unwrap().iter().filter(|b| !b.is_trivial()).take(3) {
            for y in b.odd_parts.iter().filter(|p| p.len() >= 3) {
                let label = g.fresh_vertex();
                let h = contract(&g, &g.vertex_set().difference(y), label).unwrap();
                for inner in all_barriers(&h).unwrap() {
                    let lifted = lift_barrier_over_odd_component(&g, b, y, label, &inner.members).unwrap();
                    prop_assert_eq!(odd_count(&g, &lifted.members), lifted.members.len());
                }
            }
        }
    }
}
