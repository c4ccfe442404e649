//! Perfect matchings, admissibility, and the matchability predicates.
//!
//! Matchability is decided with Edmonds' blossom algorithm. Enumeration of all
//! perfect matchings is a bounded oracle for tightness and for cross-checks.

use std::collections::{BTreeSet, HashMap};

use crate::error::{Error, Result};
use crate::graph::{is_connected, EdgeId, Graph, Vertex, VertexSet};

/// Default vertex bound for [`all_perfect_matchings`].
pub const DEFAULT_ENUM_LIMIT: usize = 24;

/// Name of the environment variable that overrides [`DEFAULT_ENUM_LIMIT`].
pub const ENUM_LIMIT_ENV: &str = "TIGHTCUT_MAX_ENUM";

/// The enumeration bound in effect: `TIGHTCUT_MAX_ENUM` if set and valid,
/// otherwise [`DEFAULT_ENUM_LIMIT`].
pub fn enumeration_limit() -> usize {
    std::env::var(ENUM_LIMIT_ENV)
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_ENUM_LIMIT)
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Matching {
    pub edges: BTreeSet<EdgeId>,
}

impl Matching {
    /// Pairwise disjoint edges of `g` covering every vertex.
    pub fn is_perfect_in(&self, g: &Graph) -> bool {
        let mut covered = BTreeSet::new();
        for &id in &self.edges {
            let Some(e) = g.edge(id) else { return false };
            if !covered.insert(e.ends.0) || !covered.insert(e.ends.1) {
                return false;
            }
        }
        covered.len() == g.vertex_count()
    }
}

const NONE: usize = usize::MAX;

/// Maximum matching in a simple graph given by adjacency lists over `0..n`.
/// Returns `mate[v]`, or `NONE` for exposed vertices.
pub(crate) fn maximum_matching(adj: &[Vec<usize>]) -> Vec<usize> {
    let n = adj.len();
    let mut mate = vec![NONE; n];
    // greedy start
    for v in 0..n {
        if mate[v] == NONE {
            if let Some(&w) = adj[v].iter().find(|&&w| mate[w] == NONE && w != v) {
                mate[v] = w;
                mate[w] = v;
            }
        }
    }
    let mut blossom = Blossom::new(n);
    for root in 0..n {
        if mate[root] == NONE {
            let end = blossom.find_path(root, adj, &mate);
            if end != NONE {
                let mut v = end;
                while v != NONE {
                    let pv = blossom.parent[v];
                    let ppv = mate[pv];
                    mate[v] = pv;
                    mate[pv] = v;
                    v = ppv;
                }
            }
        }
    }
    mate
}

struct Blossom {
    parent: Vec<usize>,
    base: Vec<usize>,
    used: Vec<bool>,
    in_blossom: Vec<bool>,
    queue: Vec<usize>,
}

impl Blossom {
    fn new(n: usize) -> Self {
        Blossom {
            parent: vec![NONE; n],
            base: (0..n).collect(),
            used: vec![false; n],
            in_blossom: vec![false; n],
            queue: Vec::with_capacity(n),
        }
    }

    fn lca(&self, mut a: usize, mut b: usize, mate: &[usize]) -> usize {
        let mut seen = vec![false; mate.len()];
        loop {
            a = self.base[a];
            seen[a] = true;
            if mate[a] == NONE {
                break;
            }
            a = self.parent[mate[a]];
        }
        loop {
            b = self.base[b];
            if seen[b] {
                return b;
            }
            b = self.parent[mate[b]];
        }
    }

    fn mark_path(&mut self, mut v: usize, b: usize, mut child: usize, mate: &[usize]) {
        while self.base[v] != b {
            self.in_blossom[self.base[v]] = true;
            self.in_blossom[self.base[mate[v]]] = true;
            self.parent[v] = child;
            child = mate[v];
            v = self.parent[mate[v]];
        }
    }

    fn find_path(&mut self, root: usize, adj: &[Vec<usize>], mate: &[usize]) -> usize {
        let n = adj.len();
        self.used.iter_mut().for_each(|u| *u = false);
        self.parent.iter_mut().for_each(|p| *p = NONE);
        for (i, b) in self.base.iter_mut().enumerate() {
            *b = i;
        }
        self.queue.clear();
        self.used[root] = true;
        self.queue.push(root);
        let mut head = 0;
        while head < self.queue.len() {
            let v = self.queue[head];
            head += 1;
            for &to in &adj[v] {
                if self.base[v] == self.base[to] || mate[v] == to {
                    continue;
                }
                if to == root || (mate[to] != NONE && self.parent[mate[to]] != NONE) {
                    let cur = self.lca(v, to, mate);
                    self.in_blossom.iter_mut().for_each(|b| *b = false);
                    self.mark_path(v, cur, to, mate);
                    self.mark_path(to, cur, v, mate);
                    for i in 0..n {
                        if self.in_blossom[self.base[i]] {
                            self.base[i] = cur;
                            if !self.used[i] {
                                self.used[i] = true;
                                self.queue.push(i);
                            }
                        }
                    }
                } else if self.parent[to] == NONE {
                    self.parent[to] = v;
                    if mate[to] == NONE {
                        return to;
                    }
                    let next = mate[to];
                    self.used[next] = true;
                    self.queue.push(next);
                }
            }
        }
        NONE
    }
}

/// Simple adjacency of `g[active]` relabelled to `0..k`, plus the map back.
fn compact(g: &Graph, active: &[bool]) -> (Vec<Vec<usize>>, Vec<usize>) {
    let n = g.vertex_count();
    let mut local = vec![NONE; n];
    let mut back = Vec::new();
    for i in 0..n {
        if active[i] {
            local[i] = back.len();
            back.push(i);
        }
    }
    let mut adj = vec![Vec::new(); back.len()];
    for (li, &gi) in back.iter().enumerate() {
        for &(j, _) in &g.adjacency()[gi] {
            if active[j] {
                adj[li].push(local[j]);
            }
        }
        adj[li].sort_unstable();
        adj[li].dedup();
    }
    (adj, back)
}

/// Size of a maximum matching of `g[active]`.
pub(crate) fn matching_number_masked(g: &Graph, active: &[bool]) -> usize {
    let (adj, _) = compact(g, active);
    maximum_matching(&adj)
        .iter()
        .filter(|&&m| m != NONE)
        .count()
        / 2
}

/// Whether `g[active]` has a perfect matching. The empty graph does.
pub(crate) fn matchable_masked(g: &Graph, active: &[bool]) -> bool {
    let k = active.iter().filter(|&&a| a).count();
    if k % 2 == 1 {
        return false;
    }
    matching_number_masked(g, active) * 2 == k
}

pub(crate) fn matchable_without(g: &Graph, removed: &VertexSet) -> bool {
    let mut active = vec![true; g.vertex_count()];
    for v in removed.iter() {
        if let Some(i) = g.index_of(v) {
            active[i] = false;
        }
    }
    matchable_masked(g, &active)
}

pub fn is_matchable(g: &Graph) -> bool {
    g.vertex_count() > 0 && matchable_masked(g, &vec![true; g.vertex_count()])
}

/// A perfect matching, or `None`. Among parallel edges the lowest id is used.
pub fn find_perfect_matching(g: &Graph) -> Option<Matching> {
    let active = vec![true; g.vertex_count()];
    let (adj, back) = compact(g, &active);
    let mate = maximum_matching(&adj);
    if mate.contains(&NONE) {
        return None;
    }
    let mut edges = BTreeSet::new();
    for (li, &m) in mate.iter().enumerate() {
        if li < m {
            let (a, b) = (back[li], back[m]);
            let id = g.adjacency()[a]
                .iter()
                .filter(|&&(j, _)| j == b)
                .map(|&(_, k)| g.edges()[k].id)
                .min()
                .expect("matched vertices are adjacent");
            edges.insert(id);
        }
    }
    Some(Matching { edges })
}

/// Every perfect matching of `g`, using the limit from [`enumeration_limit`].
pub fn all_perfect_matchings(g: &Graph) -> Result<Vec<Matching>> {
    all_perfect_matchings_with_limit(g, enumeration_limit())
}

/// Backtracking over the lowest uncovered vertex, pruned by a matchability
/// test on the residual graph. Refuses graphs above `limit` vertices.
pub fn all_perfect_matchings_with_limit(g: &Graph, limit: usize) -> Result<Vec<Matching>> {
    if g.vertex_count() > limit {
        return Err(Error::LimitExceeded {
            what: "perfect matching enumeration",
            size: g.vertex_count(),
            limit,
        });
    }
    let mut out = Vec::new();
    let mut active = vec![true; g.vertex_count()];
    if !matchable_masked(g, &active) {
        return Ok(out);
    }
    let mut chosen = Vec::new();
    enumerate_rec(g, &mut active, &mut chosen, &mut out);
    Ok(out)
}

fn enumerate_rec(
    g: &Graph,
    active: &mut [bool],
    chosen: &mut Vec<EdgeId>,
    out: &mut Vec<Matching>,
) {
    let Some(v) = active.iter().position(|&a| a) else {
        out.push(Matching {
            edges: chosen.iter().copied().collect(),
        });
        return;
    };
    let mut options: Vec<(EdgeId, usize)> = g.adjacency()[v]
        .iter()
        .filter(|&&(w, _)| active[w])
        .map(|&(w, k)| (g.edges()[k].id, w))
        .collect();
    options.sort_unstable();
    active[v] = false;
    for (id, w) in options {
        active[w] = false;
        if matchable_masked(g, active) {
            chosen.push(id);
            enumerate_rec(g, active, chosen, out);
            chosen.pop();
        }
        active[w] = true;
    }
    active[v] = true;
}

/// Whether some perfect matching of `g` contains `e`.
pub fn is_admissible(g: &Graph, e: EdgeId) -> Result<bool> {
    let edge = g.edge(e).ok_or(Error::UnknownEdge(e))?;
    Ok(pair_admissible(g, edge.ends))
}

fn pair_admissible(g: &Graph, (a, b): (Vertex, Vertex)) -> bool {
    let removed: VertexSet = [a, b].into_iter().collect();
    matchable_without(g, &removed)
}

/// All admissible edges. Admissibility depends only on the endpoint pair,
/// so each pair is tested once.
pub fn admissible_edges(g: &Graph) -> BTreeSet<EdgeId> {
    let mut memo: HashMap<(Vertex, Vertex), bool> = HashMap::new();
    g.edges()
        .iter()
        .filter(|e| {
            *memo
                .entry(e.ends)
                .or_insert_with(|| pair_admissible(g, e.ends))
        })
        .map(|e| e.id)
        .collect()
}

/// Connected, at least one edge, and every edge admissible.
pub fn is_matching_covered(g: &Graph) -> bool {
    if g.vertex_count() < 2 || g.edge_count() == 0 || !is_connected(g) {
        return false;
    }
    if !is_matchable(g) {
        return false;
    }
    let mut memo: HashMap<(Vertex, Vertex), bool> = HashMap::new();
    g.edges().iter().all(|e| {
        *memo
            .entry(e.ends)
            .or_insert_with(|| pair_admissible(g, e.ends))
    })
}

/// Nontrivial (two or more vertices) and `G - v` matchable for every `v`.
pub fn is_critical(g: &Graph) -> bool {
    g.vertex_count() >= 2 && vertex_deleted_matchable(g)
}

/// `G - v` matchable for every `v`; holds for `K1`.
pub(crate) fn vertex_deleted_matchable(g: &Graph) -> bool {
    if g.vertex_count().is_multiple_of(2) {
        return false;
    }
    let n = g.vertex_count();
    (0..n).all(|i| {
        let mut active = vec![true; n];
        active[i] = false;
        matchable_masked(g, &active)
    })
}

/// `G - u - v` matchable for every pair of distinct vertices.
pub fn is_bicritical(g: &Graph) -> bool {
    let n = g.vertex_count();
    if n < 2 || n % 2 == 1 {
        return false;
    }
    for i in 0..n {
        for j in i + 1..n {
            let mut active = vec![true; n];
            active[i] = false;
            active[j] = false;
            if !matchable_masked(g, &active) {
                return false;
            }
        }
    }
    true
}

/// Gallai–Edmonds sets `(D, A)` of `g`: `D` holds the vertices missed by
/// some maximum matching, `A` their neighbours outside `D`.
pub fn gallai_edmonds(g: &Graph) -> (VertexSet, VertexSet) {
    let n = g.vertex_count();
    let all = vec![true; n];
    let nu = matching_number_masked(g, &all);
    let d: Vec<usize> = (0..n)
        .filter(|&i| {
            let mut active = all.clone();
            active[i] = false;
            matching_number_masked(g, &active) == nu
        })
        .collect();
    let mut in_d = vec![false; n];
    for &i in &d {
        in_d[i] = true;
    }
    let mut a = BTreeSet::new();
    for &i in &d {
        for &(j, _) in &g.adjacency()[i] {
            if !in_d[j] {
                a.insert(j);
            }
        }
    }
    (g.set_of_indices(d), g.set_of_indices(a))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: u32) -> Graph {
        let edges: Vec<(u32, u32)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::new(n, &edges).unwrap()
    }

    fn k4() -> Graph {
        Graph::new(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap()
    }

    fn k33() -> Graph {
        let mut e = Vec::new();
        for a in 0..3 {
            for b in 3..6 {
                e.push((a, b));
            }
        }
        Graph::new(6, &e).unwrap()
    }

    #[test]
    fn perfect_matching_c6_is_first_by_id() {
        let g = cycle(6);
        let m = find_perfect_matching(&g).unwrap();
        assert!(m.is_perfect_in(&g));
        assert_eq!(m.edges.len(), 3);
        // the two perfect matchings of C6 are {e0,e2,e4} and {e1,e3,e5}
        let ids: Vec<u32> = m.edges.iter().map(|e| e.0).collect();
        assert!(ids == vec![0, 2, 4] || ids == vec![1, 3, 5]);
        assert_eq!(find_perfect_matching(&g), find_perfect_matching(&g));
    }

    #[test]
    fn perfect_matching_absent_on_odd_path() {
        let p = Graph::new(3, &[(0, 1), (1, 2)]).unwrap();
        assert!(find_perfect_matching(&p).is_none());
        assert!(all_perfect_matchings(&p).unwrap().is_empty());
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(all_perfect_matchings(&cycle(6)).unwrap().len(), 2);
        assert_eq!(all_perfect_matchings(&k4()).unwrap().len(), 3);
        assert_eq!(all_perfect_matchings(&k33()).unwrap().len(), 6);
        for m in all_perfect_matchings(&k33()).unwrap() {
            assert!(m.is_perfect_in(&k33()));
        }
    }

    #[test]
    fn enumeration_distinguishes_parallel_edges() {
        let g = Graph::new(2, &[(0, 1), (0, 1)]).unwrap();
        assert_eq!(all_perfect_matchings(&g).unwrap().len(), 2);
    }

    #[test]
    fn enumeration_refuses_large_graphs() {
        let g = cycle(26);
        assert!(matches!(
            all_perfect_matchings_with_limit(&g, 24),
            Err(Error::LimitExceeded { .. })
        ));
        assert_eq!(all_perfect_matchings_with_limit(&g, 26).unwrap().len(), 2);
    }

    #[test]
    fn admissibility() {
        let g = cycle(6);
        assert!(is_admissible(&g, EdgeId(0)).unwrap());
        let chord =
            Graph::new(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0), (0, 2)]).unwrap();
        assert!(!is_admissible(&chord, EdgeId(6)).unwrap());
        assert!(matches!(
            is_admissible(&g, EdgeId(99)),
            Err(Error::UnknownEdge(_))
        ));
        assert_eq!(admissible_edges(&k4()).len(), 6);
    }

    #[test]
    fn matching_covered_examples() {
        assert!(is_matching_covered(&cycle(6)));
        let chord =
            Graph::new(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0), (0, 2)]).unwrap();
        assert!(!is_matching_covered(&chord));
        assert!(is_matching_covered(&Graph::new(2, &[(0, 1)]).unwrap()));
        assert!(!is_matching_covered(&Graph::new(1, &[]).unwrap()));
    }

    #[test]
    fn critical_and_bicritical() {
        let k3 = Graph::new(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        assert!(is_critical(&k3));
        assert!(is_bicritical(&k4()));
        assert!(!is_bicritical(&cycle(6)));
        assert!(!is_critical(&Graph::new(1, &[]).unwrap()));
        assert!(vertex_deleted_matchable(&Graph::new(1, &[]).unwrap()));
    }

    #[test]
    fn gallai_edmonds_of_odd_path() {
        let p = Graph::new(3, &[(0, 1), (1, 2)]).unwrap();
        let (d, a) = gallai_edmonds(&p);
        assert_eq!(d, VertexSet::of([0, 2]));
        assert_eq!(a, VertexSet::of([1]));
    }

    #[test]
    fn blossom_handles_odd_cycles() {
        // two triangles joined by an edge: needs a blossom to augment from greedy
        let g = Graph::new(6, &[(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 5), (5, 3)]).unwrap();
        assert!(find_perfect_matching(&g).is_some());
        let petersen = Graph::new(
            10,
            &[
                (0, 1),
                (1, 2),
                (2, 3),
                (3, 4),
                (4, 0),
                (0, 5),
                (1, 6),
                (2, 7),
                (3, 8),
                (4, 9),
                (5, 7),
                (7, 9),
                (9, 6),
                (6, 8),
                (8, 5),
            ],
        )
        .unwrap();
        assert!(find_perfect_matching(&petersen).is_some());
        assert_eq!(all_perfect_matchings(&petersen).unwrap().len(), 6);
    }
}
