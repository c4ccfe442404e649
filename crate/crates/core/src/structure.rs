//! Barriers, 2-separations, cores, DM-barriers and barrier lifting.

use std::collections::BTreeSet;
use std::ops::ControlFlow;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{
    boundary, components_without, contract, odd_even_split, Cut, EdgeId, Graph, Vertex, VertexSet,
};
use crate::matching::{
    admissible_edges, gallai_edmonds, is_matchable, is_matching_covered, vertex_deleted_matchable,
};

/// Largest shore (or vertex set) scanned by the exhaustive subset searches.
pub const SUBSET_SCAN_LIMIT: usize = 22;

/// A set `B` with `o(G - B) = |B|`, together with the odd components.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Barrier {
    pub members: VertexSet,
    pub odd_parts: Vec<VertexSet>,
}

impl Barrier {
    pub fn is_trivial(&self) -> bool {
        self.members.len() < 2
    }

    /// The odd component containing `v`, if any.
    pub fn part_containing(&self, v: Vertex) -> Option<&VertexSet> {
        self.odd_parts.iter().find(|p| p.contains(v))
    }
}

/// `Some(barrier)` iff `o(g - b) = |b|`.
pub fn is_barrier(g: &Graph, b: &VertexSet) -> Result<Option<Barrier>> {
    g.check_subset(b)?;
    if b.is_empty() {
        return Err(Error::InvalidShore("empty barrier candidate".into()));
    }
    if b.len() == g.vertex_count() {
        return Err(Error::InvalidShore(
            "barrier candidate is the whole vertex set".into(),
        ));
    }
    Ok(barrier_unchecked(g, b))
}

pub(crate) fn barrier_unchecked(g: &Graph, b: &VertexSet) -> Option<Barrier> {
    let (odd, _) = odd_even_split(components_without(g, b));
    (odd.len() == b.len()).then(|| Barrier {
        members: b.clone(),
        odd_parts: odd,
    })
}

/// One cut `∂(V(H))` per odd component `H`.
pub fn barrier_cuts(g: &Graph, b: &Barrier) -> Result<Vec<Cut>> {
    b.odd_parts.iter().map(|p| boundary(g, p)).collect()
}

/// A 2-separation `{u, v}` with its two sides. `side1` is the
/// lexicographically smaller side and `pair.0 < pair.1`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct TwoSeparation {
    pub pair: (Vertex, Vertex),
    pub side1: VertexSet,
    pub side2: VertexSet,
}

impl TwoSeparation {
    pub fn new(a: Vertex, b: Vertex, side1: VertexSet, side2: VertexSet) -> TwoSeparation {
        let (side1, side2) = if side1 <= side2 {
            (side1, side2)
        } else {
            (side2, side1)
        };
        TwoSeparation {
            pair: (a.min(b), a.max(b)),
            side1,
            side2,
        }
    }

    fn pair_set(&self) -> VertexSet {
        [self.pair.0, self.pair.1].into_iter().collect()
    }

    /// Structural validity against `g`.
    pub fn is_valid_in(&self, g: &Graph) -> bool {
        let (u, v) = self.pair;
        if u == v || !g.has_vertex(u) || !g.has_vertex(v) {
            return false;
        }
        let pair = self.pair_set();
        if self.side1.union(&self.side2) != g.vertex_set()
            || self.side1.intersection(&self.side2) != pair
        {
            return false;
        }
        if self.side1.len() % 2 == 1 || self.side2.len() % 2 == 1 {
            return false;
        }
        let g1 = self.side1.difference(&pair);
        let g2 = self.side2.difference(&pair);
        !g1.is_empty() && !g2.is_empty() && g.edges_between(&g1, &g2).is_empty()
    }
}

/// All 2-separations, one witness per distinct pair of sides.
pub fn find_2separations(g: &Graph) -> Vec<TwoSeparation> {
    let vs = g.vertices().to_vec();
    let mut out = BTreeSet::new();
    for (i, &u) in vs.iter().enumerate() {
        for &v in &vs[i + 1..] {
            let pair: VertexSet = [u, v].into_iter().collect();
            let comps = components_without(g, &pair);
            let t = comps.len();
            if t < 2 {
                continue;
            }
            assert!(t < 64, "too many components for grouping enumeration");
            // component 0 always sits in the first group
            for mask in 0u64..(1u64 << (t - 1)) {
                let in_first = |k: usize| k == 0 || (mask >> (k - 1)) & 1 == 0;
                if (1..t).all(in_first) {
                    continue;
                }
                let mut g1 = VertexSet::new();
                let mut g2 = VertexSet::new();
                for (k, c) in comps.iter().enumerate() {
                    if in_first(k) {
                        g1 = g1.union(c);
                    } else {
                        g2 = g2.union(c);
                    }
                }
                if g1.len().is_multiple_of(2) && g2.len().is_multiple_of(2) {
                    out.insert(TwoSeparation::new(u, v, g1.union(&pair), g2.union(&pair)));
                }
            }
        }
    }
    out.into_iter().collect()
}

/// The distinct cuts `∂(side1 - u)`, `∂(side2 - v)`, `∂(side1 - v)`,
/// `∂(side2 - u)`. The first two coincide, as do the last two.
pub fn two_separation_cuts(g: &Graph, s: &TwoSeparation) -> Result<Vec<Cut>> {
    if !s.is_valid_in(g) {
        return Err(Error::precondition("not a 2-separation of this graph"));
    }
    let (u, v) = s.pair;
    let mut cuts = BTreeSet::new();
    for shore in [
        s.side1.without(u),
        s.side2.without(v),
        s.side1.without(v),
        s.side2.without(u),
    ] {
        cuts.insert(boundary(g, &shore)?);
    }
    Ok(cuts.into_iter().collect())
}

/// Every 2-separation that generates `c` as one of its cuts.
///
/// `∂(X)` comes from the pair `{x, y}` (`x ∈ X`, `y ∈ X̄`) exactly when every
/// cut edge touches `x` or `y` and both `X - x` and `X̄ - y` are nonempty and
/// even.
pub fn two_separation_witnesses(g: &Graph, c: &Cut) -> Vec<TwoSeparation> {
    let (x_side, y_side) = (&c.shore, &c.complement);
    if x_side.len() % 2 == 0 || x_side.len() < 3 || y_side.len() < 3 {
        return Vec::new();
    }
    let cut_edges: Vec<(Vertex, Vertex)> = c
        .boundary
        .iter()
        .filter_map(|&id| g.edge(id))
        .map(|e| e.ends)
        .collect();
    let mut out = BTreeSet::new();
    for x in x_side.iter() {
        for y in y_side.iter() {
            let covered = cut_edges
                .iter()
                .all(|&(a, b)| a == x || b == x || a == y || b == y);
            if covered {
                let side1 = x_side.with(y);
                let side2 = y_side.with(x);
                let s = TwoSeparation::new(x, y, side1, side2);
                debug_assert!(s.is_valid_in(g));
                out.insert(s);
            }
        }
    }
    out.into_iter().collect()
}

/// The core `H(B)`: even components deleted, each odd component contracted
/// to a fresh vertex, edges inside `B` deleted. Parallel edges are kept.
pub fn core(g: &Graph, b: &Barrier) -> Result<Graph> {
    let (_, even) = odd_even_split(components_without(g, &b.members));
    let mut h = g.clone();
    for part in &b.odd_parts {
        let label = h.fresh_vertex();
        h = contract(&h, part, label)?;
    }
    let mut drop = VertexSet::new();
    for part in &even {
        drop = drop.union(part);
    }
    let h = h.without_vertices(&drop);
    let inside: BTreeSet<EdgeId> = h
        .edges()
        .iter()
        .filter(|e| b.members.contains(e.ends.0) && b.members.contains(e.ends.1))
        .map(|e| e.id)
        .collect();
    Ok(h.without_edges(&inside))
}

/// A barrier whose odd components are critical (single vertices included)
/// and whose core is matching covered.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DmBarrier {
    pub barrier: Barrier,
    pub core: Graph,
}

pub fn is_dm_barrier(g: &Graph, b: &Barrier) -> Result<Option<DmBarrier>> {
    for part in &b.odd_parts {
        if !vertex_deleted_matchable(&g.induced(part)) {
            return Ok(None);
        }
    }
    let h = core(g, b)?;
    Ok(is_matching_covered(&h).then(|| DmBarrier {
        barrier: b.clone(),
        core: h,
    }))
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum DmStrategy {
    /// Gallai–Edmonds barrier of the shore with a terminal gadget, refined to
    /// a source block of its core.
    Constructive,
    /// Subsets of each shore in increasing size.
    Exhaustive,
}

/// A DM-barrier together with the shore holding it and its odd components.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShoreDmBarrier {
    pub dm: DmBarrier,
    pub shore: VertexSet,
}

/// A DM-barrier inside `x` or its complement, whose odd components lie in the
/// same shore. Runs the constructive strategy and falls back to the
/// exhaustive one.
pub fn find_dm_barrier(g: &Graph, x: &VertexSet) -> Result<ShoreDmBarrier> {
    check_dm_preconditions(g, x)?;
    if let Some(found) = constructive_dm(g, x)? {
        return Ok(found);
    }
    match exhaustive_dm(g, x)? {
        Some(found) => Ok(found),
        None => Err(Error::internal(format!(
            "no DM-barrier inside either shore of {x}"
        ))),
    }
}

/// Like [`find_dm_barrier`] but with a single strategy and no fallback.
pub fn find_dm_barrier_with(
    g: &Graph,
    x: &VertexSet,
    strategy: DmStrategy,
) -> Result<ShoreDmBarrier> {
    check_dm_preconditions(g, x)?;
    let found = match strategy {
        DmStrategy::Constructive => constructive_dm(g, x)?,
        DmStrategy::Exhaustive => exhaustive_dm(g, x)?,
    };
    found.ok_or_else(|| {
        Error::internal(format!(
            "{strategy:?} search found no DM-barrier for shore {x}"
        ))
    })
}

fn check_dm_preconditions(g: &Graph, x: &VertexSet) -> Result<()> {
    let c = boundary(g, x)?;
    if !is_matchable(g) {
        return Err(Error::precondition("graph is not matchable"));
    }
    if !g.is_connected_on(&c.shore) || !g.is_connected_on(&c.complement) {
        return Err(Error::precondition(
            "a shore induces a disconnected subgraph",
        ));
    }
    let admissible = admissible_edges(g);
    if let Some(e) = c.boundary.iter().find(|e| admissible.contains(e)) {
        return Err(Error::precondition(format!("cut edge {e} is admissible")));
    }
    Ok(())
}

fn shore_order(g: &Graph, x: &VertexSet) -> [VertexSet; 2] {
    [x.clone(), g.vertex_set().difference(x)]
}

fn verify_in_shore(g: &Graph, b: &VertexSet, shore: &VertexSet) -> Result<Option<ShoreDmBarrier>> {
    if !b.is_subset(shore) {
        return Ok(None);
    }
    let Some(barrier) = barrier_unchecked(g, b) else {
        return Ok(None);
    };
    if !barrier.odd_parts.iter().all(|p| p.is_subset(shore)) {
        return Ok(None);
    }
    Ok(is_dm_barrier(g, &barrier)?.map(|dm| ShoreDmBarrier {
        dm,
        shore: shore.clone(),
    }))
}

/// For a shore `S` with terminals `T` (ends of cut edges inside `S`), a
/// barrier of `G[S]` whose odd components avoid `T` is a barrier of `G`. Add
/// a vertex `z` joined to `T`; then `A(G[S] + z)` from the Gallai–Edmonds
/// decomposition is such a barrier, nonempty whenever one exists. Its core is
/// bipartite with a perfect matching and any source block of the matching
/// digraph yields a DM-barrier.
fn constructive_dm(g: &Graph, x: &VertexSet) -> Result<Option<ShoreDmBarrier>> {
    for shore in shore_order(g, x) {
        let cut = boundary(g, &shore)?;
        let terminals: VertexSet = cut
            .boundary
            .iter()
            .filter_map(|&id| g.edge(id))
            .flat_map(|e| [e.ends.0, e.ends.1])
            .filter(|&v| shore.contains(v))
            .collect();
        let gadget = with_terminal_vertex(&g.induced(&shore), &terminals)?;
        let (_, a) = gallai_edmonds(&gadget);
        let a = a.intersection(&shore);
        if a.is_empty() {
            continue;
        }
        let Some(seed) = barrier_unchecked(g, &a) else {
            return Err(Error::internal(format!(
                "Gallai-Edmonds set {a} is not a barrier of the host graph"
            )));
        };
        for candidate in source_block_barriers(g, &seed) {
            if let Some(found) = verify_in_shore(g, &candidate, &shore)? {
                return Ok(Some(found));
            }
        }
    }
    Ok(None)
}

fn with_terminal_vertex(f: &Graph, terminals: &VertexSet) -> Result<Graph> {
    let z = f.fresh_vertex();
    let next_edge = f.edges().iter().map(|e| e.id.0 + 1).max().unwrap_or(0);
    let mut edges: Vec<(EdgeId, Vertex, Vertex)> = f
        .edges()
        .iter()
        .map(|e| (e.id, e.ends.0, e.ends.1))
        .collect();
    for (id, t) in (next_edge..).zip(terminals.iter()) {
        edges.push((EdgeId(id), t, z));
    }
    Graph::from_parts(f.vertices().iter().copied().chain([z]), edges)
}

/// Sub-barriers `B_K` for every source strongly connected block `K` of the
/// matching digraph of the core of `seed`. Sorted.
#[allow(clippy::needless_range_loop)]
pub(crate) fn source_block_barriers(g: &Graph, seed: &Barrier) -> Vec<VertexSet> {
    let members = seed.members.to_vec();
    let parts = &seed.odd_parts;
    let k = members.len();
    if k != parts.len() {
        return Vec::new();
    }
    let mut adj = vec![vec![false; k]; k];
    for (i, &b) in members.iter().enumerate() {
        let nb = g.neighbors(b);
        for (j, p) in parts.iter().enumerate() {
            adj[i][j] = !nb.is_disjoint(p);
        }
    }
    let Some(mate) = bipartite_perfect_matching(&adj) else {
        return Vec::new();
    };
    // node i = (members[i], parts[mate[i]]); arc i -> j when members[i] sees parts[mate[j]]
    let arc = |i: usize, j: usize| i != j && adj[i][mate[j]];
    let mut reach = vec![vec![false; k]; k];
    for s in 0..k {
        reach[s][s] = true;
        let mut stack = vec![s];
        while let Some(i) = stack.pop() {
            for j in 0..k {
                if arc(i, j) && !reach[s][j] {
                    reach[s][j] = true;
                    stack.push(j);
                }
            }
        }
    }
    let mut seen = vec![false; k];
    let mut out = Vec::new();
    for s in 0..k {
        if seen[s] {
            continue;
        }
        let block: Vec<usize> = (0..k).filter(|&j| reach[s][j] && reach[j][s]).collect();
        for &j in &block {
            seen[j] = true;
        }
        let is_source = (0..k)
            .filter(|j| !block.contains(j))
            .all(|j| block.iter().all(|&i| !arc(j, i)));
        if is_source {
            out.push(block.iter().map(|&i| members[i]).collect::<VertexSet>());
        }
    }
    out.sort();
    out
}

/// Kuhn's augmenting paths on a dense bipartite adjacency matrix.
fn bipartite_perfect_matching(adj: &[Vec<bool>]) -> Option<Vec<usize>> {
    let k = adj.len();
    let mut owner = vec![usize::MAX; k];
    fn augment(i: usize, adj: &[Vec<bool>], owner: &mut [usize], seen: &mut [bool]) -> bool {
        for j in 0..adj.len() {
            if adj[i][j] && !seen[j] {
                seen[j] = true;
                if owner[j] == usize::MAX || augment(owner[j], adj, owner, seen) {
                    owner[j] = i;
                    return true;
                }
            }
        }
        false
    }
    for i in 0..k {
        let mut seen = vec![false; k];
        if !augment(i, adj, &mut owner, &mut seen) {
            return None;
        }
    }
    let mut mate = vec![0; k];
    for (j, &i) in owner.iter().enumerate() {
        mate[i] = j;
    }
    Some(mate)
}

fn exhaustive_dm(g: &Graph, x: &VertexSet) -> Result<Option<ShoreDmBarrier>> {
    let shores = shore_order(g, x);
    for s in &shores {
        if s.len() > SUBSET_SCAN_LIMIT {
            return Err(Error::LimitExceeded {
                what: "exhaustive DM-barrier search",
                size: s.len(),
                limit: SUBSET_SCAN_LIMIT,
            });
        }
    }
    let max = shores.iter().map(VertexSet::len).max().unwrap_or(0);
    for size in 1..=max {
        for shore in &shores {
            let mut found = None;
            let mut failure = None;
            let _ = for_each_subset_of_size(&shore.to_vec(), size, |b| {
                match verify_in_shore(g, b, shore) {
                    Ok(Some(hit)) => {
                        found = Some(hit);
                        ControlFlow::Break(())
                    }
                    Ok(None) => ControlFlow::Continue(()),
                    Err(e) => {
                        failure = Some(e);
                        ControlFlow::Break(())
                    }
                }
            });
            if let Some(e) = failure {
                return Err(e);
            }
            if found.is_some() {
                return Ok(found);
            }
        }
    }
    Ok(None)
}

/// Visit the `size`-subsets of `items` in lexicographic order.
pub(crate) fn for_each_subset_of_size<F>(items: &[Vertex], size: usize, mut f: F) -> ControlFlow<()>
where
    F: FnMut(&VertexSet) -> ControlFlow<()>,
{
    let n = items.len();
    if size > n {
        return ControlFlow::Continue(());
    }
    let mut idx: Vec<usize> = (0..size).collect();
    loop {
        let set: VertexSet = idx.iter().map(|&i| items[i]).collect();
        f(&set)?;
        let mut i = size;
        loop {
            if i == 0 {
                return ControlFlow::Continue(());
            }
            i -= 1;
            if idx[i] != i + n - size {
                break;
            }
            if i == 0 {
                return ControlFlow::Continue(());
            }
        }
        if idx[i] == i + n - size {
            return ControlFlow::Continue(());
        }
        idx[i] += 1;
        for j in i + 1..size {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Nontrivial barriers that are proper subsets of `shore`, ordered by size
/// and then lexicographically.
pub fn nontrivial_barriers_within(g: &Graph, shore: &VertexSet) -> Result<Vec<Barrier>> {
    g.check_subset(shore)?;
    if shore.len() > SUBSET_SCAN_LIMIT {
        return Err(Error::LimitExceeded {
            what: "barrier scan",
            size: shore.len(),
            limit: SUBSET_SCAN_LIMIT,
        });
    }
    let items = shore.to_vec();
    let mut out = Vec::new();
    for size in 2..shore.len() {
        let _ = for_each_subset_of_size(&items, size, |b| {
            if let Some(bar) = barrier_unchecked(g, b) {
                out.push(bar);
            }
            ControlFlow::Continue(())
        });
    }
    Ok(out)
}

/// Every barrier of `g` (nonempty proper subsets), by size then lexicographic.
pub fn all_barriers(g: &Graph) -> Result<Vec<Barrier>> {
    if g.vertex_count() > SUBSET_SCAN_LIMIT {
        return Err(Error::LimitExceeded {
            what: "barrier enumeration",
            size: g.vertex_count(),
            limit: SUBSET_SCAN_LIMIT,
        });
    }
    let items = g.vertices().to_vec();
    let mut out = Vec::new();
    for size in 1..items.len() {
        let _ = for_each_subset_of_size(&items, size, |b| {
            if let Some(bar) = barrier_unchecked(g, b) {
                out.push(bar);
            }
            ControlFlow::Continue(())
        });
    }
    Ok(out)
}

/// Lift a barrier of `g/(Ȳ -> label)` back to `g`, where `Y` is an odd
/// component of `g - b`.
///
/// If `label ∈ b'` the result is `b ∪ (b' - label)`; otherwise `b'` itself.
pub fn lift_barrier_over_odd_component(
    g: &Graph,
    b: &Barrier,
    y: &VertexSet,
    label: Vertex,
    b_prime: &VertexSet,
) -> Result<Barrier> {
    if barrier_unchecked(g, &b.members).as_ref() != Some(b) {
        return Err(Error::precondition(format!(
            "{} is not a barrier of g",
            b.members
        )));
    }
    if !b.odd_parts.contains(y) {
        return Err(Error::precondition(format!(
            "{y} is not an odd component of g - B"
        )));
    }
    if !is_matching_covered(g) {
        return Err(Error::precondition("g is not matching covered"));
    }
    let y_bar = g.vertex_set().difference(y);
    let contracted = contract(g, &y_bar, label)?;
    contracted.check_subset(b_prime)?;
    let inner = is_barrier(&contracted, b_prime)?
        .ok_or_else(|| Error::precondition(format!("{b_prime} is not a barrier of g/Ȳ")))?;

    let lifted = if b_prime.contains(label) {
        b.members.union(&b_prime.without(label))
    } else {
        b_prime.clone()
    };
    let out = barrier_unchecked(g, &lifted)
        .ok_or_else(|| Error::internal(format!("lifted set {lifted} is not a barrier")))?;
    if b_prime.contains(label) {
        if let Some(p) = inner.odd_parts.iter().find(|p| !out.odd_parts.contains(p)) {
            return Err(Error::internal(format!(
                "odd component {p} of g/Ȳ - B' is not a component after lifting"
            )));
        }
    }
    Ok(out)
}

/// Lift a barrier of `g/(Ȳ -> label)` back to `g`, where `∂(Y)` is a
/// 2-separation cut of `s` with `u ∈ Y` and `v ∈ Ȳ`.
///
/// If `label ∈ b` the result is `(b - label) + v`; otherwise `b` itself.
pub fn lift_barrier_over_2sep(
    g: &Graph,
    s: &TwoSeparation,
    y: &VertexSet,
    label: Vertex,
    b: &VertexSet,
) -> Result<Barrier> {
    let d = boundary(g, y)?;
    if !two_separation_cuts(g, s)?.contains(&d) {
        return Err(Error::precondition(format!(
            "∂({y}) is not a cut of this 2-separation"
        )));
    }
    let (a, c) = s.pair;
    let v = match (y.contains(a), y.contains(c)) {
        (true, false) => c,
        (false, true) => a,
        _ => {
            return Err(Error::precondition(
                "shore must hold exactly one vertex of the pair",
            ))
        }
    };
    let y_bar = g.vertex_set().difference(y);
    let contracted = contract(g, &y_bar, label)?;
    contracted.check_subset(b)?;
    if is_barrier(&contracted, b)?.is_none() {
        return Err(Error::precondition(format!("{b} is not a barrier of g/Ȳ")));
    }
    let lifted = if b.contains(label) {
        b.without(label).with(v)
    } else {
        b.clone()
    };
    barrier_unchecked(g, &lifted)
        .ok_or_else(|| Error::internal(format!("lifted set {lifted} is not a barrier")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::is_2connected;

    fn cycle(n: u32) -> Graph {
        let edges: Vec<(u32, u32)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::new(n, &edges).unwrap()
    }

    fn k4() -> Graph {
        Graph::new(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap()
    }

    fn double_k4() -> Graph {
        // u=0, v=1, a=2, b=3, c=4, d=5
        Graph::new(
            6,
            &[
                (0, 1),
                (0, 2),
                (0, 3),
                (1, 2),
                (1, 3),
                (2, 3),
                (0, 4),
                (0, 5),
                (1, 4),
                (1, 5),
                (4, 5),
            ],
        )
        .unwrap()
    }

    fn vs(ids: &[u32]) -> VertexSet {
        VertexSet::of(ids.iter().copied())
    }

    fn is_bipartite(g: &Graph) -> bool {
        let mut color = std::collections::BTreeMap::new();
        for start in g.vertices() {
            if color.contains_key(start) {
                continue;
            }
            color.insert(*start, 0);
            let mut stack = vec![*start];
            while let Some(x) = stack.pop() {
                for y in g.neighbors(x).iter() {
                    match color.get(&y) {
                        Some(&c) if c == color[&x] => return false,
                        Some(_) => {}
                        None => {
                            color.insert(y, 1 - color[&x]);
                            stack.push(y);
                        }
                    }
                }
            }
        }
        true
    }

    #[test]
    fn barrier_examples() {
        let g = cycle(6);
        let b = is_barrier(&g, &vs(&[1, 5])).unwrap().unwrap();
        assert_eq!(b.odd_parts, vec![vs(&[0]), vs(&[2, 3, 4])]);
        assert!(is_barrier(&g, &vs(&[2, 5])).unwrap().is_none());
        let b = is_barrier(&g, &vs(&[1, 3, 5])).unwrap().unwrap();
        assert_eq!(b.odd_parts, vec![vs(&[0]), vs(&[2]), vs(&[4])]);
        assert!(is_barrier(&g, &VertexSet::new()).is_err());
    }

    #[test]
    fn barrier_cut_examples() {
        let g = cycle(6);
        let b = is_barrier(&g, &vs(&[1, 5])).unwrap().unwrap();
        let cuts = barrier_cuts(&g, &b).unwrap();
        assert!(cuts[0].is_trivial());
        assert!(!cuts[1].is_trivial());
        assert_eq!(cuts[1].shore, vs(&[0, 1, 5]));

        let b = is_barrier(&g, &vs(&[1, 3, 5])).unwrap().unwrap();
        assert!(barrier_cuts(&g, &b).unwrap().iter().all(Cut::is_trivial));

        let b = is_barrier(&k4(), &vs(&[0])).unwrap().unwrap();
        let cuts = barrier_cuts(&k4(), &b).unwrap();
        assert_eq!(cuts, vec![boundary(&k4(), &vs(&[0])).unwrap()]);
    }

    #[test]
    fn two_separations_of_c6() {
        let g = cycle(6);
        let seps = find_2separations(&g);
        let want = TwoSeparation::new(Vertex(1), Vertex(4), vs(&[1, 2, 3, 4]), vs(&[4, 5, 0, 1]));
        assert!(seps.contains(&want));
        // opposite pairs only: {0,3}, {1,4}, {2,5}
        let pairs: BTreeSet<(u32, u32)> = seps.iter().map(|s| (s.pair.0 .0, s.pair.1 .0)).collect();
        assert_eq!(pairs, [(0, 3), (1, 4), (2, 5)].into_iter().collect());
        for s in &seps {
            assert!(s.is_valid_in(&g));
        }
        let cuts = two_separation_cuts(&g, &want).unwrap();
        assert!(cuts.contains(&boundary(&g, &vs(&[1, 2, 3])).unwrap()));
        assert!(cuts.contains(&boundary(&g, &vs(&[2, 3, 4])).unwrap()));
        assert_eq!(cuts.len(), 2);
    }

    #[test]
    fn two_separations_of_k4_and_double_k4() {
        assert!(find_2separations(&k4()).is_empty());
        let g = double_k4();
        let seps = find_2separations(&g);
        assert_eq!(seps.len(), 1);
        assert_eq!(seps[0].pair, (Vertex(0), Vertex(1)));
        assert_eq!(seps[0].side1, vs(&[0, 1, 2, 3]));
        assert_eq!(seps[0].side2, vs(&[0, 1, 4, 5]));
        let cuts = two_separation_cuts(&g, &seps[0]).unwrap();
        assert!(cuts.contains(&boundary(&g, &vs(&[2, 3, 0])).unwrap()));
        assert!(cuts.iter().all(|c| !c.is_trivial()));
    }

    #[test]
    fn degenerate_two_separation_cut_is_trivial() {
        // C4: pair {0,2}, sides {0,1,2} are odd so no 2-separation; use a
        // theta-like graph where a side minus a pair vertex is a singleton.
        let g = Graph::new(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let s = TwoSeparation::new(Vertex(0), Vertex(1), vs(&[0, 1]), vs(&[0, 1, 2, 3]));
        assert!(!s.is_valid_in(&g));
        assert!(two_separation_cuts(&g, &s).is_err());
    }

    #[test]
    fn witnesses_match_enumeration() {
        let g = cycle(6);
        let c = boundary(&g, &vs(&[1, 2, 3])).unwrap();
        let w = two_separation_witnesses(&g, &c);
        assert!(!w.is_empty());
        for s in &w {
            assert!(two_separation_cuts(&g, s).unwrap().contains(&c));
        }
    }

    #[test]
    fn core_examples() {
        let g = cycle(6);
        let b = is_barrier(&g, &vs(&[1, 5])).unwrap().unwrap();
        let h = core(&g, &b).unwrap();
        assert_eq!(h.vertex_count(), 4);
        assert_eq!(h.edge_count(), 4);
        assert!(is_2connected(&h) && is_bipartite(&h));

        let b = is_barrier(&g, &vs(&[1, 3, 5])).unwrap().unwrap();
        let h = core(&g, &b).unwrap();
        assert_eq!((h.vertex_count(), h.edge_count()), (6, 6));
        assert!(is_matching_covered(&h) && is_bipartite(&h));

        let b = is_barrier(&k4(), &vs(&[0])).unwrap().unwrap();
        let h = core(&k4(), &b).unwrap();
        assert_eq!((h.vertex_count(), h.edge_count()), (2, 3));
        assert!(is_matching_covered(&h));
    }

    #[test]
    fn dm_barrier_examples() {
        let g = cycle(6);
        let b = is_barrier(&g, &vs(&[1, 3, 5])).unwrap().unwrap();
        assert!(is_dm_barrier(&g, &b).unwrap().is_some());
        let b = is_barrier(&g, &vs(&[1, 5])).unwrap().unwrap();
        assert!(is_dm_barrier(&g, &b).unwrap().is_none());
        let b = is_barrier(&k4(), &vs(&[0])).unwrap().unwrap();
        assert!(is_dm_barrier(&k4(), &b).unwrap().is_some());
    }

    #[test]
    fn dm_barrier_on_path_from_c6() {
        // C6 - 2 - 3 is the path 4-5-0-1; shore {0,1} has the inadmissible cut edge 5-0
        let g = cycle(6).without_vertices(&vs(&[2, 3]));
        let x = vs(&[0, 1]);
        for strategy in [DmStrategy::Constructive, DmStrategy::Exhaustive] {
            let found = find_dm_barrier_with(&g, &x, strategy).unwrap();
            let b = &found.dm.barrier;
            assert!(b.members.is_subset(&found.shore));
            assert!(b.odd_parts.iter().all(|p| p.is_subset(&found.shore)));
            assert!(is_dm_barrier(&g, b).unwrap().is_some());
        }
    }

    #[test]
    fn dm_preconditions() {
        let chord =
            Graph::new(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0), (0, 2)]).unwrap();
        assert!(matches!(
            find_dm_barrier(&chord, &vs(&[0, 1, 2])),
            Err(Error::Precondition(_))
        ));
        let g = cycle(6).without_vertices(&vs(&[2, 3]));
        assert!(matches!(
            find_dm_barrier(&g, &vs(&[0, 4])),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn lift_over_odd_component_examples() {
        let g = cycle(6);
        let b = is_barrier(&g, &vs(&[1, 5])).unwrap().unwrap();
        let y = vs(&[2, 3, 4]);
        let label = Vertex(6);
        let lifted = lift_barrier_over_odd_component(&g, &b, &y, label, &vs(&[3, 6])).unwrap();
        assert_eq!(lifted.members, vs(&[1, 3, 5]));
        assert_eq!(lifted.odd_parts, vec![vs(&[0]), vs(&[2]), vs(&[4])]);

        let lifted = lift_barrier_over_odd_component(&g, &b, &y, label, &vs(&[3])).unwrap();
        assert_eq!(lifted.members, vs(&[3]));

        let err = lift_barrier_over_odd_component(&g, &b, &y, label, &vs(&[2, 3]));
        assert!(matches!(err, Err(Error::Precondition(_))));
    }

    #[test]
    fn lift_over_2sep_examples() {
        let g = cycle(6);
        let s = TwoSeparation::new(Vertex(1), Vertex(4), vs(&[1, 2, 3, 4]), vs(&[4, 5, 0, 1]));
        let y = vs(&[1, 2, 3]);
        let label = Vertex(6);
        let lifted = lift_barrier_over_2sep(&g, &s, &y, label, &vs(&[2, 6])).unwrap();
        assert_eq!(lifted.members, vs(&[2, 4]));
        assert_eq!(lifted.odd_parts, vec![vs(&[0, 1, 5]), vs(&[3])]);

        let lifted = lift_barrier_over_2sep(&g, &s, &y, label, &vs(&[2])).unwrap();
        assert_eq!(lifted.members, vs(&[2]));

        assert!(lift_barrier_over_2sep(&g, &s, &y, label, &vs(&[4])).is_err());
    }

    #[test]
    fn subset_walk_is_lexicographic() {
        let items: Vec<Vertex> = (0..4).map(Vertex).collect();
        let mut seen = Vec::new();
        let _ = for_each_subset_of_size(&items, 2, |s| {
            seen.push(s.ids());
            ControlFlow::Continue(())
        });
        assert_eq!(
            seen,
            vec![
                vec![0, 1],
                vec![0, 2],
                vec![0, 3],
                vec![1, 2],
                vec![1, 3],
                vec![2, 3]
            ]
        );
        let mut count = 0;
        let _ = for_each_subset_of_size(&items, 4, |_| {
            count += 1;
            ControlFlow::Continue(())
        });
        assert_eq!(count, 1);
    }
}
