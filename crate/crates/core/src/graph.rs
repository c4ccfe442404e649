//! Loopless multigraphs with stable vertex and edge identities.
//!
//! Edge ids survive contraction: an edge of `G/(X->x)` carries the id of the
//! edge of `G` it came from. Vertex ids are opaque and totally ordered; every
//! iteration in this crate walks them in ascending order.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Vertex(pub u32);

#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct EdgeId(pub u32);

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e{}", self.0)
    }
}

/// An ordered set of vertices. Ordering between sets is lexicographic on the
/// sorted members, which is what cut canonicalization relies on.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexSet(BTreeSet<Vertex>);

impl VertexSet {
    pub fn new() -> Self {
        VertexSet(BTreeSet::new())
    }

    pub fn of<I: IntoIterator<Item = u32>>(ids: I) -> Self {
        ids.into_iter().map(Vertex).collect()
    }

    pub fn single(v: Vertex) -> Self {
        std::iter::once(v).collect()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.0.contains(&v)
    }

    pub fn iter(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.0.iter().copied()
    }

    pub fn first(&self) -> Option<Vertex> {
        self.0.first().copied()
    }

    pub fn insert(&mut self, v: Vertex) -> bool {
        self.0.insert(v)
    }

    pub fn remove(&mut self, v: Vertex) -> bool {
        self.0.remove(&v)
    }

    pub fn with(&self, v: Vertex) -> Self {
        let mut s = self.clone();
        s.insert(v);
        s
    }

    pub fn without(&self, v: Vertex) -> Self {
        let mut s = self.clone();
        s.remove(v);
        s
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn is_proper_subset(&self, other: &VertexSet) -> bool {
        self.len() < other.len() && self.is_subset(other)
    }

    pub fn is_disjoint(&self, other: &VertexSet) -> bool {
        self.0.is_disjoint(&other.0)
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        self.0.union(&other.0).copied().collect()
    }

    pub fn difference(&self, other: &VertexSet) -> VertexSet {
        self.0.difference(&other.0).copied().collect()
    }

    pub fn intersection(&self, other: &VertexSet) -> VertexSet {
        self.0.intersection(&other.0).copied().collect()
    }

    pub fn to_vec(&self) -> Vec<Vertex> {
        self.0.iter().copied().collect()
    }

    pub fn ids(&self) -> Vec<u32> {
        self.0.iter().map(|v| v.0).collect()
    }
}

impl FromIterator<Vertex> for VertexSet {
    fn from_iter<I: IntoIterator<Item = Vertex>>(iter: I) -> Self {
        VertexSet(iter.into_iter().collect())
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    pub id: EdgeId,
    /// Endpoints with `ends.0 < ends.1`.
    pub ends: (Vertex, Vertex),
}

impl Edge {
    pub fn other(&self, v: Vertex) -> Vertex {
        if self.ends.0 == v {
            self.ends.1
        } else {
            self.ends.0
        }
    }

    pub fn touches(&self, v: Vertex) -> bool {
        self.ends.0 == v || self.ends.1 == v
    }
}

/// A finite loopless multigraph.
///
/// `provenance` maps a contracted vertex to the set of original vertices it
/// stands for. Vertices without an entry represent themselves.
#[derive(Clone, Debug)]
pub struct Graph {
    vertices: Vec<Vertex>,
    edges: Vec<Edge>,
    adjacency: Vec<Vec<(usize, usize)>>,
    provenance: BTreeMap<Vertex, VertexSet>,
    next_vertex: u32,
}

/// Structural equality: same vertex ids and same edges with the same ids.
/// Provenance tags are bookkeeping and do not take part.
impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.vertices == other.vertices && self.edges == other.edges
    }
}

impl Eq for Graph {}

impl Graph {
    /// Vertices `0..n`, edge `i` joins `edges[i]`.
    pub fn new(n: u32, edges: &[(u32, u32)]) -> Result<Graph> {
        let edges = edges
            .iter()
            .enumerate()
            .map(|(i, &(u, v))| (EdgeId(i as u32), Vertex(u), Vertex(v)));
        Graph::from_parts((0..n).map(Vertex), edges)
    }

    pub fn from_parts<V, E>(vertices: V, edges: E) -> Result<Graph>
    where
        V: IntoIterator<Item = Vertex>,
        E: IntoIterator<Item = (EdgeId, Vertex, Vertex)>,
    {
        let mut vertices: Vec<Vertex> = vertices.into_iter().collect();
        vertices.sort_unstable();
        if vertices.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::precondition("duplicate vertex id"));
        }
        let mut list = Vec::new();
        for (id, a, b) in edges {
            if a == b {
                return Err(Error::precondition(format!(
                    "loop at vertex {a} (edge {id})"
                )));
            }
            for end in [a, b] {
                if vertices.binary_search(&end).is_err() {
                    return Err(Error::UnknownVertex(end));
                }
            }
            list.push(Edge {
                id,
                ends: (a.min(b), a.max(b)),
            });
        }
        list.sort_unstable_by_key(|e| e.id);
        if list.windows(2).any(|w| w[0].id == w[1].id) {
            return Err(Error::precondition("duplicate edge id"));
        }
        let next_vertex = vertices.last().map_or(0, |v| v.0 + 1);
        Ok(Graph::assemble(
            vertices,
            list,
            BTreeMap::new(),
            next_vertex,
        ))
    }

    fn assemble(
        vertices: Vec<Vertex>,
        edges: Vec<Edge>,
        provenance: BTreeMap<Vertex, VertexSet>,
        next_vertex: u32,
    ) -> Graph {
        let mut adjacency = vec![Vec::new(); vertices.len()];
        let pos = |v: Vertex| vertices.binary_search(&v).expect("endpoint present");
        for (k, e) in edges.iter().enumerate() {
            let (a, b) = (pos(e.ends.0), pos(e.ends.1));
            adjacency[a].push((b, k));
            adjacency[b].push((a, k));
        }
        Graph {
            vertices,
            edges,
            adjacency,
            provenance,
            next_vertex,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn vertex_set(&self) -> VertexSet {
        self.vertices.iter().copied().collect()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn has_vertex(&self, v: Vertex) -> bool {
        self.vertices.binary_search(&v).is_ok()
    }

    pub fn edge(&self, id: EdgeId) -> Option<&Edge> {
        self.edges
            .binary_search_by_key(&id, |e| e.id)
            .ok()
            .map(|k| &self.edges[k])
    }

    /// Distinct neighbours of `v`, ascending.
    pub fn neighbors(&self, v: Vertex) -> VertexSet {
        match self.index_of(v) {
            Some(i) => self.adjacency[i]
                .iter()
                .map(|&(j, _)| self.vertices[j])
                .collect(),
            None => VertexSet::new(),
        }
    }

    pub fn incident_edges(&self, v: Vertex) -> Vec<EdgeId> {
        let mut out: Vec<EdgeId> = match self.index_of(v) {
            Some(i) => self.adjacency[i]
                .iter()
                .map(|&(_, k)| self.edges[k].id)
                .collect(),
            None => Vec::new(),
        };
        out.sort_unstable();
        out
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.index_of(v).map_or(0, |i| self.adjacency[i].len())
    }

    /// Original vertices represented by `v`.
    pub fn origin(&self, v: Vertex) -> VertexSet {
        self.provenance
            .get(&v)
            .cloned()
            .unwrap_or_else(|| VertexSet::single(v))
    }

    pub fn provenance(&self) -> &BTreeMap<Vertex, VertexSet> {
        &self.provenance
    }

    /// An id never used by this graph or any graph it was contracted from.
    pub fn fresh_vertex(&self) -> Vertex {
        Vertex(self.next_vertex)
    }

    pub fn edges_between(&self, a: &VertexSet, b: &VertexSet) -> Vec<EdgeId> {
        self.edges
            .iter()
            .filter(|e| {
                (a.contains(e.ends.0) && b.contains(e.ends.1))
                    || (a.contains(e.ends.1) && b.contains(e.ends.0))
            })
            .map(|e| e.id)
            .collect()
    }

    pub(crate) fn index_of(&self, v: Vertex) -> Option<usize> {
        self.vertices.binary_search(&v).ok()
    }

    pub(crate) fn adjacency(&self) -> &[Vec<(usize, usize)>] {
        &self.adjacency
    }

    pub(crate) fn mask_of(&self, set: &VertexSet) -> Vec<bool> {
        let mut mask = vec![false; self.vertices.len()];
        for v in set.iter() {
            if let Some(i) = self.index_of(v) {
                mask[i] = true;
            }
        }
        mask
    }

    pub(crate) fn set_of_indices<I: IntoIterator<Item = usize>>(&self, idx: I) -> VertexSet {
        idx.into_iter().map(|i| self.vertices[i]).collect()
    }

    pub(crate) fn check_subset(&self, set: &VertexSet) -> Result<()> {
        match set.iter().find(|&v| !self.has_vertex(v)) {
            Some(v) => Err(Error::UnknownVertex(v)),
            None => Ok(()),
        }
    }

    /// `G[set]`, keeping ids.
    pub fn induced(&self, set: &VertexSet) -> Graph {
        let edges = self
            .edges
            .iter()
            .filter(|e| set.contains(e.ends.0) && set.contains(e.ends.1))
            .copied()
            .collect();
        let vertices = self
            .vertices
            .iter()
            .copied()
            .filter(|&v| set.contains(v))
            .collect();
        let provenance = self
            .provenance
            .iter()
            .filter(|(v, _)| set.contains(**v))
            .map(|(v, s)| (*v, s.clone()))
            .collect();
        Graph::assemble(vertices, edges, provenance, self.next_vertex)
    }

    /// `G - set`.
    pub fn without_vertices(&self, set: &VertexSet) -> Graph {
        let keep = self.vertex_set().difference(set);
        self.induced(&keep)
    }

    /// `G - ids`, keeping every vertex.
    pub fn without_edges(&self, ids: &BTreeSet<EdgeId>) -> Graph {
        let edges = self
            .edges
            .iter()
            .filter(|e| !ids.contains(&e.id))
            .copied()
            .collect();
        Graph::assemble(
            self.vertices.clone(),
            edges,
            self.provenance.clone(),
            self.next_vertex,
        )
    }

    /// Whether `G[set]` is connected. The empty set counts as disconnected.
    pub fn is_connected_on(&self, set: &VertexSet) -> bool {
        let mask = self.mask_of(set);
        let comps = components_masked(self, &mask);
        comps.len() == 1
    }
}

/// A cut `∂(X)`. The stored `shore` is the canonical one: the
/// lexicographically smaller of `X` and its complement, i.e. the shore that
/// holds the smallest vertex.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cut {
    pub shore: VertexSet,
    pub complement: VertexSet,
    pub boundary: BTreeSet<EdgeId>,
}

impl Cut {
    pub fn is_trivial(&self) -> bool {
        self.shore.len() == 1 || self.complement.len() == 1
    }

    /// Whether `set` is one of the two shores.
    pub fn has_shore(&self, set: &VertexSet) -> bool {
        &self.shore == set || &self.complement == set
    }

    /// The shore that contains `v`, followed by the other one.
    pub fn oriented_at(&self, v: Vertex) -> (&VertexSet, &VertexSet) {
        if self.shore.contains(v) {
            (&self.shore, &self.complement)
        } else {
            (&self.complement, &self.shore)
        }
    }

    pub fn other_shore(&self, shore: &VertexSet) -> &VertexSet {
        if &self.shore == shore {
            &self.complement
        } else {
            &self.shore
        }
    }

    fn host(&self) -> VertexSet {
        self.shore.union(&self.complement)
    }
}

/// `∂(x)` in `g`.
pub fn boundary(g: &Graph, x: &VertexSet) -> Result<Cut> {
    g.check_subset(x)?;
    if x.is_empty() {
        return Err(Error::InvalidShore("empty shore".into()));
    }
    if x.len() == g.vertex_count() {
        return Err(Error::InvalidShore("shore is the whole vertex set".into()));
    }
    let rest = g.vertex_set().difference(x);
    let boundary = g
        .edges()
        .iter()
        .filter(|e| x.contains(e.ends.0) != x.contains(e.ends.1))
        .map(|e| e.id)
        .collect();
    let (shore, complement) = if x.first() < rest.first() {
        (x.clone(), rest)
    } else {
        (rest, x.clone())
    };
    Ok(Cut {
        shore,
        complement,
        boundary,
    })
}

/// `g/(x -> label)`: shrink `x` to the single vertex `label`.
///
/// `label` may be a member of `x` (relabel in place) but must not name a
/// vertex outside `x`.
pub fn contract(g: &Graph, x: &VertexSet, label: Vertex) -> Result<Graph> {
    g.check_subset(x)?;
    if x.is_empty() {
        return Err(Error::InvalidShore("cannot contract an empty set".into()));
    }
    if x.len() == g.vertex_count() {
        return Err(Error::InvalidShore(
            "cannot contract the whole vertex set".into(),
        ));
    }
    if g.has_vertex(label) && !x.contains(label) {
        return Err(Error::InvalidShore(format!(
            "label {label} already names a vertex outside the contracted set"
        )));
    }
    let mut vertices: Vec<Vertex> = g
        .vertices()
        .iter()
        .copied()
        .filter(|&v| !x.contains(v))
        .collect();
    vertices.push(label);
    vertices.sort_unstable();

    let mut edges = Vec::with_capacity(g.edge_count());
    for e in g.edges() {
        let (a, b) = (x.contains(e.ends.0), x.contains(e.ends.1));
        let ends = match (a, b) {
            (true, true) => continue,
            (false, false) => e.ends,
            (true, false) => (label, e.ends.1),
            (false, true) => (e.ends.0, label),
        };
        edges.push(Edge {
            id: e.id,
            ends: (ends.0.min(ends.1), ends.0.max(ends.1)),
        });
    }

    let mut origin = VertexSet::new();
    for v in x.iter() {
        origin = origin.union(&g.origin(v));
    }
    let mut provenance: BTreeMap<Vertex, VertexSet> = g
        .provenance
        .iter()
        .filter(|(v, _)| !x.contains(**v))
        .map(|(v, s)| (*v, s.clone()))
        .collect();
    if origin != VertexSet::single(label) {
        provenance.insert(label, origin);
    }
    let next_vertex = g.next_vertex.max(label.0 + 1);
    Ok(Graph::assemble(vertices, edges, provenance, next_vertex))
}

/// Both `c`-contractions: `(g/X̄, g/X)` where `X` is the canonical shore.
/// Each contracted vertex gets the graph's fresh id.
pub fn cut_contractions(g: &Graph, c: &Cut) -> Result<(Graph, Graph)> {
    if c.is_trivial() {
        return Err(Error::InvalidShore(
            "contractions of a trivial cut are the graph itself".into(),
        ));
    }
    let label = g.fresh_vertex();
    let keep_shore = contract(g, &c.complement, label)?;
    let keep_complement = contract(g, &c.shore, label)?;
    Ok((keep_shore, keep_complement))
}

/// Components of `g` restricted to `active`, as lists of vertex indices.
/// Sorted by smallest member.
pub(crate) fn components_masked(g: &Graph, active: &[bool]) -> Vec<Vec<usize>> {
    let n = g.vertex_count();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    let adj = g.adjacency();
    for s in 0..n {
        if !active[s] || seen[s] {
            continue;
        }
        seen[s] = true;
        let mut comp = vec![s];
        let mut head = 0;
        while head < comp.len() {
            let x = comp[head];
            head += 1;
            for &(y, _) in &adj[x] {
                if active[y] && !seen[y] {
                    seen[y] = true;
                    comp.push(y);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

/// Connected components, ordered by smallest member.
pub fn components(g: &Graph) -> Vec<VertexSet> {
    let all = vec![true; g.vertex_count()];
    components_masked(g, &all)
        .into_iter()
        .map(|c| g.set_of_indices(c))
        .collect()
}

/// Components of `g - removed`, ordered by smallest member.
pub fn components_without(g: &Graph, removed: &VertexSet) -> Vec<VertexSet> {
    let mut active = vec![true; g.vertex_count()];
    for v in removed.iter() {
        if let Some(i) = g.index_of(v) {
            active[i] = false;
        }
    }
    components_masked(g, &active)
        .into_iter()
        .map(|c| g.set_of_indices(c))
        .collect()
}

/// Partition into (odd-order, even-order) parts, each keeping input order.
pub fn odd_even_split(parts: Vec<VertexSet>) -> (Vec<VertexSet>, Vec<VertexSet>) {
    parts.into_iter().partition(|p| p.len() % 2 == 1)
}

pub fn is_connected(g: &Graph) -> bool {
    g.vertex_count() > 0 && components(g).len() == 1
}

/// At least three vertices, connected, and no cut vertex.
pub fn is_2connected(g: &Graph) -> bool {
    g.vertex_count() >= 3 && is_connected(g) && cut_vertices(g).is_empty()
}

struct BlockSearch {
    blocks: Vec<VertexSet>,
    cut: BTreeSet<Vertex>,
}

/// Hopcroft–Tarjan over edge ids, so parallel edges are handled correctly.
fn block_search(g: &Graph) -> BlockSearch {
    let n = g.vertex_count();
    let adj = g.adjacency();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut time = 0usize;
    let mut edge_stack: Vec<usize> = Vec::new();
    let mut blocks: Vec<VertexSet> = Vec::new();
    let mut cut = BTreeSet::new();

    for root in 0..n {
        if disc[root] != usize::MAX {
            continue;
        }
        if adj[root].is_empty() {
            blocks.push(g.set_of_indices([root]));
            disc[root] = time;
            time += 1;
            continue;
        }
        // frame: (vertex, parent edge index, next adjacency position)
        let mut stack: Vec<(usize, usize, usize)> = vec![(root, usize::MAX, 0)];
        disc[root] = time;
        low[root] = time;
        time += 1;
        let mut root_children = 0;
        while let Some(top) = stack.last_mut() {
            let (x, pe) = (top.0, top.1);
            if top.2 < adj[x].len() {
                let (y, k) = adj[x][top.2];
                top.2 += 1;
                if k == pe {
                    continue;
                }
                if disc[y] == usize::MAX {
                    edge_stack.push(k);
                    disc[y] = time;
                    low[y] = time;
                    time += 1;
                    if x == root {
                        root_children += 1;
                    }
                    stack.push((y, k, 0));
                } else if disc[y] < disc[x] {
                    edge_stack.push(k);
                    low[x] = low[x].min(disc[y]);
                }
            } else {
                stack.pop();
                if let Some(&(p, _, _)) = stack.last() {
                    low[p] = low[p].min(low[x]);
                    if low[x] >= disc[p] {
                        if p != root {
                            cut.insert(g.vertices()[p]);
                        }
                        let mut block = VertexSet::new();
                        while let Some(k) = edge_stack.pop() {
                            let e = &g.edges()[k];
                            block.insert(e.ends.0);
                            block.insert(e.ends.1);
                            if k == pe {
                                break;
                            }
                        }
                        blocks.push(block);
                    }
                }
            }
        }
        if root_children >= 2 {
            cut.insert(g.vertices()[root]);
        }
    }
    blocks.sort();
    BlockSearch { blocks, cut }
}

pub fn cut_vertices(g: &Graph) -> VertexSet {
    block_search(g).cut.into_iter().collect()
}

/// Maximal 2-connected pieces plus bridges (as two-vertex blocks) and
/// isolated vertices, sorted.
pub fn blocks(g: &Graph) -> Vec<VertexSet> {
    block_search(g).blocks
}

/// Whether the two cuts cross: all four quadrants of their shores are
/// nonempty.
pub fn crosses(g: &Graph, c: &Cut, d: &Cut) -> Result<bool> {
    let host = g.vertex_set();
    if c.host() != host || d.host() != host {
        return Err(Error::ForeignCut);
    }
    Ok(quadrants_nonempty(
        &c.shore,
        &c.complement,
        &d.shore,
        &d.complement,
    ))
}

pub(crate) fn quadrants_nonempty(
    x: &VertexSet,
    xc: &VertexSet,
    y: &VertexSet,
    yc: &VertexSet,
) -> bool {
    !x.is_disjoint(y) && !x.is_disjoint(yc) && !xc.is_disjoint(y) && !xc.is_disjoint(yc)
}
