//! Constructive search for ELP-cuts that do not cross a given tight cut, and
//! the contraction sequence reducing a tight cut to a 2-separation cut.
//!
//! Every witness built here is re-verified before it is returned; a failed
//! re-check surfaces as [`Error::Internal`].

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::certificate::{verify_certificate, Certificate, ElpWitness, Step};
use crate::error::{Error, Result};
use crate::graph::{
    boundary, components_without, contract, crosses, cut_vertices, is_2connected, Cut, EdgeId,
    Graph, Vertex, VertexSet,
};
use crate::matching::is_matching_covered;
use crate::structure::{
    find_dm_barrier, is_barrier, nontrivial_barriers_within, two_separation_cuts,
    two_separation_witnesses, Barrier, TwoSeparation,
};
use crate::tightcuts::{check_cut, classify_with_tightness, TightnessOracle};

/// Proof branches of the construction, counted by [`Trace`].
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Branch {
    /// Both endpoints see only each other across the cut.
    EdgeCase1,
    /// DM-barrier of `G - R` on the `X - u` side.
    EdgeCase2ShoreX,
    /// `u` in an even component of `G - R - B''`.
    EdgeSubcase21,
    /// `u` in an odd component, `B''` nontrivial.
    EdgeSubcase22Barrier,
    /// `u` in an odd component, `B'' = {z}`: 2-separation `{u, z}`.
    EdgeSubcase22TwoSep,
    /// The 2-separation cut above is the input cut itself.
    EdgeRemark,
    /// Some cut edge leaves both shores connected after removing its ends.
    NoncrossingGoodEdge,
    /// No such edge; barrier pulled back from the contraction of `F2`.
    NoncrossingCase1,
    /// No such edge; 2-separation pulled back from the contraction of `F2`.
    NoncrossingCase2,
    /// One 2-separation contraction in the final phase.
    TwoSepStep,
    /// One minimal barrier-cut contraction.
    BarrierStep,
}

impl Branch {
    pub const ALL: [Branch; 11] = [
        Branch::EdgeCase1,
        Branch::EdgeCase2ShoreX,
        Branch::EdgeSubcase21,
        Branch::EdgeSubcase22Barrier,
        Branch::EdgeSubcase22TwoSep,
        Branch::EdgeRemark,
        Branch::NoncrossingGoodEdge,
        Branch::NoncrossingCase1,
        Branch::NoncrossingCase2,
        Branch::TwoSepStep,
        Branch::BarrierStep,
    ];
}

/// Branch hit counts.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Trace {
    pub hits: BTreeMap<Branch, usize>,
    /// Decompositions that contracted a second minimal barrier cut on the
    /// same side of the target.
    pub repeated_barrier_side: usize,
}

impl Trace {
    pub fn record(&mut self, b: Branch) {
        *self.hits.entry(b).or_insert(0) += 1;
    }

    pub fn count(&self, b: Branch) -> usize {
        self.hits.get(&b).copied().unwrap_or(0)
    }

    pub fn merge(&mut self, other: &Trace) {
        for (&b, &n) in &other.hits {
            *self.hits.entry(b).or_insert(0) += n;
        }
        self.repeated_barrier_side += other.repeated_barrier_side;
    }

    pub fn missing(&self) -> Vec<Branch> {
        Branch::ALL
            .into_iter()
            .filter(|&b| self.count(b) == 0)
            .collect()
    }
}

/// An ELP-cut found near a tight cut `C = ∂(X)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ElpFinding {
    /// A nontrivial barrier that is a proper subset of the shore `inside`.
    Barrier { barrier: Barrier, inside: VertexSet },
    /// A nontrivial 2-separation cut that does not cross `C`.
    TwoSep { cut: Cut, separation: TwoSeparation },
}

impl ElpFinding {
    /// The ELP-cut carried by the finding. For a barrier inside one shore it
    /// is `∂(Y)`, `Y` the odd component holding the other shore.
    pub fn derived_cut(&self, g: &Graph, c: &Cut) -> Result<Cut> {
        match self {
            ElpFinding::TwoSep { cut, .. } => Ok(cut.clone()),
            ElpFinding::Barrier { barrier, inside } => {
                let other = c.other_shore(inside);
                let anchor = other
                    .first()
                    .ok_or_else(|| Error::internal("empty shore"))?;
                let y = barrier
                    .part_containing(anchor)
                    .ok_or_else(|| Error::internal("opposite shore is not in an odd component"))?;
                boundary(g, y)
            }
        }
    }
}

/// Checks a finding against its postcondition. `Err` carries the reason.
pub fn check_finding(g: &Graph, c: &Cut, f: &ElpFinding) -> std::result::Result<(), String> {
    let derived = f.derived_cut(g, c).map_err(|e| e.to_string())?;
    match f {
        ElpFinding::Barrier { barrier, inside } => {
            if !c.has_shore(inside) {
                return Err(format!("{inside} is not a shore of the cut"));
            }
            if barrier.is_trivial() || !barrier.members.is_proper_subset(inside) {
                return Err(format!(
                    "{} is not a nontrivial proper subset of {inside}",
                    barrier.members
                ));
            }
            match is_barrier(g, &barrier.members) {
                Ok(Some(b)) if b == *barrier => {}
                _ => return Err(format!("{} is not a barrier", barrier.members)),
            }
        }
        ElpFinding::TwoSep { cut, separation } => {
            if !separation.is_valid_in(g) {
                return Err("invalid 2-separation".into());
            }
            if !two_separation_cuts(g, separation)
                .map_err(|e| e.to_string())?
                .contains(cut)
            {
                return Err("cut does not arise from the 2-separation".into());
            }
        }
    }
    if derived.is_trivial() {
        return Err("derived cut is trivial".into());
    }
    if crosses(g, &derived, c).map_err(|e| e.to_string())? {
        return Err("derived cut crosses the input cut".into());
    }
    Ok(())
}

fn verified(g: &Graph, c: &Cut, f: ElpFinding, step: &str) -> Result<ElpFinding> {
    match check_finding(g, c, &f) {
        Ok(()) => Ok(f),
        Err(why) => Err(Error::internal(format!("{step}: {why}"))),
    }
}

fn require_nontrivial_tight(g: &Graph, c: &Cut) -> Result<()> {
    check_cut(g, c)?;
    if !is_matching_covered(g) {
        return Err(Error::precondition("graph is not matching covered"));
    }
    if c.is_trivial() {
        return Err(Error::precondition("cut is trivial"));
    }
    if !TightnessOracle::new(g)?.is_tight(c) {
        return Err(Error::precondition("not a tight cut"));
    }
    Ok(())
}

/// ELP-cut from a cut edge `e = uv` whose removal of ends leaves both shores
/// connected.
pub fn elp_from_edge(g: &Graph, c: &Cut, e: EdgeId) -> Result<ElpFinding> {
    elp_from_edge_traced(g, c, e, &mut Trace::default())
}

pub fn elp_from_edge_traced(
    g: &Graph,
    c: &Cut,
    e: EdgeId,
    trace: &mut Trace,
) -> Result<ElpFinding> {
    check_cut(g, c)?;
    if !c.boundary.contains(&e) {
        return Err(Error::precondition(format!("edge {e} is not in the cut")));
    }
    require_nontrivial_tight(g, c)?;
    let edge = g.edge(e).ok_or(Error::UnknownEdge(e))?;
    let x = &c.shore;
    let (u, v) = if x.contains(edge.ends.0) {
        edge.ends
    } else {
        (edge.ends.1, edge.ends.0)
    };
    if !g.is_connected_on(&x.without(u)) || !g.is_connected_on(&c.complement.without(v)) {
        return Err(Error::precondition(format!(
            "removing the ends of {e} disconnects a shore"
        )));
    }
    let f = edge_local(g, x, u, v, trace)?;
    verified(g, c, f, "edge-local construction")
}

/// The edge-local construction for `C = ∂(x)` and a cut edge `uv`, `u ∈ x`.
fn edge_local(
    g: &Graph,
    x: &VertexSet,
    u: Vertex,
    v: Vertex,
    trace: &mut Trace,
) -> Result<ElpFinding> {
    let xb = g.vertex_set().difference(x);
    let nu = g.neighbors(u).intersection(&xb);
    let nv = g.neighbors(v).intersection(x);

    if nu.len() == 1 && nv.len() == 1 {
        trace.record(Branch::EdgeCase1);
        let pair: VertexSet = [u, v].into_iter().collect();
        let g1 = g.without_vertices(&pair);
        let found = find_dm_barrier(&g1, &x.without(u))?;
        let (b, inside) = if found.shore == x.without(u) {
            (found.dm.barrier.members.with(u), x.clone())
        } else {
            (found.dm.barrier.members.with(v), xb.clone())
        };
        return barrier_finding(g, b, inside, "edge case 1");
    }

    // Case 2, oriented so that u has at least two neighbours across.
    let (x, xb, u, v) = if nu.len() >= 2 {
        (x.clone(), xb, u, v)
    } else {
        (xb, x.clone(), v, u)
    };
    let _ = v;
    let r: std::collections::BTreeSet<EdgeId> = g
        .edges()
        .iter()
        .filter(|e| e.touches(u) && x.contains(e.other(u)))
        .map(|e| e.id)
        .collect();
    let g2 = g.without_edges(&r);
    let x_minus_u = x.without(u);
    let found = find_dm_barrier(&g2, &xb.with(u))?;
    let b2 = found.dm.barrier.members.clone();

    if found.shore == x_minus_u {
        trace.record(Branch::EdgeCase2ShoreX);
        return barrier_finding(g, b2.with(u), x, "edge case 2, barrier beside u");
    }
    if b2.contains(u) {
        return Err(Error::internal("DM-barrier of G - R contains u"));
    }
    let parts = components_without(&g2, &b2);
    let home = parts
        .iter()
        .find(|p| p.contains(u))
        .ok_or_else(|| Error::internal("u lies in no component"))?;

    // Never taken for matching covered `g`: the parts of `G - R - B''` are
    // parts of `G - B''`, so `B''` would be a barrier of `g` with an even
    // component. Kept so the trace reports it if that ever fails.
    if home.len() % 2 == 0 {
        trace.record(Branch::EdgeSubcase21);
        let w = home
            .intersection(&xb)
            .first()
            .ok_or_else(|| Error::internal("even component of u misses the far shore"))?;
        return barrier_finding(g, b2.with(w), xb, "edge subcase 2.1");
    }

    if b2.len() >= 2 {
        trace.record(Branch::EdgeSubcase22Barrier);
        return barrier_finding(g, b2, xb, "edge subcase 2.2");
    }

    trace.record(Branch::EdgeSubcase22TwoSep);
    let z = b2.first().expect("DM-barriers are nonempty");
    let side1 = home.with(z);
    let side2 = g.vertex_set().difference(home).with(u);
    let separation = TwoSeparation::new(u, z, side1, side2);
    let cut = boundary(g, &home.without(u).with(z))?;
    let remark = is_2connected(&g.induced(&xb.with(u)));
    if remark {
        trace.record(Branch::EdgeRemark);
        if !cut.has_shore(&xb) {
            return Err(Error::internal(
                "far shore plus u is 2-connected but the 2-separation cut is not C",
            ));
        }
    }
    Ok(ElpFinding::TwoSep { cut, separation })
}

fn barrier_finding(g: &Graph, b: VertexSet, inside: VertexSet, step: &str) -> Result<ElpFinding> {
    let barrier = is_barrier(g, &b)?
        .ok_or_else(|| Error::internal(format!("{step}: {b} is not a barrier")))?;
    Ok(ElpFinding::Barrier { barrier, inside })
}

/// A nontrivial barrier inside a shore of `c`, or a nontrivial 2-separation
/// cut not crossing `c`.
pub fn find_noncrossing_elp(g: &Graph, c: &Cut) -> Result<ElpFinding> {
    find_noncrossing_elp_traced(g, c, &mut Trace::default())
}

pub fn find_noncrossing_elp_traced(g: &Graph, c: &Cut, trace: &mut Trace) -> Result<ElpFinding> {
    require_nontrivial_tight(g, c)?;
    let f = noncrossing(g, c, trace)?;
    verified(g, c, f, "non-crossing construction")
}

fn noncrossing(g: &Graph, c: &Cut, trace: &mut Trace) -> Result<ElpFinding> {
    let x = &c.shore;
    let xb = &c.complement;
    for &id in &c.boundary {
        let e = g.edge(id).ok_or(Error::UnknownEdge(id))?;
        let (u, v) = if x.contains(e.ends.0) {
            e.ends
        } else {
            (e.ends.1, e.ends.0)
        };
        if g.is_connected_on(&x.without(u)) && g.is_connected_on(&xb.without(v)) {
            trace.record(Branch::NoncrossingGoodEdge);
            return edge_local(g, x, u, v, trace);
        }
    }

    let gx = g.induced(x);
    let cut_ends: VertexSet = c
        .boundary
        .iter()
        .filter_map(|&id| g.edge(id))
        .flat_map(|e| [e.ends.0, e.ends.1])
        .collect();
    let attached = cut_vertices(&gx).intersection(&cut_ends);
    let mut choice = None;
    'search: for v in attached.iter() {
        for f1 in components_without(&gx, &VertexSet::single(v)) {
            if f1.is_disjoint(&attached) {
                choice = Some((v, f1));
                break 'search;
            }
        }
    }
    let (v, f1) = choice.ok_or_else(|| Error::internal("no cut vertex with a clean component"))?;
    let f2 = x.difference(&f1);
    let s = g.fresh_vertex();
    let g2 = contract(g, &f2, s)?;
    let xb_cut = cut_vertices(&g.induced(xb));
    let w = g2
        .neighbors(s)
        .iter()
        .find(|&w| xb.contains(w) && !xb_cut.contains(w))
        .ok_or_else(|| Error::internal("contracted vertex has no admissible partner"))?;
    let inner_shore = f1.with(s);
    let inner = edge_local(&g2, &inner_shore, s, w, trace)?;

    match inner {
        ElpFinding::Barrier { barrier, inside } => {
            trace.record(Branch::NoncrossingCase1);
            if barrier.members.contains(s) {
                let b = barrier.members.without(s).with(v);
                barrier_finding(g, b, x.clone(), "pull back through s")
            } else {
                let shore = if inside == *xb { xb.clone() } else { x.clone() };
                barrier_finding(g, barrier.members, shore, "barrier avoiding s")
            }
        }
        ElpFinding::TwoSep { separation, .. } => {
            trace.record(Branch::NoncrossingCase2);
            let (a, b) = separation.pair;
            let z = match (a == s, b == s) {
                (true, false) => b,
                (false, true) => a,
                _ => return Err(Error::internal("2-separation of the contraction avoids s")),
            };
            let side1 = f1.with(v).with(z);
            let side2 = g.vertex_set().difference(&f1);
            let separation = TwoSeparation::new(v, z, side1, side2);
            let cut = boundary(g, &f1.with(v))?;
            Ok(ElpFinding::TwoSep { cut, separation })
        }
    }
}

/// The target cut tracked through a contraction sequence.
struct Target {
    x: VertexSet,
}

impl Target {
    fn cut(&self, g: &Graph) -> Result<Cut> {
        boundary(g, &self.x)
    }

    fn after_contraction(&mut self, shore: &VertexSet, label: Vertex) {
        if shore.is_subset(&self.x) {
            self.x = self.x.difference(shore).with(label);
        }
    }
}

/// Contraction sequence ending in a graph where `c` is a 2-separation cut,
/// or the one-graph certificate when `c` is already an ELP-cut.
pub fn decompose_tight_cut(g: &Graph, c: &Cut) -> Result<Certificate> {
    decompose_tight_cut_traced(g, c, &mut Trace::default())
}

pub fn decompose_tight_cut_traced(g: &Graph, c: &Cut, trace: &mut Trace) -> Result<Certificate> {
    require_nontrivial_tight(g, c)?;
    let start = classify_with_tightness(g, c, true)?;
    if start.elp {
        let cert = Certificate::new(g.clone(), c.shore.clone(), Vec::new(), g.clone(), start);
        return self_check(g, c, cert);
    }

    let mut cur = g.clone();
    let mut target = Target { x: c.shore.clone() };
    let mut steps = Vec::new();

    // Minimal barrier cuts, far shore first. A second contraction on the same
    // side is possible: minimality of Y in G does not survive into G/Ȳ.
    let mut sides_done = [0usize; 2];
    loop {
        let tc = target.cut(&cur)?;
        let far = tc.other_shore(&target.x).clone();
        let near = target.x.clone();
        let found = match minimal_barrier_cut(&cur, &near, &far)? {
            Some(hit) => Some((0, hit)),
            None => minimal_barrier_cut(&cur, &far, &near)?.map(|hit| (1, hit)),
        };
        let Some((side, (barrier, y))) = found else {
            break;
        };
        trace.record(Branch::BarrierStep);
        sides_done[side] += 1;
        if sides_done[side] == 2 {
            trace.repeated_barrier_side += 1;
        }
        let cut_i = boundary(&cur, &y)?;
        let contracted = cur.vertex_set().difference(&y);
        let label = cur.fresh_vertex();
        let next = contract(&cur, &contracted, label)?;
        steps.push(Step {
            graph: cur.clone(),
            cut: cut_i,
            witness: ElpWitness::Barrier {
                barrier: barrier.members,
                component: y,
            },
            contracted_shore: contracted.clone(),
            new_vertex: label,
        });
        target.after_contraction(&contracted, label);
        cur = next;
    }

    let limit = g.vertex_count();
    loop {
        let tc = target.cut(&cur)?;
        if !two_separation_witnesses(&cur, &tc).is_empty() {
            break;
        }
        if steps.len() > limit {
            return Err(Error::internal("contraction sequence does not terminate"));
        }
        let finding = find_noncrossing_elp_traced(&cur, &tc, trace)?;
        let ElpFinding::TwoSep { cut, separation } = finding else {
            return Err(Error::internal(
                "barrier inside a shore found after the barrier phase",
            ));
        };
        trace.record(Branch::TwoSepStep);
        let contracted = [&cut.shore, &cut.complement]
            .into_iter()
            .find(|s| s.is_subset(&tc.shore) || s.is_subset(&tc.complement))
            .cloned()
            .ok_or_else(|| Error::internal("2-separation cut has no shore inside a shore of C"))?;
        let label = cur.fresh_vertex();
        let next = contract(&cur, &contracted, label)?;
        steps.push(Step {
            graph: cur.clone(),
            cut,
            witness: ElpWitness::TwoSep {
                pair: separation.pair,
                side1: separation.side1,
                side2: separation.side2,
            },
            contracted_shore: contracted.clone(),
            new_vertex: label,
        });
        target.after_contraction(&contracted, label);
        cur = next;
    }

    let tc = target.cut(&cur)?;
    let tight = TightnessOracle::new(&cur)?.is_tight(&tc);
    let last = classify_with_tightness(&cur, &tc, tight)?;
    let cert = Certificate::new(g.clone(), c.shore.clone(), steps, cur, last);
    self_check(g, c, cert)
}

/// Among nontrivial barriers that are proper subsets of `far`, the one whose
/// odd component `Y ⊇ near` is smallest, ties broken by `Y` then `B`.
fn minimal_barrier_cut(
    g: &Graph,
    near: &VertexSet,
    far: &VertexSet,
) -> Result<Option<(Barrier, VertexSet)>> {
    let anchor = near.first().ok_or_else(|| Error::internal("empty shore"))?;
    let mut best: Option<(Barrier, VertexSet)> = None;
    for b in nontrivial_barriers_within(g, far)? {
        let y = b.part_containing(anchor).cloned().ok_or_else(|| {
            Error::internal(format!(
                "near shore not in an odd component of G - {}",
                b.members
            ))
        })?;
        let better = match &best {
            None => true,
            Some((bb, by)) => (y.len(), &y, &b.members) < (by.len(), by, &bb.members),
        };
        if better {
            best = Some((b, y));
        }
    }
    Ok(best)
}

fn self_check(g: &Graph, c: &Cut, cert: Certificate) -> Result<Certificate> {
    match verify_certificate(g, c, &cert) {
        Ok(()) => Ok(cert),
        Err(why) => Err(Error::internal(format!(
            "certificate failed verification: {why}"
        ))),
    }
}
