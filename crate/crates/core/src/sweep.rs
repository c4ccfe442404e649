//! Corpus-wide property checks.
//!
//! Each graph is checked independently on the rayon pool; results are
//! collected in corpus order and folded sequentially, so a report depends
//! only on the corpus.

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::certificate::verify_certificate;
use crate::decompose::{
    check_finding, decompose_tight_cut_traced, find_noncrossing_elp_traced, Branch, Trace,
};
use crate::error::{Error, Result};
use crate::graph::{
    boundary, components, crosses, cut_contractions, Cut, EdgeId, Graph, VertexSet,
};
use crate::instances::{enumerate_corpus, CorpusSpec};
use crate::io::write_edge_list;
use crate::matching::is_matching_covered;
use crate::structure::{
    all_barriers, find_dm_barrier_with, is_barrier, is_dm_barrier, lift_barrier_over_2sep,
    lift_barrier_over_odd_component, two_separation_cuts, two_separation_witnesses, DmStrategy,
    SUBSET_SCAN_LIMIT,
};
use crate::tightcuts::{classify_cut, TightnessOracle};

/// Lift scenarios tried per graph, to keep dense graphs from dominating.
pub const LIFTS_PER_GRAPH: usize = 48;

/// Non-ELP instances written by one harvesting run.
pub const HARVEST_LIMIT: usize = 20;

#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Property {
    /// A graph with a nontrivial tight cut has a verified nontrivial ELP-cut.
    ElpExistence,
    /// The non-crossing search returns a verified ELP-cut not crossing the input.
    Noncrossing,
    /// Non-ELP tight cuts get a verified certificate ending in a 2-separation cut.
    Decomposition,
    /// Cut-contractions are matching covered and keep tight cuts by edge id.
    Contraction,
    /// Lifted barriers are barriers.
    Lift,
    /// Both DM-barrier strategies return verified witnesses.
    DmAgreement,
    /// Every branch of the construction ran.
    BranchCoverage,
    /// A library call failed outright.
    Error,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    /// Corpus index, absent for run-level findings.
    pub instance: Option<usize>,
    pub property: Property,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counters {
    pub graphs: usize,
    pub graphs_with_tight_cut: usize,
    pub graphs_with_verified_elp: usize,
    pub tight_cut_pairs: usize,
    pub noncrossing_verified: usize,
    pub non_elp_pairs: usize,
    pub certificates_verified: usize,
    pub max_r: usize,
    pub contractions_checked: usize,
    pub transfer_checks: usize,
    pub lift_scenarios: usize,
    pub lifts_verified: usize,
    pub dm_instances: usize,
    pub dm_verified: usize,
}

impl Counters {
    fn add(&mut self, o: &Counters) {
        self.graphs += o.graphs;
        self.graphs_with_tight_cut += o.graphs_with_tight_cut;
        self.graphs_with_verified_elp += o.graphs_with_verified_elp;
        self.tight_cut_pairs += o.tight_cut_pairs;
        self.noncrossing_verified += o.noncrossing_verified;
        self.non_elp_pairs += o.non_elp_pairs;
        self.certificates_verified += o.certificates_verified;
        self.max_r = self.max_r.max(o.max_r);
        self.contractions_checked += o.contractions_checked;
        self.transfer_checks += o.transfer_checks;
        self.lift_scenarios += o.lift_scenarios;
        self.lifts_verified += o.lifts_verified;
        self.dm_instances += o.dm_instances;
        self.dm_verified += o.dm_verified;
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceResult {
    pub index: usize,
    pub n: usize,
    pub m: usize,
    pub tight_cuts: usize,
    pub non_elp: Vec<VertexSet>,
    pub violations: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct BranchCoverage {
    pub hits: Vec<(Branch, usize)>,
    pub missing: Vec<Branch>,
    /// Decompositions that needed a second barrier contraction on one side.
    pub repeated_barrier_side: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunReport {
    pub command: Vec<String>,
    pub corpus: Vec<CorpusSpec>,
    pub counters: Counters,
    pub branches: BranchCoverage,
    /// Graphs with at least one nontrivial tight cut or a violation.
    pub instances: Vec<InstanceResult>,
    pub violations: Vec<Violation>,
    pub harvested: Vec<PathBuf>,
    pub elapsed_ms: u128,
}

impl RunReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn violations_of(&self, p: Property) -> usize {
        self.violations.iter().filter(|v| v.property == p).count()
    }
}

#[derive(Clone, Debug, Default)]
pub struct SweepOptions {
    pub command: Vec<String>,
    /// Missing branches become a run-level violation.
    pub require_coverage: bool,
    pub harvest: Option<PathBuf>,
}

/// Sweep the union of several corpora. Instance indices run across the
/// concatenation.
pub fn run_sweep(specs: &[CorpusSpec], opts: &SweepOptions) -> Result<RunReport> {
    let start = Instant::now();
    let mut corpus = Vec::new();
    for spec in specs {
        corpus.extend(enumerate_corpus(spec)?);
    }
    let results: Vec<(InstanceResult, Counters, Trace, Vec<Violation>)> = corpus
        .par_iter()
        .enumerate()
        .map(|(i, g)| check_instance(i, g))
        .collect();

    let mut counters = Counters::default();
    let mut trace = Trace::default();
    let mut violations = Vec::new();
    let mut instances = Vec::new();
    for (inst, c, t, v) in results {
        counters.add(&c);
        trace.merge(&t);
        violations.extend(v);
        if inst.tight_cuts > 0 || inst.violations > 0 {
            instances.push(inst);
        }
    }

    let missing = trace.missing();
    if opts.require_coverage && !missing.is_empty() {
        violations.push(Violation {
            instance: None,
            property: Property::BranchCoverage,
            detail: format!("branches never executed: {missing:?}"),
        });
    }

    let harvested = match &opts.harvest {
        Some(dir) => harvest(dir, &corpus, &instances)?,
        None => Vec::new(),
    };

    Ok(RunReport {
        command: opts.command.clone(),
        corpus: specs.to_vec(),
        counters,
        branches: BranchCoverage {
            hits: Branch::ALL.iter().map(|&b| (b, trace.count(b))).collect(),
            missing,
            repeated_barrier_side: trace.repeated_barrier_side,
        },
        instances,
        violations,
        harvested,
        elapsed_ms: start.elapsed().as_millis(),
    })
}

fn harvest(dir: &Path, corpus: &[Graph], instances: &[InstanceResult]) -> Result<Vec<PathBuf>> {
    std::fs::create_dir_all(dir)?;
    let mut out = Vec::new();
    'outer: for inst in instances {
        for (k, shore) in inst.non_elp.iter().enumerate() {
            if out.len() == HARVEST_LIMIT {
                break 'outer;
            }
            let path = dir.join(format!("nonelp-{}-{k}.el", inst.index));
            let cut = shore
                .ids()
                .iter()
                .map(u32::to_string)
                .collect::<Vec<_>>()
                .join(",");
            let text = format!(
                "# non-ELP tight cut\n# cut {cut}\n{}",
                write_edge_list(&corpus[inst.index])
            );
            std::fs::write(&path, text)?;
            out.push(path);
        }
    }
    Ok(out)
}

struct Ctx {
    index: usize,
    counters: Counters,
    trace: Trace,
    violations: Vec<Violation>,
}

impl Ctx {
    fn fail(&mut self, property: Property, detail: impl Into<String>) {
        self.violations.push(Violation {
            instance: Some(self.index),
            property,
            detail: detail.into(),
        });
    }

    fn guard<T>(&mut self, what: &str, r: Result<T>) -> Option<T> {
        match r {
            Ok(v) => Some(v),
            Err(e) => {
                self.fail(Property::Error, format!("{what}: {e}"));
                None
            }
        }
    }
}

/// All property checks for one graph.
pub fn check_instance(
    index: usize,
    g: &Graph,
) -> (InstanceResult, Counters, Trace, Vec<Violation>) {
    let mut cx = Ctx {
        index,
        counters: Counters {
            graphs: 1,
            ..Counters::default()
        },
        trace: Trace::default(),
        violations: Vec::new(),
    };
    let mut non_elp = Vec::new();
    let tight = check_graph(g, &mut cx, &mut non_elp);
    let result = InstanceResult {
        index,
        n: g.vertex_count(),
        m: g.edge_count(),
        tight_cuts: tight,
        non_elp,
        violations: cx.violations.len(),
    };
    (result, cx.counters, cx.trace, cx.violations)
}

fn check_graph(g: &Graph, cx: &mut Ctx, non_elp: &mut Vec<VertexSet>) -> usize {
    let Some(oracle) = cx.guard("matching enumeration", TightnessOracle::new(g)) else {
        return 0;
    };
    let Some(all_tight) = cx.guard("tight cut enumeration", oracle.tight_cuts(false)) else {
        return 0;
    };
    let nontrivial: Vec<&Cut> = all_tight.iter().filter(|c| !c.is_trivial()).collect();
    if nontrivial.is_empty() {
        return 0;
    }
    cx.counters.graphs_with_tight_cut += 1;

    let mut elp_seen = false;
    let mut lifts = 0;
    for c in &nontrivial {
        cx.counters.tight_cut_pairs += 1;
        if check_noncrossing(g, c, cx) {
            elp_seen = true;
        }
        let Some(cl) = cx.guard("classify_cut", classify_cut(g, c)) else {
            continue;
        };
        if !cl.elp {
            non_elp.push(c.shore.clone());
            check_decomposition(g, c, cx);
        }
        check_contractions(g, c, &all_tight, cx);
        check_dm_case_one(g, c, cx);
        lifts += check_lifts(g, &cl, LIFTS_PER_GRAPH.saturating_sub(lifts), cx);
    }
    if elp_seen {
        cx.counters.graphs_with_verified_elp += 1;
    } else {
        cx.fail(
            Property::ElpExistence,
            "no verified nontrivial ELP-cut although a nontrivial tight cut exists",
        );
    }
    nontrivial.len()
}

/// Criterion-style check of one non-crossing search; true when the finding
/// re-verified.
fn check_noncrossing(g: &Graph, c: &Cut, cx: &mut Ctx) -> bool {
    let mut t = Trace::default();
    let found = find_noncrossing_elp_traced(g, c, &mut t);
    cx.trace.merge(&t);
    let Some(f) = cx.guard("find_noncrossing_elp", found) else {
        return false;
    };
    if let Err(why) = check_finding(g, c, &f) {
        cx.fail(Property::Noncrossing, format!("cut {}: {why}", c.shore));
        return false;
    }
    let Some(d) = cx.guard("derived cut", f.derived_cut(g, c)) else {
        return false;
    };
    let ok = match (crosses(g, &d, c), classify_cut(g, &d)) {
        (Ok(false), Ok(cl)) if cl.tight && cl.elp && !d.is_trivial() => true,
        (x, y) => {
            cx.fail(
                Property::Noncrossing,
                format!(
                    "cut {}: derived cut {} fails (crosses {:?}, class {:?})",
                    c.shore,
                    d.shore,
                    x.ok(),
                    y.ok().map(|c| (c.tight, c.elp))
                ),
            );
            false
        }
    };
    if ok {
        cx.counters.noncrossing_verified += 1;
    }
    ok
}

fn check_decomposition(g: &Graph, c: &Cut, cx: &mut Ctx) {
    cx.counters.non_elp_pairs += 1;
    let mut t = Trace::default();
    let res = decompose_tight_cut_traced(g, c, &mut t);
    cx.trace.merge(&t);
    let Some(cert) = cx.guard("decompose_tight_cut", res) else {
        return;
    };
    if let Err(why) = verify_certificate(g, c, &cert) {
        cx.fail(Property::Decomposition, format!("cut {}: {why}", c.shore));
        return;
    }
    if cert.r < 2 {
        cx.fail(
            Property::Decomposition,
            format!("cut {}: r = {} for a non-ELP cut", c.shore, cert.r),
        );
        return;
    }
    // The target cut, found again in the final graph by its edge ids.
    let h = &cert.final_graph;
    let ids: BTreeSet<EdgeId> = c.boundary.clone();
    let removed: BTreeSet<EdgeId> = h
        .edges()
        .iter()
        .map(|e| e.id)
        .filter(|id| ids.contains(id))
        .collect();
    let parts = components(&h.without_edges(&removed));
    let last = match parts.as_slice() {
        [a, _] => boundary(h, a).ok().filter(|d| d.boundary == ids),
        _ => None,
    };
    let Some(last) = last else {
        cx.fail(
            Property::Decomposition,
            format!("cut {}: target cut lost in the final graph", c.shore),
        );
        return;
    };
    let tight = TightnessOracle::new(h)
        .map(|o| o.is_tight(&last))
        .unwrap_or(false);
    if !tight || two_separation_witnesses(h, &last).is_empty() {
        cx.fail(
            Property::Decomposition,
            format!("cut {}: final cut is not a tight 2-separation cut", c.shore),
        );
        return;
    }
    cx.counters.certificates_verified += 1;
    cx.counters.max_r = cx.counters.max_r.max(cert.r);
}

/// Both contractions are matching covered, and their tight cuts are exactly
/// the tight cuts of `g` with a shore inside the uncontracted side, compared
/// as edge-id sets.
fn check_contractions(g: &Graph, c: &Cut, all_tight: &[Cut], cx: &mut Ctx) {
    let Some((h1, h2)) = cx.guard("cut_contractions", cut_contractions(g, c)) else {
        return;
    };
    for (h, side) in [(h1, &c.shore), (h2, &c.complement)] {
        cx.counters.contractions_checked += 1;
        if !is_matching_covered(&h) {
            cx.fail(
                Property::Contraction,
                format!(
                    "cut {}: contraction keeping {side} is not matching covered",
                    c.shore
                ),
            );
            continue;
        }
        let Some(oracle) = cx.guard("contraction matchings", TightnessOracle::new(&h)) else {
            continue;
        };
        let Some(in_h) = cx.guard("contraction tight cuts", oracle.tight_cuts(false)) else {
            continue;
        };
        let in_h: BTreeSet<BTreeSet<EdgeId>> = in_h.into_iter().map(|d| d.boundary).collect();
        let in_g: BTreeSet<BTreeSet<EdgeId>> = all_tight
            .iter()
            .filter(|d| d.shore.is_subset(side) || d.complement.is_subset(side))
            .map(|d| d.boundary.clone())
            .collect();
        cx.counters.transfer_checks += 1;
        if in_h != in_g {
            cx.fail(
                Property::Contraction,
                format!(
                    "cut {}: contraction keeping {side} has {} tight cuts, g has {} on that side",
                    c.shore,
                    in_h.len(),
                    in_g.len()
                ),
            );
        }
    }
}

/// Both DM strategies on `G - u - v` with shore `X - u`, for every cut edge
/// `uv` whose ends see nothing else across the cut.
fn check_dm_case_one(g: &Graph, c: &Cut, cx: &mut Ctx) {
    for &id in &c.boundary {
        let Some(e) = g.edge(id) else { continue };
        let (u, v) = if c.shore.contains(e.ends.0) {
            e.ends
        } else {
            (e.ends.1, e.ends.0)
        };
        let lonely = g.neighbors(u).intersection(&c.complement).len() == 1
            && g.neighbors(v).intersection(&c.shore).len() == 1;
        if !lonely {
            continue;
        }
        let pair = VertexSet::of([u.0, v.0]);
        let h = g.without_vertices(&pair);
        let x = c.shore.without(u);
        let runs: Vec<_> = [DmStrategy::Constructive, DmStrategy::Exhaustive]
            .into_iter()
            .map(|s| (s, find_dm_barrier_with(&h, &x, s)))
            .collect();
        if runs
            .iter()
            .any(|(_, r)| matches!(r, Err(Error::Precondition(_))))
        {
            continue;
        }
        cx.counters.dm_instances += 1;
        let mut all_ok = true;
        for (s, r) in runs {
            let ok = match r {
                Ok(found) => {
                    let members = &found.dm.barrier.members;
                    let shore_ok = found.shore == x || found.shore == h.vertex_set().difference(&x);
                    let fresh = is_barrier(&h, members).ok().flatten();
                    let dm_ok = fresh
                        .as_ref()
                        .is_some_and(|b| matches!(is_dm_barrier(&h, b), Ok(Some(_))));
                    let inside = fresh.as_ref().is_some_and(|b| {
                        members.is_subset(&found.shore)
                            && b.odd_parts.iter().all(|p| p.is_subset(&found.shore))
                    });
                    shore_ok && dm_ok && inside
                }
                Err(_) => false,
            };
            if !ok {
                all_ok = false;
                cx.fail(
                    Property::DmAgreement,
                    format!("cut {}, edge {id}: {s:?} strategy failed", c.shore),
                );
            }
        }
        if all_ok {
            cx.counters.dm_verified += 1;
        }
    }
}

/// Lift every barrier of each contraction `g/Ȳ` given by the witnesses of
/// a tight cut. Returns the number of scenarios tried.
fn check_lifts(
    g: &Graph,
    cl: &crate::tightcuts::CutClassification,
    budget: usize,
    cx: &mut Ctx,
) -> usize {
    let mut tried = 0;
    let label = g.fresh_vertex();
    let mut lift =
        |y: &VertexSet,
         cx: &mut Ctx,
         f: &dyn Fn(&Graph, &VertexSet) -> Result<crate::structure::Barrier>| {
            let ybar = g.vertex_set().difference(y);
            let Ok(h) = crate::graph::contract(g, &ybar, label) else {
                return;
            };
            if h.vertex_count() > SUBSET_SCAN_LIMIT {
                return;
            }
            let Ok(inner) = all_barriers(&h) else { return };
            for b in inner {
                if tried == budget {
                    return;
                }
                tried += 1;
                cx.counters.lift_scenarios += 1;
                match f(&h, &b.members) {
                    Ok(out) if matches!(is_barrier(g, &out.members), Ok(Some(_))) => {
                        cx.counters.lifts_verified += 1
                    }
                    Ok(out) => cx.fail(
                        Property::Lift,
                        format!("lifted set {} is not a barrier", out.members),
                    ),
                    Err(e) => cx.fail(
                        Property::Lift,
                        format!("lift of {} over {y}: {e}", b.members),
                    ),
                }
            }
        };
    for w in &cl.barrier_witnesses {
        for y in w.barrier.odd_parts.iter().filter(|p| p.len() >= 3) {
            lift(y, cx, &|_, bp| {
                lift_barrier_over_odd_component(g, &w.barrier, y, label, bp)
            });
        }
    }
    for s in &cl.twosep_witnesses {
        let Ok(cuts) = two_separation_cuts(g, s) else {
            continue;
        };
        for d in cuts {
            for y in [&d.shore, &d.complement] {
                if y.contains(s.pair.0) != y.contains(s.pair.1) {
                    lift(y, cx, &|_, bp| lift_barrier_over_2sep(g, s, y, label, bp));
                }
            }
        }
    }
    tried
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_exhaustive_is_clean() {
        let r = run_sweep(&[CorpusSpec::exhaustive(6)], &SweepOptions::default()).unwrap();
        assert!(r.is_clean(), "{:?}", r.violations);
        assert_eq!(r.counters.graphs, 3193);
        assert!(r.counters.graphs_with_tight_cut > 0);
        assert_eq!(
            r.counters.graphs_with_tight_cut,
            r.counters.graphs_with_verified_elp
        );
    }

    #[test]
    fn reports_are_deterministic() {
        let spec = [CorpusSpec::random(8, 10, 30, 5)];
        let a = run_sweep(&spec, &SweepOptions::default()).unwrap();
        let b = run_sweep(&spec, &SweepOptions::default()).unwrap();
        assert_eq!(a.counters, b.counters);
        assert_eq!(a.instances, b.instances);
        assert_eq!(a.branches, b.branches);
    }

    #[test]
    fn coverage_requirement_is_a_violation() {
        let opts = SweepOptions {
            require_coverage: true,
            ..SweepOptions::default()
        };
        let r = run_sweep(&[CorpusSpec::exhaustive(4)], &opts).unwrap();
        assert_eq!(r.violations_of(Property::BranchCoverage), 1);
    }

    #[test]
    fn order_bound_is_refused() {
        let r = run_sweep(&[CorpusSpec::random(8, 40, 1, 1)], &SweepOptions::default());
        assert!(matches!(r, Err(Error::LimitExceeded { .. })));
    }
}
