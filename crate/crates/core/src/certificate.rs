//! Decomposition certificates, their JSON form, and an independent checker.
//!
//! The checker only uses the base predicates (barriers, 2-separations,
//! tightness, contraction, crossing); it never re-runs the construction.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{boundary, contract, crosses, Cut, EdgeId, Graph, Vertex, VertexSet};
use crate::matching::is_matching_covered;
use crate::structure::{is_barrier, two_separation_cuts, TwoSeparation};
use crate::tightcuts::{barrier_witness_holds, CutClassification, TightnessOracle};

/// Why one step of the sequence is an ELP-cut.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum ElpWitness {
    /// `cut = ∂(component)` with `component` an odd component of `G - barrier`.
    Barrier {
        barrier: VertexSet,
        component: VertexSet,
    },
    /// `cut` is one of the cuts of this 2-separation.
    #[serde(rename = "twosep")]
    TwoSep {
        pair: (Vertex, Vertex),
        side1: VertexSet,
        side2: VertexSet,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Step {
    pub graph: Graph,
    pub cut: Cut,
    pub witness: ElpWitness,
    /// The shore of `cut` shrunk to `new_vertex` to obtain the next graph.
    pub contracted_shore: VertexSet,
    pub new_vertex: Vertex,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub input_graph: Graph,
    pub input_shore: VertexSet,
    pub steps: Vec<Step>,
    pub final_graph: Graph,
    /// Classification of the tracked cut in `final_graph`.
    pub final_classification: CutClassification,
    pub r: usize,
}

impl Certificate {
    pub fn new(
        input_graph: Graph,
        input_shore: VertexSet,
        steps: Vec<Step>,
        final_graph: Graph,
        final_classification: CutClassification,
    ) -> Certificate {
        let r = steps.len() + 1;
        Certificate {
            input_graph,
            input_shore,
            steps,
            final_graph,
            final_classification,
            r,
        }
    }

    pub fn to_json(&self) -> CertificateJson {
        CertificateJson {
            input: InputJson {
                graph: GraphJson::from_graph(&self.input_graph),
                cut_shore: self.input_shore.clone(),
            },
            steps: self
                .steps
                .iter()
                .map(|s| StepJson {
                    graph: GraphJson::from_graph(&s.graph),
                    cut_shore: s.cut.shore.clone(),
                    witness: s.witness.clone(),
                    contracted_shore: s.contracted_shore.clone(),
                    new_vertex: s.new_vertex,
                })
                .collect(),
            final_: FinalJson {
                graph: GraphJson::from_graph(&self.final_graph),
                classification: self.final_classification.clone(),
            },
            r: self.r,
        }
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&self.to_json()).expect("certificate serializes")
    }

    /// Parses the JSON form. Schema errors report the offending JSON path.
    pub fn from_json_str(s: &str) -> Result<Certificate> {
        let de = &mut serde_json::Deserializer::from_str(s);
        let raw: CertificateJson =
            serde_path_to_error::deserialize(de).map_err(|e| Error::Json {
                path: e.path().to_string(),
                message: e.inner().to_string(),
            })?;
        raw.into_certificate()
    }
}

/// Edge-list object: `n` vertices and `edges` as endpoint pairs. Optional
/// `vertices` and `edge_ids` carry non-contiguous ids; when absent they
/// default to `0..n` and `0..m`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub n: usize,
    pub edges: Vec<(u32, u32)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vertices: Option<Vec<u32>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub edge_ids: Option<Vec<u32>>,
}

impl GraphJson {
    pub fn from_graph(g: &Graph) -> GraphJson {
        GraphJson {
            n: g.vertex_count(),
            edges: g
                .edges()
                .iter()
                .map(|e| (e.ends.0 .0, e.ends.1 .0))
                .collect(),
            vertices: Some(g.vertices().iter().map(|v| v.0).collect()),
            edge_ids: Some(g.edges().iter().map(|e| e.id.0).collect()),
        }
    }

    pub fn to_graph(&self) -> Result<Graph> {
        let vertices: Vec<u32> = match &self.vertices {
            Some(v) if v.len() != self.n => {
                return Err(Error::precondition("`vertices` length differs from `n`"))
            }
            Some(v) => v.clone(),
            None => (0..self.n as u32).collect(),
        };
        let ids: Vec<u32> = match &self.edge_ids {
            Some(ids) if ids.len() != self.edges.len() => {
                return Err(Error::precondition(
                    "`edge_ids` length differs from `edges`",
                ))
            }
            Some(ids) => ids.clone(),
            None => (0..self.edges.len() as u32).collect(),
        };
        Graph::from_parts(
            vertices.into_iter().map(Vertex),
            ids.iter()
                .zip(&self.edges)
                .map(|(&id, &(a, b))| (EdgeId(id), Vertex(a), Vertex(b))),
        )
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct InputJson {
    pub graph: GraphJson,
    pub cut_shore: VertexSet,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct StepJson {
    pub graph: GraphJson,
    pub cut_shore: VertexSet,
    pub witness: ElpWitness,
    pub contracted_shore: VertexSet,
    pub new_vertex: Vertex,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FinalJson {
    pub graph: GraphJson,
    pub classification: CutClassification,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CertificateJson {
    pub input: InputJson,
    pub steps: Vec<StepJson>,
    #[serde(rename = "final")]
    pub final_: FinalJson,
    pub r: usize,
}

impl CertificateJson {
    pub fn into_certificate(self) -> Result<Certificate> {
        let input_graph = self.input.graph.to_graph()?;
        let mut steps = Vec::with_capacity(self.steps.len());
        for s in self.steps {
            let graph = s.graph.to_graph()?;
            let cut = boundary(&graph, &s.cut_shore)?;
            steps.push(Step {
                graph,
                cut,
                witness: s.witness,
                contracted_shore: s.contracted_shore,
                new_vertex: s.new_vertex,
            });
        }
        Ok(Certificate {
            input_graph,
            input_shore: self.input.cut_shore,
            steps,
            final_graph: self.final_.graph.to_graph()?,
            final_classification: self.final_.classification,
            r: self.r,
        })
    }
}

/// Reason codes for a rejected certificate.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Rejection {
    InputMismatch,
    StepCount,
    NotMatchingCovered,
    CutInvalid,
    WitnessInvalid,
    CrossesTarget,
    ShoreInvalid,
    ContractionMismatch,
    TargetLost,
    FinalInvalid,
}

impl Rejection {
    pub fn code(self) -> &'static str {
        match self {
            Rejection::InputMismatch => "input mismatch",
            Rejection::StepCount => "step count mismatch",
            Rejection::NotMatchingCovered => "graph not matching covered",
            Rejection::CutInvalid => "cut invalid",
            Rejection::WitnessInvalid => "witness invalid",
            Rejection::CrossesTarget => "cut crosses the target",
            Rejection::ShoreInvalid => "contracted shore invalid",
            Rejection::ContractionMismatch => "contraction mismatch",
            Rejection::TargetLost => "target cut lost",
            Rejection::FinalInvalid => "final classification invalid",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyError {
    pub reason: Rejection,
    /// Zero-based step index, `None` for input and final checks.
    pub step: Option<usize>,
    pub detail: String,
}

impl fmt::Display for VerifyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.step {
            Some(i) => write!(
                f,
                "{} at step {}: {}",
                self.reason.code(),
                i + 1,
                self.detail
            ),
            None => write!(f, "{}: {}", self.reason.code(), self.detail),
        }
    }
}

impl std::error::Error for VerifyError {}

fn reject(reason: Rejection, step: Option<usize>, detail: impl Into<String>) -> VerifyError {
    VerifyError {
        reason,
        step,
        detail: detail.into(),
    }
}

/// Re-checks every statement of `cert` for the input `(g, c)`.
pub fn verify_certificate(
    g: &Graph,
    c: &Cut,
    cert: &Certificate,
) -> std::result::Result<(), VerifyError> {
    if cert.input_graph != *g {
        return Err(reject(
            Rejection::InputMismatch,
            None,
            "certificate is for a different graph",
        ));
    }
    if !c.has_shore(&cert.input_shore) || boundary(g, &cert.input_shore).ok().as_ref() != Some(c) {
        return Err(reject(
            Rejection::InputMismatch,
            None,
            "certificate is for a different cut",
        ));
    }
    if cert.r != cert.steps.len() + 1 {
        return Err(reject(
            Rejection::StepCount,
            None,
            format!("r = {} with {} steps", cert.r, cert.steps.len()),
        ));
    }

    let target_ids = c.boundary.clone();
    let mut expected = g.clone();
    let mut x = cert.input_shore.clone();
    let mut seen: BTreeSet<Vertex> = g.vertices().iter().copied().collect();

    for (i, step) in cert.steps.iter().enumerate() {
        let at = Some(i);
        let h = &step.graph;
        if *h != expected {
            return Err(reject(
                Rejection::ContractionMismatch,
                at,
                "graph differs from the declared contraction",
            ));
        }
        if !is_matching_covered(h) {
            return Err(reject(Rejection::NotMatchingCovered, at, "step graph"));
        }
        let target =
            boundary(h, &x).map_err(|e| reject(Rejection::TargetLost, at, e.to_string()))?;
        if target.boundary != target_ids {
            return Err(reject(
                Rejection::TargetLost,
                at,
                "target cut edges changed",
            ));
        }
        let cut = match boundary(h, &step.cut.shore) {
            Ok(cut) if cut == step.cut => cut,
            _ => {
                return Err(reject(
                    Rejection::CutInvalid,
                    at,
                    "cut is not a cut of the step graph",
                ))
            }
        };
        if cut.is_trivial() {
            return Err(reject(Rejection::CutInvalid, at, "cut is trivial"));
        }
        let oracle = TightnessOracle::new(h)
            .map_err(|e| reject(Rejection::CutInvalid, at, e.to_string()))?;
        if !oracle.is_tight(&cut) {
            return Err(reject(Rejection::CutInvalid, at, "cut is not tight"));
        }
        check_witness(h, &cut, &step.witness)
            .map_err(|d| reject(Rejection::WitnessInvalid, at, d))?;
        if crosses(h, &cut, &target).unwrap_or(true) {
            return Err(reject(
                Rejection::CrossesTarget,
                at,
                "cut crosses the target cut",
            ));
        }

        let shore = &step.contracted_shore;
        if !cut.has_shore(shore) {
            return Err(reject(
                Rejection::ShoreInvalid,
                at,
                "contracted set is not a shore of the cut",
            ));
        }
        let inside_x = shore.is_proper_subset(&x);
        let inside_xb = shore.is_proper_subset(&target.other_shore(&x).clone());
        if !inside_x && !inside_xb {
            return Err(reject(
                Rejection::ShoreInvalid,
                at,
                "contracted shore is not inside a shore of the target",
            ));
        }
        if seen.contains(&step.new_vertex) {
            return Err(reject(
                Rejection::ShoreInvalid,
                at,
                format!("vertex {} is not fresh", step.new_vertex),
            ));
        }
        expected = contract(h, shore, step.new_vertex)
            .map_err(|e| reject(Rejection::ShoreInvalid, at, e.to_string()))?;
        seen.insert(step.new_vertex);
        if inside_x {
            x = x.difference(shore).with(step.new_vertex);
        }
    }

    let last = &cert.final_graph;
    if *last != expected {
        return Err(reject(
            Rejection::ContractionMismatch,
            Some(cert.steps.len().saturating_sub(1)),
            "final graph differs from the declared contraction",
        ));
    }
    if !is_matching_covered(last) {
        return Err(reject(Rejection::NotMatchingCovered, None, "final graph"));
    }
    let target =
        boundary(last, &x).map_err(|e| reject(Rejection::TargetLost, None, e.to_string()))?;
    if target.boundary != target_ids {
        return Err(reject(
            Rejection::TargetLost,
            None,
            "target cut edges changed",
        ));
    }
    check_final(last, &target, &cert.final_classification, cert.r)
        .map_err(|d| reject(Rejection::FinalInvalid, None, d))
}

fn check_witness(h: &Graph, cut: &Cut, w: &ElpWitness) -> std::result::Result<(), String> {
    match w {
        ElpWitness::Barrier { barrier, component } => {
            if h.check_subset(barrier).is_err() || barrier.is_empty() {
                return Err("witness not a barrier".into());
            }
            let b = match is_barrier(h, barrier) {
                Ok(Some(b)) => b,
                _ => return Err("witness not a barrier".into()),
            };
            if !b.odd_parts.contains(component) {
                return Err("component is not an odd component of G - B".into());
            }
            if !cut.has_shore(component) {
                return Err("cut is not the boundary of the component".into());
            }
            Ok(())
        }
        ElpWitness::TwoSep { pair, side1, side2 } => {
            let s = TwoSeparation::new(pair.0, pair.1, side1.clone(), side2.clone());
            if !s.is_valid_in(h) {
                return Err("witness not a 2-separation".into());
            }
            match two_separation_cuts(h, &s) {
                Ok(cuts) if cuts.contains(cut) => Ok(()),
                _ => Err("cut does not arise from the 2-separation".into()),
            }
        }
    }
}

fn check_final(
    g: &Graph,
    c: &Cut,
    cl: &CutClassification,
    r: usize,
) -> std::result::Result<(), String> {
    let tight = TightnessOracle::new(g)
        .map_err(|e| e.to_string())?
        .is_tight(c);
    if !tight || !cl.tight {
        return Err("target cut is not tight".into());
    }
    if cl.trivial != c.is_trivial() {
        return Err("triviality flag is wrong".into());
    }
    if c.is_trivial() {
        return Err("target cut became trivial".into());
    }
    for w in &cl.barrier_witnesses {
        if !barrier_witness_holds(g, c, w) {
            return Err(format!(
                "declared barrier witness {} fails",
                w.barrier.members
            ));
        }
    }
    for s in &cl.twosep_witnesses {
        check_witness(
            g,
            c,
            &ElpWitness::TwoSep {
                pair: s.pair,
                side1: s.side1.clone(),
                side2: s.side2.clone(),
            },
        )
        .map_err(|d| format!("declared 2-separation witness fails: {d}"))?;
    }
    let has_witness = !cl.barrier_witnesses.is_empty() || !cl.twosep_witnesses.is_empty();
    if cl.elp != has_witness {
        return Err("elp flag disagrees with the witnesses".into());
    }
    if r >= 2 && cl.twosep_witnesses.is_empty() {
        return Err("target is not a 2-separation cut of the final graph".into());
    }
    if r == 1 && !has_witness {
        return Err("target is not an ELP-cut".into());
    }
    Ok(())
}
