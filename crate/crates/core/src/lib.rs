pub mod certificate;
pub mod decompose;
pub mod error;
pub mod graph;
pub mod instances;
pub mod io;
pub mod matching;
pub mod structure;
pub mod sweep;
pub mod tightcuts;

pub use certificate::{verify_certificate, Certificate, Rejection, VerifyError};
pub use decompose::{decompose_tight_cut, find_noncrossing_elp, ElpFinding};
pub use error::{Error, Result};
pub use graph::{Cut, Edge, EdgeId, Graph, Vertex, VertexSet};
