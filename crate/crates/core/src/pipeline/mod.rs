//! The constructive decomposition pipeline: word tracking, conjugation
//! closures, the staged construction of transvection families, synthesis
//! of arbitrary transvections, and Gaussian decomposition of SL elements.

use std::fmt;

pub mod closure;
pub mod entry;

pub use closure::{
    check_theorem_span_cycle, conjugation_closure, find_transvection_group, Closure, FoundGroup,
};
pub use entry::{sym, GWord, GroupEntry, Witness};

/// Evidence attached to a stage failure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate {
    /// The reached directions (or functionals) span a proper subspace.
    SpanDefect { dimension: usize, got: usize },
    /// A component with no outgoing edge (invariant-subspace witness).
    NotStronglyConnected { component: Vec<usize> },
    NoDirectedCycle,
    /// No non-singular chordless cycle within the growth cap.
    NoNonsingularCycle { rounds: usize },
    CapExceeded { what: String, cap: usize },
    Internal(String),
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Certificate::SpanDefect { dimension, got } => {
                write!(f, "span defect: rank {got} < {dimension}")
            }
            Certificate::NotStronglyConnected { component } => {
                write!(f, "not strongly connected; sink component {component:?}")
            }
            Certificate::NoDirectedCycle => write!(f, "no directed cycle found"),
            Certificate::NoNonsingularCycle { rounds } => {
                write!(f, "no non-singular chordless cycle after {rounds} growth rounds")
            }
            Certificate::CapExceeded { what, cap } => write!(f, "cap exceeded ({what}, cap {cap})"),
            Certificate::Internal(s) => write!(f, "internal invariant breach: {s}"),
        }
    }
}

/// A stage failure with its certificate; hypotheses on the generating set
/// are caller claims that can be false, so failures are first-class.
#[derive(Clone, Debug)]
pub struct PipelineError {
    pub stage: String,
    pub certificate: Certificate,
}

impl PipelineError {
    pub fn new(stage: &str, certificate: Certificate) -> Self {
        PipelineError {
            stage: stage.into(),
            certificate,
        }
    }
}

impl fmt::Display for PipelineError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} failed: {}", self.stage, self.certificate)
    }
}

impl std::error::Error for PipelineError {}
