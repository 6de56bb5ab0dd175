//! Right-hand-side construction for both incoming-state types and the
//! preconditioned iterative solve of the collocated linear system.

pub mod context;
pub mod deflation;
pub mod gmres;
pub mod incoming;
pub mod precond;

pub use context::{ComponentField, EnergySystem, ProblemParams, SolveResult, ThreeBodyProblem};
pub use deflation::{ChannelDeflation, DeflatedPrecond};
pub use gmres::{gmres, FnOp, GmresConfig, GmresOutcome, LinearOp};
pub use incoming::{incident_normalization, IncomingKind, IncomingState};
pub use precond::KroneckerPrecond;
