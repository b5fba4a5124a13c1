//! Block lookahead reversible adders: circuit construction, classical
//! verification, resource metrics and spacetime-volume estimates.

pub mod adders;
pub mod circuit;
pub mod cli;
pub mod costmodel;
pub mod metrics;
pub mod sim;

pub use adders::{AdderBuild, Construction};
pub use circuit::{Circuit, CircuitError, Gate, QubitId, RegisterHandle, Role};
pub use metrics::{DependencyModel, ResourceReport};
pub use sim::{BasisState, SimError, VerificationResult};

pub type CostEval = costmodel::CostEval<f64>;
pub type VolumeParams = costmodel::VolumeParams<f64>;
pub type VolumeEstimate = costmodel::VolumeEstimate<f64>;
pub type Choice = costmodel::Choice<f64>;

pub type CostEvalF32 = costmodel::CostEval<f32>;
pub type VolumeParamsF32 = costmodel::VolumeParams<f32>;
pub type VolumeEstimateF32 = costmodel::VolumeEstimate<f32>;
pub type ChoiceF32 = costmodel::Choice<f32>;
