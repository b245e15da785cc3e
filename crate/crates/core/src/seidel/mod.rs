//! Seidel elements of Hamiltonian loops: a registry of named loops, word
//! evaluation, kernel membership and search, order certificates and the
//! bundled scenarios.

mod certificate;
mod even;
mod registry;
mod scenario;

use thiserror::Error;

use crate::novikov::NovikovError;
use crate::polytope::PolytopeError;
use crate::presentation::PresentationError;
use crate::reduce::ReduceError;

pub use certificate::{
    infinite_order_certificate, CyclotomicCheck, OrderCertificate, OrderEvidence, OrderVerdict,
};
pub use even::{even_power_form, BasisPart, EvenPowerForm, Sign};
pub use registry::{
    KernelVerdict, LoopEntry, LoopProvenance, LoopRegistry, LoopWord, TorsionOrder,
};
pub use scenario::{run_scenario, Claim, Report, ScenarioOptions, SCENARIOS};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeidelError {
    #[error("unknown loop `{0}`")]
    UnknownName(String),
    #[error("loop `{0}` is already registered")]
    DuplicateName(String),
    #[error("value of `{0}` is not a unit")]
    NotAUnit(String),
    #[error("value of `{name}` does not have order {order}")]
    OrderInconsistent { name: String, order: u64 },
    #[error("element generators do not match the registry ring")]
    RingMismatch,
    #[error("parameter out of range: {0}")]
    ParamOutOfRange(String),
    #[error("exponent must be nonzero")]
    ZeroExponent,
    #[error("unknown scenario `{0}`")]
    UnknownScenario(String),
    #[error(transparent)]
    Reduce(#[from] ReduceError),
    #[error(transparent)]
    Presentation(#[from] PresentationError),
    #[error(transparent)]
    Polytope(#[from] PolytopeError),
    #[error(transparent)]
    Novikov(#[from] NovikovError),
}
