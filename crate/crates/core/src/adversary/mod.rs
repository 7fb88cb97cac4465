//! Constructive adversaries against deterministic interrogators.

mod hardcode;
mod lift;
mod pumping;
mod report;
mod trick;

pub use hardcode::hardcode_dialogue;
pub use lift::{lift_to_pushdown, lift_to_turing, lift_transducer, LiftTarget};
pub use pumping::{misclassifies, pumping_counterexample};
pub use report::TrickReport;
pub use trick::{trick_below3, trick_level3, Claim, TrickError, TrickWitness};
