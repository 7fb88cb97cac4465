//! Turing machines over pluggable tapes, the cell-cascade tape, and the
//! bounded-region halting decider.

mod backend;
mod cascade;
pub mod corpus;
mod halting;
mod run;
mod spec;

pub use backend::{FlatTape, TapeBackend, TapeWindow};
pub use cascade::{CascadeMessage, CascadeTape, MessageKind, DEFAULT_CELL_CAPACITY};
pub use halting::{
    decide_halting_bounded, decide_halting_bounded_with, BoundedConfiguration, BoundedMachine, CycleDetection,
    HaltingDecision,
};
pub use run::{backend_equivalence, lockstep_equivalence, run_tm, Execution, RunOutcome};
pub use spec::{Rule, Shift, SpecError, Transition, TuringMachineSpec};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TapeError {
    #[error("cell capacity must be at least 1")]
    ZeroCapacity,
    #[error("bounded region must have at least 1 cell")]
    ZeroRegion,
    #[error("input of length {len} does not fit in {m} cells")]
    InputTooLong { len: usize, m: usize },
    #[error("input symbol {0:?} is blank or not in the tape alphabet")]
    BadInput(char),
    #[error("tape alphabet of {0} symbols is too large for the bounded decider")]
    TooManySymbols(usize),
}
