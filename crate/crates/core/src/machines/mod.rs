//! Machine models for every contestant level, oracle machines, and the
//! machine-spec file format with its canonical encoding.

pub mod acceptor;
mod format;
pub mod mealy;
pub mod oracle;
pub mod pushdown;
pub mod turing_contestant;

use thiserror::Error;

use crate::dialogue::AlphabetError;
use crate::tape::SpecError;

pub use acceptor::{is_balanced, Acceptor};
pub use format::{
    decode_machine, encode_machine, load_machine_file, parse_machine, write_machine, LoadedMachine,
    MachineDocument, MachineEncoding,
};
pub use mealy::{Edge, MealyTransducer, TransducerContestant};
pub use oracle::{
    bounded_halting_oracle, run_oracle_machine, Balanced, BoundedHaltingOracle, EvenLength, Oracle,
    OracleContestant, OracleMachine, OracleRun,
};
pub use pushdown::{
    bracket_contestant, bracket_machine, determinism_conflicts, EndOfRoundRule, PushdownContestant,
    PushdownMachine, PushdownRule, StackAction,
};
pub use turing_contestant::{DialogueMachine, TuringContestant, DEFAULT_ROUND_STEP_LIMIT};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MachineError {
    #[error("machine has no states")]
    NoStates,
    #[error("state name {0:?} is used twice")]
    DuplicateState(String),
    #[error("unknown state {0:?}")]
    UnknownState(String),
    #[error("state index {0} out of range")]
    StateOutOfRange(usize),
    #[error("transition table has {found} entries, expected {expected}")]
    IncompleteTable { expected: usize, found: usize },
    #[error("transition from ({state:?}, {input:?}) is defined twice")]
    DuplicateTransition { state: String, input: char },
    #[error("symbol {0:?} is not in the alphabet")]
    ForeignSymbol(char),
    #[error("unknown stack symbol {0:?}")]
    UnknownStackSymbol(char),
    #[error("a rule pops the bottom marker")]
    PopsBottom,
    #[error("a rule pushes the bottom marker")]
    PushesBottom,
    #[error("two rules apply in state {state:?} on input {input:?} with top {top:?}")]
    Nondeterministic { state: String, input: Option<char>, top: char },
    #[error("open and close bracket are both {0:?}")]
    SameBrackets(char),
    #[error("reserved symbol {0:?} clashes with the alphabet or another reserved symbol")]
    ReservedSymbolClash(char),
    #[error("query state {0:?} must have no transitions and must not halt")]
    QueryStateHasTransitions(String),
    #[error(transparent)]
    Spec(#[from] SpecError),
    #[error(transparent)]
    Alphabet(#[from] AlphabetError),
    #[error("machine spec: {0}")]
    Syntax(String),
    #[error("expected a {expected} machine, found {found}")]
    WrongKind { expected: &'static str, found: &'static str },
    #[error("malformed machine code: {0}")]
    MalformedCode(String),
    #[error("{0}")]
    Io(String),
}
