//! Oracle machines: Turing machines that may, in one step, ask an external
//! set whether the current work string belongs to it.

use std::sync::Arc;

use super::{decode_machine, MachineError};
use crate::dialogue::{Alphabet, Contestant, ContestantDescription, ContestantFault, LevelTag, Message};
use crate::machines::acceptor::is_balanced;
use crate::tape::{run_tm, FlatTape, Shift, TapeBackend, Transition, TuringMachineSpec};

/// A membership predicate over strings. Must answer the same string the
/// same way every time.
pub trait Oracle: Send + Sync {
    fn contains(&self, x: &str) -> bool;
}

impl<F: Fn(&str) -> bool + Send + Sync> Oracle for F {
    fn contains(&self, x: &str) -> bool {
        self(x)
    }
}

/// Strings of even length.
#[derive(Debug, Clone, Copy, Default)]
pub struct EvenLength;

impl Oracle for EvenLength {
    fn contains(&self, x: &str) -> bool {
        x.chars().count() % 2 == 0
    }
}

/// The balanced-bracket language over the given symbols.
#[derive(Debug, Clone, Copy)]
pub struct Balanced {
    pub open: char,
    pub close: char,
}

impl Oracle for Balanced {
    fn contains(&self, x: &str) -> bool {
        is_balanced(x, self.open, self.close)
    }
}

/// Step-bounded halting set: codes of machines that halt on the empty input
/// within `budget` steps. Strings that do not decode are outside the set.
///
/// The unbounded set is not computable; this under-approximation grows
/// monotonically with the budget.
#[derive(Debug, Clone, Copy)]
pub struct BoundedHaltingOracle {
    pub budget: u64,
}

pub fn bounded_halting_oracle(budget: u64) -> BoundedHaltingOracle {
    BoundedHaltingOracle { budget }
}

impl Oracle for BoundedHaltingOracle {
    fn contains(&self, code: &str) -> bool {
        let Ok(spec) = decode_machine(code) else {
            return false;
        };
        matches!(
            run_tm(&spec, FlatTape::new(spec.blank()), "", self.budget),
            Ok(outcome) if outcome.is_halted()
        )
    }
}

/// A Turing machine some of whose states are query states. In a query state
/// the machine submits its work string (the non-blank tape window) to the
/// oracle and moves to `yes` or `no` without touching the tape.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleMachine {
    spec: TuringMachineSpec,
    /// Per state: `(yes, no)` targets if it is a query state.
    queries: Vec<Option<(usize, usize)>>,
}

impl OracleMachine {
    pub fn new(spec: TuringMachineSpec, queries: &[(&str, &str, &str)]) -> Result<Self, MachineError> {
        let mut table = vec![None; spec.state_count()];
        let ix = |name: &str| {
            spec.state_index(name)
                .ok_or_else(|| MachineError::UnknownState(name.to_owned()))
        };
        for &(state, yes, no) in queries {
            let q = ix(state)?;
            if spec.is_halting(q) || (0..spec.symbols().len()).any(|s| spec.rule(q, s).is_some()) {
                return Err(MachineError::QueryStateHasTransitions(state.to_owned()));
            }
            if table[q].is_some() {
                return Err(MachineError::DuplicateState(state.to_owned()));
            }
            table[q] = Some((ix(yes)?, ix(no)?));
        }
        Ok(OracleMachine { spec, queries: table })
    }

    pub fn spec(&self) -> &TuringMachineSpec {
        &self.spec
    }

    /// `(state, yes, no)` names of every query state, in state order.
    pub fn query_states(&self) -> Vec<(String, String, String)> {
        self.queries
            .iter()
            .enumerate()
            .filter_map(|(q, t)| {
                t.map(|(y, n)| {
                    (
                        self.spec.state_name(q).to_owned(),
                        self.spec.state_name(y).to_owned(),
                        self.spec.state_name(n).to_owned(),
                    )
                })
            })
            .collect()
    }

    /// Asks the oracle about its input, erases it, and leaves `1` (member) or
    /// `0` (non-member) as the only tape content. `input_symbols` lists every
    /// symbol inputs may contain.
    pub fn membership_reporter(input_symbols: &[char]) -> Result<Self, MachineError> {
        let blank = ['_', '.', '~', '^', '\u{2423}']
            .into_iter()
            .find(|c| !input_symbols.contains(c))
            .expect("some blank candidate is free");
        let mut symbols = vec![blank];
        for &c in input_symbols.iter().chain(&['0', '1']) {
            if !symbols.contains(&c) {
                symbols.push(c);
            }
        }
        let mut transitions = Vec::new();
        for (state, bit) in [("yes", '1'), ("no", '0')] {
            for &c in &symbols[1..] {
                transitions.push(Transition::new(state, c, state, blank, Shift::Right));
            }
            transitions.push(Transition::new(state, blank, "done", bit, Shift::Right));
        }
        let spec = TuringMachineSpec::new(&["ask", "yes", "no", "done"], "ask", &["done"], &symbols, blank, &transitions)?;
        Self::new(spec, &[("ask", "yes", "no")])
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OracleRun {
    Halted { output: String, steps: u64 },
    Running,
}

/// Executes an oracle machine on `input` for at most `step_limit` steps. A
/// query costs one step. The output is the non-blank tape window at halt.
pub fn run_oracle_machine(
    machine: &OracleMachine,
    oracle: &dyn Oracle,
    input: &str,
    step_limit: u64,
) -> Result<OracleRun, MachineError> {
    let spec = &machine.spec;
    if let Some(c) = input.chars().find(|&c| c == spec.blank() || spec.symbol_index(c).is_none()) {
        return Err(MachineError::ForeignSymbol(c));
    }
    let mut tape = FlatTape::new(spec.blank());
    tape.load(input);
    let mut state = spec.initial();
    let mut steps = 0;
    loop {
        let query = machine.queries[state];
        let rule = match query {
            Some(_) => None,
            None if spec.is_halting(state) => {
                return Ok(halted(&tape, steps));
            }
            None => match spec.symbol_index(tape.read()).and_then(|s| spec.rule(state, s)) {
                Some(rule) => Some(rule),
                None => return Ok(halted(&tape, steps)),
            },
        };
        if steps >= step_limit {
            return Ok(OracleRun::Running);
        }
        steps += 1;
        match (query, rule) {
            (Some((yes, no)), _) => {
                let work = tape.window().content;
                state = if oracle.contains(&work) { yes } else { no };
            }
            (None, Some(rule)) => {
                tape.write(spec.symbols()[rule.write]);
                tape.shift(rule.shift);
                state = rule.next;
            }
            (None, None) => unreachable!("handled above"),
        }
    }
}

fn halted(tape: &FlatTape, steps: u64) -> OracleRun {
    OracleRun::Halted {
        output: tape.window().content,
        steps,
    }
}

/// An oracle machine answering dialogue queries: each round's reply is the
/// machine's output on the query.
#[derive(Clone)]
pub struct OracleContestant {
    name: String,
    alphabet: Alphabet,
    machine: Arc<OracleMachine>,
    oracle: Arc<dyn Oracle>,
    step_limit: u64,
}

impl OracleContestant {
    pub fn new(name: impl Into<String>, alphabet: Alphabet, machine: OracleMachine, oracle: Arc<dyn Oracle>) -> Self {
        OracleContestant {
            name: name.into(),
            alphabet,
            machine: Arc::new(machine),
            oracle,
            step_limit: super::turing_contestant::DEFAULT_ROUND_STEP_LIMIT,
        }
    }
}

impl std::fmt::Debug for OracleContestant {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("OracleContestant").field("name", &self.name).finish_non_exhaustive()
    }
}

impl Contestant for OracleContestant {
    fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    fn level(&self) -> LevelTag {
        LevelTag::Oracle
    }

    fn reply(&mut self, query: &Message) -> Result<Message, ContestantFault> {
        match run_oracle_machine(&self.machine, self.oracle.as_ref(), query.as_str(), self.step_limit) {
            Ok(OracleRun::Halted { output, .. }) => Ok(Message::from(output)),
            Ok(OracleRun::Running) => Err(ContestantFault(format!("no halt within {} steps", self.step_limit))),
            Err(e) => Err(ContestantFault(e.to_string())),
        }
    }

    fn reset(&mut self) {}

    fn describe(&self) -> ContestantDescription {
        ContestantDescription {
            name: self.name.clone(),
            level: LevelTag::Oracle,
            machine: Some(super::format::oracle_to_value(&self.machine)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::machines::encode_machine;
    use crate::tape::corpus;

    #[test]
    fn even_length_reporter() {
        let m = OracleMachine::membership_reporter(&['a', 'b']).unwrap();
        let run = run_oracle_machine(&m, &EvenLength, "ab", 100).unwrap();
        assert!(matches!(run, OracleRun::Halted { ref output, .. } if output == "1"));
        let run = run_oracle_machine(&m, &EvenLength, "aba", 100).unwrap();
        assert!(matches!(run, OracleRun::Halted { ref output, .. } if output == "0"));
    }

    #[test]
    fn query_costs_one_step() {
        let m = OracleMachine::membership_reporter(&['a']).unwrap();
        assert_eq!(run_oracle_machine(&m, &EvenLength, "", 1).unwrap(), OracleRun::Running);
        assert_eq!(
            run_oracle_machine(&m, &EvenLength, "", 2).unwrap(),
            OracleRun::Halted {
                output: "1".into(),
                steps: 2
            }
        );
    }

    fn reporter_for(code: &str) -> OracleMachine {
        let mut symbols: Vec<char> = code.chars().collect();
        symbols.sort_unstable();
        symbols.dedup();
        OracleMachine::membership_reporter(&symbols).unwrap()
    }

    #[test]
    fn halting_oracle_through_the_machine() {
        // the writer halts after exactly 3 steps
        let code = encode_machine(&corpus::writer()).into_string();
        let m = reporter_for(&code);
        let out = |s| match run_oracle_machine(&m, &bounded_halting_oracle(s), &code, 100_000).unwrap() {
            OracleRun::Halted { output, .. } => output,
            OracleRun::Running => panic!("reporter must halt"),
        };
        assert_eq!(out(10), "1");
        assert_eq!(out(2), "0");
        assert_eq!(out(3), "1");
    }

    #[test]
    fn halting_oracle_edges() {
        let writer = encode_machine(&corpus::writer()).into_string();
        assert!(!bounded_halting_oracle(0).contains(&writer));
        let immediate = encode_machine(&corpus::immediate_halt()).into_string();
        for s in [0, 1, 5, 100] {
            assert!(bounded_halting_oracle(s).contains(&immediate));
        }
        let osc = encode_machine(&corpus::oscillator()).into_string();
        for s in [1, 10, 100] {
            assert!(!bounded_halting_oracle(s).contains(&osc));
        }
        assert!(!bounded_halting_oracle(100).contains("not a machine"));
    }

    #[test]
    fn query_state_must_be_bare() {
        let spec = corpus::writer();
        assert!(matches!(
            OracleMachine::new(spec, &[("a", "b", "c")]),
            Err(MachineError::QueryStateHasTransitions(_))
        ));
    }
}
