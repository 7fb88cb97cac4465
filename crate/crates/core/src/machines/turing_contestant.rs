//! Turing machines holding a dialogue through a prompt convention.
//!
//! The machine asks for input by writing the reserved prompt symbol. It is
//! then paused, and the query followed by the delimiter is written onto the
//! tape starting under the head (the head does not move). The machine resumes
//! and eventually writes the prompt again; its reply is whatever lies strictly
//! between the delimiter that closed the query and that new prompt. So the
//! tape ends up looking like `? x1 # y1 ? x2 # y2 ? ...`.

use std::sync::Arc;

use super::MachineError;
use crate::dialogue::{Alphabet, Contestant, ContestantDescription, ContestantFault, LevelTag, Message};
use crate::tape::{FlatTape, TapeBackend, TuringMachineSpec};

/// Steps a contestant may spend on one round before it counts as stuck.
pub const DEFAULT_ROUND_STEP_LIMIT: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DialogueMachine {
    spec: TuringMachineSpec,
    alphabet: Alphabet,
    prompt: char,
}

impl DialogueMachine {
    /// `alphabet` is the dialogue alphabet; its delimiter closes each query
    /// on the tape. Prompt, delimiter and blank must be tape symbols outside
    /// the dialogue alphabet.
    pub fn new(spec: TuringMachineSpec, alphabet: Alphabet, prompt: char) -> Result<Self, MachineError> {
        for &c in alphabet.symbols() {
            if spec.symbol_index(c).is_none() {
                return Err(MachineError::ForeignSymbol(c));
            }
        }
        let reserved = [prompt, alphabet.delimiter(), spec.blank()];
        for (i, &c) in reserved.iter().enumerate() {
            if alphabet.contains(c) || reserved[..i].contains(&c) {
                return Err(MachineError::ReservedSymbolClash(c));
            }
            if spec.symbol_index(c).is_none() {
                return Err(MachineError::ForeignSymbol(c));
            }
        }
        Ok(DialogueMachine { spec, alphabet, prompt })
    }

    pub fn spec(&self) -> &TuringMachineSpec {
        &self.spec
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn prompt(&self) -> char {
        self.prompt
    }
}

#[derive(Debug, Clone)]
pub struct TuringContestant {
    name: String,
    level: LevelTag,
    machine: Arc<DialogueMachine>,
    round_step_limit: u64,
    tape: FlatTape,
    state: usize,
    /// Fault from running up to the first prompt, if any.
    startup: Result<(), ContestantFault>,
}

impl TuringContestant {
    pub fn new(name: impl Into<String>, machine: DialogueMachine) -> Self {
        Self::with_step_limit(name, machine, DEFAULT_ROUND_STEP_LIMIT)
    }

    pub fn with_step_limit(name: impl Into<String>, machine: DialogueMachine, round_step_limit: u64) -> Self {
        let blank = machine.spec.blank();
        let state = machine.spec.initial();
        let mut c = TuringContestant {
            name: name.into(),
            level: LevelTag::Level0,
            machine: Arc::new(machine),
            round_step_limit,
            tape: FlatTape::new(blank),
            state,
            startup: Ok(()),
        };
        c.reset();
        c
    }

    pub fn machine(&self) -> &DialogueMachine {
        &self.machine
    }

    pub fn tape(&self) -> &FlatTape {
        &self.tape
    }

    /// Runs until the machine writes the prompt and returns where it wrote it.
    fn run_until_prompt(&mut self) -> Result<i64, ContestantFault> {
        let spec = &self.machine.spec;
        for _ in 0..self.round_step_limit {
            let read = self.tape.read();
            let rule = spec
                .symbol_index(read)
                .filter(|_| !spec.is_halting(self.state))
                .and_then(|s| spec.rule(self.state, s))
                .ok_or_else(|| {
                    ContestantFault(format!(
                        "machine stopped in state {} without prompting",
                        spec.state_name(self.state)
                    ))
                })?;
            let written = spec.symbols()[rule.write];
            let pos = self.tape.head();
            self.tape.write(written);
            self.tape.shift(rule.shift);
            self.state = rule.next;
            if written == self.machine.prompt {
                return Ok(pos);
            }
        }
        Err(ContestantFault(format!(
            "no prompt within {} steps",
            self.round_step_limit
        )))
    }
}

impl Contestant for TuringContestant {
    fn alphabet(&self) -> &Alphabet {
        &self.machine.alphabet
    }

    fn level(&self) -> LevelTag {
        self.level
    }

    fn reply(&mut self, query: &Message) -> Result<Message, ContestantFault> {
        self.startup.clone()?;
        let start = self.tape.head();
        let mut pos = start;
        for c in query.chars() {
            self.tape.poke(pos, c);
            pos += 1;
        }
        let query_end = pos;
        self.tape.poke(query_end, self.machine.alphabet.delimiter());
        let prompt_at = match self.run_until_prompt() {
            Ok(p) => p,
            Err(fault) => {
                self.startup = Err(fault.clone());
                return Err(fault);
            }
        };
        if prompt_at <= query_end {
            return Err(ContestantFault(format!(
                "prompt written at {prompt_at}, inside the query region ending at {query_end}"
            )));
        }
        let reply: String = (query_end + 1..prompt_at).map(|p| self.tape.peek(p)).collect();
        if let Some(c) = self.machine.alphabet.first_foreign(&reply) {
            return Err(ContestantFault(format!("reply region contains {c:?}")));
        }
        Ok(Message::from(reply))
    }

    fn reset(&mut self) {
        self.tape = FlatTape::new(self.machine.spec.blank());
        self.state = self.machine.spec.initial();
        self.startup = self.run_until_prompt().map(|_| ());
    }

    fn describe(&self) -> ContestantDescription {
        ContestantDescription {
            name: self.name.clone(),
            level: self.level,
            machine: Some(super::format::dialogue_turing_to_value(&self.machine)),
        }
    }
}
