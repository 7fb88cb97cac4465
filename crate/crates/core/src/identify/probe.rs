use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::IdentifyError;
use crate::dialogue::{Alphabet, Contestant, ContestantFault, Message};
use crate::machines::{MealyTransducer, PushdownContestant};

/// A resettable black box answering one input symbol at a time with the
/// word emitted on it.
pub trait Probe {
    fn alphabet(&self) -> &Alphabet;

    fn reset(&mut self);

    fn step(&mut self, symbol: char) -> Result<String, ContestantFault>;
}

impl<P: Probe + ?Sized> Probe for Box<P> {
    fn alphabet(&self) -> &Alphabet {
        (**self).alphabet()
    }

    fn reset(&mut self) {
        (**self).reset()
    }

    fn step(&mut self, symbol: char) -> Result<String, ContestantFault> {
        (**self).step(symbol)
    }
}

/// Runs a transducer table directly.
#[derive(Debug, Clone)]
pub struct MealyProbe<'a> {
    machine: &'a MealyTransducer,
    state: usize,
}

impl<'a> MealyProbe<'a> {
    pub fn new(machine: &'a MealyTransducer) -> Self {
        MealyProbe {
            machine,
            state: machine.initial(),
        }
    }
}

impl Probe for MealyProbe<'_> {
    fn alphabet(&self) -> &Alphabet {
        self.machine.alphabet()
    }

    fn reset(&mut self) {
        self.state = self.machine.initial();
    }

    fn step(&mut self, symbol: char) -> Result<String, ContestantFault> {
        let col = self
            .machine
            .alphabet()
            .index_of(symbol)
            .ok_or_else(|| ContestantFault(format!("symbol {symbol:?} outside the alphabet")))?;
        let edge = self.machine.edge(self.state, col);
        self.state = edge.target;
        Ok(edge.output.clone())
    }
}

/// Pushdown contestants answer with the running end-of-round output: for
/// the bracket contestant, whether the input read so far is balanced.
impl Probe for PushdownContestant {
    fn alphabet(&self) -> &Alphabet {
        Contestant::alphabet(self)
    }

    fn reset(&mut self) {
        Contestant::reset(self)
    }

    fn step(&mut self, symbol: char) -> Result<String, ContestantFault> {
        self.probe_step(symbol)
    }
}

/// Any contestant, fed one single-symbol round per step.
pub struct RoundProbe<C>(pub C);

impl<C: Contestant> Probe for RoundProbe<C> {
    fn alphabet(&self) -> &Alphabet {
        self.0.alphabet()
    }

    fn reset(&mut self) {
        self.0.reset()
    }

    fn step(&mut self, symbol: char) -> Result<String, ContestantFault> {
        self.0.reply(&Message::from(symbol.to_string())).map(Message::into_string)
    }
}

/// One probe session: a fresh contestant fed `word`, and the word emitted on
/// each of its symbols.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProbeRecord {
    pub word: String,
    pub outputs: Vec<String>,
}

/// Issues probes through a cache; every cache miss is one logged session.
pub(crate) struct ProbeHarness<'p> {
    probe: &'p mut dyn Probe,
    cache: HashMap<String, Vec<String>>,
    pub(crate) log: Vec<ProbeRecord>,
    symbols: u64,
    cap: u64,
}

impl<'p> ProbeHarness<'p> {
    pub(crate) fn new(probe: &'p mut dyn Probe, cap: u64) -> Self {
        ProbeHarness {
            probe,
            cache: HashMap::from([(String::new(), Vec::new())]),
            log: Vec::new(),
            symbols: 0,
            cap,
        }
    }

    pub(crate) fn outputs(&mut self, word: &str) -> Result<&[String], IdentifyError> {
        if !self.cache.contains_key(word) {
            let len = word.chars().count() as u64;
            if self.symbols + len > self.cap {
                return Err(IdentifyError::QueryBudgetExceeded(self.cap));
            }
            self.symbols += len;
            self.probe.reset();
            let mut outputs = Vec::with_capacity(len as usize);
            let mut prefix = String::new();
            for c in word.chars() {
                outputs.push(self.probe.step(c)?);
                prefix.push(c);
                self.cache.entry(prefix.clone()).or_insert_with(|| outputs.clone());
            }
            self.log.push(ProbeRecord {
                word: word.to_owned(),
                outputs,
            });
        }
        Ok(&self.cache[word])
    }

    /// Outputs on `suffix` after reading `prefix`.
    pub(crate) fn cell(&mut self, prefix: &str, suffix: &str) -> Result<Vec<String>, IdentifyError> {
        let skip = prefix.chars().count();
        let word = format!("{prefix}{suffix}");
        Ok(self.outputs(&word)?[skip..].to_vec())
    }
}
