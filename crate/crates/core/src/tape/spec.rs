use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Shift {
    #[serde(rename = "L")]
    Left,
    #[serde(rename = "R")]
    Right,
}

impl Shift {
    pub fn reversed(self) -> Shift {
        match self {
            Shift::Left => Shift::Right,
            Shift::Right => Shift::Left,
        }
    }
}

impl fmt::Display for Shift {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Shift::Left => "L",
            Shift::Right => "R",
        })
    }
}

/// One entry of the transition table, by index: go to `next`, write symbol
/// `write`, then move the head.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Rule {
    pub next: usize,
    pub write: usize,
    pub shift: Shift,
}

/// A transition written with names, as in machine-spec files.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Transition {
    pub from: String,
    pub read: char,
    pub to: String,
    pub write: char,
    #[serde(rename = "move")]
    pub shift: Shift,
}

impl Transition {
    pub fn new(from: &str, read: char, to: &str, write: char, shift: Shift) -> Self {
        Transition {
            from: from.to_owned(),
            read,
            to: to.to_owned(),
            write,
            shift,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpecError {
    #[error("machine has no states")]
    NoStates,
    #[error("state name {0:?} is used twice")]
    DuplicateState(String),
    #[error("unknown state {0:?}")]
    UnknownState(String),
    #[error("tape symbol {0:?} is listed twice")]
    DuplicateSymbol(char),
    #[error("unknown tape symbol {0:?}")]
    UnknownSymbol(char),
    #[error("state {0:?} is halting but has outgoing transitions")]
    TransitionFromHalting(String),
    #[error("transition from ({0:?}, {1:?}) is defined twice")]
    DuplicateTransition(String, char),
    #[error("transition table has {found} entries, expected {expected}")]
    TableSize { expected: usize, found: usize },
    #[error("rule refers to state {0} or symbol out of range")]
    RuleOutOfRange(usize),
}

/// Deterministic single-tape machine with a partial transition table.
///
/// States and symbols are addressed by index; names are kept for files and
/// display. A missing entry means the machine halts there.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TuringMachineSpec {
    states: Vec<String>,
    initial: usize,
    halting: Vec<bool>,
    symbols: Vec<char>,
    blank: usize,
    rules: Vec<Option<Rule>>,
}

impl TuringMachineSpec {
    /// Builds a spec from named parts. `symbols` must contain `blank`.
    pub fn new(
        states: &[&str],
        initial: &str,
        halting: &[&str],
        symbols: &[char],
        blank: char,
        transitions: &[Transition],
    ) -> Result<Self, SpecError> {
        let states: Vec<String> = states.iter().map(|s| s.to_string()).collect();
        let halting: Vec<String> = halting.iter().map(|s| s.to_string()).collect();
        Self::from_names(states, initial, &halting, symbols.to_vec(), blank, transitions)
    }

    pub fn from_names(
        states: Vec<String>,
        initial: &str,
        halting: &[String],
        symbols: Vec<char>,
        blank: char,
        transitions: &[Transition],
    ) -> Result<Self, SpecError> {
        if states.is_empty() {
            return Err(SpecError::NoStates);
        }
        for (i, s) in states.iter().enumerate() {
            if states[..i].contains(s) {
                return Err(SpecError::DuplicateState(s.clone()));
            }
        }
        for (i, c) in symbols.iter().enumerate() {
            if symbols[..i].contains(c) {
                return Err(SpecError::DuplicateSymbol(*c));
            }
        }
        let state_ix = |name: &str| {
            states
                .iter()
                .position(|s| s == name)
                .ok_or_else(|| SpecError::UnknownState(name.to_owned()))
        };
        let symbol_ix = |c: char| symbols.iter().position(|&s| s == c).ok_or(SpecError::UnknownSymbol(c));
        let initial = state_ix(initial)?;
        let blank = symbol_ix(blank)?;
        let mut halting_flags = vec![false; states.len()];
        for h in halting {
            halting_flags[state_ix(h)?] = true;
        }
        let mut rules = vec![None; states.len() * symbols.len()];
        for t in transitions {
            let from = state_ix(&t.from)?;
            let read = symbol_ix(t.read)?;
            if halting_flags[from] {
                return Err(SpecError::TransitionFromHalting(t.from.clone()));
            }
            let slot = &mut rules[from * symbols.len() + read];
            if slot.is_some() {
                return Err(SpecError::DuplicateTransition(t.from.clone(), t.read));
            }
            *slot = Some(Rule {
                next: state_ix(&t.to)?,
                write: symbol_ix(t.write)?,
                shift: t.shift,
            });
        }
        Ok(TuringMachineSpec {
            states,
            initial,
            halting: halting_flags,
            symbols,
            blank,
            rules,
        })
    }

    /// Builds a spec directly from an index table laid out state-major
    /// (`rules[state * symbols.len() + symbol]`).
    pub fn from_table(
        states: Vec<String>,
        initial: usize,
        halting: Vec<bool>,
        symbols: Vec<char>,
        blank: usize,
        rules: Vec<Option<Rule>>,
    ) -> Result<Self, SpecError> {
        if states.is_empty() {
            return Err(SpecError::NoStates);
        }
        let expected = states.len() * symbols.len();
        if rules.len() != expected || halting.len() != states.len() {
            return Err(SpecError::TableSize {
                expected,
                found: rules.len(),
            });
        }
        if initial >= states.len() || blank >= symbols.len() {
            return Err(SpecError::RuleOutOfRange(initial));
        }
        for (i, s) in states.iter().enumerate() {
            if states[..i].contains(s) {
                return Err(SpecError::DuplicateState(s.clone()));
            }
        }
        for (i, c) in symbols.iter().enumerate() {
            if symbols[..i].contains(c) {
                return Err(SpecError::DuplicateSymbol(*c));
            }
        }
        for (i, rule) in rules.iter().enumerate() {
            if let Some(r) = rule {
                if r.next >= states.len() || r.write >= symbols.len() {
                    return Err(SpecError::RuleOutOfRange(i));
                }
                if halting[i / symbols.len()] {
                    return Err(SpecError::TransitionFromHalting(states[i / symbols.len()].clone()));
                }
            }
        }
        Ok(TuringMachineSpec {
            states,
            initial,
            halting,
            symbols,
            blank,
            rules,
        })
    }

    pub fn state_count(&self) -> usize {
        self.states.len()
    }

    pub fn state_names(&self) -> &[String] {
        &self.states
    }

    pub fn state_name(&self, state: usize) -> &str {
        &self.states[state]
    }

    pub fn state_index(&self, name: &str) -> Option<usize> {
        self.states.iter().position(|s| s == name)
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn is_halting(&self, state: usize) -> bool {
        self.halting[state]
    }

    pub fn symbols(&self) -> &[char] {
        &self.symbols
    }

    pub fn blank(&self) -> char {
        self.symbols[self.blank]
    }

    pub fn blank_index(&self) -> usize {
        self.blank
    }

    pub fn symbol_index(&self, c: char) -> Option<usize> {
        self.symbols.iter().position(|&s| s == c)
    }

    pub fn rule(&self, state: usize, symbol: usize) -> Option<Rule> {
        self.rules[state * self.symbols.len() + symbol]
    }

    /// Whether the machine stops in `state` when reading `symbol`: either a
    /// halting state or an undefined transition.
    pub fn stops(&self, state: usize, symbol: usize) -> bool {
        self.halting[state] || self.rule(state, symbol).is_none()
    }

    /// All defined transitions in table order (state-major, then symbol order).
    pub fn transitions(&self) -> Vec<Transition> {
        let width = self.symbols.len();
        self.rules
            .iter()
            .enumerate()
            .filter_map(|(i, r)| {
                r.map(|r| Transition {
                    from: self.states[i / width].clone(),
                    read: self.symbols[i % width],
                    to: self.states[r.next].clone(),
                    write: self.symbols[r.write],
                    shift: r.shift,
                })
            })
            .collect()
    }

    pub fn halting_names(&self) -> Vec<String> {
        self.states
            .iter()
            .zip(&self.halting)
            .filter(|(_, &h)| h)
            .map(|(s, _)| s.clone())
            .collect()
    }
}
