use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::MachineError;
use crate::dialogue::{Alphabet, Contestant, ContestantDescription, ContestantFault, LevelTag, Message};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum StackAction {
    Keep,
    Push(char),
    Pop,
    Replace(char),
}

/// `(from, input, top) -> (to, action, output)`
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PushdownRule {
    pub from: usize,
    pub input: char,
    pub top: char,
    pub to: usize,
    pub action: StackAction,
    pub output: String,
}

/// Applied once at the end of each round: `(from, top) -> (to, action, output)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EndOfRoundRule {
    pub from: usize,
    pub top: char,
    pub to: usize,
    pub action: StackAction,
    pub output: String,
}

/// Deterministic pushdown transducer used as a level-2 contestant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PushdownMachine {
    pub(crate) alphabet: Alphabet,
    pub(crate) states: Vec<String>,
    pub(crate) initial: usize,
    pub(crate) stack_alphabet: Vec<char>,
    pub(crate) bottom: char,
    pub(crate) rules: Vec<PushdownRule>,
    pub(crate) end_of_round: Vec<EndOfRoundRule>,
    pub(crate) reset_each_round: bool,
}

/// A pair of rules that apply to the same configuration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Conflict {
    pub state: usize,
    pub input: Option<char>,
    pub top: char,
}

impl PushdownMachine {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        alphabet: Alphabet,
        states: Vec<String>,
        initial: usize,
        stack_alphabet: Vec<char>,
        bottom: char,
        rules: Vec<PushdownRule>,
        end_of_round: Vec<EndOfRoundRule>,
        reset_each_round: bool,
    ) -> Result<Self, MachineError> {
        if states.is_empty() {
            return Err(MachineError::NoStates);
        }
        for (i, s) in states.iter().enumerate() {
            if states[..i].contains(s) {
                return Err(MachineError::DuplicateState(s.clone()));
            }
        }
        if initial >= states.len() {
            return Err(MachineError::StateOutOfRange(initial));
        }
        if !stack_alphabet.contains(&bottom) {
            return Err(MachineError::UnknownStackSymbol(bottom));
        }
        let check_action = |top: char, action: StackAction| -> Result<(), MachineError> {
            if !stack_alphabet.contains(&top) {
                return Err(MachineError::UnknownStackSymbol(top));
            }
            match action {
                StackAction::Pop if top == bottom => Err(MachineError::PopsBottom),
                StackAction::Replace(c) if top == bottom && c != bottom => Err(MachineError::PopsBottom),
                StackAction::Push(c) if c == bottom => Err(MachineError::PushesBottom),
                StackAction::Replace(c) if c == bottom && top != bottom => Err(MachineError::PushesBottom),
                StackAction::Push(c) | StackAction::Replace(c) if !stack_alphabet.contains(&c) => {
                    Err(MachineError::UnknownStackSymbol(c))
                }
                _ => Ok(()),
            }
        };
        for r in &rules {
            if r.from >= states.len() || r.to >= states.len() {
                return Err(MachineError::StateOutOfRange(r.from.max(r.to)));
            }
            if !alphabet.contains(r.input) {
                return Err(MachineError::ForeignSymbol(r.input));
            }
            check_action(r.top, r.action)?;
            if let Some(c) = alphabet.first_foreign(&r.output) {
                return Err(MachineError::ForeignSymbol(c));
            }
        }
        for r in &end_of_round {
            if r.from >= states.len() || r.to >= states.len() {
                return Err(MachineError::StateOutOfRange(r.from.max(r.to)));
            }
            check_action(r.top, r.action)?;
            if let Some(c) = alphabet.first_foreign(&r.output) {
                return Err(MachineError::ForeignSymbol(c));
            }
        }
        if let Some(c) = determinism_conflicts(&rules, &end_of_round).into_iter().next() {
            return Err(MachineError::Nondeterministic {
                state: states[c.state].clone(),
                input: c.input,
                top: c.top,
            });
        }
        Ok(PushdownMachine {
            alphabet,
            states,
            initial,
            stack_alphabet,
            bottom,
            rules,
            end_of_round,
            reset_each_round,
        })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn rules(&self) -> &[PushdownRule] {
        &self.rules
    }

    pub fn end_of_round_rules(&self) -> &[EndOfRoundRule] {
        &self.end_of_round
    }

    pub fn state_names(&self) -> &[String] {
        &self.states
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn stack_alphabet(&self) -> &[char] {
        &self.stack_alphabet
    }

    pub fn bottom(&self) -> char {
        self.bottom
    }

    pub fn resets_each_round(&self) -> bool {
        self.reset_each_round
    }

    fn rule(&self, state: usize, input: char, top: char) -> Option<&PushdownRule> {
        self.rules
            .iter()
            .find(|r| r.from == state && r.input == input && r.top == top)
    }

    fn end_rule(&self, state: usize, top: char) -> Option<&EndOfRoundRule> {
        self.end_of_round.iter().find(|r| r.from == state && r.top == top)
    }
}

/// Static scan of a rule table for configurations with more than one
/// applicable rule.
pub fn determinism_conflicts(rules: &[PushdownRule], end_of_round: &[EndOfRoundRule]) -> Vec<Conflict> {
    let mut conflicts = Vec::new();
    for (i, a) in rules.iter().enumerate() {
        if rules[..i]
            .iter()
            .any(|b| b.from == a.from && b.input == a.input && b.top == a.top)
        {
            conflicts.push(Conflict {
                state: a.from,
                input: Some(a.input),
                top: a.top,
            });
        }
    }
    for (i, a) in end_of_round.iter().enumerate() {
        if end_of_round[..i].iter().any(|b| b.from == a.from && b.top == a.top) {
            conflicts.push(Conflict {
                state: a.from,
                input: None,
                top: a.top,
            });
        }
    }
    conflicts
}

fn apply(stack: &mut Vec<char>, action: StackAction) {
    match action {
        StackAction::Keep => {}
        StackAction::Push(c) => stack.push(c),
        StackAction::Pop => {
            stack.pop();
        }
        StackAction::Replace(c) => {
            if let Some(top) = stack.last_mut() {
                *top = c;
            }
        }
    }
}

/// A pushdown machine playing as a contestant.
#[derive(Debug, Clone)]
pub struct PushdownContestant {
    name: String,
    machine: Arc<PushdownMachine>,
    state: usize,
    stack: Vec<char>,
}

impl PushdownContestant {
    pub fn new(name: impl Into<String>, machine: PushdownMachine) -> Self {
        let state = machine.initial;
        let stack = vec![machine.bottom];
        PushdownContestant {
            name: name.into(),
            machine: Arc::new(machine),
            state,
            stack,
        }
    }

    pub fn machine(&self) -> &PushdownMachine {
        &self.machine
    }

    fn top(&self) -> char {
        *self.stack.last().expect("bottom marker is never popped")
    }

    fn feed(&mut self, c: char) -> Result<String, ContestantFault> {
        let top = self.top();
        let rule = self.machine.rule(self.state, c, top).ok_or_else(|| {
            ContestantFault(format!(
                "pushdown machine stuck in state {} on input {c:?} with top {top:?}",
                self.machine.states[self.state]
            ))
        })?;
        let (to, action, output) = (rule.to, rule.action, rule.output.clone());
        apply(&mut self.stack, action);
        self.state = to;
        Ok(output)
    }

    /// Per-symbol view used by probes: the word emitted on `c`, followed by
    /// what the end-of-round rule would emit in the resulting configuration
    /// (without applying it).
    pub fn probe_step(&mut self, c: char) -> Result<String, ContestantFault> {
        let mut out = self.feed(c)?;
        if let Some(r) = self.machine.end_rule(self.state, self.top()) {
            out.push_str(&r.output);
        }
        Ok(out)
    }
}

impl Contestant for PushdownContestant {
    fn alphabet(&self) -> &Alphabet {
        &self.machine.alphabet
    }

    fn level(&self) -> LevelTag {
        LevelTag::Level2
    }

    fn reply(&mut self, query: &Message) -> Result<Message, ContestantFault> {
        if self.machine.reset_each_round {
            self.reset();
        }
        let mut reply = String::new();
        for c in query.chars() {
            reply.push_str(&self.feed(c)?);
        }
        if let Some(r) = self.machine.end_rule(self.state, self.top()) {
            reply.push_str(&r.output);
            let (to, action) = (r.to, r.action);
            apply(&mut self.stack, action);
            self.state = to;
        }
        Ok(Message::from(reply))
    }

    fn reset(&mut self) {
        self.state = self.machine.initial;
        self.stack.clear();
        self.stack.push(self.machine.bottom);
    }

    fn describe(&self) -> ContestantDescription {
        ContestantDescription {
            name: self.name.clone(),
            level: LevelTag::Level2,
            machine: Some(super::format::pushdown_to_value(&self.machine)),
        }
    }
}

/// The bracket-language contestant: each round's reply is `1` if the query
/// is balanced over `open`/`close` and `0` otherwise. Other symbols are
/// ignored; the stack is cleared at the start of every round.
pub fn bracket_contestant(alphabet: Alphabet, open: char, close: char) -> Result<PushdownContestant, MachineError> {
    Ok(PushdownContestant::new("bracket", bracket_machine(alphabet, open, close)?))
}

pub fn bracket_machine(alphabet: Alphabet, open: char, close: char) -> Result<PushdownMachine, MachineError> {
    if open == close {
        return Err(MachineError::SameBrackets(open));
    }
    for c in [open, close] {
        if !alphabet.contains(c) {
            return Err(MachineError::ForeignSymbol(c));
        }
    }
    let (zero, one) = super::mealy::bit_symbols(&alphabet);
    const OK: usize = 0;
    const DEAD: usize = 1;
    let (bottom, mark) = ('Z', 'X');
    let mut rules = Vec::new();
    for &c in alphabet.symbols() {
        for top in [bottom, mark] {
            let rule = |to, action| PushdownRule {
                from: OK,
                input: c,
                top,
                to,
                action,
                output: String::new(),
            };
            rules.push(if c == open {
                rule(OK, StackAction::Push(mark))
            } else if c == close && top == mark {
                rule(OK, StackAction::Pop)
            } else if c == close {
                rule(DEAD, StackAction::Keep)
            } else {
                rule(OK, StackAction::Keep)
            });
            rules.push(PushdownRule {
                from: DEAD,
                input: c,
                top,
                to: DEAD,
                action: StackAction::Keep,
                output: String::new(),
            });
        }
    }
    let end = |from, top, bit: char| EndOfRoundRule {
        from,
        top,
        to: from,
        action: StackAction::Keep,
        output: bit.to_string(),
    };
    let end_of_round = vec![
        end(OK, bottom, one),
        end(OK, mark, zero),
        end(DEAD, bottom, zero),
        end(DEAD, mark, zero),
    ];
    PushdownMachine::new(
        alphabet,
        vec!["ok".into(), "dead".into()],
        OK,
        vec![bottom, mark],
        bottom,
        rules,
        end_of_round,
        true,
    )
}
