//! Re-implementing a transducer's dialogue behaviour at a lower level.

use serde::{Deserialize, Serialize};

use crate::dialogue::Contestant;
use crate::machines::{
    DialogueMachine, EndOfRoundRule, MachineError, MealyTransducer, PushdownContestant, PushdownMachine, PushdownRule,
    StackAction, TuringContestant,
};
use crate::tape::{Shift, Transition, TuringMachineSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum LiftTarget {
    /// Deterministic pushdown machine.
    #[serde(rename = "2")]
    Level2,
    /// Turing machine with the prompt convention.
    #[serde(rename = "0")]
    Level0,
}

impl std::str::FromStr for LiftTarget {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "2" => Ok(LiftTarget::Level2),
            "0" => Ok(LiftTarget::Level0),
            _ => Err(format!("lift target must be 2 or 0, not {s:?}")),
        }
    }
}

pub fn lift_transducer(t: &MealyTransducer, target: LiftTarget, name: &str) -> Box<dyn Contestant> {
    match target {
        LiftTarget::Level2 => Box::new(PushdownContestant::new(name, lift_to_pushdown(t))),
        LiftTarget::Level0 => Box::new(TuringContestant::new(name, lift_to_turing(t))),
    }
}

/// Same control states and outputs; the stack holds only its bottom marker
/// and is never touched. The delimiter column becomes the end-of-round rule.
pub fn lift_to_pushdown(t: &MealyTransducer) -> PushdownMachine {
    const Z: char = 'Z';
    let sigma = t.alphabet().len();
    let mut rules = Vec::with_capacity(t.state_count() * sigma);
    let mut end_of_round = Vec::new();
    for q in 0..t.state_count() {
        for col in 0..t.columns() {
            let e = t.edge(q, col);
            if col < sigma {
                rules.push(PushdownRule {
                    from: q,
                    input: t.column_symbol(col),
                    top: Z,
                    to: e.target,
                    action: StackAction::Keep,
                    output: e.output.clone(),
                });
            } else {
                end_of_round.push(EndOfRoundRule {
                    from: q,
                    top: Z,
                    to: e.target,
                    action: StackAction::Keep,
                    output: e.output.clone(),
                });
            }
        }
    }
    PushdownMachine::new(
        t.alphabet().clone(),
        t.state_names().to_vec(),
        t.initial(),
        vec![Z],
        Z,
        rules,
        end_of_round,
        false,
    )
    .expect("a transducer table is a deterministic stackless pushdown table")
}

/// A Turing machine interpreting the transducer table under the prompt
/// convention.
///
/// Consumed query symbols are overwritten with a marker `C`. For each query
/// symbol the machine marks it, walks right past the delimiter to the first
/// blank, writes the output word there, and walks back to the marker. On the
/// delimiter it runs the delimiter column (if the transducer reads it), then
/// writes the prompt after the reply.
pub fn lift_to_turing(t: &MealyTransducer) -> DialogueMachine {
    let alphabet = t.alphabet();
    let delim = alphabet.delimiter();
    let mut free = ['_', '?', '*', '~', '^', '$', '@', '%', '&', '!', '+', '=']
        .into_iter()
        .filter(|&c| !alphabet.contains(c) && c != delim);
    let (blank, prompt, consumed) = (
        free.next().expect("reserved symbol"),
        free.next().expect("reserved symbol"),
        free.next().expect("reserved symbol"),
    );
    let sigma = alphabet.symbols();
    let mut symbols = vec![blank];
    symbols.extend_from_slice(sigma);
    symbols.extend([delim, prompt, consumed]);

    let scan = |q: usize| format!("scan:{q}");
    let back = |q: usize| format!("return:{q}");
    let finish = |q: usize| format!("finish:{q}");
    let out = |q: usize, col: usize, i: usize| format!("out:{q}:{col}:{i}");

    let mut states = vec!["init".to_owned()];
    let mut ts = vec![Transition::new("init", blank, &scan(t.initial()), prompt, Shift::Right)];
    let passable: Vec<char> = sigma.iter().copied().chain([delim, consumed]).collect();

    for q in 0..t.state_count() {
        states.extend([scan(q), back(q), finish(q)]);
        for col in 0..t.columns() {
            let e = t.edge(q, col);
            let word: Vec<char> = e.output.chars().collect();
            let last_state = if col < sigma.len() { back(e.target) } else { finish(e.target) };
            let read = t.column_symbol(col);
            let write = if col < sigma.len() { consumed } else { delim };
            let after_mark = if word.is_empty() {
                if col < sigma.len() {
                    scan(e.target)
                } else {
                    finish(e.target)
                }
            } else {
                out(q, col, 0)
            };
            ts.push(Transition::new(&scan(q), read, &after_mark, write, Shift::Right));
            for (i, &w) in word.iter().enumerate() {
                let here = out(q, col, i);
                states.push(here.clone());
                for &c in &passable {
                    ts.push(Transition::new(&here, c, &here, c, Shift::Right));
                }
                let next = if i + 1 < word.len() { out(q, col, i + 1) } else { last_state.clone() };
                ts.push(Transition::new(&here, blank, &next, w, Shift::Right));
            }
        }
        if !t.uses_delimiter() {
            ts.push(Transition::new(&scan(q), delim, &finish(q), delim, Shift::Right));
        }
        for &c in sigma.iter().chain([&delim, &blank]) {
            ts.push(Transition::new(&back(q), c, &back(q), c, Shift::Left));
        }
        ts.push(Transition::new(&back(q), consumed, &scan(q), consumed, Shift::Right));
        for &c in sigma {
            ts.push(Transition::new(&finish(q), c, &finish(q), c, Shift::Right));
        }
        ts.push(Transition::new(&finish(q), blank, &scan(q), prompt, Shift::Right));
    }

    let names: Vec<&str> = states.iter().map(String::as_str).collect();
    let spec = TuringMachineSpec::new(&names, "init", &[], &symbols, blank, &ts)
        .map_err(MachineError::from)
        .expect("lifted table is well formed");
    DialogueMachine::new(spec, alphabet.clone(), prompt).expect("reserved symbols are fresh")
}
