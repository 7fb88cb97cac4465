//! Small named machines used by tests, the CLI and the oracle examples. All
//! use `_` as blank.

use super::{Shift, Transition, TuringMachineSpec};
use Shift::{Left as L, Right as R};

fn build(states: &[&str], initial: &str, halting: &[&str], symbols: &[char], rules: &[(&str, char, &str, char, Shift)]) -> TuringMachineSpec {
    let transitions: Vec<Transition> = rules
        .iter()
        .map(|&(from, read, to, write, shift)| Transition::new(from, read, to, write, shift))
        .collect();
    TuringMachineSpec::new(states, initial, halting, symbols, '_', &transitions).expect("corpus machine is well formed")
}

/// Writes `101` left to right and halts after 3 steps.
pub fn writer() -> TuringMachineSpec {
    build(
        &["a", "b", "c", "h"],
        "a",
        &["h"],
        &['_', '0', '1'],
        &[("a", '_', "b", '1', R), ("b", '_', "c", '0', R), ("c", '_', "h", '1', R)],
    )
}

/// One state that never halts: it writes `1` on blank and moves right,
/// erases `1` and moves left. Unbounded it drifts right; clamped to a small
/// region it swings back and forth.
pub fn oscillator() -> TuringMachineSpec {
    build(&["q"], "q", &[], &['_', '1'], &[("q", '_', "q", '1', R), ("q", '1', "q", '_', L)])
}

/// Appends a `1` to a unary number and returns to its left end.
pub fn unary_increment() -> TuringMachineSpec {
    build(
        &["scan", "back", "done"],
        "scan",
        &["done"],
        &['_', '1'],
        &[
            ("scan", '1', "scan", '1', R),
            ("scan", '_', "back", '1', L),
            ("back", '1', "back", '1', L),
            ("back", '_', "done", '_', R),
        ],
    )
}

/// Counts upward in binary forever, most significant digit on the left.
pub fn binary_counter() -> TuringMachineSpec {
    build(
        &["right", "carry"],
        "right",
        &[],
        &['_', '0', '1'],
        &[
            ("right", '0', "right", '0', R),
            ("right", '1', "right", '1', R),
            ("right", '_', "carry", '_', L),
            ("carry", '1', "carry", '0', L),
            ("carry", '0', "right", '1', R),
            ("carry", '_', "right", '1', R),
        ],
    )
}

/// The 2-state, 2-symbol busy beaver champion.
pub fn busy_beaver_2() -> TuringMachineSpec {
    build(
        &["A", "B", "H"],
        "A",
        &["H"],
        &['_', '1'],
        &[
            ("A", '_', "B", '1', R),
            ("A", '1', "B", '1', L),
            ("B", '_', "A", '1', L),
            ("B", '1', "H", '1', R),
        ],
    )
}

/// A 3-state, 2-symbol machine with a long run before halting.
pub fn busy_beaver_3() -> TuringMachineSpec {
    build(
        &["A", "B", "C", "H"],
        "A",
        &["H"],
        &['_', '1'],
        &[
            ("A", '_', "B", '1', R),
            ("A", '1', "H", '1', R),
            ("B", '_', "B", '1', L),
            ("B", '1', "C", '_', R),
            ("C", '_', "C", '1', L),
            ("C", '1', "A", '1', L),
        ],
    )
}

/// Starts in its halting state.
pub fn immediate_halt() -> TuringMachineSpec {
    build(&["h"], "h", &["h"], &['_', '1'], &[])
}

/// Walks left forever writing `1`s.
pub fn left_walker() -> TuringMachineSpec {
    build(&["w"], "w", &[], &['_', '1'], &[("w", '_', "w", '1', L), ("w", '1', "w", '1', L)])
}

pub fn machines() -> Vec<(&'static str, TuringMachineSpec)> {
    vec![
        ("writer", writer()),
        ("oscillator", oscillator()),
        ("unary-increment", unary_increment()),
        ("binary-counter", binary_counter()),
        ("busy-beaver-2", busy_beaver_2()),
        ("busy-beaver-3", busy_beaver_3()),
        ("immediate-halt", immediate_halt()),
        ("left-walker", left_walker()),
    ]
}

pub fn by_name(name: &str) -> Option<TuringMachineSpec> {
    machines().into_iter().find(|(n, _)| *n == name).map(|(_, m)| m)
}
