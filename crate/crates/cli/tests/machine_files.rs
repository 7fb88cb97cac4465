//! The machine files under `machines/` are the canonical rendering of the
//! library machines they name. `CTT_BLESS=1` rewrites them.

use std::path::PathBuf;

use ctt_core::adversary::lift_to_pushdown;
use ctt_core::dialogue::Alphabet;
use ctt_core::machines::{bracket_machine, parse_machine, write_machine, Acceptor, LoadedMachine, MealyTransducer};
use ctt_core::tape::corpus;

fn expected() -> Vec<(&'static str, LoadedMachine)> {
    let b = Alphabet::binary;
    let acceptor = |a| LoadedMachine::Acceptor {
        acceptor: a,
        brackets: Some(['0', '1']),
    };
    vec![
        ("accept-all", acceptor(Acceptor::accept_all(b()))),
        ("even-length", acceptor(Acceptor::even_length(b()))),
        ("parity", LoadedMachine::Mealy(MealyTransducer::parity(b()))),
        ("echo-lift2", LoadedMachine::Pushdown(lift_to_pushdown(&MealyTransducer::echo(b())))),
        ("bracket", LoadedMachine::Pushdown(bracket_machine(b(), '0', '1').unwrap())),
        ("writer", LoadedMachine::Turing(corpus::writer())),
        ("oscillator", LoadedMachine::Turing(corpus::oscillator())),
        ("unary-increment", LoadedMachine::Turing(corpus::unary_increment())),
        ("busy-beaver-3", LoadedMachine::Turing(corpus::busy_beaver_3())),
        ("left-walker", LoadedMachine::Turing(corpus::left_walker())),
    ]
}

#[test]
fn checked_in_machines_are_canonical() {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../machines");
    let bless = std::env::var_os("CTT_BLESS").is_some();
    for (name, machine) in expected() {
        let path = dir.join(format!("{name}.json"));
        let text = write_machine(&machine);
        if bless {
            std::fs::write(&path, &text).unwrap();
        }
        let on_disk = std::fs::read_to_string(&path).unwrap_or_default();
        assert_eq!(on_disk, text, "{}", path.display());
        assert_eq!(parse_machine(&on_disk).unwrap(), machine);
    }
}
