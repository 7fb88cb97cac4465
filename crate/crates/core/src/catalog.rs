//! Built-in contestants and interrogators, addressed by id.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::adversary::{lift_to_pushdown, lift_to_turing};
use crate::dialogue::{Alphabet, Contestant, Interrogator, LevelTag, Verdict};
use crate::human::{HumanContestant, HumanInterrogator};
use crate::identify::{Probe, RoundProbe};
use crate::interrogators::{BracketProber, MirrorTest, Never, Scripted, SeededRandom};
use crate::machines::{
    bracket_contestant, Balanced, Edge, MealyTransducer, OracleContestant, OracleMachine, PushdownContestant,
    TransducerContestant, TuringContestant,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EntryKind {
    Contestant,
    Interrogator,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogEntry {
    pub id: String,
    pub kind: EntryKind,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub level: Option<LevelTag>,
    /// `built-in`, or the machine-spec file an entry was loaded from.
    pub source: String,
    pub description: String,
}

/// Every built-in catalog alphabet is `{0, 1}` with delimiter `#`.
pub fn alphabet() -> Alphabet {
    Alphabet::binary()
}

const CONTESTANTS: &[(&str, LevelTag, &str)] = &[
    ("echo", LevelTag::Level3, "transducer repeating every symbol"),
    ("parity", LevelTag::Level3, "transducer emitting the parity of 0s read so far"),
    ("alternator", LevelTag::Level3, "transducer echoing every other round and announcing turns"),
    ("echo-lift2", LevelTag::Level2, "pushdown machine behaving exactly like echo"),
    ("echo-lift0", LevelTag::Level0, "Turing machine behaving exactly like echo"),
    ("parity-lift2", LevelTag::Level2, "pushdown machine behaving exactly like parity"),
    ("parity-lift0", LevelTag::Level0, "Turing machine behaving exactly like parity"),
    ("bracket", LevelTag::Level2, "pushdown machine replying 1 iff the query is balanced (0 opens, 1 closes)"),
    ("bracket-oracle", LevelTag::Oracle, "oracle machine asking the balanced-bracket set about each query"),
    ("human", LevelTag::HumanProxy, "a person answering at the console"),
];

const INTERROGATORS: &[(&str, &str)] = &[
    ("always-level3", "asks 01 once, then declares Level3"),
    ("always-below3", "declares BelowLevel3 before asking anything"),
    ("bracket-prober", "asks 01, 0011, 0; BelowLevel3 iff all balance bits are right"),
    ("deep-bracket", "asks 0^i 1^i for i up to 4 and 00001; BelowLevel3 iff all balance bits are right"),
    ("mirror-test", "asks 0110 and 1001; Level3 iff both are echoed"),
    ("seeded-random", "three seeded pseudo-random queries; verdict by parity of 1s replied"),
    ("never", "asks 0 forever"),
    ("human", "a person asking at the console"),
];

/// Pairs of contestants with identical behaviour at different levels; the
/// service's `random` choice draws from these.
pub const RANDOM_PAIRS: &[(&str, &str)] = &[
    ("echo", "echo-lift2"),
    ("echo", "echo-lift0"),
    ("parity", "parity-lift2"),
    ("parity", "parity-lift0"),
];

pub fn entries() -> Vec<CatalogEntry> {
    let contestants = CONTESTANTS.iter().map(|&(id, level, description)| CatalogEntry {
        id: id.into(),
        kind: EntryKind::Contestant,
        level: Some(level),
        source: "built-in".into(),
        description: description.into(),
    });
    let interrogators = INTERROGATORS.iter().map(|&(id, description)| CatalogEntry {
        id: id.into(),
        kind: EntryKind::Interrogator,
        level: None,
        source: "built-in".into(),
        description: description.into(),
    });
    contestants.chain(interrogators).collect()
}

/// Two states: symbols are echoed in the first and swallowed in the second;
/// the delimiter emits the current state bit and switches state.
pub fn alternator() -> MealyTransducer {
    let a = alphabet();
    let symbols = a.symbols().to_vec();
    MealyTransducer::from_fn(a, true, 2, 0, |q, col| match symbols.get(col) {
        Some(c) if q == 0 => Edge::new(0, c.to_string()),
        Some(_) => Edge::new(1, ""),
        None => Edge::new(1 - q, q.to_string()),
    })
    .expect("alternator is well formed")
}

/// The transducers behind catalog entries, by id.
pub fn transducer(id: &str) -> Option<MealyTransducer> {
    match id {
        "echo" => Some(MealyTransducer::echo(alphabet())),
        "parity" => Some(MealyTransducer::parity(alphabet())),
        "alternator" => Some(alternator()),
        "silent" => Some(MealyTransducer::silent(alphabet())),
        _ => None,
    }
}

/// Transducers every lift must reproduce.
pub fn corpus_transducers() -> Vec<(&'static str, MealyTransducer)> {
    ["echo", "parity", "alternator", "silent"]
        .into_iter()
        .map(|id| (id, transducer(id).expect("corpus id")))
        .collect()
}

/// A fresh contestant. `human` reads from standard input.
pub fn contestant(id: &str) -> Option<Box<dyn Contestant>> {
    let lifted = |base: &str, level: char| -> Option<Box<dyn Contestant>> {
        let t = transducer(base)?;
        let name = format!("{base}-lift{level}");
        Some(match level {
            '2' => Box::new(PushdownContestant::new(name, lift_to_pushdown(&t))),
            _ => Box::new(TuringContestant::new(name, lift_to_turing(&t))),
        })
    };
    match id {
        "echo" | "parity" | "alternator" => Some(Box::new(TransducerContestant::new(id, transducer(id)?))),
        "echo-lift2" => lifted("echo", '2'),
        "echo-lift0" => lifted("echo", '0'),
        "parity-lift2" => lifted("parity", '2'),
        "parity-lift0" => lifted("parity", '0'),
        "bracket" => Some(Box::new(bracket_contestant(alphabet(), '0', '1').expect("0 and 1 are in the alphabet"))),
        "bracket-oracle" => Some(Box::new(OracleContestant::new(
            "bracket-oracle",
            alphabet(),
            OracleMachine::membership_reporter(alphabet().symbols()).expect("reporter is well formed"),
            Arc::new(Balanced { open: '0', close: '1' }),
        ))),
        "human" => Some(Box::new(HumanContestant::stdio(alphabet()))),
        _ => None,
    }
}

/// A probe harness for identification. Pushdown contestants are probed with
/// their running end-of-round output, everything else one round per symbol.
pub fn probe(id: &str) -> Option<Box<dyn Probe>> {
    match id {
        "human" => None,
        "bracket" => Some(Box::new(bracket_contestant(alphabet(), '0', '1').expect("valid brackets"))),
        "echo-lift2" | "parity-lift2" => {
            let base = id.trim_end_matches("-lift2");
            Some(Box::new(PushdownContestant::new(id, lift_to_pushdown(&transducer(base)?))))
        }
        _ => Some(Box::new(RoundProbe(contestant(id)?))),
    }
}

/// Deterministic interrogators, plus `human` reading from standard input.
pub fn interrogator(id: &str) -> Option<Box<dyn Interrogator>> {
    Some(match id {
        "always-level3" => Box::new(Scripted::new("always-level3", ["01"], Some(Verdict::Level3))),
        "always-below3" => Box::new(Scripted::new("always-below3", Vec::<String>::new(), Some(Verdict::BelowLevel3))),
        "bracket-prober" => Box::new(BracketProber::standard()),
        "deep-bracket" => Box::new(BracketProber::deep(4)),
        "mirror-test" => Box::new(MirrorTest),
        "seeded-random" => Box::new(SeededRandom::new(2024, 3, 6)),
        "never" => Box::new(Never::new("0")),
        "human" => Box::new(HumanInterrogator::stdio(alphabet())),
        _ => return None,
    })
}

/// Catalog interrogators whose next step depends on the transcript alone.
pub fn deterministic_interrogators() -> Vec<&'static str> {
    INTERROGATORS.iter().map(|(id, _)| *id).filter(|&id| id != "human").collect()
}
