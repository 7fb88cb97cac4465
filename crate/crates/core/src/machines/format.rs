//! Machine-spec documents (JSON, tagged by `kind`) and the canonical code
//! `<M>` of a Turing machine.
//!
//! The code of a machine is its document rendered with object keys sorted
//! and no whitespace. Decoding accepts only canonical codes, so encoding is a
//! bijection between specs and well-formed codes.

use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::acceptor::Acceptor;
use super::mealy::{Edge, MealyTransducer};
use super::oracle::OracleMachine;
use super::pushdown::{EndOfRoundRule, PushdownMachine, PushdownRule, StackAction};
use super::turing_contestant::DialogueMachine;
use super::MachineError;
use crate::dialogue::Alphabet;
use crate::tape::{Transition, TuringMachineSpec};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum MachineDocument {
    Mealy(MealyDoc),
    Acceptor(AcceptorDoc),
    Pushdown(PushdownDoc),
    Turing(TuringDoc),
    DialogueTuring(DialogueTuringDoc),
    OracleTuring(OracleTuringDoc),
}

impl MachineDocument {
    pub fn kind(&self) -> &'static str {
        match self {
            MachineDocument::Mealy(_) => "mealy",
            MachineDocument::Acceptor(_) => "acceptor",
            MachineDocument::Pushdown(_) => "pushdown",
            MachineDocument::Turing(_) => "turing",
            MachineDocument::DialogueTuring(_) => "dialogue-turing",
            MachineDocument::OracleTuring(_) => "oracle-turing",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MealyDoc {
    pub alphabet: Alphabet,
    #[serde(default)]
    pub uses_delimiter: bool,
    pub states: Vec<String>,
    pub initial: String,
    pub transitions: Vec<MealyTransitionDoc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MealyTransitionDoc {
    pub from: String,
    pub input: char,
    pub to: String,
    pub output: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AcceptorDoc {
    pub alphabet: Alphabet,
    pub states: Vec<String>,
    pub initial: String,
    pub accepting: Vec<String>,
    pub transitions: Vec<AcceptorTransitionDoc>,
    /// Bracket symbols, for acceptors claimed to decide the balanced language.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub brackets: Option<[char; 2]>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AcceptorTransitionDoc {
    pub from: String,
    pub input: char,
    pub to: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PushdownDoc {
    pub alphabet: Alphabet,
    pub states: Vec<String>,
    pub initial: String,
    pub stack_alphabet: Vec<char>,
    pub bottom: char,
    pub rules: Vec<PushdownRuleDoc>,
    #[serde(default)]
    pub end_of_round: Vec<EndOfRoundDoc>,
    #[serde(default)]
    pub reset_each_round: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PushdownRuleDoc {
    pub from: String,
    pub input: char,
    pub top: char,
    pub to: String,
    pub action: StackAction,
    pub output: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EndOfRoundDoc {
    pub from: String,
    pub top: char,
    pub to: String,
    pub action: StackAction,
    pub output: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TuringDoc {
    pub states: Vec<String>,
    pub initial: String,
    pub halting: Vec<String>,
    pub symbols: Vec<char>,
    pub blank: char,
    pub transitions: Vec<Transition>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DialogueTuringDoc {
    pub alphabet: Alphabet,
    pub prompt: char,
    pub machine: TuringDoc,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OracleTuringDoc {
    pub machine: TuringDoc,
    pub queries: Vec<QueryStateDoc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QueryStateDoc {
    pub state: String,
    pub yes: String,
    pub no: String,
}

/// A machine read from a spec document.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LoadedMachine {
    Mealy(MealyTransducer),
    Acceptor {
        acceptor: Acceptor,
        brackets: Option<[char; 2]>,
    },
    Pushdown(PushdownMachine),
    Turing(TuringMachineSpec),
    DialogueTuring(DialogueMachine),
    OracleTuring(OracleMachine),
}

impl LoadedMachine {
    pub fn kind(&self) -> &'static str {
        self.to_document().kind()
    }

    pub fn to_document(&self) -> MachineDocument {
        match self {
            LoadedMachine::Mealy(m) => MachineDocument::Mealy(mealy_doc(m)),
            LoadedMachine::Acceptor { acceptor, brackets } => MachineDocument::Acceptor(acceptor_doc(acceptor, *brackets)),
            LoadedMachine::Pushdown(m) => MachineDocument::Pushdown(pushdown_doc(m)),
            LoadedMachine::Turing(m) => MachineDocument::Turing(turing_doc(m)),
            LoadedMachine::DialogueTuring(m) => MachineDocument::DialogueTuring(DialogueTuringDoc {
                alphabet: m.alphabet().clone(),
                prompt: m.prompt(),
                machine: turing_doc(m.spec()),
            }),
            LoadedMachine::OracleTuring(m) => MachineDocument::OracleTuring(OracleTuringDoc {
                machine: turing_doc(m.spec()),
                queries: m
                    .query_states()
                    .into_iter()
                    .map(|(state, yes, no)| QueryStateDoc { state, yes, no })
                    .collect(),
            }),
        }
    }

    pub fn into_mealy(self) -> Result<MealyTransducer, MachineError> {
        match self {
            LoadedMachine::Mealy(m) => Ok(m),
            other => Err(wrong_kind("mealy", &other)),
        }
    }

    pub fn into_acceptor(self) -> Result<(Acceptor, Option<[char; 2]>), MachineError> {
        match self {
            LoadedMachine::Acceptor { acceptor, brackets } => Ok((acceptor, brackets)),
            other => Err(wrong_kind("acceptor", &other)),
        }
    }

    pub fn into_turing(self) -> Result<TuringMachineSpec, MachineError> {
        match self {
            LoadedMachine::Turing(m) => Ok(m),
            other => Err(wrong_kind("turing", &other)),
        }
    }
}

fn wrong_kind(expected: &'static str, found: &LoadedMachine) -> MachineError {
    MachineError::WrongKind {
        expected,
        found: found.kind(),
    }
}

impl MachineDocument {
    pub fn into_machine(self) -> Result<LoadedMachine, MachineError> {
        Ok(match self {
            MachineDocument::Mealy(d) => LoadedMachine::Mealy(mealy_from_doc(d)?),
            MachineDocument::Acceptor(d) => {
                let brackets = d.brackets;
                if let Some([open, close]) = brackets {
                    if open == close {
                        return Err(MachineError::SameBrackets(open));
                    }
                    for c in [open, close] {
                        if !d.alphabet.contains(c) {
                            return Err(MachineError::ForeignSymbol(c));
                        }
                    }
                }
                LoadedMachine::Acceptor {
                    acceptor: acceptor_from_doc(d)?,
                    brackets,
                }
            }
            MachineDocument::Pushdown(d) => LoadedMachine::Pushdown(pushdown_from_doc(d)?),
            MachineDocument::Turing(d) => LoadedMachine::Turing(turing_from_doc(d)?),
            MachineDocument::DialogueTuring(d) => {
                LoadedMachine::DialogueTuring(DialogueMachine::new(turing_from_doc(d.machine)?, d.alphabet, d.prompt)?)
            }
            MachineDocument::OracleTuring(d) => {
                let spec = turing_from_doc(d.machine)?;
                let queries: Vec<(&str, &str, &str)> = d
                    .queries
                    .iter()
                    .map(|q| (q.state.as_str(), q.yes.as_str(), q.no.as_str()))
                    .collect();
                LoadedMachine::OracleTuring(OracleMachine::new(spec, &queries)?)
            }
        })
    }
}

/// Parses a machine-spec document.
pub fn parse_machine(text: &str) -> Result<LoadedMachine, MachineError> {
    let doc: MachineDocument = serde_json::from_str(text).map_err(|e| MachineError::Syntax(e.to_string()))?;
    doc.into_machine()
}

pub fn load_machine_file(path: impl AsRef<Path>) -> Result<LoadedMachine, MachineError> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| MachineError::Io(format!("{}: {e}", path.display())))?;
    parse_machine(&text)
}

/// Human-oriented rendering of a machine-spec document.
pub fn write_machine(machine: &LoadedMachine) -> String {
    let mut s = serde_json::to_string_pretty(&machine.to_document()).expect("documents serialize");
    s.push('\n');
    s
}

/// The canonical code `<M>` of a Turing machine.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MachineEncoding(String);

impl MachineEncoding {
    pub fn as_str(&self) -> &str {
        &self.0
    }

    pub fn into_string(self) -> String {
        self.0
    }
}

impl std::fmt::Display for MachineEncoding {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

pub fn encode_machine(spec: &TuringMachineSpec) -> MachineEncoding {
    MachineEncoding(canonical_json(&document_value(&MachineDocument::Turing(turing_doc(spec)))))
}

pub fn decode_machine(code: &str) -> Result<TuringMachineSpec, MachineError> {
    if code.is_empty() {
        return Err(MachineError::MalformedCode("empty code".into()));
    }
    let doc: MachineDocument = serde_json::from_str(code).map_err(|e| MachineError::MalformedCode(e.to_string()))?;
    let MachineDocument::Turing(doc) = doc else {
        return Err(MachineError::MalformedCode(format!("{} is not a turing machine", doc.kind())));
    };
    let spec = turing_from_doc(doc).map_err(|e| MachineError::MalformedCode(e.to_string()))?;
    if encode_machine(&spec).as_str() != code {
        return Err(MachineError::MalformedCode("code is not in canonical form".into()));
    }
    Ok(spec)
}

fn document_value(doc: &MachineDocument) -> Value {
    serde_json::to_value(doc).expect("documents serialize")
}

/// Compact JSON with object keys in sorted order.
pub(crate) fn canonical_json(v: &Value) -> String {
    let mut out = String::new();
    write_canonical(v, &mut out);
    out
}

fn write_canonical(v: &Value, out: &mut String) {
    match v {
        Value::Array(items) => {
            out.push('[');
            for (i, item) in items.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                write_canonical(item, out);
            }
            out.push(']');
        }
        Value::Object(map) => {
            let mut keys: Vec<&String> = map.keys().collect();
            keys.sort();
            out.push('{');
            for (i, k) in keys.into_iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                out.push_str(&Value::String(k.clone()).to_string());
                out.push(':');
                write_canonical(&map[k], out);
            }
            out.push('}');
        }
        scalar => out.push_str(&scalar.to_string()),
    }
}

impl Serialize for MealyTransducer {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        MachineDocument::Mealy(mealy_doc(self)).serialize(s)
    }
}

impl<'de> Deserialize<'de> for MealyTransducer {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        match MachineDocument::deserialize(d)? {
            MachineDocument::Mealy(doc) => mealy_from_doc(doc).map_err(serde::de::Error::custom),
            other => Err(serde::de::Error::custom(format!("expected a mealy machine, found {}", other.kind()))),
        }
    }
}

pub(crate) fn mealy_to_value(m: &MealyTransducer) -> Value {
    document_value(&MachineDocument::Mealy(mealy_doc(m)))
}

pub(crate) fn pushdown_to_value(m: &PushdownMachine) -> Value {
    document_value(&LoadedMachine::Pushdown(m.clone()).to_document())
}

pub(crate) fn dialogue_turing_to_value(m: &DialogueMachine) -> Value {
    document_value(&LoadedMachine::DialogueTuring(m.clone()).to_document())
}

pub(crate) fn oracle_to_value(m: &OracleMachine) -> Value {
    document_value(&LoadedMachine::OracleTuring(m.clone()).to_document())
}

fn mealy_doc(m: &MealyTransducer) -> MealyDoc {
    let names = m.state_names();
    let mut transitions = Vec::new();
    for q in 0..m.state_count() {
        for col in 0..m.columns() {
            let e = m.edge(q, col);
            transitions.push(MealyTransitionDoc {
                from: names[q].clone(),
                input: m.column_symbol(col),
                to: names[e.target].clone(),
                output: e.output.clone(),
            });
        }
    }
    MealyDoc {
        alphabet: m.alphabet().clone(),
        uses_delimiter: m.uses_delimiter(),
        states: names.to_vec(),
        initial: names[m.initial()].clone(),
        transitions,
    }
}

fn state_lookup(states: &[String]) -> impl Fn(&str) -> Result<usize, MachineError> + '_ {
    move |name| {
        states
            .iter()
            .position(|s| s == name)
            .ok_or_else(|| MachineError::UnknownState(name.to_owned()))
    }
}

fn mealy_from_doc(d: MealyDoc) -> Result<MealyTransducer, MachineError> {
    let ix = state_lookup(&d.states);
    let columns = d.alphabet.len() + usize::from(d.uses_delimiter);
    let column_of = |c: char| match d.alphabet.index_of(c) {
        Some(i) => Ok(i),
        None if d.uses_delimiter && c == d.alphabet.delimiter() => Ok(d.alphabet.len()),
        None => Err(MachineError::ForeignSymbol(c)),
    };
    let mut table: Vec<Option<Edge>> = vec![None; d.states.len() * columns];
    for t in &d.transitions {
        let slot = &mut table[ix(&t.from)? * columns + column_of(t.input)?];
        if slot.is_some() {
            return Err(MachineError::DuplicateTransition {
                state: t.from.clone(),
                input: t.input,
            });
        }
        *slot = Some(Edge::new(ix(&t.to)?, t.output.clone()));
    }
    let initial = ix(&d.initial)?;
    let found = table.iter().filter(|e| e.is_some()).count();
    let table: Option<Vec<Edge>> = table.into_iter().collect();
    let table = table.ok_or(MachineError::IncompleteTable {
        expected: d.states.len() * columns,
        found,
    })?;
    drop(ix);
    MealyTransducer::new(d.alphabet, d.uses_delimiter, d.states, initial, table)
}

fn acceptor_doc(a: &Acceptor, brackets: Option<[char; 2]>) -> AcceptorDoc {
    let names = a.state_names();
    let symbols = a.alphabet().symbols();
    AcceptorDoc {
        alphabet: a.alphabet().clone(),
        states: names.to_vec(),
        initial: names[a.initial()].clone(),
        accepting: (0..names.len())
            .filter(|&q| a.is_accepting(q))
            .map(|q| names[q].clone())
            .collect(),
        transitions: (0..names.len())
            .flat_map(|q| (0..symbols.len()).map(move |s| (q, s)))
            .map(|(q, s)| AcceptorTransitionDoc {
                from: names[q].clone(),
                input: symbols[s],
                to: names[a.target(q, s)].clone(),
            })
            .collect(),
        brackets,
    }
}

fn acceptor_from_doc(d: AcceptorDoc) -> Result<Acceptor, MachineError> {
    let ix = state_lookup(&d.states);
    let n = d.alphabet.len();
    let mut table: Vec<Option<usize>> = vec![None; d.states.len() * n];
    for t in &d.transitions {
        let s = d.alphabet.index_of(t.input).ok_or(MachineError::ForeignSymbol(t.input))?;
        let slot = &mut table[ix(&t.from)? * n + s];
        if slot.is_some() {
            return Err(MachineError::DuplicateTransition {
                state: t.from.clone(),
                input: t.input,
            });
        }
        *slot = Some(ix(&t.to)?);
    }
    let mut accepting = vec![false; d.states.len()];
    for name in &d.accepting {
        accepting[ix(name)?] = true;
    }
    let initial = ix(&d.initial)?;
    let found = table.iter().filter(|e| e.is_some()).count();
    let table: Option<Vec<usize>> = table.into_iter().collect();
    let table = table.ok_or(MachineError::IncompleteTable {
        expected: d.states.len() * n,
        found,
    })?;
    drop(ix);
    Acceptor::new(d.alphabet, d.states, initial, table, accepting)
}

fn pushdown_doc(m: &PushdownMachine) -> PushdownDoc {
    let names = m.state_names();
    PushdownDoc {
        alphabet: m.alphabet().clone(),
        states: names.to_vec(),
        initial: names[m.initial()].clone(),
        stack_alphabet: m.stack_alphabet().to_vec(),
        bottom: m.bottom(),
        rules: m
            .rules()
            .iter()
            .map(|r| PushdownRuleDoc {
                from: names[r.from].clone(),
                input: r.input,
                top: r.top,
                to: names[r.to].clone(),
                action: r.action,
                output: r.output.clone(),
            })
            .collect(),
        end_of_round: m
            .end_of_round_rules()
            .iter()
            .map(|r| EndOfRoundDoc {
                from: names[r.from].clone(),
                top: r.top,
                to: names[r.to].clone(),
                action: r.action,
                output: r.output.clone(),
            })
            .collect(),
        reset_each_round: m.resets_each_round(),
    }
}

fn pushdown_from_doc(d: PushdownDoc) -> Result<PushdownMachine, MachineError> {
    let ix = state_lookup(&d.states);
    let rules = d
        .rules
        .iter()
        .map(|r| {
            Ok(PushdownRule {
                from: ix(&r.from)?,
                input: r.input,
                top: r.top,
                to: ix(&r.to)?,
                action: r.action,
                output: r.output.clone(),
            })
        })
        .collect::<Result<Vec<_>, MachineError>>()?;
    let end_of_round = d
        .end_of_round
        .iter()
        .map(|r| {
            Ok(EndOfRoundRule {
                from: ix(&r.from)?,
                top: r.top,
                to: ix(&r.to)?,
                action: r.action,
                output: r.output.clone(),
            })
        })
        .collect::<Result<Vec<_>, MachineError>>()?;
    let initial = ix(&d.initial)?;
    drop(ix);
    PushdownMachine::new(
        d.alphabet,
        d.states,
        initial,
        d.stack_alphabet,
        d.bottom,
        rules,
        end_of_round,
        d.reset_each_round,
    )
}

fn turing_doc(m: &TuringMachineSpec) -> TuringDoc {
    TuringDoc {
        states: m.state_names().to_vec(),
        initial: m.state_name(m.initial()).to_owned(),
        halting: m.halting_names(),
        symbols: m.symbols().to_vec(),
        blank: m.blank(),
        transitions: m.transitions(),
    }
}

fn turing_from_doc(d: TuringDoc) -> Result<TuringMachineSpec, MachineError> {
    Ok(TuringMachineSpec::from_names(
        d.states,
        &d.initial,
        &d.halting,
        d.symbols,
        d.blank,
        &d.transitions,
    )?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::machines::bracket_machine;
    use crate::tape::{corpus, Shift};

    #[test]
    fn corpus_round_trips_through_codes() {
        let machines = corpus::machines();
        for (_, spec) in &machines {
            let code = encode_machine(spec);
            assert_eq!(&decode_machine(code.as_str()).unwrap(), spec);
        }
        let mut codes: Vec<_> = machines.iter().map(|(_, m)| encode_machine(m)).collect();
        codes.sort();
        codes.dedup();
        assert_eq!(codes.len(), machines.len());
    }

    #[test]
    fn code_is_compact_and_sorted() {
        let code = encode_machine(&corpus::immediate_halt()).into_string();
        assert!(!code.contains(' ') && !code.contains('\n'));
        assert!(code.starts_with(r#"{"blank":"_","halting":["#));
        assert!(code.find("\"kind\"") < code.find("\"states\""));
    }

    #[test]
    fn malformed_codes() {
        for bad in ["", "{", "[]", r#"{"kind":"mealy"}"#, "not a machine"] {
            assert!(matches!(decode_machine(bad), Err(MachineError::MalformedCode(_))), "{bad}");
        }
        let pretty = write_machine(&LoadedMachine::Turing(corpus::writer()));
        assert!(matches!(decode_machine(&pretty), Err(MachineError::MalformedCode(_))));
    }

    #[test]
    fn one_transition_apart_means_distinct_codes() {
        let base = corpus::writer();
        let mut ts = base.transitions();
        ts[0].shift = ts[0].shift.reversed();
        let names: Vec<&str> = base.state_names().iter().map(String::as_str).collect();
        let halting = base.halting_names();
        let halting: Vec<&str> = halting.iter().map(String::as_str).collect();
        let changed = TuringMachineSpec::new(
            &names,
            base.state_name(base.initial()),
            &halting,
            base.symbols(),
            base.blank(),
            &ts,
        )
        .unwrap();
        assert_ne!(encode_machine(&base), encode_machine(&changed));
    }

    #[test]
    fn every_kind_round_trips_as_document() {
        let binary = Alphabet::binary();
        let spec = TuringMachineSpec::new(
            &["a", "q", "y", "n"],
            "a",
            &["y", "n"],
            &['_', '0', '1', '#', '?'],
            '_',
            &[Transition::new("a", '_', "q", '?', Shift::Right)],
        )
        .unwrap();
        let machines = vec![
            LoadedMachine::Mealy(MealyTransducer::parity(binary.clone())),
            LoadedMachine::Acceptor {
                acceptor: Acceptor::even_length(binary.clone()),
                brackets: Some(['0', '1']),
            },
            LoadedMachine::Pushdown(bracket_machine(binary.clone(), '0', '1').unwrap()),
            LoadedMachine::Turing(corpus::unary_increment()),
            LoadedMachine::DialogueTuring(DialogueMachine::new(spec.clone(), binary, '?').unwrap()),
            LoadedMachine::OracleTuring(OracleMachine::membership_reporter(&['a', 'b']).unwrap()),
        ];
        for m in machines {
            assert_eq!(parse_machine(&write_machine(&m)).unwrap(), m, "{}", m.kind());
        }
    }

    #[test]
    fn mealy_file_errors() {
        let missing = r##"{"kind":"mealy","alphabet":{"symbols":"01","delimiter":"#"},
            "states":["a"],"initial":"a",
            "transitions":[{"from":"a","input":"0","to":"a","output":""}]}"##;
        assert!(matches!(parse_machine(missing), Err(MachineError::IncompleteTable { .. })));
        let unknown = r##"{"kind":"mealy","alphabet":{"symbols":"01","delimiter":"#"},
            "states":["a"],"initial":"b","transitions":[]}"##;
        assert!(matches!(parse_machine(unknown), Err(MachineError::UnknownState(_))));
        let extra = r##"{"kind":"mealy","alphabet":{"symbols":"01","delimiter":"#"},
            "states":["a"],"initial":"a","transitions":[],"colour":"red"}"##;
        assert!(matches!(parse_machine(extra), Err(MachineError::Syntax(_))));
    }
}
