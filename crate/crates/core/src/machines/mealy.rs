use std::collections::{HashMap, VecDeque};
use std::sync::Arc;

use super::MachineError;
use crate::dialogue::{Alphabet, Contestant, ContestantDescription, ContestantFault, LevelTag, Message};

/// One transition of a transducer: target state and the word it emits.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Edge {
    pub target: usize,
    pub output: String,
}

impl Edge {
    pub fn new(target: usize, output: impl Into<String>) -> Self {
        Edge {
            target,
            output: output.into(),
        }
    }
}

/// Deterministic finite-state transducer with word outputs.
///
/// The table has one column per alphabet symbol and, when `uses_delimiter`
/// is set, one more column for the round delimiter. Such a machine reads the
/// delimiter after every query, so it can react to round boundaries.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MealyTransducer {
    alphabet: Alphabet,
    uses_delimiter: bool,
    states: Vec<String>,
    initial: usize,
    /// `table[state * columns + column]`
    table: Vec<Edge>,
}

impl MealyTransducer {
    pub fn new(
        alphabet: Alphabet,
        uses_delimiter: bool,
        states: Vec<String>,
        initial: usize,
        table: Vec<Edge>,
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
        let columns = alphabet.len() + usize::from(uses_delimiter);
        if table.len() != states.len() * columns {
            return Err(MachineError::IncompleteTable {
                expected: states.len() * columns,
                found: table.len(),
            });
        }
        for edge in &table {
            if edge.target >= states.len() {
                return Err(MachineError::StateOutOfRange(edge.target));
            }
            if let Some(c) = alphabet.first_foreign(&edge.output) {
                return Err(MachineError::ForeignSymbol(c));
            }
        }
        Ok(MealyTransducer {
            alphabet,
            uses_delimiter,
            states,
            initial,
            table,
        })
    }

    /// Builds a machine with states named `q0, q1, ...` from a table function
    /// `(state, column) -> edge`.
    pub fn from_fn(
        alphabet: Alphabet,
        uses_delimiter: bool,
        state_count: usize,
        initial: usize,
        mut f: impl FnMut(usize, usize) -> Edge,
    ) -> Result<Self, MachineError> {
        let columns = alphabet.len() + usize::from(uses_delimiter);
        let table = (0..state_count)
            .flat_map(|q| (0..columns).map(move |c| (q, c)))
            .map(|(q, c)| f(q, c))
            .collect();
        Self::new(alphabet, uses_delimiter, numbered_states(state_count), initial, table)
    }

    /// One state that repeats every symbol it reads.
    pub fn echo(alphabet: Alphabet) -> Self {
        let symbols = alphabet.symbols().to_vec();
        Self::from_fn(alphabet, false, 1, 0, |_, c| Edge::new(0, symbols[c].to_string())).expect("echo is well formed")
    }

    /// Two states tracking how many times the first alphabet symbol has been
    /// read; every step emits `1` if that count is odd, `0` if even. Needs
    /// an alphabet containing `0` and `1` or uses the first two symbols.
    pub fn parity(alphabet: Alphabet) -> Self {
        let (zero, one) = bit_symbols(&alphabet);
        Self::from_fn(alphabet, false, 2, 0, |q, c| {
            let next = if c == 0 { 1 - q } else { q };
            Edge::new(next, if next == 1 { one } else { zero }.to_string())
        })
        .expect("parity is well formed")
    }

    /// Emits the empty word on every symbol.
    pub fn silent(alphabet: Alphabet) -> Self {
        Self::from_fn(alphabet, false, 1, 0, |_, _| Edge::new(0, "")).expect("silent is well formed")
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn uses_delimiter(&self) -> bool {
        self.uses_delimiter
    }

    pub fn columns(&self) -> usize {
        self.alphabet.len() + usize::from(self.uses_delimiter)
    }

    /// Column index of an input character, the delimiter included when used.
    pub fn column_of(&self, c: char) -> Option<usize> {
        match self.alphabet.index_of(c) {
            Some(i) => Some(i),
            None if self.uses_delimiter && c == self.alphabet.delimiter() => Some(self.alphabet.len()),
            None => None,
        }
    }

    /// The input character of a column.
    pub fn column_symbol(&self, column: usize) -> char {
        self.alphabet
            .symbols()
            .get(column)
            .copied()
            .unwrap_or(self.alphabet.delimiter())
    }

    pub fn state_count(&self) -> usize {
        self.states.len()
    }

    pub fn state_names(&self) -> &[String] {
        &self.states
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn edge(&self, state: usize, column: usize) -> &Edge {
        &self.table[state * self.columns() + column]
    }

    /// Feeds `query` symbol by symbol from `state`, concatenating the
    /// emitted words. The delimiter column, if any, is not applied.
    pub fn transducer_reply(&self, state: usize, query: &Message) -> Result<(usize, Message), MachineError> {
        let mut state = state;
        let mut reply = String::new();
        for c in query.chars() {
            let col = self.alphabet.index_of(c).ok_or(MachineError::ForeignSymbol(c))?;
            let edge = self.edge(state, col);
            reply.push_str(&edge.output);
            state = edge.target;
        }
        Ok((state, Message::from(reply)))
    }

    /// A whole dialogue round: the query, then the delimiter when this
    /// machine reads it.
    pub fn round_reply(&self, state: usize, query: &Message) -> Result<(usize, Message), MachineError> {
        let (mut state, reply) = self.transducer_reply(state, query)?;
        let mut reply = reply.into_string();
        if self.uses_delimiter {
            let edge = self.edge(state, self.alphabet.len());
            reply.push_str(&edge.output);
            state = edge.target;
        }
        Ok((state, Message::from(reply)))
    }

    /// Output word per input symbol when reading `word` from the initial state.
    /// Characters may include the delimiter if this machine reads it.
    pub fn run_word(&self, word: &str) -> Result<Vec<String>, MachineError> {
        let mut state = self.initial;
        word.chars()
            .map(|c| {
                let col = self.column_of(c).ok_or(MachineError::ForeignSymbol(c))?;
                let edge = self.edge(state, col);
                state = edge.target;
                Ok(edge.output.clone())
            })
            .collect()
    }

    /// Minimal machine with the same input/output behaviour.
    ///
    /// Unreachable states are dropped, equivalent states merged by partition
    /// refinement, and the result numbered breadth-first from the initial
    /// state in column order, with states named `q0, q1, ...`. Two machines
    /// with the same behaviour therefore minimize to equal values.
    pub fn minimize(&self) -> MealyTransducer {
        let cols = self.columns();
        let reachable = self.bfs_order(self.initial, |q, c| self.edge(q, c).target);

        // Initial partition: by output signature.
        let mut block: HashMap<usize, usize> = HashMap::new();
        let mut ids: HashMap<Vec<&str>, usize> = HashMap::new();
        for &q in &reachable {
            let sig: Vec<&str> = (0..cols).map(|c| self.edge(q, c).output.as_str()).collect();
            let n = ids.len();
            block.insert(q, *ids.entry(sig).or_insert(n));
        }
        let mut count = ids.len();
        loop {
            let mut ids: HashMap<(usize, Vec<usize>), usize> = HashMap::new();
            let mut next: HashMap<usize, usize> = HashMap::new();
            for &q in &reachable {
                let succ: Vec<usize> = (0..cols).map(|c| block[&self.edge(q, c).target]).collect();
                let n = ids.len();
                next.insert(q, *ids.entry((block[&q], succ)).or_insert(n));
            }
            let refined = ids.len();
            block = next;
            if refined == count {
                break;
            }
            count = refined;
        }

        let representative: HashMap<usize, usize> = reachable.iter().rev().map(|&q| (block[&q], q)).collect();
        let order = self.bfs_order(block[&self.initial], |b, c| block[&self.edge(representative[&b], c).target]);
        let number: HashMap<usize, usize> = order.iter().enumerate().map(|(i, &b)| (b, i)).collect();
        let mut table = Vec::with_capacity(order.len() * cols);
        for &b in &order {
            let q = representative[&b];
            for c in 0..cols {
                let e = self.edge(q, c);
                table.push(Edge::new(number[&block[&e.target]], e.output.clone()));
            }
        }
        MealyTransducer {
            alphabet: self.alphabet.clone(),
            uses_delimiter: self.uses_delimiter,
            states: numbered_states(order.len()),
            initial: 0,
            table,
        }
    }

    fn bfs_order(&self, start: usize, succ: impl Fn(usize, usize) -> usize) -> Vec<usize> {
        let mut seen = vec![start];
        let mut queue = VecDeque::from([start]);
        while let Some(q) = queue.pop_front() {
            for c in 0..self.columns() {
                let t = succ(q, c);
                if !seen.contains(&t) {
                    seen.push(t);
                    queue.push_back(t);
                }
            }
        }
        seen
    }
}

pub(crate) fn numbered_states(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("q{i}")).collect()
}

/// The symbols a bit-valued machine emits: `0`/`1` if present, otherwise the
/// first two symbols (or the only one twice).
pub(crate) fn bit_symbols(alphabet: &Alphabet) -> (char, char) {
    if alphabet.contains('0') && alphabet.contains('1') {
        return ('0', '1');
    }
    let s = alphabet.symbols();
    (s[0], *s.get(1).unwrap_or(&s[0]))
}

/// A transducer playing as a contestant; its state persists across rounds.
#[derive(Debug, Clone)]
pub struct TransducerContestant {
    name: String,
    machine: Arc<MealyTransducer>,
    state: usize,
}

impl TransducerContestant {
    pub fn new(name: impl Into<String>, machine: MealyTransducer) -> Self {
        Self::shared(name, Arc::new(machine))
    }

    pub fn shared(name: impl Into<String>, machine: Arc<MealyTransducer>) -> Self {
        let state = machine.initial();
        TransducerContestant {
            name: name.into(),
            machine,
            state,
        }
    }

    pub fn machine(&self) -> &MealyTransducer {
        &self.machine
    }

    pub fn state(&self) -> usize {
        self.state
    }
}

impl Contestant for TransducerContestant {
    fn alphabet(&self) -> &Alphabet {
        self.machine.alphabet()
    }

    fn level(&self) -> LevelTag {
        LevelTag::Level3
    }

    fn reply(&mut self, query: &Message) -> Result<Message, ContestantFault> {
        let (state, reply) = self
            .machine
            .round_reply(self.state, query)
            .map_err(|e| ContestantFault(e.to_string()))?;
        self.state = state;
        Ok(reply)
    }

    fn reset(&mut self) {
        self.state = self.machine.initial();
    }

    fn describe(&self) -> ContestantDescription {
        ContestantDescription {
            name: self.name.clone(),
            level: LevelTag::Level3,
            machine: Some(super::format::mealy_to_value(&self.machine)),
        }
    }
}
