use rand::Rng;

use super::MachineError;
use crate::dialogue::Alphabet;

/// Deterministic finite acceptor with a total transition table.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Acceptor {
    alphabet: Alphabet,
    states: Vec<String>,
    initial: usize,
    /// `table[state * |alphabet| + symbol]`
    table: Vec<usize>,
    accepting: Vec<bool>,
}

impl Acceptor {
    pub fn new(
        alphabet: Alphabet,
        states: Vec<String>,
        initial: usize,
        table: Vec<usize>,
        accepting: Vec<bool>,
    ) -> Result<Self, MachineError> {
        if states.is_empty() {
            return Err(MachineError::NoStates);
        }
        for (i, s) in states.iter().enumerate() {
            if states[..i].contains(s) {
                return Err(MachineError::DuplicateState(s.clone()));
            }
        }
        let expected = states.len() * alphabet.len();
        if table.len() != expected || accepting.len() != states.len() {
            return Err(MachineError::IncompleteTable {
                expected,
                found: table.len(),
            });
        }
        if initial >= states.len() {
            return Err(MachineError::StateOutOfRange(initial));
        }
        if let Some(&bad) = table.iter().find(|&&t| t >= states.len()) {
            return Err(MachineError::StateOutOfRange(bad));
        }
        Ok(Acceptor {
            alphabet,
            states,
            initial,
            table,
            accepting,
        })
    }

    /// One state, accepting everything.
    pub fn accept_all(alphabet: Alphabet) -> Self {
        let n = alphabet.len();
        Acceptor::new(alphabet, vec!["q0".into()], 0, vec![0; n], vec![true]).expect("well formed")
    }

    /// Two states tracking the parity of the word length; accepts even lengths.
    pub fn even_length(alphabet: Alphabet) -> Self {
        let n = alphabet.len();
        let table = (0..2).flat_map(|q| std::iter::repeat_n(1 - q, n)).collect();
        Acceptor::new(alphabet, vec!["even".into(), "odd".into()], 0, table, vec![true, false]).expect("well formed")
    }

    /// Uniformly random total acceptor with `n` states.
    pub fn random(alphabet: Alphabet, n: usize, rng: &mut impl Rng) -> Self {
        let table = (0..n * alphabet.len()).map(|_| rng.random_range(0..n)).collect();
        let accepting = (0..n).map(|_| rng.random_bool(0.5)).collect();
        let initial = rng.random_range(0..n);
        Acceptor::new(alphabet, super::mealy::numbered_states(n), initial, table, accepting).expect("well formed")
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
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

    pub fn is_accepting(&self, state: usize) -> bool {
        self.accepting[state]
    }

    pub fn target(&self, state: usize, symbol: usize) -> usize {
        self.table[state * self.alphabet.len() + symbol]
    }

    pub fn state_after(&self, word: &str) -> Result<usize, MachineError> {
        word.chars().try_fold(self.initial, |q, c| {
            let s = self.alphabet.index_of(c).ok_or(MachineError::ForeignSymbol(c))?;
            Ok(self.target(q, s))
        })
    }

    pub fn accepts(&self, word: &str) -> Result<bool, MachineError> {
        Ok(self.accepting[self.state_after(word)?])
    }
}

/// Membership in the balanced-bracket language: as many `open` as `close`,
/// and no prefix with more `close` than `open`. Other symbols are ignored.
pub fn is_balanced(word: &str, open: char, close: char) -> bool {
    let mut depth: i64 = 0;
    for c in word.chars() {
        if c == open {
            depth += 1;
        } else if c == close {
            depth -= 1;
            if depth < 0 {
                return false;
            }
        }
    }
    depth == 0
}
