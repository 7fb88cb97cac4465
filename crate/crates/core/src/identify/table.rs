use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::dialogue::Alphabet;

/// Rows are indexed by words of `S ∪ S·Σ`, columns by the suffixes `E`; a
/// cell holds the words emitted on each symbol of the suffix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ObservationTable {
    alphabet: Alphabet,
    prefixes: Vec<String>,
    suffixes: Vec<String>,
    cells: HashMap<(String, String), Vec<String>>,
}

pub type Row<'a> = Vec<&'a [String]>;

/// Prefix `first` and prefix `second` emit differently on `suffix`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Separation {
    pub first: String,
    pub second: String,
    pub suffix: String,
}

impl ObservationTable {
    pub fn new(alphabet: Alphabet) -> Self {
        let suffixes = alphabet.symbols().iter().map(|c| c.to_string()).collect();
        ObservationTable {
            alphabet,
            prefixes: vec![String::new()],
            suffixes,
            cells: HashMap::new(),
        }
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    /// `S`, in insertion order.
    pub fn prefixes(&self) -> &[String] {
        &self.prefixes
    }

    /// `E`, in insertion order.
    pub fn suffixes(&self) -> &[String] {
        &self.suffixes
    }

    /// `S` followed by the members of `S·Σ` not already in `S`.
    pub fn rows_index(&self) -> Vec<String> {
        let mut all = self.prefixes.clone();
        for s in &self.prefixes {
            for &a in self.alphabet.symbols() {
                let w = format!("{s}{a}");
                if !all.contains(&w) {
                    all.push(w);
                }
            }
        }
        all
    }

    pub(crate) fn add_prefix(&mut self, w: String) -> bool {
        if self.prefixes.contains(&w) {
            return false;
        }
        self.prefixes.push(w);
        true
    }

    pub(crate) fn add_suffix(&mut self, e: String) -> bool {
        if self.suffixes.contains(&e) {
            return false;
        }
        self.suffixes.push(e);
        true
    }

    pub fn is_filled(&self, prefix: &str, suffix: &str) -> bool {
        self.cells.contains_key(&(prefix.to_owned(), suffix.to_owned()))
    }

    pub(crate) fn set(&mut self, prefix: &str, suffix: &str, outputs: Vec<String>) {
        self.cells.insert((prefix.to_owned(), suffix.to_owned()), outputs);
    }

    pub fn cell(&self, prefix: &str, suffix: &str) -> Option<&[String]> {
        self.cells
            .get(&(prefix.to_owned(), suffix.to_owned()))
            .map(Vec::as_slice)
    }

    /// The row of `prefix`; panics if some cell is missing.
    pub fn row(&self, prefix: &str) -> Row<'_> {
        self.suffixes
            .iter()
            .map(|e| self.cell(prefix, e).expect("row is filled"))
            .collect()
    }

    /// One prefix per distinct row among `S ∪ S·Σ`, first occurrence wins.
    pub fn distinct_rows(&self) -> Vec<String> {
        let mut reps: Vec<String> = Vec::new();
        let mut rows: Vec<Row<'_>> = Vec::new();
        for w in self.rows_index() {
            let r = self.row(&w);
            if !rows.contains(&r) {
                rows.push(r);
                reps.push(w);
            }
        }
        reps
    }

    /// Shortlex-least suffix in `E` (alphabet order) on which the rows of `a` and `b` differ.
    pub fn separator(&self, a: &str, b: &str) -> Option<&str> {
        let mut best: Option<&str> = None;
        for e in &self.suffixes {
            if self.cell(a, e) != self.cell(b, e) && best.is_none_or(|x| shortlex(&self.alphabet, e, x).is_lt()) {
                best = Some(e);
            }
        }
        best
    }
}

/// Shorter words first, then lexicographic in the alphabet's symbol order.
pub(crate) fn shortlex(alphabet: &Alphabet, a: &str, b: &str) -> std::cmp::Ordering {
    let key = |w: &str| -> Vec<usize> { w.chars().map(|c| alphabet.index_of(c).unwrap_or(usize::MAX)).collect() };
    a.chars().count().cmp(&b.chars().count()).then_with(|| key(a).cmp(&key(b)))
}

/// For every pair among the table's distinct-row prefixes, a suffix of `E`
/// that separates them.
pub fn distinguishing_evidence(table: &ObservationTable) -> Vec<Separation> {
    evidence_for(table, &table.distinct_rows())
}

pub(crate) fn evidence_for(table: &ObservationTable, prefixes: &[String]) -> Vec<Separation> {
    let mut out = Vec::new();
    for (i, a) in prefixes.iter().enumerate() {
        for b in &prefixes[i + 1..] {
            if let Some(e) = table.separator(a, b) {
                out.push(Separation {
                    first: a.clone(),
                    second: b.clone(),
                    suffix: e.to_owned(),
                });
            }
        }
    }
    out
}
