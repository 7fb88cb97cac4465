//! Bounded-state identification: under the promise that the contestant is
//! a transducer with at most `k` states, its behaviour can be learned
//! exactly; without it, the learner may instead prove the promise false.

mod probe;
mod table;
mod wmethod;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::dialogue::{Alphabet, ContestantFault};
use crate::machines::{Edge, MealyTransducer};

pub use probe::{MealyProbe, Probe, ProbeRecord, RoundProbe};
pub use table::{distinguishing_evidence, ObservationTable, Separation};
pub use wmethod::{access_words, characterizing_set, separating_word, transition_cover, wmethod_suite};

use probe::ProbeHarness;

/// Default cap on the total number of symbols fed to probes.
pub const DEFAULT_SYMBOL_CAP: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "kebab-case")]
pub enum IdentifyOutcome {
    Identified {
        hypothesis: MealyTransducer,
        queries_used: usize,
    },
    /// `prefixes` are `k + 1` words whose observed behaviours pairwise differ;
    /// `evidence` names a separating suffix for each pair.
    ExceedsBound {
        prefixes: Vec<String>,
        evidence: Vec<Separation>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IdentifyError {
    #[error("state bound must be at least 1")]
    ZeroBound,
    #[error("probe budget of {0} symbols exceeded")]
    QueryBudgetExceeded(u64),
    #[error(transparent)]
    Fault(#[from] ContestantFault),
}

/// An identification run and everything needed to re-check it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentifyReport {
    pub outcome: IdentifyOutcome,
    pub queries_used: usize,
    pub symbols_used: u64,
    pub probe_log: Vec<ProbeRecord>,
    pub table: ObservationTable,
}

pub fn learn_bounded(probe: &mut dyn Probe, k: usize, alphabet: &Alphabet) -> Result<IdentifyReport, IdentifyError> {
    learn_bounded_with_cap(probe, k, alphabet, DEFAULT_SYMBOL_CAP)
}

/// Observation-table learning with a bounded conformance suite as the
/// equivalence check.
///
/// Returns `ExceedsBound` as soon as `k + 1` prefixes with pairwise distinct
/// rows are observed. Otherwise refines until a hypothesis with `m` states
/// passes [`wmethod_suite`] for bound `k` and agrees on every word of length
/// `k + m - 1`. Either check alone is complete for contestants with at most
/// `k` states; the second also exposes unbounded ones, such as the bracket
/// contestant, whose first deviation lies beyond the suite's reach.
pub fn learn_bounded_with_cap(
    probe: &mut dyn Probe,
    k: usize,
    alphabet: &Alphabet,
    symbol_cap: u64,
) -> Result<IdentifyReport, IdentifyError> {
    if k == 0 {
        return Err(IdentifyError::ZeroBound);
    }
    let mut harness = ProbeHarness::new(probe, symbol_cap);
    let mut table = ObservationTable::new(alphabet.clone());
    let outcome = 'learn: loop {
        fill(&mut table, &mut harness)?;

        let distinct = table.distinct_rows();
        if distinct.len() > k {
            let prefixes = distinct[..=k].to_vec();
            let evidence = table::evidence_for(&table, &prefixes);
            break IdentifyOutcome::ExceedsBound { prefixes, evidence };
        }

        if let Some(w) = unclosed(&table) {
            table.add_prefix(w);
            continue;
        }
        if let Some(e) = inconsistency(&table) {
            table.add_suffix(e);
            continue;
        }

        let hypothesis = hypothesis(&table);
        let m = hypothesis.state_count();
        let exhaustive = alphabet.words_of_length(k + m - 1);
        for w in wmethod_suite(&hypothesis, k, alphabet).into_iter().chain(exhaustive) {
            let expected = hypothesis.run_word(&w).expect("suite words are over the alphabet");
            if harness.outputs(&w)? != expected.as_slice() {
                let mut prefix = String::new();
                for c in w.chars() {
                    prefix.push(c);
                    table.add_prefix(prefix.clone());
                }
                continue 'learn;
            }
        }
        break IdentifyOutcome::Identified {
            hypothesis,
            queries_used: harness.log.len(),
        };
    };
    Ok(IdentifyReport {
        outcome,
        queries_used: harness.log.len(),
        symbols_used: harness.log.iter().map(|r| r.outputs.len() as u64).sum(),
        probe_log: harness.log,
        table,
    })
}

fn fill(table: &mut ObservationTable, harness: &mut ProbeHarness<'_>) -> Result<(), IdentifyError> {
    for u in table.rows_index() {
        for e in table.suffixes().to_vec() {
            if !table.is_filled(&u, &e) {
                let cell = harness.cell(&u, &e)?;
                table.set(&u, &e, cell);
            }
        }
    }
    Ok(())
}

/// First row of `S·Σ` that matches no row of `S`.
fn unclosed(table: &ObservationTable) -> Option<String> {
    let s_rows: Vec<_> = table.prefixes().iter().map(|s| table.row(s)).collect();
    for s in table.prefixes() {
        for &a in table.alphabet().symbols() {
            let w = format!("{s}{a}");
            if !s_rows.contains(&table.row(&w)) {
                return Some(w);
            }
        }
    }
    None
}

/// A suffix `a·e` separating two prefixes of `S` that share a row.
fn inconsistency(table: &ObservationTable) -> Option<String> {
    let s = table.prefixes();
    for (i, s1) in s.iter().enumerate() {
        for s2 in &s[i + 1..] {
            if table.row(s1) != table.row(s2) {
                continue;
            }
            for &a in table.alphabet().symbols() {
                let (x, y) = (format!("{s1}{a}"), format!("{s2}{a}"));
                if let Some(e) = table.separator(&x, &y) {
                    return Some(format!("{a}{e}"));
                }
            }
        }
    }
    None
}

/// States are the distinct rows of `S`; the output on `a` is read from the
/// column of the one-symbol suffix `a`.
fn hypothesis(table: &ObservationTable) -> MealyTransducer {
    let mut reps: Vec<&String> = Vec::new();
    let mut rows = Vec::new();
    for s in table.prefixes() {
        let r = table.row(s);
        if !rows.contains(&r) {
            rows.push(r);
            reps.push(s);
        }
    }
    let alphabet = table.alphabet().clone();
    let symbols = alphabet.symbols().to_vec();
    MealyTransducer::from_fn(alphabet, false, reps.len(), 0, |q, col| {
        let a = symbols[col];
        let target_row = table.row(&format!("{}{a}", reps[q]));
        let target = rows.iter().position(|r| *r == target_row).expect("table is closed");
        let out = table.cell(reps[q], &a.to_string()).expect("single symbols are suffixes");
        Edge::new(target, out[0].clone())
    })
    .expect("hypothesis table is total")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::machines::bracket_contestant;

    #[test]
    fn constant_responder() {
        let silent = MealyTransducer::silent(Alphabet::binary());
        let r = learn_bounded(&mut MealyProbe::new(&silent), 1, &Alphabet::binary()).unwrap();
        let IdentifyOutcome::Identified { hypothesis, .. } = r.outcome else {
            panic!("{:?}", r.outcome)
        };
        assert_eq!(hypothesis.state_count(), 1);
        for w in Alphabet::binary().words_up_to(6) {
            assert_eq!(hypothesis.run_word(&w).unwrap(), silent.run_word(&w).unwrap());
        }
    }

    #[test]
    fn parity_k2() {
        let ab = Alphabet::new(['a', 'b', '0', '1'], '#').unwrap();
        let parity = MealyTransducer::parity(ab.clone());
        let r = learn_bounded(&mut MealyProbe::new(&parity), 2, &ab).unwrap();
        let IdentifyOutcome::Identified { hypothesis, queries_used } = r.outcome else {
            panic!()
        };
        assert_eq!(hypothesis.minimize(), parity.minimize());
        assert_eq!(queries_used, r.probe_log.len());
    }

    #[test]
    fn bracket_exceeds_three() {
        let mut b = bracket_contestant(Alphabet::binary(), '0', '1').unwrap();
        let r = learn_bounded(&mut b, 3, &Alphabet::binary()).unwrap();
        let IdentifyOutcome::ExceedsBound { prefixes, evidence } = r.outcome else {
            panic!("{:?}", r.outcome)
        };
        assert_eq!(prefixes.len(), 4);
        assert_eq!(evidence.len(), 6);
    }

    #[test]
    fn tiny_cap() {
        let parity = MealyTransducer::parity(Alphabet::binary());
        assert_eq!(
            learn_bounded_with_cap(&mut MealyProbe::new(&parity), 2, &Alphabet::binary(), 3),
            Err(IdentifyError::QueryBudgetExceeded(3))
        );
    }

    #[test]
    fn evidence_on_parity_table() {
        let ab = Alphabet::new(['a', 'b', '0', '1'], '#').unwrap();
        let parity = MealyTransducer::parity(ab.clone());
        let r = learn_bounded(&mut MealyProbe::new(&parity), 2, &ab).unwrap();
        let ev = distinguishing_evidence(&r.table);
        assert_eq!(
            ev,
            [Separation {
                first: String::new(),
                second: "a".into(),
                suffix: "a".into()
            }]
        );
    }

    #[test]
    fn suite_shapes() {
        let one = MealyTransducer::silent(Alphabet::binary());
        assert_eq!(wmethod_suite(&one, 1, &Alphabet::binary()), ["", "0", "1"]);
        let parity = MealyTransducer::parity(Alphabet::binary());
        let s2 = wmethod_suite(&parity, 2, &Alphabet::binary());
        let s3 = wmethod_suite(&parity, 3, &Alphabet::binary());
        assert!(s2.iter().all(|w| s3.contains(w)) && s3.len() > s2.len());
    }

    #[test]
    fn suite_catches_a_flipped_output() {
        let alphabet = Alphabet::binary();
        let parity = MealyTransducer::parity(alphabet.clone());
        let flipped = MealyTransducer::from_fn(alphabet.clone(), false, 2, 0, |q, c| {
            let e = parity.edge(q, c).clone();
            if (q, c) == (1, 1) {
                Edge::new(e.target, if e.output == "1" { "0" } else { "1" })
            } else {
                e
            }
        })
        .unwrap();
        let suite = wmethod_suite(&parity, 2, &alphabet);
        assert!(suite.iter().all(|w| parity.run_word(w).unwrap() == parity.run_word(w).unwrap()));
        assert!(suite.iter().any(|w| parity.run_word(w).unwrap() != flipped.run_word(w).unwrap()));
    }
}
