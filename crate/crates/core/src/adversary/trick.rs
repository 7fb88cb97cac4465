use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::hardcode::hardcode_dialogue;
use super::lift::lift_to_pushdown;
use crate::dialogue::{
    run_session, Contestant, ContestantDescription, DialogueTranscript, Interrogator, LevelTag, SessionError,
    SessionOutcome, Verdict,
};
use crate::machines::{MachineError, MealyTransducer, PushdownContestant, TransducerContestant};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Claim {
    /// "This interrogator recognizes level-3 contestants."
    Level3Recognition,
    /// "This interrogator recognizes contestants below level 3."
    BelowLevel3Recognition,
}

/// Two contestants of different levels that the interrogator cannot tell
/// apart: same transcript, same verdict, and the verdict is wrong for one.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrickWitness {
    pub claim_violated: Claim,
    pub original: ContestantDescription,
    pub clone: ContestantDescription,
    pub transcript_original: DialogueTranscript,
    pub transcript_clone: DialogueTranscript,
    pub verdict: Verdict,
}

impl TrickWitness {
    /// Identical transcripts, and the verdict is right for exactly one side.
    pub fn is_sound(&self) -> bool {
        self.transcript_original == self.transcript_clone
            && self.verdict.is_correct_for(self.original.level) != self.verdict.is_correct_for(self.clone.level)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TrickError {
    #[error("no verdict within {0} rounds")]
    NoVerdict(usize),
    #[error("interrogator declared {0:?}, which this trick does not target")]
    UnexpectedVerdict(Verdict),
    #[error("interrogator is not deterministic: the replayed session diverged")]
    DeterminismViolation {
        first: Box<SessionOutcome>,
        second: Box<SessionOutcome>,
    },
    #[error("seed contestant has level {0}, expected one below level 3")]
    SeedLevel(LevelTag),
    #[error(transparent)]
    Session(#[from] SessionError),
    #[error(transparent)]
    Machine(#[from] MachineError),
}

/// Defeats the claim "I recognize level 3": whenever `interrogator` declares
/// `Level3` on the transducer `seed`, a pushdown clone of the seed draws the
/// same dialogue and the same verdict.
pub fn trick_level3(
    interrogator: &dyn Interrogator,
    seed: &MealyTransducer,
    budget: usize,
) -> Result<TrickWitness, TrickError> {
    let mut original = TransducerContestant::new("seed", seed.clone());
    let first = declared(run_session(interrogator, &mut original, budget)?, Verdict::Level3, budget)?;
    let mut clone = PushdownContestant::new("seed-lift2", lift_to_pushdown(seed));
    let second = run_session(interrogator, &mut clone, budget)?;
    witness(Claim::Level3Recognition, &original, &clone, first, second)
}

/// Defeats the claim "I recognize contestants below level 3": whenever
/// `interrogator` declares `BelowLevel3` on `seed`, the dialogue hard-coded
/// into a transducer draws the same dialogue and the same verdict.
pub fn trick_below3(
    interrogator: &dyn Interrogator,
    seed: &mut dyn Contestant,
    budget: usize,
) -> Result<TrickWitness, TrickError> {
    if seed.level() == LevelTag::Level3 {
        return Err(TrickError::SeedLevel(seed.level()));
    }
    seed.reset();
    let first = declared(run_session(interrogator, seed, budget)?, Verdict::BelowLevel3, budget)?;
    let machine = hardcode_dialogue(&first.transcript, seed.alphabet())?;
    let mut clone = TransducerContestant::new("hard-coded", machine);
    let second = run_session(interrogator, &mut clone, budget)?;
    witness(Claim::BelowLevel3Recognition, seed, &clone, first, second)
}

fn declared(outcome: SessionOutcome, wanted: Verdict, budget: usize) -> Result<SessionOutcome, TrickError> {
    match outcome.verdict() {
        None => Err(TrickError::NoVerdict(budget)),
        Some(v) if v != wanted => Err(TrickError::UnexpectedVerdict(v)),
        Some(_) => Ok(outcome),
    }
}

fn witness(
    claim: Claim,
    original: &dyn Contestant,
    clone: &dyn Contestant,
    first: SessionOutcome,
    second: SessionOutcome,
) -> Result<TrickWitness, TrickError> {
    if first != second {
        return Err(TrickError::DeterminismViolation {
            first: Box::new(first),
            second: Box::new(second),
        });
    }
    let verdict = first.verdict().expect("checked by declared()");
    Ok(TrickWitness {
        claim_violated: claim,
        original: original.describe(),
        clone: clone.describe(),
        transcript_original: first.transcript,
        transcript_clone: second.transcript,
        verdict,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dialogue::Alphabet;
    use crate::interrogators::{BracketProber, Never, Scripted, WallClock};
    use crate::machines::bracket_contestant;

    fn echo() -> MealyTransducer {
        MealyTransducer::echo(Alphabet::binary())
    }

    #[test]
    fn level3_after_one_round() {
        let i = Scripted::new("always-level3", ["01"], Some(Verdict::Level3));
        let w = trick_level3(&i, &echo(), 16).unwrap();
        assert!(w.is_sound());
        assert_eq!(w.clone.level, LevelTag::Level2);
        assert_eq!(w.claim_violated, Claim::Level3Recognition);
    }

    #[test]
    fn never_declaring() {
        assert_eq!(trick_level3(&Never::new("0"), &echo(), 16), Err(TrickError::NoVerdict(16)));
        let mut b = bracket_contestant(Alphabet::binary(), '0', '1').unwrap();
        assert_eq!(trick_below3(&Never::new("0"), &mut b, 16), Err(TrickError::NoVerdict(16)));
    }

    #[test]
    fn clock_reader_is_caught() {
        let clock = WallClock::new(1, Verdict::Level3);
        assert!(matches!(
            trick_level3(&clock, &echo(), 16),
            Err(TrickError::DeterminismViolation { .. })
        ));
    }

    #[test]
    fn bracket_prober_below3() {
        let mut b = bracket_contestant(Alphabet::binary(), '0', '1').unwrap();
        let w = trick_below3(&BracketProber::standard(), &mut b, 16).unwrap();
        assert!(w.is_sound());
        let replies: Vec<&str> = w.transcript_clone.replies().map(|m| m.as_str()).collect();
        assert_eq!(replies, ["1", "1", "0"]);
        let clone_states = w.clone.machine.as_ref().unwrap()["states"].as_array().unwrap().len();
        assert!(clone_states <= 12);
    }

    #[test]
    fn immediate_below3_gives_one_state() {
        let i = Scripted::new("always-below3", Vec::<String>::new(), Some(Verdict::BelowLevel3));
        let mut b = bracket_contestant(Alphabet::binary(), '0', '1').unwrap();
        let w = trick_below3(&i, &mut b, 16).unwrap();
        assert!(w.transcript_original.is_empty());
        assert_eq!(w.clone.machine.as_ref().unwrap()["states"].as_array().unwrap().len(), 1);
    }
}
