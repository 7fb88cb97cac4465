use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{Contestant, ContestantFault, DialogueTranscript, Interrogator, InterrogatorStep, Round, Verdict};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum SessionResult {
    Declared(Verdict),
    /// The interrogator was still asking after this many rounds.
    Exhausted(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SessionOutcome {
    pub transcript: DialogueTranscript,
    pub result: SessionResult,
}

impl SessionOutcome {
    pub fn verdict(&self) -> Option<Verdict> {
        match self.result {
            SessionResult::Declared(v) => Some(v),
            SessionResult::Exhausted(_) => None,
        }
    }

    /// Like [`check_determinism`], and additionally requires the interrogator
    /// to repeat the recorded verdict after the final round.
    pub fn replays_under(&self, interrogator: &dyn Interrogator) -> bool {
        if !check_determinism(interrogator, &self.transcript) {
            return false;
        }
        match self.result {
            SessionResult::Declared(v) => {
                interrogator.next(&self.transcript) == InterrogatorStep::Declare(v)
            }
            SessionResult::Exhausted(_) => {
                matches!(interrogator.next(&self.transcript), InterrogatorStep::Ask(_))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SessionError {
    #[error("round budget must be at least 1")]
    ZeroBudget,
    #[error("round {round}: {fault}")]
    ContestantFault { round: usize, fault: ContestantFault },
    #[error("round {round}: interrogator asked {query:?}, which contains {symbol:?} outside the contestant's alphabet")]
    ForeignQuery { round: usize, query: String, symbol: char },
}

/// Alternates interrogator and contestant until a verdict or until
/// `max_rounds` rounds have been exchanged.
///
/// The interrogator is always consulted once more after the last exchanged
/// round, so a verdict issued right at the budget still counts.
pub fn run_session(
    interrogator: &dyn Interrogator,
    contestant: &mut dyn Contestant,
    max_rounds: usize,
) -> Result<SessionOutcome, SessionError> {
    if max_rounds == 0 {
        return Err(SessionError::ZeroBudget);
    }
    let mut transcript = DialogueTranscript::new();
    loop {
        let query = match interrogator.next(&transcript) {
            InterrogatorStep::Declare(v) => {
                return Ok(SessionOutcome {
                    transcript,
                    result: SessionResult::Declared(v),
                })
            }
            InterrogatorStep::Ask(q) => q,
        };
        if transcript.len() == max_rounds {
            return Ok(SessionOutcome {
                transcript,
                result: SessionResult::Exhausted(max_rounds),
            });
        }
        let round = transcript.len() + 1;
        if let Some(symbol) = contestant.alphabet().first_foreign(query.as_str()) {
            return Err(SessionError::ForeignQuery {
                round,
                query: query.into_string(),
                symbol,
            });
        }
        let reply = contestant
            .reply(&query)
            .map_err(|fault| SessionError::ContestantFault { round, fault })?;
        if let Some(c) = contestant.alphabet().first_foreign(reply.as_str()) {
            return Err(SessionError::ContestantFault {
                round,
                fault: ContestantFault(format!("reply {reply:?} contains {c:?} outside the alphabet")),
            });
        }
        transcript.push(Round { query, reply });
    }
}

/// Replays every proper prefix of `transcript` through the interrogator and
/// checks that it asks exactly the recorded next query each time.
pub fn check_determinism(interrogator: &dyn Interrogator, transcript: &DialogueTranscript) -> bool {
    (0..transcript.len()).all(|i| {
        let expected = &transcript.rounds()[i].query;
        matches!(interrogator.next(&transcript.prefix(i)), InterrogatorStep::Ask(q) if &q == expected)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dialogue::{Alphabet, Message};
    use crate::interrogators::{BracketProber, Never, Scripted, WallClock};
    use crate::machines::{bracket_contestant, MealyTransducer, TransducerContestant};

    fn letters() -> Alphabet {
        Alphabet::new('a'..='z', '#').unwrap()
    }

    #[test]
    fn scripted_ping_against_echo() {
        let interrogator = Scripted::new("ping-once", ["ping"], Some(Verdict::Level3));
        let mut echo = TransducerContestant::new("echo", MealyTransducer::echo(letters()));
        let outcome = run_session(&interrogator, &mut echo, 8).unwrap();
        assert_eq!(outcome.transcript.rounds(), &[Round::new("ping", "ping")]);
        assert_eq!(outcome.result, SessionResult::Declared(Verdict::Level3));
        assert!(outcome.replays_under(&interrogator));
    }

    #[test]
    fn budget_exhaustion() {
        let mut echo = TransducerContestant::new("echo", MealyTransducer::echo(Alphabet::binary()));
        let outcome = run_session(&Never::new("0"), &mut echo, 1).unwrap();
        assert_eq!(outcome.result, SessionResult::Exhausted(1));
        assert_eq!(outcome.transcript.len(), 1);
    }

    #[test]
    fn zero_budget_rejected() {
        let mut echo = TransducerContestant::new("echo", MealyTransducer::echo(Alphabet::binary()));
        assert_eq!(run_session(&Never::new("0"), &mut echo, 0), Err(SessionError::ZeroBudget));
    }

    #[test]
    fn bracket_prober_against_bracket_contestant() {
        let mut bracket = bracket_contestant(Alphabet::binary(), '0', '1').unwrap();
        let outcome = run_session(&BracketProber::standard(), &mut bracket, 16).unwrap();
        // balance bits by counting: "01" balanced, "0011" balanced, "0" not
        let expected: Vec<Message> = ["1", "1", "0"].into_iter().map(Message::from).collect();
        assert_eq!(outcome.transcript.replies().cloned().collect::<Vec<_>>(), expected);
        assert_eq!(outcome.result, SessionResult::Declared(Verdict::BelowLevel3));
    }

    #[test]
    fn foreign_query_is_rejected() {
        let interrogator = Scripted::new("bad", ["2"], None);
        let mut echo = TransducerContestant::new("echo", MealyTransducer::echo(Alphabet::binary()));
        assert!(matches!(
            run_session(&interrogator, &mut echo, 4),
            Err(SessionError::ForeignQuery { symbol: '2', .. })
        ));
    }

    struct Liar(Alphabet);

    impl Contestant for Liar {
        fn alphabet(&self) -> &Alphabet {
            &self.0
        }
        fn level(&self) -> crate::dialogue::LevelTag {
            crate::dialogue::LevelTag::Level3
        }
        fn reply(&mut self, _: &Message) -> Result<Message, ContestantFault> {
            Ok(Message::from("x"))
        }
        fn reset(&mut self) {}
        fn describe(&self) -> crate::dialogue::ContestantDescription {
            unimplemented!()
        }
    }

    #[test]
    fn reply_outside_alphabet_is_a_fault() {
        let err = run_session(&Never::new("0"), &mut Liar(Alphabet::binary()), 3).unwrap_err();
        assert!(matches!(err, SessionError::ContestantFault { round: 1, .. }));
    }

    #[test]
    fn empty_transcript_is_trivially_deterministic() {
        assert!(check_determinism(&WallClock::new(1, Verdict::Level3), &DialogueTranscript::new()));
    }

    #[test]
    fn wall_clock_fails_replay() {
        let clock = WallClock::new(2, Verdict::Level3);
        let mut echo = TransducerContestant::new("echo", MealyTransducer::echo(Alphabet::binary()));
        let outcome = run_session(&clock, &mut echo, 8).unwrap();
        assert_eq!(outcome.transcript.len(), 2);
        assert!(!check_determinism(&clock, &outcome.transcript));
    }
}
