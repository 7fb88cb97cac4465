use crate::dialogue::{Alphabet, DialogueTranscript};
use crate::machines::{Edge, MachineError, MealyTransducer};

/// Compiles a finite dialogue into a transducer that replays it.
///
/// The machine reads the stream `x1 # x2 # ... xn #` (queries closed by the
/// delimiter) along a single path of states. Reply `yi` is emitted on the
/// delimiter transition that closes `xi`; every other on-path transition
/// emits the empty word. The last path state doubles as the sink: every
/// transition that leaves the script ends there, and it stays silent.
///
/// State count is `total query length + rounds + 1`.
pub fn hardcode_dialogue(transcript: &DialogueTranscript, alphabet: &Alphabet) -> Result<MealyTransducer, MachineError> {
    let mut path: Vec<(char, String)> = Vec::new();
    for round in transcript.rounds() {
        for message in [&round.query, &round.reply] {
            if let Some(c) = alphabet.first_foreign(message.as_str()) {
                return Err(MachineError::ForeignSymbol(c));
            }
        }
        path.extend(round.query.chars().map(|c| (c, String::new())));
        path.push((alphabet.delimiter(), round.reply.as_str().to_owned()));
    }
    let sink = path.len();
    let delimiter_column = alphabet.len();
    let column_symbol = |col: usize| alphabet.symbols().get(col).copied().unwrap_or(alphabet.delimiter());
    MealyTransducer::from_fn(alphabet.clone(), true, sink + 1, 0, |q, col| match path.get(q) {
        Some((expected, output)) if column_symbol(col) == *expected => {
            debug_assert!(col < delimiter_column || *expected == alphabet.delimiter());
            Edge::new(q + 1, output.clone())
        }
        _ => Edge::new(sink, ""),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dialogue::{Contestant, Message, Round};
    use crate::machines::TransducerContestant;

    fn abxy() -> Alphabet {
        Alphabet::new(['a', 'b', 'x', 'y'], '#').unwrap()
    }

    fn replay(m: &MealyTransducer, queries: &[&str]) -> Vec<String> {
        let mut c = TransducerContestant::new("hc", m.clone());
        queries
            .iter()
            .map(|q| c.reply(&Message::from(*q)).unwrap().into_string())
            .collect()
    }

    #[test]
    fn empty_dialogue_is_one_silent_state() {
        let m = hardcode_dialogue(&DialogueTranscript::new(), &abxy()).unwrap();
        assert_eq!(m.state_count(), 1);
        assert_eq!(replay(&m, &["ab", "", "yyy"]), ["", "", ""]);
    }

    #[test]
    fn replays_its_script() {
        let t: DialogueTranscript = [Round::new("ab", "x"), Round::new("a", "y")].into_iter().collect();
        let m = hardcode_dialogue(&t, &abxy()).unwrap();
        assert_eq!(replay(&m, &["ab", "a"]), ["x", "y"]);
        assert_eq!(m.state_count(), t.total_query_length() + t.len() + 1);
    }

    #[test]
    fn off_script_falls_silent() {
        let t: DialogueTranscript = [Round::new("ab", "x")].into_iter().collect();
        let m = hardcode_dialogue(&t, &abxy()).unwrap();
        assert_eq!(replay(&m, &["ba", "ab"]), ["", ""]);
    }

    #[test]
    fn empty_messages() {
        let t: DialogueTranscript = [Round::new("", "y"), Round::new("a", ""), Round::new("", "")].into_iter().collect();
        let m = hardcode_dialogue(&t, &abxy()).unwrap();
        assert_eq!(replay(&m, &["", "a", ""]), ["y", "", ""]);
    }

    #[test]
    fn foreign_reply_rejected() {
        let t: DialogueTranscript = [Round::new("a", "z")].into_iter().collect();
        assert_eq!(hardcode_dialogue(&t, &abxy()), Err(MachineError::ForeignSymbol('z')));
    }
}
