//! Messages, transcripts and the two roles of a dialogue: the interrogator who
//! asks and eventually declares a verdict, and the contestant who replies.

mod format;
mod session;

pub use format::{parse_transcript, write_transcript, TranscriptDocument, TranscriptFormatError};
pub use session::{check_determinism, run_session, SessionError, SessionOutcome, SessionResult};

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlphabetError {
    #[error("alphabet has no symbols")]
    Empty,
    #[error("symbol {0:?} appears more than once")]
    Duplicate(char),
    #[error("delimiter {0:?} is also an alphabet symbol")]
    DelimiterInAlphabet(char),
    #[error("symbol {0:?} is not printable")]
    NotPrintable(char),
}

/// A finite ordered set of printable symbols plus one reserved round delimiter.
///
/// Symbol order matters: it fixes the column order of transition tables and
/// the breadth-first order used for canonical forms.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "AlphabetRepr", into = "AlphabetRepr")]
pub struct Alphabet {
    symbols: Vec<char>,
    delimiter: char,
}

#[derive(Serialize, Deserialize)]
struct AlphabetRepr {
    symbols: String,
    delimiter: char,
}

impl TryFrom<AlphabetRepr> for Alphabet {
    type Error = AlphabetError;

    fn try_from(repr: AlphabetRepr) -> Result<Self, Self::Error> {
        Alphabet::new(repr.symbols.chars(), repr.delimiter)
    }
}

impl From<Alphabet> for AlphabetRepr {
    fn from(alphabet: Alphabet) -> Self {
        AlphabetRepr {
            symbols: alphabet.symbols.iter().collect(),
            delimiter: alphabet.delimiter,
        }
    }
}

/// Printable here means: visible in a one-line, tab-separated record.
pub(crate) fn is_printable(c: char) -> bool {
    !c.is_control() && !c.is_whitespace()
}

impl Alphabet {
    pub fn new(symbols: impl IntoIterator<Item = char>, delimiter: char) -> Result<Self, AlphabetError> {
        let symbols: Vec<char> = symbols.into_iter().collect();
        if symbols.is_empty() {
            return Err(AlphabetError::Empty);
        }
        for (i, &c) in symbols.iter().enumerate() {
            if !is_printable(c) {
                return Err(AlphabetError::NotPrintable(c));
            }
            if symbols[..i].contains(&c) {
                return Err(AlphabetError::Duplicate(c));
            }
        }
        if !is_printable(delimiter) {
            return Err(AlphabetError::NotPrintable(delimiter));
        }
        if symbols.contains(&delimiter) {
            return Err(AlphabetError::DelimiterInAlphabet(delimiter));
        }
        Ok(Alphabet { symbols, delimiter })
    }

    /// `{0, 1}` with `#` as delimiter, the alphabet of the bracket language.
    pub fn binary() -> Self {
        Alphabet::new(['0', '1'], '#').expect("valid alphabet")
    }

    pub fn symbols(&self) -> &[char] {
        &self.symbols
    }

    pub fn delimiter(&self) -> char {
        self.delimiter
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn contains(&self, c: char) -> bool {
        self.symbols.contains(&c)
    }

    pub fn index_of(&self, c: char) -> Option<usize> {
        self.symbols.iter().position(|&s| s == c)
    }

    /// Returns the first character of `message` outside the alphabet.
    pub fn first_foreign(&self, message: &str) -> Option<char> {
        message.chars().find(|&c| !self.contains(c))
    }

    /// All words over the alphabet of length at most `max_len`, shortest first,
    /// then in symbol order.
    pub fn words_up_to(&self, max_len: usize) -> Vec<String> {
        let mut words = vec![String::new()];
        let mut frontier = vec![String::new()];
        for _ in 0..max_len {
            frontier = self.extend_all(&frontier);
            words.extend(frontier.iter().cloned());
        }
        words
    }

    /// All words of exactly `len` symbols, in lexicographic order.
    pub fn words_of_length(&self, len: usize) -> Vec<String> {
        (0..len).fold(vec![String::new()], |frontier, _| self.extend_all(&frontier))
    }

    fn extend_all(&self, frontier: &[String]) -> Vec<String> {
        let mut next = Vec::with_capacity(frontier.len() * self.symbols.len());
        for w in frontier {
            for &c in &self.symbols {
                let mut v = w.clone();
                v.push(c);
                next.push(v);
            }
        }
        next
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, c) in self.symbols.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "}} / {}", self.delimiter)
    }
}

/// A finite, possibly empty string exchanged in one direction of a round.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Message(String);

impl Message {
    pub fn new(content: impl Into<String>) -> Self {
        Message(content.into())
    }

    pub fn empty() -> Self {
        Message(String::new())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    pub fn chars(&self) -> std::str::Chars<'_> {
        self.0.chars()
    }

    pub fn symbol_count(&self) -> usize {
        self.0.chars().count()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn into_string(self) -> String {
        self.0
    }
}

impl From<&str> for Message {
    fn from(s: &str) -> Self {
        Message(s.to_owned())
    }
}

impl From<String> for Message {
    fn from(s: String) -> Self {
        Message(s)
    }
}

impl fmt::Display for Message {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Round {
    pub query: Message,
    pub reply: Message,
}

impl Round {
    pub fn new(query: impl Into<Message>, reply: impl Into<Message>) -> Self {
        Round {
            query: query.into(),
            reply: reply.into(),
        }
    }
}

/// The rounds `(x1, y1, ..., xn, yn)` of one interrogation, in order.
///
/// Rounds can only be appended; there is no way to edit or drop a recorded round.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DialogueTranscript {
    rounds: Vec<Round>,
}

impl DialogueTranscript {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, round: Round) {
        self.rounds.push(round);
    }

    pub fn rounds(&self) -> &[Round] {
        &self.rounds
    }

    pub fn len(&self) -> usize {
        self.rounds.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rounds.is_empty()
    }

    pub fn queries(&self) -> impl Iterator<Item = &Message> + '_ {
        self.rounds.iter().map(|r| &r.query)
    }

    pub fn replies(&self) -> impl Iterator<Item = &Message> + '_ {
        self.rounds.iter().map(|r| &r.reply)
    }

    /// The transcript made of the first `n` rounds.
    pub fn prefix(&self, n: usize) -> DialogueTranscript {
        DialogueTranscript {
            rounds: self.rounds[..n.min(self.rounds.len())].to_vec(),
        }
    }

    pub fn total_query_length(&self) -> usize {
        self.queries().map(Message::symbol_count).sum()
    }
}

impl FromIterator<Round> for DialogueTranscript {
    fn from_iter<T: IntoIterator<Item = Round>>(iter: T) -> Self {
        DialogueTranscript {
            rounds: iter.into_iter().collect(),
        }
    }
}

/// The two claims an interrogator can make about a contestant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Verdict {
    /// The replies come from a finite-state transducer.
    Level3,
    /// The replies come from a device strictly above the finite-state level.
    BelowLevel3,
}

impl Verdict {
    /// Whether the verdict is right about a contestant with the given level.
    pub fn is_correct_for(self, level: LevelTag) -> bool {
        match self {
            Verdict::Level3 => level == LevelTag::Level3,
            Verdict::BelowLevel3 => level != LevelTag::Level3,
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Level3 => f.write_str("Level3"),
            Verdict::BelowLevel3 => f.write_str("BelowLevel3"),
        }
    }
}

impl std::str::FromStr for Verdict {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "Level3" | "level3" | "3" => Ok(Verdict::Level3),
            "BelowLevel3" | "below3" | "<3" => Ok(Verdict::BelowLevel3),
            other => Err(format!("unknown verdict {other:?}")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum InterrogatorStep {
    Ask(Message),
    Declare(Verdict),
}

/// Where a contestant sits, as far as the test is concerned.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum LevelTag {
    #[serde(rename = "3")]
    Level3,
    #[serde(rename = "2")]
    Level2,
    #[serde(rename = "0")]
    Level0,
    #[serde(rename = "oracle")]
    Oracle,
    #[serde(rename = "human-proxy")]
    HumanProxy,
}

impl fmt::Display for LevelTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            LevelTag::Level3 => "3",
            LevelTag::Level2 => "2",
            LevelTag::Level0 => "0",
            LevelTag::Oracle => "oracle",
            LevelTag::HumanProxy => "human-proxy",
        };
        f.write_str(s)
    }
}

/// A contestant misbehaved: replied outside its alphabet, stopped prompting,
/// or otherwise failed to produce a reply.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("contestant fault: {0}")]
pub struct ContestantFault(pub String);

/// Enough about a contestant to rebuild or audit it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ContestantDescription {
    pub name: String,
    pub level: LevelTag,
    /// Machine-spec document, when the contestant is a machine.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub machine: Option<serde_json::Value>,
}

/// The party answering queries. Implementations keep their control state
/// across rounds until [`Contestant::reset`] is called.
pub trait Contestant: Send {
    fn alphabet(&self) -> &Alphabet;

    fn level(&self) -> LevelTag;

    fn reply(&mut self, query: &Message) -> Result<Message, ContestantFault>;

    /// Return to the round-0 state.
    fn reset(&mut self);

    fn describe(&self) -> ContestantDescription;
}

impl<C: Contestant + ?Sized> Contestant for Box<C> {
    fn alphabet(&self) -> &Alphabet {
        (**self).alphabet()
    }

    fn level(&self) -> LevelTag {
        (**self).level()
    }

    fn reply(&mut self, query: &Message) -> Result<Message, ContestantFault> {
        (**self).reply(query)
    }

    fn reset(&mut self) {
        (**self).reset()
    }

    fn describe(&self) -> ContestantDescription {
        (**self).describe()
    }
}

/// The party asking. A deterministic interrogator's next step is a function of
/// the transcript so far and nothing else.
pub trait Interrogator {
    fn name(&self) -> &str;

    fn next(&self, transcript: &DialogueTranscript) -> InterrogatorStep;
}

impl<I: Interrogator + ?Sized> Interrogator for Box<I> {
    fn name(&self) -> &str {
        (**self).name()
    }

    fn next(&self, transcript: &DialogueTranscript) -> InterrogatorStep {
        (**self).next(transcript)
    }
}

impl<I: Interrogator + ?Sized> Interrogator for &I {
    fn name(&self) -> &str {
        (**self).name()
    }

    fn next(&self, transcript: &DialogueTranscript) -> InterrogatorStep {
        (**self).next(transcript)
    }
}
