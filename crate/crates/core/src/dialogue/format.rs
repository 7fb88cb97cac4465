//! Line-oriented transcript files.
//!
//! ```text
//! transcript<TAB>01<TAB>#
//! 1<TAB>01<TAB>1
//! 2<TAB>0011<TAB>1
//! ```
//!
//! The header carries the alphabet symbols (concatenated, in order) and the
//! delimiter. Every record is `index TAB query TAB reply`, indices count from 1,
//! and every line, the last included, ends in `\n`. The parser accepts only
//! this canonical form, so writing a parsed document reproduces the input byte
//! for byte.

use thiserror::Error;

use super::{Alphabet, AlphabetError, DialogueTranscript, Message, Round};

const MAGIC: &str = "transcript";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TranscriptDocument {
    pub alphabet: Alphabet,
    pub transcript: DialogueTranscript,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TranscriptFormatError {
    #[error("missing header line")]
    MissingHeader,
    #[error("line {line}: {reason}")]
    BadHeader { line: usize, reason: String },
    #[error("header: {0}")]
    Alphabet(#[from] AlphabetError),
    #[error("line {line}: expected 3 tab-separated fields, found {found}")]
    FieldCount { line: usize, found: usize },
    #[error("line {line}: expected round index {expected}, found {found:?}")]
    Index { line: usize, expected: usize, found: String },
    #[error("line {line}: symbol {symbol:?} is not in the alphabet")]
    ForeignSymbol { line: usize, symbol: char },
    #[error("input does not end with a newline")]
    MissingFinalNewline,
}

pub fn write_transcript(doc: &TranscriptDocument) -> String {
    let mut out = String::new();
    out.push_str(MAGIC);
    out.push('\t');
    out.extend(doc.alphabet.symbols());
    out.push('\t');
    out.push(doc.alphabet.delimiter());
    out.push('\n');
    for (i, round) in doc.transcript.rounds().iter().enumerate() {
        out.push_str(&(i + 1).to_string());
        out.push('\t');
        out.push_str(round.query.as_str());
        out.push('\t');
        out.push_str(round.reply.as_str());
        out.push('\n');
    }
    out
}

pub fn parse_transcript(input: &str) -> Result<TranscriptDocument, TranscriptFormatError> {
    if input.is_empty() {
        return Err(TranscriptFormatError::MissingHeader);
    }
    let body = input
        .strip_suffix('\n')
        .ok_or(TranscriptFormatError::MissingFinalNewline)?;
    let mut lines = body.split('\n');
    let header = lines.next().ok_or(TranscriptFormatError::MissingHeader)?;
    let alphabet = parse_header(header)?;

    let mut transcript = DialogueTranscript::new();
    for (i, line) in lines.enumerate() {
        let line_no = i + 2;
        let fields: Vec<&str> = line.split('\t').collect();
        if fields.len() != 3 {
            return Err(TranscriptFormatError::FieldCount {
                line: line_no,
                found: fields.len(),
            });
        }
        let expected = i + 1;
        if fields[0] != expected.to_string() {
            return Err(TranscriptFormatError::Index {
                line: line_no,
                expected,
                found: fields[0].to_owned(),
            });
        }
        for field in &fields[1..] {
            if let Some(symbol) = alphabet.first_foreign(field) {
                return Err(TranscriptFormatError::ForeignSymbol { line: line_no, symbol });
            }
        }
        transcript.push(Round {
            query: Message::from(fields[1]),
            reply: Message::from(fields[2]),
        });
    }
    Ok(TranscriptDocument { alphabet, transcript })
}

fn parse_header(header: &str) -> Result<Alphabet, TranscriptFormatError> {
    let bad = |reason: &str| TranscriptFormatError::BadHeader {
        line: 1,
        reason: reason.to_owned(),
    };
    let fields: Vec<&str> = header.split('\t').collect();
    if fields.len() != 3 || fields[0] != MAGIC {
        return Err(bad("expected `transcript<TAB>symbols<TAB>delimiter`"));
    }
    let mut delimiter = fields[2].chars();
    let d = match (delimiter.next(), delimiter.next()) {
        (Some(d), None) => d,
        _ => return Err(bad("delimiter must be a single symbol")),
    };
    Ok(Alphabet::new(fields[1].chars(), d)?)
}
