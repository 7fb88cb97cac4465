use serde::{Deserialize, Serialize};

use super::trick::{Claim, TrickWitness};
use crate::dialogue::{
    parse_transcript, write_transcript, Alphabet, ContestantDescription, TranscriptDocument, TranscriptFormatError,
    Verdict,
};

/// Exported form of a [`TrickWitness`]: transcripts in transcript-file
/// format, machines as machine-spec documents.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrickReport {
    pub claim_violated: Claim,
    pub verdict: Verdict,
    pub original: ContestantDescription,
    pub clone: ContestantDescription,
    pub transcript_original: String,
    pub transcript_clone: String,
}

impl TrickReport {
    pub fn new(w: &TrickWitness, alphabet: &Alphabet) -> Self {
        let file = |t: &crate::dialogue::DialogueTranscript| {
            write_transcript(&TranscriptDocument {
                alphabet: alphabet.clone(),
                transcript: t.clone(),
            })
        };
        TrickReport {
            claim_violated: w.claim_violated,
            verdict: w.verdict,
            original: w.original.clone(),
            clone: w.clone.clone(),
            transcript_original: file(&w.transcript_original),
            transcript_clone: file(&w.transcript_clone),
        }
    }

    pub fn to_witness(&self) -> Result<TrickWitness, TranscriptFormatError> {
        Ok(TrickWitness {
            claim_violated: self.claim_violated,
            original: self.original.clone(),
            clone: self.clone.clone(),
            transcript_original: parse_transcript(&self.transcript_original)?.transcript,
            transcript_clone: parse_transcript(&self.transcript_clone)?.transcript,
            verdict: self.verdict,
        })
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }
}
