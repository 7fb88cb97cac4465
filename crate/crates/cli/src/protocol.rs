//! Request and response bodies of the session service. All bodies are JSON.
//!
//! | method | path                          | request           | response           |
//! |--------|-------------------------------|-------------------|--------------------|
//! | POST   | `/sessions`                   | [`CreateSession`] | [`SessionCreated`] |
//! | POST   | `/sessions/{id}/query`        | [`QueryRequest`]  | [`QueryResponse`]  |
//! | POST   | `/sessions/{id}/verdict`      | [`VerdictRequest`]| [`VerdictResponse`]|
//! | GET    | `/sessions/{id}/transcript`   |                   | [`TranscriptView`] |
//! | GET    | `/catalog`                    |                   | `[CatalogEntry]`   |
//! | GET    | `/scoreboard`                 |                   | [`Scoreboard`]     |
//!
//! Errors come back as [`ErrorBody`] with a 4xx or 5xx status.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use ctt_core::dialogue::{Alphabet, LevelTag, Round, Verdict};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CreateSession {
    /// A catalog contestant id, or `random`.
    pub contestant: String,
    #[serde(default)]
    pub user: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SessionCreated {
    pub session_id: String,
    pub alphabet: Alphabet,
    pub created_at: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QueryRequest {
    pub query: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QueryResponse {
    pub session_id: String,
    /// 1-based index of the round just played.
    pub round: usize,
    pub query: String,
    pub reply: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerdictRequest {
    pub verdict: Verdict,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Reveal {
    pub id: String,
    pub level: LevelTag,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerdictResponse {
    pub session_id: String,
    pub verdict: Verdict,
    pub contestant: Reveal,
    pub correct: bool,
    pub rounds: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TranscriptView {
    pub session_id: String,
    pub closed: bool,
    pub rounds: Vec<Round>,
    /// Present only once the verdict is in.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub contestant: Option<Reveal>,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Score {
    pub right: u64,
    pub wrong: u64,
}

/// Per display name.
pub type Scoreboard = BTreeMap<String, Score>;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ErrorBody {
    pub error: String,
}
