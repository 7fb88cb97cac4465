//! Flat-directory persistence: one JSON document and one transcript file
//! per session, each replaced atomically.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use ctt_core::dialogue::{write_transcript, Alphabet, DialogueTranscript, LevelTag, TranscriptDocument, Verdict};

/// Everything the service knows about a session. Never sent to clients as
/// is: the contestant fields stay server-side until `revealed`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SessionRecord {
    pub session_id: String,
    /// Display name the scoreboard credits.
    pub user: String,
    pub interrogator: String,
    pub contestant: String,
    pub contestant_level: LevelTag,
    pub alphabet: Alphabet,
    pub transcript: DialogueTranscript,
    pub verdict: Option<Verdict>,
    pub correct: Option<bool>,
    /// Milliseconds since the Unix epoch.
    pub created_at: u64,
    pub closed_at: Option<u64>,
    pub revealed: bool,
}

impl SessionRecord {
    pub fn is_closed(&self) -> bool {
        self.verdict.is_some()
    }
}

#[derive(Debug, thiserror::Error)]
pub enum StoreError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{path}: {source}")]
    Json { path: PathBuf, source: serde_json::Error },
}

#[derive(Debug, Clone)]
pub struct Store {
    dir: PathBuf,
}

impl Store {
    pub fn open(dir: impl Into<PathBuf>) -> Result<Self, StoreError> {
        let dir = dir.into();
        fs::create_dir_all(&dir).map_err(|source| StoreError::Io { path: dir.clone(), source })?;
        Ok(Store { dir })
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn record_path(&self, id: &str) -> PathBuf {
        self.dir.join(format!("{id}.json"))
    }

    pub fn transcript_path(&self, id: &str) -> PathBuf {
        self.dir.join(format!("{id}.transcript"))
    }

    /// Writes the record and its transcript file.
    pub fn save(&self, record: &SessionRecord) -> Result<(), StoreError> {
        let json = serde_json::to_string_pretty(record).expect("records serialize");
        atomic_write(&self.record_path(&record.session_id), json.as_bytes())?;
        let transcript = write_transcript(&TranscriptDocument {
            alphabet: record.alphabet.clone(),
            transcript: record.transcript.clone(),
        });
        atomic_write(&self.transcript_path(&record.session_id), transcript.as_bytes())
    }

    pub fn load(&self, id: &str) -> Result<SessionRecord, StoreError> {
        let path = self.record_path(id);
        let text = fs::read_to_string(&path).map_err(|source| StoreError::Io { path: path.clone(), source })?;
        serde_json::from_str(&text).map_err(|source| StoreError::Json { path, source })
    }

    /// Every stored record, ordered by session id.
    pub fn load_all(&self) -> Result<Vec<SessionRecord>, StoreError> {
        let entries = fs::read_dir(&self.dir).map_err(|source| StoreError::Io { path: self.dir.clone(), source })?;
        let mut ids: Vec<String> = entries
            .filter_map(Result::ok)
            .filter_map(|e| e.file_name().to_str()?.strip_suffix(".json").map(str::to_owned))
            .collect();
        ids.sort();
        ids.iter().map(|id| self.load(id)).collect()
    }
}

/// Write to a temporary file in the same directory, then rename over `path`.
pub fn atomic_write(path: &Path, bytes: &[u8]) -> Result<(), StoreError> {
    let io = |source| StoreError::Io { path: path.to_owned(), source };
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty()).unwrap_or(Path::new("."));
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io)?;
    tmp.write_all(bytes).map_err(io)?;
    tmp.as_file().sync_all().map_err(io)?;
    tmp.persist(path).map_err(|e| io(e.error))?;
    Ok(())
}
