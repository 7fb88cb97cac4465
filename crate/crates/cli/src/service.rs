//! HTTP session service: a person interrogates a hidden catalog contestant.

use std::collections::HashMap;
use std::path::PathBuf;
use std::sync::{Arc, Mutex, RwLock};
use std::time::{SystemTime, UNIX_EPOCH};

use axum::extract::{Path, State};
use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use ctt_core::catalog::{self, CatalogEntry, RANDOM_PAIRS};
use ctt_core::dialogue::{Contestant, DialogueTranscript, Message, Round};

use crate::protocol::{
    CreateSession, ErrorBody, QueryRequest, QueryResponse, Reveal, Scoreboard, SessionCreated, TranscriptView,
    VerdictRequest, VerdictResponse,
};
use crate::store::{SessionRecord, Store, StoreError};

pub const DATA_DIR_ENV: &str = "CTT_DATA_DIR";
pub const DEFAULT_DATA_DIR: &str = "ctt-data";

#[derive(Debug, Clone)]
pub struct ServiceConfig {
    pub data_dir: PathBuf,
    /// Seed for `random` contestant draws; entropy when absent.
    pub seed: Option<u64>,
}

struct Live {
    record: SessionRecord,
    /// `None` once closed.
    contestant: Option<Box<dyn Contestant>>,
}

pub struct AppState {
    store: Store,
    /// The outer lock guards the map only; each session has its own lock,
    /// which serializes every mutation of that session.
    sessions: RwLock<HashMap<String, Arc<tokio::sync::Mutex<Live>>>>,
    scoreboard: Mutex<Scoreboard>,
    rng: Mutex<ChaCha8Rng>,
}

#[derive(Debug)]
pub struct ApiError(StatusCode, String);

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        (self.0, Json(ErrorBody { error: self.1 })).into_response()
    }
}

impl From<StoreError> for ApiError {
    fn from(e: StoreError) -> Self {
        ApiError(StatusCode::INTERNAL_SERVER_ERROR, e.to_string())
    }
}

fn now_ms() -> u64 {
    SystemTime::now().duration_since(UNIX_EPOCH).map_or(0, |d| d.as_millis() as u64)
}

/// Catalog contestants a remote interrogator may face.
fn playable(id: &str) -> bool {
    id != "human" && catalog::entries().iter().any(|e| e.id == id && e.kind == catalog::EntryKind::Contestant)
}

/// Rebuilds a contestant's state by replaying the stored queries. Fails if
/// any replay differs from the stored reply.
fn restore(record: &SessionRecord) -> Option<Box<dyn Contestant>> {
    let mut c = catalog::contestant(&record.contestant)?;
    for round in record.transcript.rounds() {
        if c.reply(&round.query).ok()? != round.reply {
            return None;
        }
    }
    Some(c)
}

impl AppState {
    pub fn open(config: &ServiceConfig) -> Result<Arc<Self>, StoreError> {
        let store = Store::open(&config.data_dir)?;
        let mut sessions = HashMap::new();
        let mut scoreboard = Scoreboard::new();
        for record in store.load_all()? {
            let contestant = if record.is_closed() { None } else { restore(&record) };
            if let Some(correct) = record.correct {
                let score = scoreboard.entry(record.user.clone()).or_default();
                *if correct { &mut score.right } else { &mut score.wrong } += 1;
            }
            if record.is_closed() || contestant.is_some() {
                let id = record.session_id.clone();
                sessions.insert(id, Arc::new(tokio::sync::Mutex::new(Live { record, contestant })));
            }
        }
        let rng = match config.seed {
            Some(s) => ChaCha8Rng::seed_from_u64(s),
            None => ChaCha8Rng::from_os_rng(),
        };
        Ok(Arc::new(AppState {
            store,
            sessions: RwLock::new(sessions),
            scoreboard: Mutex::new(scoreboard),
            rng: Mutex::new(rng),
        }))
    }

    fn session(&self, id: &str) -> Result<Arc<tokio::sync::Mutex<Live>>, ApiError> {
        self.sessions
            .read()
            .expect("session map lock")
            .get(id)
            .cloned()
            .ok_or_else(|| ApiError(StatusCode::NOT_FOUND, format!("unknown session {id:?}")))
    }

    /// A transducer or its lift, uniformly over [`RANDOM_PAIRS`] and then
    /// over the two members.
    fn draw_random(&self) -> &'static str {
        let mut rng = self.rng.lock().expect("rng lock");
        let (a, b) = RANDOM_PAIRS[rng.random_range(0..RANDOM_PAIRS.len())];
        if rng.random_bool(0.5) {
            a
        } else {
            b
        }
    }
}

pub fn router(state: Arc<AppState>) -> Router {
    Router::new()
        .route("/sessions", post(create_session))
        .route("/sessions/{id}/query", post(post_query))
        .route("/sessions/{id}/verdict", post(post_verdict))
        .route("/sessions/{id}/transcript", get(get_transcript))
        .route("/catalog", get(list_catalog))
        .route("/scoreboard", get(get_scoreboard))
        .with_state(state)
}

/// Binds `addr` and serves until the process ends.
pub async fn serve(addr: &str, config: ServiceConfig) -> std::io::Result<()> {
    let state = AppState::open(&config).map_err(std::io::Error::other)?;
    let listener = tokio::net::TcpListener::bind(addr).await?;
    eprintln!("ctt service on http://{} (data in {})", listener.local_addr()?, config.data_dir.display());
    axum::serve(listener, router(state)).await
}

async fn create_session(
    State(state): State<Arc<AppState>>,
    Json(req): Json<CreateSession>,
) -> Result<(StatusCode, Json<SessionCreated>), ApiError> {
    let id: &str = if req.contestant == "random" {
        state.draw_random()
    } else if playable(&req.contestant) {
        &req.contestant
    } else {
        return Err(ApiError(
            StatusCode::BAD_REQUEST,
            format!("no playable contestant {:?}", req.contestant),
        ));
    };
    let contestant = catalog::contestant(id).expect("playable ids build");
    let record = SessionRecord {
        session_id: uuid::Uuid::new_v4().simple().to_string(),
        user: req.user.filter(|u| !u.is_empty()).unwrap_or_else(|| "anonymous".into()),
        interrogator: "human".into(),
        contestant: id.to_owned(),
        contestant_level: contestant.level(),
        alphabet: contestant.alphabet().clone(),
        transcript: DialogueTranscript::new(),
        verdict: None,
        correct: None,
        created_at: now_ms(),
        closed_at: None,
        revealed: false,
    };
    state.store.save(&record)?;
    let created = SessionCreated {
        session_id: record.session_id.clone(),
        alphabet: record.alphabet.clone(),
        created_at: record.created_at,
    };
    state.sessions.write().expect("session map lock").insert(
        record.session_id.clone(),
        Arc::new(tokio::sync::Mutex::new(Live {
            record,
            contestant: Some(contestant),
        })),
    );
    Ok((StatusCode::CREATED, Json(created)))
}

async fn post_query(
    State(state): State<Arc<AppState>>,
    Path(id): Path<String>,
    Json(req): Json<QueryRequest>,
) -> Result<Json<QueryResponse>, ApiError> {
    let session = state.session(&id)?;
    let mut live = session.lock().await;
    let Live { record, contestant } = &mut *live;
    let Some(contestant) = contestant.as_mut() else {
        return Err(ApiError(StatusCode::CONFLICT, "session already has a verdict".into()));
    };
    if let Some(c) = record.alphabet.first_foreign(&req.query) {
        return Err(ApiError(
            StatusCode::UNPROCESSABLE_ENTITY,
            format!("symbol {c:?} is not in the session alphabet"),
        ));
    }
    let query = Message::from(req.query);
    let reply = contestant
        .reply(&query)
        .map_err(|f| ApiError(StatusCode::INTERNAL_SERVER_ERROR, format!("contestant fault: {f}")))?;
    record.transcript.push(Round::new(query.clone(), reply.clone()));
    state.store.save(record)?;
    Ok(Json(QueryResponse {
        session_id: id,
        round: record.transcript.len(),
        query: query.into_string(),
        reply: reply.into_string(),
    }))
}

async fn post_verdict(
    State(state): State<Arc<AppState>>,
    Path(id): Path<String>,
    Json(req): Json<VerdictRequest>,
) -> Result<Json<VerdictResponse>, ApiError> {
    let session = state.session(&id)?;
    let mut live = session.lock().await;
    if live.contestant.is_none() {
        return Err(ApiError(StatusCode::CONFLICT, "session already has a verdict".into()));
    }
    let record = &mut live.record;
    let correct = req.verdict.is_correct_for(record.contestant_level);
    record.verdict = Some(req.verdict);
    record.correct = Some(correct);
    record.closed_at = Some(now_ms());
    record.revealed = true;
    state.store.save(record)?;
    let response = VerdictResponse {
        session_id: id,
        verdict: req.verdict,
        contestant: Reveal {
            id: record.contestant.clone(),
            level: record.contestant_level,
        },
        correct,
        rounds: record.transcript.len(),
    };
    {
        let mut board = state.scoreboard.lock().expect("scoreboard lock");
        let score = board.entry(record.user.clone()).or_default();
        *if correct { &mut score.right } else { &mut score.wrong } += 1;
    }
    live.contestant = None;
    Ok(Json(response))
}

async fn get_transcript(
    State(state): State<Arc<AppState>>,
    Path(id): Path<String>,
) -> Result<Json<TranscriptView>, ApiError> {
    let session = state.session(&id)?;
    let live = session.lock().await;
    let r = &live.record;
    Ok(Json(TranscriptView {
        session_id: id,
        closed: r.is_closed(),
        rounds: r.transcript.rounds().to_vec(),
        contestant: r.revealed.then(|| Reveal {
            id: r.contestant.clone(),
            level: r.contestant_level,
        }),
    }))
}

async fn list_catalog() -> Json<Vec<CatalogEntry>> {
    Json(catalog::entries())
}

async fn get_scoreboard(State(state): State<Arc<AppState>>) -> Json<Scoreboard> {
    Json(state.scoreboard.lock().expect("scoreboard lock").clone())
}
