use std::sync::Arc;

use axum::body::Body;
use axum::http::{Request, StatusCode};
use axum::Router;
use http_body_util::BodyExt;
use serde_json::{json, Value};
use tower::ServiceExt;

use ctt_cli::protocol::{QueryResponse, Scoreboard, SessionCreated, TranscriptView, VerdictResponse};
use ctt_cli::service::{router, AppState, ServiceConfig};
use ctt_cli::store::Store;
use ctt_core::catalog;
use ctt_core::dialogue::{parse_transcript, Contestant, LevelTag};

fn app(dir: &std::path::Path, seed: u64) -> Router {
    let state = AppState::open(&ServiceConfig {
        data_dir: dir.to_owned(),
        seed: Some(seed),
    })
    .unwrap();
    router(state)
}

/// Status and raw body text.
async fn call(app: &Router, method: &str, path: &str, body: Option<Value>) -> (StatusCode, String) {
    let req = Request::builder().method(method).uri(path);
    let req = match body {
        Some(b) => req
            .header("content-type", "application/json")
            .body(Body::from(b.to_string()))
            .unwrap(),
        None => req.body(Body::empty()).unwrap(),
    };
    let res = app.clone().oneshot(req).await.unwrap();
    let status = res.status();
    let bytes = res.into_body().collect().await.unwrap().to_bytes();
    (status, String::from_utf8(bytes.to_vec()).unwrap())
}

async fn create(app: &Router, contestant: &str, user: &str) -> (SessionCreated, String) {
    let (status, text) = call(app, "POST", "/sessions", Some(json!({"contestant": contestant, "user": user}))).await;
    assert_eq!(status, StatusCode::CREATED, "{text}");
    (serde_json::from_str(&text).unwrap(), text)
}

async fn query(app: &Router, id: &str, q: &str) -> (QueryResponse, String) {
    let (status, text) = call(app, "POST", &format!("/sessions/{id}/query"), Some(json!({"query": q}))).await;
    assert_eq!(status, StatusCode::OK, "{text}");
    (serde_json::from_str(&text).unwrap(), text)
}

async fn verdict(app: &Router, id: &str, v: &str) -> VerdictResponse {
    let (status, text) = call(app, "POST", &format!("/sessions/{id}/verdict"), Some(json!({"verdict": v}))).await;
    assert_eq!(status, StatusCode::OK, "{text}");
    serde_json::from_str(&text).unwrap()
}

async fn transcript(app: &Router, id: &str) -> (TranscriptView, String) {
    let (status, text) = call(app, "GET", &format!("/sessions/{id}/transcript"), None).await;
    assert_eq!(status, StatusCode::OK, "{text}");
    (serde_json::from_str(&text).unwrap(), text)
}

async fn scoreboard(app: &Router) -> Scoreboard {
    serde_json::from_str(&call(app, "GET", "/scoreboard", None).await.1).unwrap()
}

fn contestant_ids() -> Vec<String> {
    catalog::entries()
        .into_iter()
        .filter(|e| e.kind == catalog::EntryKind::Contestant)
        .map(|e| e.id)
        .collect()
}

fn leaks(text: &str) -> Option<String> {
    contestant_ids()
        .into_iter()
        .find(|id| text.contains(&format!("\"{id}\"")) || text.contains("lift") || text.contains("level"))
}

#[tokio::test]
async fn bracket_session_answers_balance() {
    let dir = tempfile::tempdir().unwrap();
    let app = app(dir.path(), 1);
    let (s, _) = create(&app, "bracket", "ada").await;
    assert_eq!(query(&app, &s.session_id, "0011").await.0.reply, "1");
    assert_eq!(query(&app, &s.session_id, "10").await.0.reply, "0");
}

#[tokio::test]
async fn verdict_reveals_and_scores() {
    let dir = tempfile::tempdir().unwrap();
    let app = app(dir.path(), 1);
    let (s, _) = create(&app, "echo-lift2", "ada").await;
    assert_eq!(query(&app, &s.session_id, "0110").await.0.reply, "0110");
    let v = verdict(&app, &s.session_id, "Level3").await;
    assert_eq!(v.contestant.level, LevelTag::Level2);
    assert_eq!(v.contestant.id, "echo-lift2");
    assert!(!v.correct);
    assert_eq!(scoreboard(&app).await["ada"].wrong, 1);
    let (status, _) = call(&app, "POST", &format!("/sessions/{}/query", s.session_id), Some(json!({"query": "0"}))).await;
    assert_eq!(status, StatusCode::CONFLICT);
    let (status, _) = call(&app, "POST", &format!("/sessions/{}/verdict", s.session_id), Some(json!({"verdict": "Level3"}))).await;
    assert_eq!(status, StatusCode::CONFLICT);
    assert_eq!(scoreboard(&app).await["ada"].wrong, 1);
}

#[tokio::test]
async fn round_zero_verdict_is_allowed() {
    let dir = tempfile::tempdir().unwrap();
    let app = app(dir.path(), 1);
    let (s, _) = create(&app, "parity", "bo").await;
    let v = verdict(&app, &s.session_id, "Level3").await;
    assert_eq!(v.rounds, 0);
    assert!(v.correct);
    assert_eq!(scoreboard(&app).await["bo"].right, 1);
}

#[tokio::test]
async fn errors() {
    let dir = tempfile::tempdir().unwrap();
    let app = app(dir.path(), 1);
    let (status, _) = call(&app, "POST", "/sessions/nope/query", Some(json!({"query": "0"}))).await;
    assert_eq!(status, StatusCode::NOT_FOUND);
    let (status, _) = call(&app, "GET", "/sessions/nope/transcript", None).await;
    assert_eq!(status, StatusCode::NOT_FOUND);
    for bad in ["human", "nobody", "always-level3"] {
        let (status, _) = call(&app, "POST", "/sessions", Some(json!({"contestant": bad}))).await;
        assert_eq!(status, StatusCode::BAD_REQUEST, "{bad}");
    }
    let (s, _) = create(&app, "echo", "x").await;
    let (status, text) = call(&app, "POST", &format!("/sessions/{}/query", s.session_id), Some(json!({"query": "0#1"}))).await;
    assert_eq!(status, StatusCode::UNPROCESSABLE_ENTITY);
    assert!(text.contains("error"));
    assert!(transcript(&app, &s.session_id).await.0.rounds.is_empty());
}

#[tokio::test]
async fn random_sessions_hide_the_contestant() {
    let dir = tempfile::tempdir().unwrap();
    let app = app(dir.path(), 7);
    let mut drawn = std::collections::BTreeSet::new();
    for i in 0..24 {
        let (s, created) = create(&app, "random", "eve").await;
        let mut visible = vec![created];
        for q in ["0", "0110", ""] {
            visible.push(query(&app, &s.session_id, q).await.1);
        }
        visible.push(transcript(&app, &s.session_id).await.1);
        for text in &visible {
            assert_eq!(leaks(text), None, "{text}");
        }
        let v = verdict(&app, &s.session_id, if i % 2 == 0 { "Level3" } else { "BelowLevel3" }).await;
        assert!(catalog::RANDOM_PAIRS.iter().any(|(a, b)| v.contestant.id == *a || v.contestant.id == *b));
        drawn.insert(v.contestant.id.clone());
        assert_eq!(transcript(&app, &s.session_id).await.0.contestant, Some(v.contestant));
    }
    assert!(drawn.len() >= 4, "{drawn:?}");
    let board = scoreboard(&app).await;
    assert_eq!(board["eve"].right + board["eve"].wrong, 24);
}

#[tokio::test]
async fn catalog_lists_every_entry() {
    let dir = tempfile::tempdir().unwrap();
    let app = app(dir.path(), 1);
    let (status, text) = call(&app, "GET", "/catalog", None).await;
    assert_eq!(status, StatusCode::OK);
    let entries: Vec<catalog::CatalogEntry> = serde_json::from_str(&text).unwrap();
    assert_eq!(entries, catalog::entries());
}

#[tokio::test]
async fn sessions_survive_restart() {
    let dir = tempfile::tempdir().unwrap();
    let (open_id, closed_id) = {
        let app = app(dir.path(), 3);
        let (open, _) = create(&app, "parity", "ada").await;
        // parity state is now odd; a restored session must remember it
        assert_eq!(query(&app, &open.session_id, "0").await.0.reply, "1");
        let (closed, _) = create(&app, "bracket", "ada").await;
        query(&app, &closed.session_id, "01").await;
        verdict(&app, &closed.session_id, "BelowLevel3").await;
        (open.session_id, closed.session_id)
    };
    let store = Store::open(dir.path()).unwrap();
    for id in [&open_id, &closed_id] {
        let record = store.load(id).unwrap();
        let text = std::fs::read_to_string(store.transcript_path(id)).unwrap();
        assert_eq!(parse_transcript(&text).unwrap().transcript, record.transcript);
        // replaying against a fresh copy reproduces the stored replies
        let mut fresh = catalog::contestant(&record.contestant).unwrap();
        for r in record.transcript.rounds() {
            assert_eq!(fresh.reply(&r.query).unwrap(), r.reply);
        }
    }
    let app = app(dir.path(), 3);
    assert_eq!(query(&app, &open_id, "0").await.0.reply, "0");
    assert_eq!(scoreboard(&app).await["ada"].right, 1);
    let (view, _) = transcript(&app, &closed_id).await;
    assert!(view.closed);
    assert_eq!(view.contestant.unwrap().id, "bracket");
}

#[tokio::test(flavor = "multi_thread", worker_threads = 4)]
async fn concurrent_queries_are_serialized() {
    let dir = tempfile::tempdir().unwrap();
    let app = app(dir.path(), 1);
    let (s, _) = create(&app, "parity", "ada").await;
    let id = Arc::new(s.session_id);
    let tasks: Vec<_> = (0..32)
        .map(|_| {
            let (app, id) = (app.clone(), id.clone());
            tokio::spawn(async move { query(&app, &id, "0").await.0 })
        })
        .collect();
    let mut rounds = Vec::new();
    for t in tasks {
        rounds.push(t.await.unwrap());
    }
    rounds.sort_by_key(|r| r.round);
    // the k-th round of "0" queries to parity replies with k mod 2
    for r in &rounds {
        assert_eq!(r.reply, (r.round % 2).to_string());
    }
    assert_eq!(rounds.iter().map(|r| r.round).collect::<Vec<_>>(), (1..=32).collect::<Vec<_>>());
    let (view, _) = transcript(&app, &id).await;
    let mut fresh = catalog::contestant("parity").unwrap();
    for r in view.rounds {
        assert_eq!(fresh.reply(&r.query).unwrap(), r.reply);
    }
}

/// The console's script: start a random session, chat three rounds, declare,
/// read the reveal. The chat history it accumulates from responses must be
/// byte-equal to the service transcript.
#[tokio::test]
async fn console_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let app = app(dir.path(), 11);
    let before = scoreboard(&app).await;
    let (s, created_text) = create(&app, "random", "console").await;
    assert_eq!(leaks(&created_text), None);
    let mut history: Vec<(String, String)> = Vec::new();
    for q in ["0011", "1", "010"] {
        let (r, text) = query(&app, &s.session_id, q).await;
        assert_eq!(leaks(&text), None, "{text}");
        assert_eq!(r.query, q);
        history.push((r.query, r.reply));
    }
    let (view, text) = transcript(&app, &s.session_id).await;
    assert_eq!(leaks(&text), None, "{text}");
    let server: Vec<(String, String)> = view
        .rounds
        .iter()
        .map(|r| (r.query.as_str().to_owned(), r.reply.as_str().to_owned()))
        .collect();
    assert_eq!(history, server);
    let v = verdict(&app, &s.session_id, "BelowLevel3").await;
    assert_eq!(v.rounds, 3);
    assert_eq!(v.correct, v.contestant.level != LevelTag::Level3);
    let after = scoreboard(&app).await;
    assert_eq!(before.get("console"), None);
    let score = after["console"];
    assert_eq!(score.right + score.wrong, 1);
    let (view, _) = transcript(&app, &s.session_id).await;
    assert_eq!(view.contestant, Some(v.contestant));
}
