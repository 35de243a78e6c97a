use std::path::PathBuf;
use std::process::Command;
use std::sync::Arc;

use axum::body::Body;
use axum::http::{Request, StatusCode};
use axum::Router;
use http_body_util::BodyExt;
use serde_json::{json, Value};
use torfold::SessionStore;
use torfold_cli::server::router;
use tower::ServiceExt;

fn app() -> Router {
    router(Arc::new(SessionStore::new()))
}

async fn call(app: &Router, method: &str, uri: &str, body: Option<Value>) -> (StatusCode, String) {
    let req = Request::builder()
        .method(method)
        .uri(uri)
        .header("content-type", "application/json")
        .body(match body {
            Some(b) => Body::from(b.to_string()),
            None => Body::empty(),
        })
        .unwrap();
    let resp = app.clone().oneshot(req).await.unwrap();
    let status = resp.status();
    let bytes = resp.into_body().collect().await.unwrap().to_bytes();
    (status, String::from_utf8(bytes.to_vec()).unwrap())
}

fn parse(s: &str) -> Value {
    serde_json::from_str(s).unwrap()
}

#[tokio::test]
async fn presets_are_listed() {
    let (status, body) = call(&app(), "GET", "/presets", None).await;
    assert_eq!(status, StatusCode::OK);
    let names: Vec<String> = parse(&body)
        .as_array()
        .unwrap()
        .iter()
        .map(|p| p["preset"].as_str().unwrap().to_string())
        .collect();
    assert_eq!(names, ["gammaInfinity", "cyclic3", "aq"]);
}

#[tokio::test]
async fn gamma_session_mutate_and_undo() {
    let app = app();
    let (status, body) = call(&app, "POST", "/sessions", Some(json!({"preset": "gammaInfinity", "n": 3}))).await;
    assert_eq!(status, StatusCode::CREATED);
    let created = parse(&body);
    assert_eq!(created["sites"].as_array().unwrap().len(), 12);
    let id = created["id"].as_str().unwrap().to_string();

    for orbit in [0, 1, 2] {
        let (status, _) = call(&app, "POST", &format!("/sessions/{id}/mutate"), Some(json!({"orbit": orbit}))).await;
        assert_eq!(status, StatusCode::OK);
    }
    let (_, before_undo) = call(&app, "GET", &format!("/sessions/{id}"), None).await;
    assert_eq!(parse(&before_undo)["seed"]["history"], json!([0, 1, 2]));
    let (status, body) = call(&app, "POST", &format!("/sessions/{id}/undo"), None).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(parse(&body)["seed"]["history"], json!([0, 1]));

    let (status, body) = call(&app, "GET", &format!("/sessions/{id}/fold"), None).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(parse(&body)["history"], json!(["0", "1"]));

    let (status, _) = call(&app, "POST", &format!("/sessions/{id}/mutate"), Some(json!({"orbit": 8}))).await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
}

#[tokio::test]
async fn cyclic_violation_is_a_conflict_without_state_change() {
    let app = app();
    let (_, body) = call(&app, "POST", "/sessions", Some(json!({"preset": "cyclic3"}))).await;
    let id = parse(&body)["id"].as_str().unwrap().to_string();
    let (_, before) = call(&app, "GET", &format!("/sessions/{id}"), None).await;
    let (status, body) = call(&app, "POST", &format!("/sessions/{id}/mutate"), Some(json!({"orbit": 0}))).await;
    assert_eq!(status, StatusCode::CONFLICT);
    let err = parse(&body);
    assert_eq!(err["witness"], json!([0]));
    assert_eq!(err["violations"][0]["sites"], json!([1, 2]));
    let (_, after) = call(&app, "GET", &format!("/sessions/{id}"), None).await;
    assert_eq!(before, after);
}

#[tokio::test]
async fn error_statuses() {
    let app = app();
    let (status, _) = call(&app, "GET", "/sessions/missing", None).await;
    assert_eq!(status, StatusCode::NOT_FOUND);
    let looped = json!({"quiver": {"period": 1, "sites": [{"id": 0}], "arrows": [{"from": 0, "to": 0, "shift": 1}]}});
    let (status, body) = call(&app, "POST", "/sessions", Some(looped)).await;
    assert_eq!(status, StatusCode::UNPROCESSABLE_ENTITY);
    assert_eq!(parse(&body)["violations"][0]["condition"], "virtual-loop");
    let (status, _) = call(&app, "POST", "/sessions/missing/mutate", Some(json!({"orbit": 0}))).await;
    assert_eq!(status, StatusCode::NOT_FOUND);
}

#[tokio::test]
async fn replay_through_cli_is_byte_identical() {
    let app = app();
    let (_, body) = call(&app, "POST", "/sessions", Some(json!({"preset": "gammaInfinity", "n": 2}))).await;
    let id = parse(&body)["id"].as_str().unwrap().to_string();
    for orbit in [1, 2, 0, 3] {
        call(&app, "POST", &format!("/sessions/{id}/mutate"), Some(json!({"orbit": orbit}))).await;
    }
    let (_, state) = call(&app, "GET", &format!("/sessions/{id}"), None).await;
    let history = parse(&state)["seed"]["history"].clone();
    let seq: Vec<String> = history.as_array().unwrap().iter().map(|v| v.to_string()).collect();

    let preset = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data/gamma-infinity-2.json");
    let run = |cmd: &str| {
        let out = Command::new(env!("CARGO_BIN_EXE_torfold"))
            .args([cmd, "--periodic", preset.to_str().unwrap(), "--seq", &seq.join(",")])
            .output()
            .unwrap();
        assert!(out.status.success());
        String::from_utf8(out.stdout).unwrap().trim_end().to_string()
    };
    let seed = run("cluster");
    let quiver = run("orbit-mutate");
    assert!(state.contains(&format!("\"seed\":{seed}")), "seed JSON differs");
    assert!(state.contains(&format!("\"quiver\":{quiver}")), "quiver JSON differs");
}
