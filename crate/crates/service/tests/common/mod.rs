#![allow(dead_code)]

use axum::body::Body;
use axum::http::{Request, StatusCode};
use axum::Router;
use http_body_util::BodyExt;
use qcards_service::{router, Sessions};
use serde_json::Value;
use tower::ServiceExt;

/// In-process client for the service router.
#[derive(Clone)]
pub struct Api {
    app: Router,
}

impl Api {
    pub fn new() -> Self {
        Api {
            app: router(Sessions::default()),
        }
    }

    pub async fn send(&self, method: &str, uri: &str, body: Option<Value>, token: Option<&str>) -> (StatusCode, String) {
        let mut req = Request::builder().method(method).uri(uri);
        if let Some(t) = token {
            req = req.header("authorization", format!("Bearer {t}"));
        }
        let body = match body {
            Some(Value::Null) | None => Body::empty(),
            Some(v) => {
                req = req.header("content-type", "application/json");
                Body::from(v.to_string())
            }
        };
        let resp = self.app.clone().oneshot(req.body(body).unwrap()).await.unwrap();
        let status = resp.status();
        let bytes = resp.into_body().collect().await.unwrap().to_bytes();
        (status, String::from_utf8(bytes.to_vec()).unwrap())
    }

    pub async fn get(&self, uri: &str, token: Option<&str>) -> (StatusCode, Value) {
        let (s, text) = self.send("GET", uri, None, token).await;
        (s, serde_json::from_str(&text).unwrap())
    }

    pub async fn get_text(&self, uri: &str, token: Option<&str>) -> String {
        let (s, text) = self.send("GET", uri, None, token).await;
        assert_eq!(s, StatusCode::OK, "{text}");
        text
    }

    pub async fn post(&self, uri: &str, body: Value, token: Option<&str>) -> (StatusCode, Value) {
        let (s, text) = self.send("POST", uri, Some(body), token).await;
        (s, serde_json::from_str(&text).unwrap())
    }
}

#[derive(Clone, Debug)]
pub struct Game {
    pub id: String,
    pub tokens: Vec<String>,
}

impl Game {
    pub fn path(&self, rest: &str) -> String {
        format!("/v1/games/{}{rest}", self.id)
    }

    pub async fn view(&self, api: &Api, player: usize) -> Value {
        let (s, v) = api.get(&self.path(""), Some(&self.tokens[player])).await;
        assert_eq!(s, StatusCode::OK, "{v}");
        v
    }

    pub async fn legal_moves(&self, api: &Api, player: usize) -> Vec<Value> {
        let (s, v) = api.get(&self.path("/legal_moves"), Some(&self.tokens[player])).await;
        assert_eq!(s, StatusCode::OK, "{v}");
        v["moves"].as_array().unwrap().clone()
    }

    /// Plays the whole game, choosing move `step * stride` each turn.
    pub async fn play_out(&self, api: &Api, stride: usize) -> Vec<Value> {
        let mut evaluations = Vec::new();
        let mut step = 0;
        loop {
            let view = self.view(api, 0).await;
            match view["phase"].as_str().unwrap() {
                "finished" => return evaluations,
                "between_rounds" => {
                    let (s, e) = api.post(&self.path("/evaluate"), Value::Null, Some(&self.tokens[0])).await;
                    assert_eq!(s, StatusCode::OK, "{e}");
                    evaluations.push(e);
                }
                _ => {
                    let turn = view["turn"].as_u64().unwrap() as usize;
                    let moves = self.legal_moves(api, turn).await;
                    let mv = moves[(step * stride) % moves.len()].clone();
                    let (s, v) = api.post(&self.path("/moves"), mv, Some(&self.tokens[turn])).await;
                    assert_eq!(s, StatusCode::OK, "{v}");
                    step += 1;
                }
            }
        }
    }
}

pub async fn create_game(api: &Api, config: Value) -> Game {
    let (status, body) = api.post("/v1/games", config, None).await;
    assert_eq!(status, StatusCode::CREATED, "{body}");
    Game {
        id: body["game_id"].as_str().unwrap().to_string(),
        tokens: body["players"]
            .as_array()
            .unwrap()
            .iter()
            .map(|p| p["token"].as_str().unwrap().to_string())
            .collect(),
    }
}
