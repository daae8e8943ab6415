#![allow(dead_code)]

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use axum::body::Body;
use axum::http::{Request, StatusCode};
use axum::Router;
use http_body_util::BodyExt;
use mcsbench::corpus::{convert_tree, load_corpus_dir, ConvertOptions, LoadedCorpus, OutputFormat};
use mcsbench::server::{build_state, router, ServerConfig};
use serde_json::Value;
use tower::ServiceExt;

pub fn repo_root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../..")
}

pub fn fixture(rel: &str) -> PathBuf {
    repo_root().join("fixtures").join(rel)
}

pub fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_mcsbench"))
}

pub fn run_bin(args: &[&str]) -> Output {
    bin().args(args).env_remove("MCS_CORPUS").output().expect("spawn mcsbench")
}

pub fn text(bytes: &[u8]) -> String {
    String::from_utf8_lossy(bytes).into_owned()
}

pub fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

/// Converts a raw fixture tree into `out` with default options.
pub fn convert(raw: &Path, out: &Path) {
    let opts = ConvertOptions { format: OutputFormat::Both, ..ConvertOptions::default() };
    convert_tree(raw, out, &opts).unwrap();
}

/// Corpus directory containing only the SocialIQa-37 sample.
pub fn skylar_dir(out: &Path) {
    let tmp = out.with_extension("full");
    convert(&fixture("benchmarks"), &tmp);
    let full = fs::read_to_string(tmp.join("SocialIQa/train.jsonld")).unwrap();
    let line = full.lines().find(|l| l.contains(r#""@id":"SocialIQa-37""#)).expect("SocialIQa-37 present");
    fs::create_dir_all(out.join("SocialIQa")).unwrap();
    fs::copy(tmp.join("context.jsonld"), out.join("context.jsonld")).unwrap();
    fs::copy(tmp.join("SocialIQa/benchmark.json"), out.join("SocialIQa/benchmark.json")).unwrap();
    fs::write(out.join("SocialIQa/train.jsonld"), format!("{line}\n")).unwrap();
    fs::remove_dir_all(tmp).unwrap();
}

pub fn load(dir: &Path) -> LoadedCorpus {
    load_corpus_dir(dir).unwrap()
}

pub fn app(loaded: LoadedCorpus, config: ServerConfig) -> Router {
    router(build_state(loaded, config).unwrap())
}

pub struct Reply {
    pub status: StatusCode,
    pub content_type: String,
    pub headers: axum::http::HeaderMap,
    pub json: Value,
}

pub async fn send(app: &Router, req: Request<Body>) -> Reply {
    let resp = app.clone().oneshot(req).await.unwrap();
    let status = resp.status();
    let headers = resp.headers().clone();
    let content_type = headers.get("content-type").map(|v| v.to_str().unwrap().to_string()).unwrap_or_default();
    let bytes = resp.into_body().collect().await.unwrap().to_bytes();
    let json = serde_json::from_slice(&bytes).unwrap_or_else(|e| panic!("non-JSON body ({e}): {}", text(&bytes)));
    Reply { status, content_type, headers, json }
}

pub async fn get(app: &Router, uri: &str) -> Reply {
    send(app, Request::get(uri).body(Body::empty()).unwrap()).await
}

pub async fn post(app: &Router, uri: &str, body: impl Into<Body>) -> Reply {
    send(app, Request::post(uri).header("content-type", "application/sparql-query").body(body.into()).unwrap()).await
}

pub const INPUT_TYPES_QUERY: &str = "SELECT ?sample ?input ?inputType WHERE {
 <task_uri> schema:dataset ?train .
 ?train rdf:type mcs:BenchmarkTrainDataset .
 ?train mcs:sample ?sample .
 ?sample mcs:input/schema:text ?input .
 ?sample mcs:input/rdf:type/rdfs:label ?inputType .
}
";

/// [`INPUT_TYPES_QUERY`] with the input node shared between text and type.
pub const INPUT_TYPES_SHARED_QUERY: &str = "SELECT ?sample ?input ?inputType WHERE {
 <task_uri> schema:dataset ?train .
 ?train rdf:type mcs:BenchmarkTrainDataset .
 ?train mcs:sample ?sample .
 ?sample mcs:input ?node .
 ?node schema:text ?input .
 ?node rdf:type/rdfs:label ?inputType .
}
";

pub const LOGICAL_REASONING_QUERY: &str = "SELECT ?sample ?question WHERE {
 ?sample rdf:type mcs:BenchmarkSample .
 ?sample mcs:input/rdf:type mcs:LogicalReasoning .
 ?sample mcs:input ?input .
 ?input rdf:type mcs:BenchmarkQuestion .
 ?input schema:text ?question .
}
";

pub const SKYLAR_CONTEXT: &str = "Skylar returned early in the evening after a night and day of partying.";
pub const SKYLAR_QUESTION: &str = "How would you describe Skylar?";
