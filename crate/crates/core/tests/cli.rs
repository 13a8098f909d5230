// Licensed under the Apache License, Version 2.0 (the "License"); you may
// not use this file except in compliance with the License. You may obtain
// a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
// WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
// License for the specific language governing permissions and limitations
// under the License.

use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

use bh_dpc::{verify_cover, Instance, PathCover};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_bh-dpc"))
}

fn scratch(name: &str, body: &str) -> PathBuf {
    let path = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    fs::write(&path, body).unwrap();
    path
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

const N3: &str =
    r#"{"n":3,"sources":[[0,0,0],[2,0,1],[2,1,1],[0,3,1]],"sinks":[[1,0,0],[1,2,0],[1,3,0],[3,3,0]]}"#;

#[test]
fn topo_counts() {
    let o = run(&["topo", "--n", "2"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["vertices"].as_array().unwrap().len(), 16);
    assert_eq!(v["edges"].as_array().unwrap().len(), 32);
    let dot = stdout(&run(&["topo", "--n", "1", "--format", "dot"]));
    assert!(dot.starts_with("graph") && dot.trim_end().ends_with('}'));
    assert_eq!(run(&["topo", "--n", "9"]).status.code(), Some(2));
}

#[test]
fn solve_then_verify() {
    let input = scratch("cli_n3.json", N3);
    let out = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("cli_n3_cover.json");
    let o = run(&["solve", "--in", input.to_str().unwrap(), "--out", out.to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let inst: Instance = serde_json::from_str(N3).unwrap();
    let cover: PathCover = serde_json::from_str(&fs::read_to_string(&out).unwrap()).unwrap();
    assert!(verify_cover(&inst, &cover).ok);

    let o = run(&["verify", "--in", input.to_str().unwrap(), "--cover", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains(r#""ok":true"#));

    let (mut paths, pairing) = cover.into_parts();
    paths[0] = paths[0].iter().rev().copied().collect::<Vec<_>>().into();
    let bad = scratch("cli_n3_bad.json", &serde_json::to_string(&PathCover::new(paths, pairing)).unwrap());
    let o = run(&["verify", "--in", input.to_str().unwrap(), "--cover", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("BAD_COLOR"));
}

#[test]
fn invalid_input_exits_2() {
    let black_source = scratch("cli_black.json", r#"{"n":2,"sources":[[1,0],[0,1]],"sinks":[[3,0],[1,1]]}"#);
    let o = run(&["solve", "--in", black_source.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let short = scratch("cli_short.json", r#"{"n":3,"sources":[[0,0,0]],"sinks":[[1,0,0]]}"#);
    let o = run(&["solve", "--in", short.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("BAD_COUNT"));
}

#[test]
fn zero_budget_exits_3() {
    let input = scratch("cli_budget.json", N3);
    let o = run(&["solve", "--in", input.to_str().unwrap(), "--budget-ms", "0"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn witness_is_refuted() {
    let w = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("cli_witness.json");
    assert!(run(&["witness", "--n", "2", "--out", w.to_str().unwrap()]).status.success());
    let o = run(&["oracle", "--in", w.to_str().unwrap()]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "no 3-DPC exists");
    let o = run(&["sweep", "witness"]);
    assert!(stdout(&o).contains("no 3-DPC exists: CONFIRMED"));
}

#[test]
fn sweeps_are_deterministic() {
    let a = run(&["sweep", "random-n3", "--seed", "5", "--samples", "40"]);
    let b = run(&["sweep", "random-n3", "--seed", "5", "--samples", "40"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let o = run(&["sweep", "exhaustive-n2"]);
    assert!(stdout(&o).contains("784/784"));
}
