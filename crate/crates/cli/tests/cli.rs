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

use std::path::PathBuf;
use std::process::{Command, Output};

use dinnerplan_core::{decode_schedule, validate_schedule};

fn dinnerplan(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dinnerplan"))
        .args(args)
        .env_remove("DINNER_NODE_BUDGET")
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/fixtures/schedules").join(name)
}

#[test]
fn bounds_human_and_json() {
    let out = dinnerplan(&["bounds", "2", "5", "6", "2", "3"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("lb_best   3"), "{text}");
    assert!(text.contains("ub_best   3"), "{text}");

    let out = dinnerplan(&["bounds", "5", "8", "8", "1", "2", "--json"]);
    assert_eq!(code(&out), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let lbs: Vec<u64> = ["lb1", "lb2", "lb3", "lb4", "lb5"].iter().map(|k| v[k].as_u64().unwrap()).collect();
    assert_eq!(lbs, [8, 4, 7, 3, 0]);
}

#[test]
fn bounds_rejects_zero_tables() {
    assert_eq!(code(&dinnerplan(&["bounds", "0", "1", "1", "1", "1"])), 2);
    assert_eq!(code(&dinnerplan(&["bounds", "1", "1", "1"])), 2);
}

#[test]
fn build_writes_a_valid_schedule() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("best.json");
    let out = dinnerplan(&["build", "2", "5", "6", "2", "3", "--strategy", "auto", "--out", path.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("3 dinners"));
    assert!(stdout(&out).contains("optimal=yes"));
    let sched = decode_schedule(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert!(validate_schedule(&sched).feasible);
    assert_eq!(code(&dinnerplan(&["validate", path.to_str().unwrap()])), 0);
}

#[test]
fn build_prime_and_gate() {
    let out = dinnerplan(&["build", "1", "9", "3", "3", "1", "--strategy", "prime"]);
    assert_eq!(code(&out), 0);
    let sched = decode_schedule(&stdout(&out)).unwrap();
    assert_eq!(sched.dinner_count(), 9);
    assert_eq!(code(&dinnerplan(&["build", "1", "4", "2", "1", "5", "--strategy", "prime"])), 3);
    assert_eq!(code(&dinnerplan(&["build", "1", "12", "2", "2", "1", "--strategy", "ub2"])), 3);
}

#[test]
fn every_strategy_output_validates() {
    let dir = tempfile::tempdir().unwrap();
    for strategy in ["auto", "howell", "ub1", "eucli"] {
        let path = dir.path().join(format!("{strategy}.json"));
        let out =
            dinnerplan(&["build", "2", "5", "6", "2", "3", "--strategy", strategy, "--out", path.to_str().unwrap()]);
        assert_eq!(code(&out), 0, "{strategy}");
        assert_eq!(code(&dinnerplan(&["validate", path.to_str().unwrap()])), 0, "{strategy}");
    }
}

#[test]
fn validate_fixtures_and_failures() {
    for name in ["six_dinner", "s4c3", "s6c5", "s8c5", "s4c2"] {
        let path = fixture(&format!("{name}.json"));
        assert_eq!(code(&dinnerplan(&["validate", path.to_str().unwrap()])), 0, "{name}");
    }

    let dir = tempfile::tempdir().unwrap();
    let mut v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(fixture("six_dinner.json")).unwrap()).unwrap();
    let first = v["dinners"][0].clone();
    v["dinners"].as_array_mut().unwrap().push(first);
    let dup = dir.path().join("dup.json");
    std::fs::write(&dup, v.to_string()).unwrap();
    let out = dinnerplan(&["validate", dup.to_str().unwrap()]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).contains("PairRepeated"));

    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{\"instance\":").unwrap();
    assert_eq!(code(&dinnerplan(&["validate", bad.to_str().unwrap()])), 2);
    assert_eq!(code(&dinnerplan(&["validate", "/nonexistent/schedule.json"])), 2);
}

#[test]
fn solve_examples() {
    for (args, value) in
        [(["2", "4", "2", "2", "1"], 3), (["2", "5", "6", "2", "3"], 3), (["1", "1", "2", "1", "1"], 2)]
    {
        let mut argv = vec!["solve"];
        argv.extend(args);
        argv.push("--json");
        let out = dinnerplan(&argv);
        assert_eq!(code(&out), 0, "{args:?}");
        let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
        assert_eq!(v["status"], "optimal");
        assert_eq!(v["value"], value);
    }
}

#[test]
fn solve_budget_and_bound() {
    assert_eq!(code(&dinnerplan(&["solve", "2", "4", "3", "2", "1", "--budget", "2"])), 5);
    let out = Command::new(env!("CARGO_BIN_EXE_dinnerplan"))
        .args(["solve", "2", "4", "3", "2", "1"])
        .env("DINNER_NODE_BUDGET", "2")
        .output()
        .unwrap();
    assert_eq!(code(&out), 5);
    assert_eq!(code(&dinnerplan(&["solve", "2", "4", "2", "2", "1", "--max-dinners", "2"])), 1);
    assert_eq!(code(&dinnerplan(&["solve", "2", "4", "2", "2", "1", "--timeout", "-1"])), 2);
}

#[test]
fn solve_writes_witness() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("w.json");
    let out = dinnerplan(&["solve", "2", "4", "2", "2", "1", "--out", path.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let sched = decode_schedule(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(sched.dinner_count(), 3);
    assert!(validate_schedule(&sched).feasible);
}

#[test]
fn reference_tables_all_pass() {
    let out = dinnerplan(&["reference-tables"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert_eq!(text.matches("PASS").count(), 25 + 5 + 4);
    assert!(!text.contains("FAIL"));
    assert!(text.contains("(t=1, s=11, c=8, sigma=6, gamma=4)  lb4* = 7"));
    assert!(text.contains("(t=6, s=8, c=8, sigma=2, gamma=1)  lb2* = 8"));
}

#[test]
fn deterministic_output() {
    let a = dinnerplan(&["solve", "2", "4", "3", "2", "1", "--json"]);
    let b = dinnerplan(&["solve", "2", "4", "3", "2", "1", "--json"]);
    assert_eq!(a.stdout, b.stdout);
}
