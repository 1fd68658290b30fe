use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn nlspec(args: &[&str], stdin: &str, env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_nlspec"));
    cmd.args(args)
        .env_remove("NLSPEC_CACHE")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped());
    for (k, v) in env {
        cmd.env(k, v);
    }
    let mut child = cmd.spawn().expect("binary runs");
    child
        .stdin
        .take()
        .unwrap()
        .write_all(stdin.as_bytes())
        .unwrap();
    child.wait_with_output().unwrap()
}

fn json_lines(out: &Output) -> Vec<Value> {
    String::from_utf8_lossy(&out.stdout)
        .lines()
        .map(|l| serde_json::from_str(l).unwrap_or_else(|e| panic!("{l}: {e}")))
        .collect()
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

#[test]
fn spectrum_of_friendship_graph() {
    let out = nlspec(&["spectrum", "--construct", "fpq:2,2", "--json"], "", &[]);
    assert_eq!(code(&out), 0);
    let v = &json_lines(&out)[0];
    assert_eq!(v["schema"], 1);
    assert_eq!(v["closed_form"]["equal"], true);
    assert_eq!(v["char_poly"][0], "0/1");
    assert_eq!(v["zero_multiplicity"], 1);
}

#[test]
fn verify_ds_report() {
    let out = nlspec(&["verify-ds", "-p", "2", "-q", "2", "--json"], "", &[]);
    assert_eq!(code(&out), 0);
    let v = &json_lines(&out)[0];
    assert_eq!(v["determined"], true);
    assert_eq!(v["search_space"], 21);
    assert!(v.get("elapsed_ms").is_none());
    let timed = nlspec(
        &["verify-ds", "-p", "2", "-q", "2", "--json", "--timing"],
        "",
        &[],
    );
    assert!(json_lines(&timed)[0].get("elapsed_ms").is_some());

    let out = nlspec(&["verify-ds", "-p", "3", "-q", "1", "--json"], "", &[]);
    assert_eq!(
        code(&out),
        0,
        "a non-DS verdict that matches the prediction is success"
    );
    assert_eq!(json_lines(&out)[0]["mates"].as_array().unwrap().len(), 1);
}

#[test]
fn mates_of_four_vertex_graphs() {
    // "Cs" is the star K_1,3 and "Cl" the cycle C_4; each is the other's mate.
    let star = nlspec(&["mates", "--graph6", "Cs", "--n", "4", "--json"], "", &[]);
    let cyc = nlspec(&["mates", "--graph6", "Cl", "--json"], "", &[]);
    let c4 = nlspec(&["spectrum", "--graph6", "Cl", "--json"], "", &[]);
    let k13 = nlspec(&["spectrum", "--graph6", "Cs", "--json"], "", &[]);
    assert_eq!(
        json_lines(&star)[0]["mates"][0],
        json_lines(&c4)[0]["canonical_graph6"]
    );
    assert_eq!(
        json_lines(&cyc)[0]["mates"][0],
        json_lines(&k13)[0]["canonical_graph6"]
    );
    let bad = nlspec(&["mates", "--graph6", "Cl", "--n", "5"], "", &[]);
    assert_eq!(code(&bad), 2);
}

#[test]
fn byte_identical_across_runs_and_threads() {
    let args = ["verify-ds", "-p", "3", "-q", "2", "--json"];
    let a = nlspec(&[&args[..], &["--threads", "1"]].concat(), "", &[]);
    let b = nlspec(&[&args[..], &["--threads", "3"]].concat(), "", &[]);
    let c = nlspec(&args, "", &[]);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.stdout, c.stdout);
    let e1 = nlspec(&["enumerate", "-n", "6", "--threads", "1"], "", &[]);
    let e2 = nlspec(&["enumerate", "-n", "6", "--threads", "2"], "", &[]);
    assert_eq!(e1.stdout, e2.stdout);
    assert_eq!(String::from_utf8_lossy(&e1.stdout).lines().count(), 156);
}

#[test]
fn every_subcommand_speaks_json() {
    let runs: &[&[&str]] = &[
        &["spectrum", "--construct", "cycle:5", "--float"],
        &["construct", "gamma:2"],
        &["mates", "--construct", "cycle:5"],
        &["verify-ds", "-p", "2", "-q", "1"],
        &["verify-stars", "-p", "3"],
        &["verify-cycles"],
        &["check-three-eig", "--construct", "fpq:2,2", "-q", "2"],
        &[
            "check-witness",
            "--construct",
            "fpq:2,2",
            "-p",
            "2",
            "-q",
            "2",
        ],
        &["enumerate", "-n", "4", "--connected"],
        &["count", "-n", "5", "--connected", "--min-degree", "2"],
    ];
    for args in runs {
        let out = nlspec(&[*args, &["--json"]].concat(), "", &[]);
        assert_eq!(
            code(&out),
            0,
            "{args:?}: {}",
            String::from_utf8_lossy(&out.stderr)
        );
        let lines = json_lines(&out);
        assert!(!lines.is_empty(), "{args:?}");
        for v in lines {
            assert_eq!(v["schema"], 1, "{args:?}");
        }
    }
}

#[test]
fn checks_and_exit_codes() {
    let k5 = nlspec(
        &[
            "check-three-eig",
            "--construct",
            "complete:5",
            "-q",
            "4",
            "--json",
        ],
        "",
        &[],
    );
    assert_eq!(code(&k5), 1);
    let v = &json_lines(&k5)[0];
    assert_eq!(v["first_violation"]["condition"], "not_complete");
    assert_eq!(v["spectrum_matches"], false);

    let c5 = nlspec(
        &[
            "check-three-eig",
            "--construct",
            "cycle:5",
            "-q",
            "2",
            "--json",
        ],
        "",
        &[],
    );
    assert_eq!(code(&c5), 1);
    assert_eq!(json_lines(&c5)[0]["first_violation"]["equation"], 1);

    let usage = nlspec(&["count", "-n", "4", "--max-degree", "9"], "", &[]);
    assert_eq!(code(&usage), 2);
    let unknown = nlspec(
        &["spectrum", "--construct", "fpq:2,2", "--frobnicate"],
        "",
        &[],
    );
    assert_eq!(code(&unknown), 2);
    assert!(String::from_utf8_lossy(&unknown.stderr).contains("--frobnicate"));
    let bad_g6 = nlspec(&["spectrum", "--graph6", "C!"], "", &[]);
    assert_eq!(code(&bad_g6), 2);
    let cap = nlspec(&["count", "-n", "11"], "", &[]);
    assert_eq!(code(&cap), 2);
}

#[test]
fn stdin_and_import() {
    let out = nlspec(
        &["check-witness", "--stdin", "-p", "2", "-q", "2", "--json"],
        "DK{\nDhc\n",
        &[],
    );
    let lines = json_lines(&out);
    assert_eq!(lines.len(), 2);
    assert_eq!(lines[0]["passed"], true);
    assert_eq!(lines[1]["passed"], false);
    assert_eq!(code(&out), 1);

    let imported = nlspec(
        &["enumerate", "-n", "4", "--import", "-"],
        "Cl\nC]\nCs\nBW\n",
        &[],
    );
    assert_eq!(code(&imported), 0);
    assert_eq!(String::from_utf8_lossy(&imported.stdout).lines().count(), 2);
}

#[test]
fn cache_file_is_used() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("fp.ndjson");
    let p = path.to_str().unwrap();
    let first = nlspec(&["mates", "--construct", "cycle:6", "--cache", p], "", &[]);
    assert_eq!(code(&first), 0);
    let lines = std::fs::read_to_string(&path).unwrap().lines().count();
    assert_eq!(lines, 112);
    let second = nlspec(
        &["mates", "--construct", "cycle:6"],
        "",
        &[("NLSPEC_CACHE", p)],
    );
    assert_eq!(first.stdout, second.stdout);
    assert_eq!(std::fs::read_to_string(&path).unwrap().lines().count(), 112);
}
