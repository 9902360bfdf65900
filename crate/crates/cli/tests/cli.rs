//! End-to-end tests of the `homkit` binary: exit codes, file formats,
//! certificates surviving a fresh-process re-validation, and byte-identical
//! result payloads across identical invocations.

use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn homkit(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_homkit"))
        .args(args)
        .current_dir(dir)
        .env_remove("HOMKIT_BUDGET")
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn report(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!(
            "stdout is not a report: {e}\n{}",
            String::from_utf8_lossy(&out.stdout)
        )
    })
}

#[test]
fn gen_writes_canonical_families() {
    let dir = tempfile::tempdir().unwrap();
    let out = homkit(&["gen", "kneser:5,2", "--out", "petersen.txt"], dir.path());
    assert_eq!(code(&out), 0);
    let text = std::fs::read_to_string(dir.path().join("petersen.txt")).unwrap();
    assert!(text.contains("graph 10 15"));

    let out = homkit(&["gen", "circular:7/2"], dir.path());
    assert_eq!(code(&out), 0);
    assert!(String::from_utf8_lossy(&out.stdout).contains("graph 7 14"));

    let out = homkit(&["gen", "clique:4"], dir.path());
    assert!(String::from_utf8_lossy(&out.stdout).contains("graph 4 6"));
}

#[test]
fn gen_rejects_bad_specs_with_exit_1() {
    let dir = tempfile::tempdir().unwrap();
    for bad in ["clique", "circular:4/2", "kneser:3,2", "martian:1"] {
        let out = homkit(&["gen", bad], dir.path());
        assert_eq!(code(&out), 1, "spec `{bad}` should be rejected");
    }
}

#[test]
fn hom_certificates_survive_fresh_process_verification() {
    let dir = tempfile::tempdir().unwrap();
    homkit(&["gen", "cycle:5", "--out", "c5.txt"], dir.path());
    homkit(&["gen", "clique:3", "--out", "k3.txt"], dir.path());

    let out = homkit(
        &[
            "hom", "--from", "c5.txt", "--to", "k3.txt", "--cert", "w.json", "--verify",
        ],
        dir.path(),
    );
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(report(&out)["result"]["outcome"], "witness");

    // independent re-validation in a fresh process
    let out = homkit(
        &[
            "verify", "--cert", "w.json", "--from", "c5.txt", "--to", "k3.txt",
        ],
        dir.path(),
    );
    assert_eq!(code(&out), 0);
    assert_eq!(report(&out)["result"]["valid"], true);

    // tampering is caught
    let cert = std::fs::read_to_string(dir.path().join("w.json")).unwrap();
    let mut parsed: Value = serde_json::from_str(&cert).unwrap();
    parsed["map"][0] = Value::from((parsed["map"][0].as_u64().unwrap() + 1) % 3);
    std::fs::write(dir.path().join("w.json"), parsed.to_string()).unwrap();
    let out = homkit(
        &[
            "verify", "--cert", "w.json", "--from", "c5.txt", "--to", "k3.txt",
        ],
        dir.path(),
    );
    assert_eq!(code(&out), 1);
    assert_eq!(report(&out)["result"]["valid"], false);
}

#[test]
fn hom_exit_codes_cover_the_contract() {
    let dir = tempfile::tempdir().unwrap();
    homkit(&["gen", "kneser:5,2", "--out", "p.txt"], dir.path());
    homkit(&["gen", "clique:2", "--out", "k2.txt"], dir.path());
    homkit(&["gen", "clique:3", "--out", "k3.txt"], dir.path());

    // definitive no
    let out = homkit(&["hom", "--from", "p.txt", "--to", "k2.txt"], dir.path());
    assert_eq!(code(&out), 0);
    assert_eq!(report(&out)["result"]["outcome"], "no_hom");

    // budget-limited unknown
    let out = homkit(
        &["hom", "--from", "p.txt", "--to", "k2.txt", "--budget", "1"],
        dir.path(),
    );
    assert_eq!(code(&out), 2);
    assert_eq!(report(&out)["result"]["outcome"], "unknown");

    // missing file is a usage error
    let out = homkit(&["hom", "--from", "nope.txt", "--to", "k3.txt"], dir.path());
    assert_eq!(code(&out), 1);
}

#[test]
fn chi_reports_exact_values_and_loops() {
    let dir = tempfile::tempdir().unwrap();
    homkit(&["gen", "kneser:5,2", "--out", "p.txt"], dir.path());
    let out = homkit(&["chi", "--in", "p.txt"], dir.path());
    assert_eq!(code(&out), 0);
    assert_eq!(report(&out)["result"]["chi"], 3);

    std::fs::write(dir.path().join("loop.txt"), "digraph 1 1\n0 0\n").unwrap();
    let out = homkit(&["chi", "--in", "loop.txt"], dir.path());
    assert_eq!(report(&out)["result"]["chi"], "has-loop");

    // colouring certificates re-validate in a fresh process
    let out = homkit(
        &["chi", "--in", "p.txt", "--cert", "c.json", "--verify"],
        dir.path(),
    );
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let out = homkit(&["verify", "--cert", "c.json", "--in", "p.txt"], dir.path());
    assert_eq!(code(&out), 0);
    assert_eq!(report(&out)["result"]["valid"], true);
}

#[test]
fn apply_stamps_outputs_with_functor_and_hash() {
    let dir = tempfile::tempdir().unwrap();
    homkit(&["gen", "cycle:5", "--out", "c5.txt"], dir.path());
    let out = homkit(
        &[
            "apply",
            "--functor",
            "gamma:3",
            "--in",
            "c5.txt",
            "--out",
            "g.txt",
        ],
        dir.path(),
    );
    assert_eq!(code(&out), 0);
    let text = std::fs::read_to_string(dir.path().join("g.txt")).unwrap();
    assert!(text.starts_with("# functor: gamma:3\n# input: "));
    assert!(text.contains("graph 5 10"), "walk cube of C_5 is K_5");

    let out = homkit(
        &["apply", "--functor", "nope", "--in", "c5.txt"],
        dir.path(),
    );
    assert_eq!(code(&out), 1);
}

#[test]
fn reduce_traces_replay_bit_identically() {
    let dir = tempfile::tempdir().unwrap();
    homkit(&["gen", "cycle:5", "--out", "c5.txt"], dir.path());
    let out = homkit(
        &[
            "reduce",
            "--pipeline",
            "arc",
            "--in",
            "c5.txt",
            "--out",
            "r.txt",
            "--trace",
            "t.json",
        ],
        dir.path(),
    );
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let first = std::fs::read_to_string(dir.path().join("r.txt")).unwrap();

    let out = homkit(
        &[
            "reduce", "--replay", "t.json", "--in", "c5.txt", "--out", "r2.txt",
        ],
        dir.path(),
    );
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let second = std::fs::read_to_string(dir.path().join("r2.txt")).unwrap();
    // identical graph payloads (comment stamps differ by pipeline name)
    let body = |s: &str| {
        s.lines()
            .filter(|l| !l.starts_with('#'))
            .collect::<Vec<_>>()
            .join("\n")
    };
    assert_eq!(body(&first), body(&second));

    // replaying against the wrong instance fails
    homkit(&["gen", "cycle:7", "--out", "c7.txt"], dir.path());
    let out = homkit(
        &["reduce", "--replay", "t.json", "--in", "c7.txt"],
        dir.path(),
    );
    assert_eq!(code(&out), 1);
}

#[test]
fn builtin_and_file_pipelines() {
    let dir = tempfile::tempdir().unwrap();
    homkit(&["gen", "cycle:5", "--out", "c5.txt"], dir.path());

    // subdividing C_5 three-fold gives C_15
    let out = homkit(
        &[
            "reduce",
            "--pipeline",
            "lambda:3",
            "--in",
            "c5.txt",
            "--out",
            "s.txt",
        ],
        dir.path(),
    );
    assert_eq!(code(&out), 0);
    let text = std::fs::read_to_string(dir.path().join("s.txt")).unwrap();
    assert!(text.contains("graph 15 15"));

    let out = homkit(
        &[
            "reduce",
            "--pipeline",
            "gamma-omega:3",
            "--in",
            "c5.txt",
            "--out",
            "s2.txt",
        ],
        dir.path(),
    );
    assert_eq!(code(&out), 0);

    // a two-step pipeline from a file: arc digraph, then symmetric closure
    std::fs::write(
        dir.path().join("p.json"),
        r#"{"steps": [{"op": "delta"}, {"op": "sym"}]}"#,
    )
    .unwrap();
    let out = homkit(
        &[
            "reduce",
            "--pipeline",
            "@p.json",
            "--in",
            "c5.txt",
            "--out",
            "f.txt",
            "--trace",
            "ft.json",
        ],
        dir.path(),
    );
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let text = std::fs::read_to_string(dir.path().join("f.txt")).unwrap();
    assert!(text.contains("graph 10 "), "{text}");
    let out = homkit(
        &["reduce", "--replay", "ft.json", "--in", "c5.txt"],
        dir.path(),
    );
    assert_eq!(code(&out), 0);
}

#[test]
fn topo_reports_the_k4_table_and_quotient() {
    let dir = tempfile::tempdir().unwrap();
    homkit(&["gen", "clique:4", "--out", "k4.txt"], dir.path());
    let out = homkit(&["topo", "--complex", "box", "--in", "k4.txt"], dir.path());
    assert_eq!(code(&out), 0);
    let r = report(&out);
    assert_eq!(r["result"]["vertices"], 8);
    assert_eq!(r["result"]["euler"], 2);
    assert_eq!(r["result"]["betti0"], 1);
    assert_eq!(r["result"]["betti1"], 0);
    assert_eq!(r["result"]["free"], true);
    assert_eq!(r["result"]["quotient"]["torsion1"], serde_json::json!([2]));

    let out = homkit(&["topo", "--complex", "hom", "--in", "k4.txt"], dir.path());
    let r = report(&out);
    assert_eq!(r["result"]["vertices"], 12);
    assert_eq!(r["result"]["betti1"], 0);
}

#[test]
fn wind_computes_the_identity_profile() {
    let dir = tempfile::tempdir().unwrap();
    let cert = serde_json::json!({
        "type": "pol",
        "schema_version": 1,
        "source": "cycle:5",
        "target": "circular:5/2",
        "arity": 1,
        "table": [0, 2, 4, 1, 3],
    });
    std::fs::write(dir.path().join("f.json"), cert.to_string()).unwrap();
    let out = homkit(&["wind", "--hom", "f.json", "--target", "5/2"], dir.path());
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let r = report(&out);
    assert_eq!(r["result"]["a"], serde_json::json!([2]));
    assert_eq!(r["result"]["d"], 1);

    // an even target slope is rejected
    let bad = serde_json::json!({
        "type": "pol",
        "schema_version": 1,
        "source": "cycle:5",
        "target": "circular:6/2",
        "arity": 1,
        "table": [0, 2, 4, 0, 2],
    });
    std::fs::write(dir.path().join("bad.json"), bad.to_string()).unwrap();
    let out = homkit(
        &["wind", "--hom", "bad.json", "--target", "6/2"],
        dir.path(),
    );
    assert_eq!(code(&out), 1);
}

#[test]
fn identical_invocations_have_identical_result_payloads() {
    let dir = tempfile::tempdir().unwrap();
    homkit(&["gen", "cycle:7", "--out", "c7.txt"], dir.path());
    homkit(&["gen", "clique:3", "--out", "k3.txt"], dir.path());
    let a = homkit(&["hom", "--from", "c7.txt", "--to", "k3.txt"], dir.path());
    let b = homkit(&["hom", "--from", "c7.txt", "--to", "k3.txt"], dir.path());
    let (mut ra, mut rb) = (report(&a), report(&b));
    ra["wall_time_ms"] = Value::Null;
    rb["wall_time_ms"] = Value::Null;
    assert_eq!(ra, rb);
}

#[test]
fn cap_rejects_oversized_constructions() {
    let dir = tempfile::tempdir().unwrap();
    homkit(&["gen", "clique:4", "--out", "k4.txt"], dir.path());
    // the subset-tuple graph of K_4 has 64 vertices; a cap of 10 refuses it
    let out = homkit(
        &[
            "apply",
            "--functor",
            "omega:3",
            "--in",
            "k4.txt",
            "--cap",
            "10",
        ],
        dir.path(),
    );
    assert_eq!(code(&out), 1);
    assert!(String::from_utf8_lossy(&out.stderr).contains("cap"));
    let out = homkit(
        &["apply", "--functor", "omega:3", "--in", "k4.txt"],
        dir.path(),
    );
    assert_eq!(code(&out), 0);
}

#[test]
fn budget_env_var_sets_the_default() {
    let dir = tempfile::tempdir().unwrap();
    homkit(&["gen", "kneser:5,2", "--out", "p.txt"], dir.path());
    homkit(&["gen", "clique:2", "--out", "k2.txt"], dir.path());
    let out = Command::new(env!("CARGO_BIN_EXE_homkit"))
        .args(["hom", "--from", "p.txt", "--to", "k2.txt"])
        .current_dir(dir.path())
        .env("HOMKIT_BUDGET", "1")
        .output()
        .expect("binary runs");
    assert_eq!(code(&out), 2);
    assert_eq!(report(&out)["budget"]["limit"], 1);
}

#[test]
fn check_command_lists_and_runs_suites() {
    let dir = tempfile::tempdir().unwrap();
    let out = homkit(&["check", "list"], dir.path());
    assert_eq!(code(&out), 0);
    assert!(String::from_utf8_lossy(&out.stdout).contains("poljak-rodl"));

    let out = homkit(&["check", "no-such-suite"], dir.path());
    assert_eq!(code(&out), 1);

    // the cheapest real suite end to end, with a pinned worker count
    let out = homkit(&["check", "minion", "--jobs", "2"], dir.path());
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let r = report(&out);
    assert_eq!(r["result"]["pass"], true);

    // the result payload does not depend on the worker count
    let single = homkit(&["check", "minion", "--jobs", "1"], dir.path());
    assert_eq!(report(&single)["result"], r["result"]);
}
