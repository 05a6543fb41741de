//! End-to-end checks of the command-line surface: exit codes, file outputs,
//! and byte-for-byte determinism.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_gausstele")
}

fn scenario(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("scenarios")
        .join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(bin())
        .args(args)
        .env("GT_DETERMINISTIC", "1")
        .output()
        .expect("binary runs")
}

fn run_threaded(args: &[&str]) -> Output {
    Command::new(bin())
        .args(args)
        .env_remove("GT_DETERMINISTIC")
        .output()
        .expect("binary runs")
}

fn tempdir(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("gausstele-cli-{tag}-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

#[test]
fn sweep_emits_deterministic_csv() {
    let dir = tempdir("sweep");
    let out1 = dir.join("tmsv1.csv");
    let out2 = dir.join("tmsv2.csv");
    for out in [&out1, &out2] {
        let r = run(&[
            "sweep",
            scenario("strong_tmsv.json").to_str().unwrap(),
            "--out",
            out.to_str().unwrap(),
        ]);
        assert!(r.status.success(), "{}", String::from_utf8_lossy(&r.stderr));
    }
    let a = std::fs::read(&out1).unwrap();
    let b = std::fs::read(&out2).unwrap();
    assert_eq!(a, b, "repeat runs must be byte identical");
    let text = String::from_utf8(a).unwrap();
    assert!(text.starts_with("sigma_bar,infidelity,oracle_closed_form,truncation_weight\n"));
    assert!(text.trim_end().lines().last().unwrap().starts_with('#'));
    assert!(text.contains("config_sha256="));
}

#[test]
fn oracle_sweep_is_byte_identical_across_threaded_runs() {
    let dir = tempdir("threads");
    let spec = dir.join("oracle.json");
    std::fs::write(
        &spec,
        r#"{
            "experiment": "bound_vs_oracle",
            "channel": { "kind": "thermal", "eta": 0.5, "n_b": 0.0 },
            "sigma_grid": [0.3],
            "cutoff": 40,
            "probes": [
                { "kind": "vacuum" },
                { "kind": "tmsv", "n_s": 1.0 },
                { "kind": "tmsv", "n_s": 2.0 }
            ]
        }"#,
    )
    .unwrap();
    let out1 = dir.join("a.csv");
    let out2 = dir.join("b.csv");
    for out in [&out1, &out2] {
        let r = run_threaded(&[
            "sweep",
            spec.to_str().unwrap(),
            "--out",
            out.to_str().unwrap(),
        ]);
        assert!(r.status.success(), "{}", String::from_utf8_lossy(&r.stderr));
    }
    assert_eq!(std::fs::read(&out1).unwrap(), std::fs::read(&out2).unwrap());
}

#[test]
fn sweep_falls_back_to_scenario_output_path() {
    let dir = tempdir("outpath");
    let dest = dir.join("from-scenario.csv");
    let spec = dir.join("spec.json");
    std::fs::write(
        &spec,
        format!(
            r#"{{
                "experiment": "strong_fixed_state",
                "state": {{ "kind": "vacuum" }},
                "sigma_grid": [1.0, 0.5],
                "cutoff": 30,
                "output_path": {:?}
            }}"#,
            dest.to_str().unwrap()
        ),
    )
    .unwrap();
    let r = run(&["sweep", spec.to_str().unwrap()]);
    assert!(r.status.success(), "{}", String::from_utf8_lossy(&r.stderr));
    assert!(dest.exists());
    // no --out and no output_path is a validation error
    let bare = dir.join("bare.json");
    std::fs::write(
        &bare,
        r#"{"experiment":"strong_fixed_state","state":{"kind":"vacuum"},"sigma_grid":[1.0],"cutoff":30}"#,
    )
    .unwrap();
    let r = run(&["sweep", bare.to_str().unwrap()]);
    assert_eq!(r.status.code(), Some(2));
}

#[test]
fn sweep_rejects_malformed_json_with_location() {
    let dir = tempdir("badjson");
    let bad = dir.join("bad.json");
    std::fs::write(
        &bad,
        "{ \"experiment\": \"strong_fixed_state\",\n  broken\n}",
    )
    .unwrap();
    let out = dir.join("never.csv");
    let r = run(&[
        "sweep",
        bad.to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(r.status.code(), Some(2));
    let err = String::from_utf8_lossy(&r.stderr);
    assert!(err.contains("line") && err.contains("column"), "{err}");
    assert!(!out.exists());
}

#[test]
fn sweep_flags_truncation_floor_with_exit_3() {
    let dir = tempdir("floor");
    let spec = dir.join("floor.json");
    std::fs::write(
        &spec,
        r#"{
            "experiment": "strong_fixed_state",
            "state": { "kind": "basel" },
            "sigma_grid": [0.1],
            "cutoff": 100,
            "trust_floor": 0.999
        }"#,
    )
    .unwrap();
    let out = dir.join("floor.csv");
    let r = run(&[
        "sweep",
        spec.to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(r.status.code(), Some(3));
    let err = String::from_utf8_lossy(&r.stderr);
    assert!(err.contains("cutoff 100"), "{err}");
}

#[test]
fn bounds_table_matches_closed_forms() {
    let dir = tempdir("bounds");
    let out = dir.join("add.csv");
    let r = run(&[
        "bounds",
        "--channel",
        "additive-noise",
        "--params",
        "1.0",
        "--sigma-grid",
        "1.0,0.5,0.1",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(r.status.success(), "{}", String::from_utf8_lossy(&r.stderr));
    let text = std::fs::read_to_string(&out).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "kind,channel,sigma_bar,bound_value");
    // ξ = 1, σ̄ = 0.5 row must carry √(1 − 4ξ(ξ+σ̄)/(2ξ+σ̄)²) = 0.2
    let row = lines.nth(1).unwrap();
    let value: f64 = row.rsplit(',').next().unwrap().parse().unwrap();
    assert!((value - 0.2).abs() < 1e-12, "{row}");

    // pure amplifier column follows √(1 − 1/(Gσ̄/(G−1)+1))
    let out2 = dir.join("amp.csv");
    let r = run(&[
        "bounds",
        "--channel",
        "pure-amplifier",
        "--params",
        "2maybe",
        "--sigma-grid",
        "0.1",
        "--out",
        out2.to_str().unwrap(),
    ]);
    assert_eq!(r.status.code(), Some(2), "bad params must be rejected");
    let r = run(&[
        "bounds",
        "--channel",
        "pure-amplifier",
        "--params",
        "2.0",
        "--sigma-grid",
        "0.1",
        "--out",
        out2.to_str().unwrap(),
    ]);
    assert!(r.status.success());
    let text = std::fs::read_to_string(&out2).unwrap();
    let row = text.lines().nth(1).unwrap();
    let value: f64 = row.rsplit(',').next().unwrap().parse().unwrap();
    assert!((value - (1.0f64 - 1.0 / 1.2).sqrt()).abs() < 1e-12);
}

#[test]
fn bounds_oracle_column_stays_below_the_bound() {
    let dir = tempdir("oracle");
    let out = dir.join("thermal_oracle.csv");
    let r = run(&[
        "bounds",
        "--channel",
        "thermal",
        "--params",
        "0.5,0",
        "--sigma-grid",
        "0.3",
        "--oracle",
        "--cutoff",
        "40",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(r.status.success(), "{}", String::from_utf8_lossy(&r.stderr));
    let text = std::fs::read_to_string(&out).unwrap();
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "kind,channel,sigma_bar,bound_value,oracle_p_tmsv2"
    );
    // the channel field is quoted (it contains a comma); the numeric
    // columns are the last three
    let row = lines.next().unwrap();
    assert!(row.contains("\"thermal(eta=0.5, n_b=0)\""), "{row}");
    let tail: Vec<&str> = row.rsplit(',').take(3).collect();
    let oracle: f64 = tail[0].parse().unwrap();
    let bound: f64 = tail[1].parse().unwrap();
    assert!(oracle <= bound + 1e-4, "{oracle} vs {bound}");
    assert!(
        oracle > 0.5 * bound,
        "probe should get within range of the bound"
    );
}

#[test]
fn game_fixtures_produce_expected_verdicts() {
    let dir = tempdir("game");
    for (fixture, expected) in [
        ("game_ideal_distinguisher_first.json", "teleporter"),
        ("game_ideal_teleporter_first.json", "distinguisher"),
        ("game_gaussian_thermal.json", "teleporter"),
    ] {
        let out = dir.join(format!("{fixture}.transcript.json"));
        let r = run(&[
            "game",
            scenario(fixture).to_str().unwrap(),
            "--out",
            out.to_str().unwrap(),
        ]);
        assert!(r.status.success(), "{}", String::from_utf8_lossy(&r.stderr));
        let transcript: serde_json::Value =
            serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
        assert_eq!(
            transcript["winner"].as_str().unwrap(),
            expected,
            "fixture {fixture}"
        );
        assert_eq!(transcript["rounds"].as_array().unwrap().len(), 10_000);
        let summary = out.with_extension("summary.csv");
        let text = std::fs::read_to_string(summary).unwrap();
        assert!(text.starts_with("seed,probe,sigma_bar"));
    }
}

#[test]
fn game_seed_override_changes_transcript_deterministically() {
    let dir = tempdir("seed");
    let out1 = dir.join("a.json");
    let out2 = dir.join("b.json");
    let out3 = dir.join("c.json");
    let fixture = scenario("game_ideal_distinguisher_first.json");
    for (out, seed) in [(&out1, "7"), (&out2, "7"), (&out3, "8")] {
        let r = run(&[
            "game",
            fixture.to_str().unwrap(),
            "--seed",
            seed,
            "--out",
            out.to_str().unwrap(),
        ]);
        assert!(r.status.success());
    }
    assert_eq!(std::fs::read(&out1).unwrap(), std::fs::read(&out2).unwrap());
    assert_ne!(std::fs::read(&out1).unwrap(), std::fs::read(&out3).unwrap());
}

#[test]
fn skc_prints_pinned_values() {
    let r = run(&["skc", "--eta", "0.5", "--n", "100", "--epsilon", "0.1"]);
    assert!(r.status.success());
    let out = String::from_utf8_lossy(&r.stdout);
    assert!(out.contains("c_epsilon,0.1,"), "{out}");
    assert!(out.contains("pure_loss_bound,eta=0.5,n=100,epsilon=0.1,"));
    // thermal variant requires V
    let r = run(&[
        "skc",
        "--eta",
        "0.5",
        "--n",
        "100",
        "--epsilon",
        "0.1",
        "--n-b",
        "1.0",
    ]);
    assert_eq!(r.status.code(), Some(2));
    let r = run(&[
        "skc",
        "--eta",
        "0.5",
        "--n",
        "100",
        "--epsilon",
        "0.1",
        "--n-b",
        "1.0",
        "--v-value",
        "2.0",
    ]);
    assert!(r.status.success());
    assert!(String::from_utf8_lossy(&r.stdout).contains("thermal_bound_terms"));
}

#[test]
fn verify_fast_level_passes_and_reports() {
    let dir = tempdir("verify");
    let report = dir.join("report.json");
    let r = run(&[
        "verify",
        "--level",
        "fast",
        "--out",
        report.to_str().unwrap(),
    ]);
    assert!(r.status.success(), "{}", String::from_utf8_lossy(&r.stdout));
    let out = String::from_utf8_lossy(&r.stdout);
    assert!(out.contains("PASS composition-identities"));
    assert!(out.contains("checks passed"));
    let json: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert!(json.as_array().unwrap().len() >= 6);
    for check in json.as_array().unwrap() {
        assert_eq!(check["passed"], true, "{check}");
    }
}
