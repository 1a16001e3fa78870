use std::path::PathBuf;
use std::process::{Command, Output};

fn stabcat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_stabcat"))
        .args(args)
        .output()
        .expect("failed to run stabcat")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn code_file(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("codes")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("stdout is not JSON")
}

#[test]
fn catalog_lists_parameters() {
    let out = stabcat(&["catalog", "--format", "json"]);
    assert!(out.status.success());
    let entries = json(&out);
    let find = |name: &str| {
        entries
            .as_array()
            .unwrap()
            .iter()
            .find(|e| e["name"] == name)
            .cloned()
            .unwrap_or_else(|| panic!("{name} missing"))
    };
    let h = find("hamming74");
    assert_eq!((h["n"].as_u64(), h["k"].as_u64()), (Some(7), Some(4)));
    assert_eq!((h["d"].as_u64(), h["d_perp"].as_u64()), (Some(3), Some(4)));
    let r = find("repetition-3");
    assert_eq!((r["d"].as_u64(), r["d_perp"].as_u64()), (Some(3), Some(2)));

    let text = stdout(&stabcat(&["catalog"]));
    assert!(text.lines().any(|l| l.starts_with("hamming74-dual")));
}

#[test]
fn construct_shor() {
    let out = stabcat(&[
        "construct",
        "--c1",
        "repetition-3",
        "--d2",
        "3",
        "--format",
        "json",
    ]);
    assert!(out.status.success());
    let doc = json(&out);
    assert_eq!(doc["n"], 9);
    assert_eq!(doc["k"], 1);
    let gens = doc["generators"].as_array().unwrap();
    assert_eq!(gens.len(), 8);
    assert_eq!(gens[0], "ZZIIIIIII");
    assert_eq!(gens[7], "XXXIIIXXX");

    let text = stdout(&stabcat(&[
        "construct",
        "--c1",
        "repetition-3",
        "--d2",
        "3",
        "--indexed",
    ]));
    assert!(text.contains("Z1 Z2"), "{text}");
}

#[test]
fn construct_without_repetition_has_only_x_generators() {
    let out = stabcat(&[
        "construct",
        "--c1",
        "hamming74",
        "--d2",
        "1",
        "--format",
        "json",
    ]);
    assert!(out.status.success());
    let doc = json(&out);
    let gens = doc["generators"].as_array().unwrap();
    assert_eq!(gens.len(), 3);
    assert!(gens
        .iter()
        .all(|g| g.as_str().unwrap().chars().all(|c| c == 'X' || c == 'I')));
}

#[test]
fn code_files_are_accepted() {
    let out = stabcat(&[
        "construct",
        "--c1",
        &code_file("hamming74.code"),
        "--d2",
        "2",
        "--format",
        "json",
    ]);
    assert!(out.status.success());
    assert_eq!(json(&out)["n"], 14);

    let out = stabcat(&[
        "verify",
        "--c1",
        &code_file("conv75.code"),
        "--d2",
        "1",
        "--conv-frames",
        "2",
        "--format",
        "json",
    ]);
    assert!(out.status.success());
    let doc = json(&out);
    assert_eq!(doc["name"], "conv75-L2");
    assert_eq!(doc["n"], 8);
    assert_eq!(doc["free_distance"], "5");
    assert_eq!(doc["conv_frames"], 2);
}

#[test]
fn malformed_file_reports_line() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.code");
    std::fs::write(&path, "name: bad\ntype: block\nrow: 110\nrow: 0z1\n").unwrap();
    let out = stabcat(&["verify", "--c1", path.to_str().unwrap(), "--d2", "3"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("line 4"), "{err}");
}

#[test]
fn unknown_code_and_bad_flags_exit_2() {
    assert_eq!(
        stabcat(&["verify", "--c1", "golay-23", "--d2", "3"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        stabcat(&[
            "verify",
            "--c1",
            "hamming74",
            "--d2",
            "1",
            "--conv-frames",
            "2"
        ])
        .status
        .code(),
        Some(2)
    );
    assert_eq!(
        stabcat(&[
            "simulate",
            "--c1",
            "repetition-3",
            "--d2",
            "3",
            "--p",
            "1.5"
        ])
        .status
        .code(),
        Some(2)
    );
}

#[test]
fn strict_verify_exit_codes() {
    let mismatch = stabcat(&["verify", "--c1", "repetition-3", "--d2", "3", "--strict"]);
    assert_eq!(mismatch.status.code(), Some(1));
    assert!(stdout(&mismatch).contains("MISMATCH"));

    let relaxed = stabcat(&["verify", "--c1", "repetition-3", "--d2", "3"]);
    assert_eq!(relaxed.status.code(), Some(0));

    let matching = stabcat(&["verify", "--c1", "hamming74", "--d2", "3", "--strict"]);
    assert_eq!(matching.status.code(), Some(0));
}

#[test]
fn small_wmax_gives_lower_bound() {
    let args = [
        "verify",
        "--c1",
        "hamming74",
        "--d2",
        "3",
        "--wmax",
        "1",
        "--format",
        "json",
    ];
    let out = stabcat(&args);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    assert_eq!(doc["d_status"], "lower_bound");
    assert!(doc["d_computed"].is_null());
    assert_eq!(doc["wmax"], 1);

    let strict: Vec<&str> = args.iter().copied().chain(["--strict"]).collect();
    assert_eq!(stabcat(&strict).status.code(), Some(1));
}

#[test]
fn report_json_is_deterministic() {
    let args = [
        "verify",
        "--c1",
        "parity-4",
        "--d2",
        "3",
        "--format",
        "json",
        "--deterministic",
    ];
    let a = stabcat(&args);
    let b = stabcat(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let doc = json(&a);
    assert!(doc.get("wall_time_us").is_none());
    assert_eq!(doc["d_claimed"], 3);
    assert_eq!(doc["d_computed"], 2);
    assert_eq!(doc["rate_claimed"], doc["rate_computed"]);
    assert_eq!(doc["input_digest"].as_str().unwrap().len(), 64);

    let timed = json(&stabcat(&args[..args.len() - 1]));
    assert!(timed["wall_time_us"].is_u64());
}

#[test]
fn out_writes_report_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let out = stabcat(&[
        "verify",
        "--c1",
        "repetition-2",
        "--d2",
        "3",
        "--format",
        "json",
        "--deterministic",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let doc: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(doc["distance_match"], true);
    assert_eq!(doc["n"], 6);
}

#[test]
fn sweep_shor_pure_z() {
    let out = stabcat(&[
        "sweep",
        "--c1",
        "repetition-3",
        "--d2",
        "3",
        "--wmax",
        "2",
        "--filter",
        "pure-z",
        "--format",
        "json",
    ]);
    assert!(out.status.success());
    let tally = json(&out);
    let w2 = &tally["by_weight"][2];
    assert_eq!(w2["in_stabilizer"], 9);
    assert_eq!(w2["detected"], 27);
    assert_eq!(w2["logical"], 0);
}

#[test]
fn distance_reports_witness_and_css() {
    let text = stdout(&stabcat(&["distance", "--c1", "parity-4", "--d2", "3"]));
    assert!(text.starts_with("d = 2 (exact), witness Z"), "{text}");
    assert!(text.contains("d_x = 3, d_z = 2"), "{text}");
}

#[test]
fn simulate_without_noise() {
    let out = stabcat(&[
        "simulate",
        "--c1",
        "repetition-3",
        "--d2",
        "3",
        "--p",
        "0",
        "--trials",
        "50",
        "--format",
        "json",
    ]);
    assert!(out.status.success());
    let stats = json(&out);
    assert_eq!(stats["failures"], 0);
    assert_eq!(stats["logical_error_rate"], 0.0);
}
