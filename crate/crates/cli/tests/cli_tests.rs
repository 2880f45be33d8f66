use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn gracelab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gracelab"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_of(out: &Output) -> String {
    assert!(
        out.status.success(),
        "expected success, stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn write_p4(dir: &Path) -> String {
    let p = dir.join("p4.el");
    fs::write(&p, "0 1\n1 2\n2 3\n").unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn label_emits_a_verified_document() {
    let dir = tempfile::tempdir().unwrap();
    let p4 = write_p4(dir.path());
    let out = gracelab(&["label", "--method", "rrg", "--in", &p4]);
    let doc: serde_json::Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    assert_eq!(doc["n"], 4);
    assert_eq!(doc["method"], "rrg");
    assert_eq!(doc["report"]["ok"], true);
    assert_eq!(doc["report"]["verification"]["graceful"], true);
}

#[test]
fn verify_closes_the_loop_on_every_method() {
    let dir = tempfile::tempdir().unwrap();
    let shell = dir.path().join("shell.el");
    fs::write(&shell, "0 1\n1 2\n2 3\n3 4\n2 5\n5 6\n").unwrap();
    let input = shell.to_str().unwrap();
    for method in ["rrg", "erg", "bh-relaxed", "shell", "alpha-shell"] {
        let doc = dir.path().join(format!("{method}.json"));
        let doc_path = doc.to_str().unwrap();
        let out = gracelab(&[
            "label", "--method", method, "--in", input, "--out", doc_path,
        ]);
        assert!(out.status.success(), "label --method {method} failed");
        let check = gracelab(&["verify", "--in", doc_path]);
        let report: serde_json::Value = serde_json::from_str(&stdout_of(&check)).unwrap();
        assert_eq!(report["ok"], true, "verify rejected {method}");
    }
}

#[test]
fn verify_rejects_a_tampered_document() {
    let dir = tempfile::tempdir().unwrap();
    let p4 = write_p4(dir.path());
    let doc_path = dir.path().join("doc.json");
    let doc_str = doc_path.to_str().unwrap();
    gracelab(&["label", "--method", "rrg", "--in", &p4, "--out", doc_str]);
    let mut doc: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(&doc_path).unwrap()).unwrap();
    doc["labels"][0] = doc["labels"][1].clone();
    fs::write(&doc_path, serde_json::to_string(&doc).unwrap()).unwrap();
    let out = gracelab(&["verify", "--in", doc_str]);
    assert_eq!(out.status.code(), Some(1));
    let report: serde_json::Value =
        serde_json::from_str(&String::from_utf8(out.stdout).unwrap()).unwrap();
    assert_eq!(report["ok"], false);
    assert_eq!(report["verification"]["injective"], false);
}

#[test]
fn batch_sweep_is_clean_and_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let args = [
        "batch",
        "--family",
        "lobster",
        "--count",
        "100",
        "--seed",
        "7",
        "--methods",
        "rrg,erg,bh-relaxed",
    ];
    let first = stdout_of(&gracelab(&args));
    let again = stdout_of(&gracelab(&args));
    assert_eq!(first, again);

    let lines: Vec<&str> = first.lines().collect();
    assert_eq!(lines.len(), 301);
    assert_eq!(
        lines[0],
        "id,n,m,d,k_distance,ex,ex_prime,s,nu,method,epsilon,max_label,bound_rrg,bound_alpha,bound_gs,ok"
    );
    for line in &lines[1..] {
        assert!(line.ends_with(",true"), "row not ok: {line}");
    }

    // --out writes the same bytes
    let out_path = dir.path().join("sweep.csv");
    let out_str = out_path.to_str().unwrap();
    let mut with_out = args.to_vec();
    with_out.extend(["--out", out_str]);
    assert!(gracelab(&with_out).status.success());
    assert_eq!(fs::read_to_string(&out_path).unwrap(), first);
}

#[test]
fn gen_is_reproducible_and_feeds_stats() {
    let dir = tempfile::tempdir().unwrap();
    let first = stdout_of(&gracelab(&[
        "gen", "lobster", "--spine", "9", "--seed", "3",
    ]));
    let again = stdout_of(&gracelab(&[
        "gen", "lobster", "--spine", "9", "--seed", "3",
    ]));
    assert_eq!(first, again);

    let el = dir.path().join("lob.el");
    fs::write(&el, &first).unwrap();
    let out = gracelab(&["stats", "--in", el.to_str().unwrap()]);
    let stats: serde_json::Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    assert_eq!(stats["diameter"], 8);
    assert!(stats["k_distance"].as_u64().unwrap() <= 2);
    assert_eq!(stats["identities"]["per_level_identity"], true);
    assert_eq!(stats["identities"]["level_sum"], true);
    assert!(stats["edge_groups"]["per_pair"].is_array());
}

#[test]
fn enumerate_reports_the_known_counts() {
    let out = gracelab(&["enumerate", "--max-n", "8"]);
    let listing: serde_json::Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    assert_eq!(
        listing["counts"],
        serde_json::json!([1, 1, 1, 2, 3, 6, 11, 23])
    );
}

#[test]
fn oracle_confirms_small_trees_and_refuses_big_ones() {
    let dir = tempfile::tempdir().unwrap();
    let p4 = write_p4(dir.path());
    let out = gracelab(&["oracle", "gracesize", &p4]);
    let report: serde_json::Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    assert_eq!(report["gracesize"], 3);
    assert_eq!(report["graceful"], true);

    let big = dir.path().join("p12.el");
    let edges: String = (0..11).map(|i| format!("{} {}\n", i, i + 1)).collect();
    fs::write(&big, edges).unwrap();
    let refused = gracelab(&["oracle", "gracesize", big.to_str().unwrap()]);
    assert_eq!(refused.status.code(), Some(1));
}

#[test]
fn bounds_reports_all_three_formulas() {
    let dir = tempfile::tempdir().unwrap();
    let p4 = write_p4(dir.path());
    let out = gracelab(&["bounds", "--in", &p4]);
    let b: serde_json::Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    assert_eq!(b["range_relaxed_max_label"]["value"], 3);
    assert!(b["contiguous_distinct_weights"]["value"]
        .as_str()
        .unwrap()
        .contains('/'));
    assert!(b["gracesize_lower"]["value"]
        .as_str()
        .unwrap()
        .contains('/'));
    assert_eq!(b["nu"], 4);
}

#[test]
fn export_dot_shows_labels_and_weights() {
    let dir = tempfile::tempdir().unwrap();
    let p4 = write_p4(dir.path());
    let bare = stdout_of(&gracelab(&["export-dot", "--in", &p4]));
    assert!(bare.starts_with("graph {\n"));
    assert!(bare.contains("  0 -- 1;\n"));
    assert!(!bare.contains("label=\"1\"];\n  0 -- 1"));

    let doc = dir.path().join("doc.json");
    let doc_str = doc.to_str().unwrap();
    gracelab(&["label", "--method", "rrg", "--in", &p4, "--out", doc_str]);
    let labeled = stdout_of(&gracelab(&["export-dot", "--doc", doc_str]));
    for weight in 1..=3 {
        assert!(
            labeled.contains(&format!("[label=\"{weight}\"];")),
            "missing weight {weight} in:\n{labeled}"
        );
    }
    let again = stdout_of(&gracelab(&["export-dot", "--doc", doc_str]));
    assert_eq!(labeled, again);
}

#[test]
fn usage_problems_exit_two() {
    let bad_method = gracelab(&["label", "--method", "nope", "--in", "x.el"]);
    assert_eq!(bad_method.status.code(), Some(2));

    let missing_file = gracelab(&["label", "--method", "rrg", "--in", "/no/such/file.el"]);
    assert_eq!(missing_file.status.code(), Some(2));

    let dir = tempfile::tempdir().unwrap();
    let garbage = dir.path().join("bad.el");
    fs::write(&garbage, "0 1\n1 0\n").unwrap();
    let cyclic = gracelab(&[
        "label",
        "--method",
        "rrg",
        "--in",
        garbage.to_str().unwrap(),
    ]);
    assert_eq!(cyclic.status.code(), Some(2));

    let both = gracelab(&["export-dot", "--in", "a.el", "--doc", "b.json"]);
    assert_eq!(both.status.code(), Some(2));

    let too_big = gracelab(&["enumerate", "--max-n", "50"]);
    assert_eq!(too_big.status.code(), Some(2));
}

#[test]
fn domain_failures_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    let p3 = dir.path().join("p3.el");
    fs::write(&p3, "0 1\n1 2\n").unwrap();
    let no_matching = gracelab(&["label", "--method", "bh", "--in", p3.to_str().unwrap()]);
    assert_eq!(no_matching.status.code(), Some(1));

    let lobster = dir.path().join("lob.el");
    fs::write(&lobster, "0 1\n1 2\n2 3\n3 4\n2 5\n5 6\n5 7\n").unwrap();
    let not_a_shell = gracelab(&[
        "label",
        "--method",
        "shell",
        "--in",
        lobster.to_str().unwrap(),
    ]);
    assert_eq!(not_a_shell.status.code(), Some(1));
}
