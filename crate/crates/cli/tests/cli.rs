use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_faultyalign")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

const HEADER: &str = "n,k,delta,constant_c,seed_size,query_count,trials,successes,mean_hamming,wall_time_seconds";

#[test]
fn sweep_csv_has_exact_header_and_is_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    let args = |path: &str| {
        vec![
            "sweep", "--n", "60,90", "--k", "3", "--delta", "0.4", "--constant-c", "2", "--trials", "5", "--seed", "11",
            "--out", path,
        ]
        .into_iter()
        .map(String::from)
        .collect::<Vec<_>>()
    };
    for path in [&a, &b] {
        let p = path.to_str().unwrap();
        let owned = args(p);
        let refs: Vec<&str> = owned.iter().map(String::as_str).collect();
        let out = run(&refs);
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    }
    let text_a = std::fs::read(&a).unwrap();
    assert_eq!(text_a, std::fs::read(&b).unwrap());
    let text = String::from_utf8(text_a).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], HEADER);
    assert_eq!(lines.len(), 3);
    for line in &lines[1..] {
        let f: Vec<f64> = line.split(',').map(|x| x.parse().unwrap()).collect();
        assert_eq!(f[5], f[4] * (f[0] - f[4]));
        assert_eq!(f[9], 0.0);
    }
}

#[test]
fn invalid_configuration_exits_2() {
    let out = run(&["simulate", "--n", "50", "--k", "2", "--delta", "0.9"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["sweep", "--trials", "0"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["mle-check", "--n", "12", "--k", "2", "--delta", "0.4"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["sweep", "--bogus"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["phase", "--n", "50", "--trials", "1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn internal_error_exits_3() {
    let out = run(&["sweep", "--n", "40", "--k", "2", "--delta", "0.3", "--trials", "1", "--out", "/nonexistent/dir/x.csv"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn config_file_with_flag_override() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("sweep.toml");
    std::fs::write(
        &cfg,
        "n_values = [40, 80]\nk_values = [2]\ndelta_values = [0.3]\nconstant_c_values = [3.0]\ntrials = 2\nbase_seed = 4\n",
    )
    .unwrap();
    let out = run(&["sweep", "--config", cfg.to_str().unwrap(), "--n", "64"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = stdout(&out);
    let rows: Vec<&str> = text.lines().skip(1).collect();
    assert_eq!(rows.len(), 1);
    assert!(rows[0].starts_with("64,2,0.3,3.0,"), "{}", rows[0]);

    std::fs::write(&cfg, "n_values = \"many\"\n").unwrap();
    let out = run(&["sweep", "--config", cfg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn simulate_noiseless_json() {
    let out = run(&["simulate", "--n", "120", "--k", "5", "--delta", "0.1", "--noiseless", "--seed", "3", "--format", "json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["success"], true);
    assert_eq!(v["hamming"], 0);
    assert_eq!(v["mismatched_nodes"].as_array().unwrap().len(), 0);
    let s = v["seed_size"].as_u64().unwrap();
    assert_eq!(v["query_count"].as_u64().unwrap(), s * (120 - s));
}

#[test]
fn phase_emits_one_block_per_scale() {
    let out = run(&[
        "phase", "--n", "100", "--k", "2", "--delta", "0.35", "--constant-c", "4", "--trials", "3", "--budget-scale",
        "1,0.1",
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], format!("budget_scale,{HEADER}"));
    assert!(lines[1].starts_with("1,100,"));
    assert!(lines[2].starts_with("0.1,100,"));
}

#[test]
fn lemma_check_single_point_has_no_fit() {
    let out = run(&["lemma-check", "--n", "50", "--k", "3", "--delta", "0.1", "--trials", "2000", "--format", "json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["rows"].as_array().unwrap().len(), 1);
    assert!(v["fit"].is_null());

    let out = run(&["lemma-check", "--n", "20,40,60,80,100", "--k", "2", "--delta", "0.3", "--trials", "2000"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("r_squared="));
}

#[test]
fn mle_check_noiseless_agrees() {
    let out = run(&["mle-check", "--n", "6", "--k", "3", "--delta", "0.3", "--trials", "10", "--noiseless"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("# agreement_rate=1,"));
}
