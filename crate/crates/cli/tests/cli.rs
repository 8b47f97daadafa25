use std::process::{Command, Output};

fn kappa3(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kappa3")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap().trim_end().to_string()
}

fn scratch(name: &str) -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("kappa3-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn normal_form_reorders_coordinates() {
    let o = kappa3(&["nf", "x1*x0"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "x0*x1 - (I/k)*x1");
}

#[test]
fn printed_output_parses_back_to_itself() {
    for src in ["-x1*x0", "x1*x0", "x2*x1*x0", "S(x0)", "star(x1*x0)", "L[1,0]*x2 + k^-1*x0"] {
        let once = stdout(&kappa3(&["nf", src]));
        let twice = kappa3(&["nf", &once]);
        assert_eq!(twice.status.code(), Some(0), "{}", once);
        assert_eq!(stdout(&twice), once);
    }
}

#[test]
fn pairing_of_generators() {
    let o = kappa3(&["pair", "x0", "P0"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "I");
}

#[test]
fn counit_of_mixed_expression() {
    assert_eq!(stdout(&kappa3(&["nf", "eps(x0*x1 + 5*L[1,1])"])), "5");
}

#[test]
fn exterior_derivative_of_time_coordinate() {
    let o = kappa3(&["d", "x0"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "L[0,0]*w0 + L[0,1]*w1 + L[0,2]*w2");
}

#[test]
fn named_functional_on_both_backends() {
    let o = kappa3(&["chi", "chi0", "x0"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "CALC = 1, DUAL = 1, AGREE");
    assert!(stdout(&kappa3(&["chi", "chi", "x0^2 - x1^2 - x2^2 + (2*I/k)*x0"])).ends_with("AGREE"));
}

#[test]
fn usage_and_parse_errors_exit_one() {
    assert_eq!(kappa3(&[]).status.code(), Some(1));
    assert_eq!(kappa3(&["nf"]).status.code(), Some(1));
    assert_eq!(kappa3(&["chi", "bogus", "x0"]).status.code(), Some(1));
    assert_eq!(kappa3(&["verify", "unknown"]).status.code(), Some(1));
    assert_eq!(kappa3(&["quotient-dim", "--degree", "9"]).status.code(), Some(1));
    let o = kappa3(&["nf", "x0 + L[0,3]"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("position 9"));
    assert_eq!(kappa3(&["pair", "x0", "x0"]).status.code(), Some(1));
}

#[test]
fn quotient_dimension_at_degree_two() {
    assert_eq!(stdout(&kappa3(&["quotient-dim", "--degree", "2"])), "8");
}

#[test]
fn verify_writes_json_report() {
    let path = scratch("relations.json");
    let o = kappa3(&["verify", "relations", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("relations: pass="));
    let report: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(report["suite"], "relations");
    let checks = report["checks"].as_array().unwrap();
    assert!(!checks.is_empty());
    assert!(checks.iter().all(|c| c["status"] == "PASS"));
}

#[test]
fn verify_reads_config_file() {
    let cfg = scratch("hopf.cfg");
    std::fs::write(&cfg, "# smaller run\nhopf_degree = 1\nseed = 3\n").unwrap();
    let o = kappa3(&["verify", "hopf-axioms", "--config", cfg.to_str().unwrap(), "--format", "text"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("hopf.coassoc"));

    let out = scratch("hopf.json");
    kappa3(&["verify", "hopf-axioms", "--config", cfg.to_str().unwrap(), "--out", out.to_str().unwrap()]);
    let report: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(report["config"]["hopf_degree"], 1);
    assert_eq!(report["config"]["seed"], 3);

    std::fs::write(&cfg, "no_such_key = 1\n").unwrap();
    assert_eq!(kappa3(&["verify", "relations", "--config", cfg.to_str().unwrap()]).status.code(), Some(1));
}

#[test]
fn derive_prints_every_basis_pair() {
    let o = kappa3(&["derive", "sigma"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), 64);
}
