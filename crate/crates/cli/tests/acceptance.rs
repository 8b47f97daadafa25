//! Acceptance run: one line per criterion, each suite in a fresh process.

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::{Duration, Instant};

use kappa3_core::functionals::{eval_named, Backend};
use kappa3_core::galg::{GGen, GroupElement};
use kappa3_core::ideal::phi;
use kappa3_core::scalar::KScalar;
use serde_json::Value;

struct Run {
    report: Value,
    elapsed: Duration,
}

impl Run {
    fn ids_with(&self, status: &str) -> BTreeSet<String> {
        self.report["checks"]
            .as_array()
            .unwrap()
            .iter()
            .filter(|c| c["status"] == status)
            .map(|c| c["id"].as_str().unwrap().to_string())
            .collect()
    }

    fn count(&self, key: &str) -> u64 {
        self.report["summary"][key].as_u64().unwrap()
    }

    fn no_fail(&self) -> bool {
        self.count("fail") == 0 && self.count("pass") > 0
    }

    fn all_pass(&self) -> bool {
        self.no_fail() && self.count("reconciled") == 0
    }

    fn has(&self, id: &str) -> bool {
        self.ids_with("PASS").contains(id)
    }
}

fn verify(suite: &str, out: &Path) -> (Vec<u8>, Duration) {
    let t = Instant::now();
    let o = Command::new(env!("CARGO_BIN_EXE_kappa3"))
        .args(["verify", suite, "--out", out.to_str().unwrap()])
        .output()
        .expect("binary runs");
    let elapsed = t.elapsed();
    if !o.status.success() {
        eprint!("{}", String::from_utf8_lossy(&o.stderr));
    }
    (std::fs::read(out).unwrap_or_default(), elapsed)
}

fn run(dir: &Path, suite: &str) -> Run {
    let (bytes, elapsed) = verify(suite, &dir.join(format!("{}.json", suite)));
    let report = serde_json::from_slice(&bytes).unwrap_or_else(|_| serde_json::json!({"checks": [], "summary": {"pass": 0, "fail": 1, "reconciled": 0}}));
    Run { report, elapsed }
}

fn set(ids: &[&str]) -> BTreeSet<String> {
    ids.iter().map(|s| s.to_string()).collect()
}

fn named_value(name: &str, a: &GroupElement) -> bool {
    [Backend::Calc, Backend::Dual].into_iter().all(|b| eval_named(name, b, a) == Some(KScalar::one()))
}

fn main() {
    let dir: PathBuf = std::env::temp_dir().join(format!("kappa3-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let minutes = |m: u64| Duration::from_secs(60 * m);
    let mut results: Vec<(usize, &str, bool, String)> = Vec::new();
    let mut record = |n: usize, what: &'static str, ok: bool, detail: String| {
        println!("criterion {:>2}: {} {} ({})", n, if ok { "PASS" } else { "FAIL" }, what, detail);
        results.push((n, what, ok, detail));
    };
    let timed = |r: &Run, limit: Duration| (r.elapsed <= limit, format!("{:.1}s", r.elapsed.as_secs_f64()));

    for (n, suite, limit) in [(1, "hopf-axioms", 1), (2, "relations", 1), (3, "dual-hopf", 1), (4, "pairing", 5)] {
        let r = run(&dir, suite);
        let (fast, t) = timed(&r, minutes(limit));
        record(n, suite, r.all_pass() && fast, format!("pass={} fail={} reconciled={}, {}", r.count("pass"), r.count("fail"), r.count("reconciled"), t));
    }

    let r = run(&dir, "ideal");
    let (fast, t) = timed(&r, minutes(10));
    let dims = r.has("ideal.quotient_dim.2") && r.has("ideal.quotient_dim.3");
    let reconciled = r.ids_with("RECONCILED") == set(&["ideal.delta_placement"]);
    let invariance = r.ids_with("PASS").iter().any(|id| id.starts_with("ideal.ad"));
    record(5, "ideal", r.no_fail() && dims && reconciled && invariance && r.has("ideal.counit") && fast, format!("quotient dims 8 at degrees 2 and 3: {}, {}", dims, t));

    let r = run(&dir, "forms");
    let (fast, t) = timed(&r, minutes(10));
    let expected = set(&[
        "forms.commutation.l_w",
        "forms.commutation.x_w",
        "forms.eta.om",
        "forms.eta.wx",
        "forms.sigma.w_wx",
        "forms.sigma.wx_wx",
        "forms.wedge.wmixed_wx",
    ]);
    let reconciled = r.ids_with("RECONCILED");
    record(6, "forms", r.no_fail() && reconciled == expected && fast, format!("reconciled={} (recorded items only: {}), {}", reconciled.len(), reconciled == expected, t));

    let r = run(&dir, "qlie");
    let (fast, t) = timed(&r, minutes(15));
    let both = ["qlie.calc.", "qlie.dual."].iter().all(|p| r.ids_with("PASS").iter().any(|id| id.starts_with(p)));
    record(7, "qlie", r.no_fail() && both && fast, format!("pass={} reconciled={}, {}", r.count("pass"), r.count("reconciled"), t));

    let r = run(&dir, "crossval");
    let (fast, t) = timed(&r, minutes(15));
    let spot = named_value("chi0", &GroupElement::gen(GGen::X(0))) && named_value("chi", &phi());
    record(8, "crossval", r.all_pass() && spot && fast, format!("chi0(x0) = chi(phi) = 1 on both backends: {}, {}", spot, t));

    let r = run(&dir, "coproducts");
    let (fast, t) = timed(&r, minutes(15));
    let fji = r.has("coproducts.fji_match") && r.has("coproducts.fji_coassoc");
    record(9, "coproducts", r.no_fail() && fji && fast, format!("pass={} reconciled={}, {}", r.count("pass"), r.count("reconciled"), t));

    let (a, _) = verify("all", &dir.join("all-1.json"));
    let (b, _) = verify("all", &dir.join("all-2.json"));
    let all: Value = serde_json::from_slice(&a).unwrap_or(Value::Null);
    let ids: Vec<&str> = all["checks"].as_array().map(|c| c.iter().filter_map(|c| c["id"].as_str()).collect()).unwrap_or_default();
    let unique = !ids.is_empty() && ids.iter().collect::<BTreeSet<_>>().len() == ids.len();
    record(10, "determinism", unique && a == b, format!("{} bytes, identical: {}, unique ids: {}", a.len(), a == b, unique));

    let _ = std::fs::remove_dir_all(&dir);
    let failed: Vec<usize> = results.iter().filter(|r| !r.2).map(|r| r.0).collect();
    if failed.is_empty() {
        println!("acceptance: all {} criteria PASS", results.len());
    } else {
        println!("acceptance: FAIL on criteria {:?}", failed);
        std::process::exit(1);
    }
}
