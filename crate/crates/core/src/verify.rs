//! Suite registry, configuration and report assembly.

use serde::{Deserialize, Serialize};

use crate::calculus_checks::structural_checks;
use crate::dual::LorentzConvention;
use crate::error::{Error, Result};
use crate::functional_checks as fc;
use crate::functionals::{test_basis, Backend};
use crate::hopf_checks;
use crate::ideal::{all_components, monomials_upto, IdealVariant, Quotient};
use crate::ideal_checks;
use crate::printed;
use crate::report::{CheckResult, Report};

pub const SUITES: [&str; 10] =
    ["hopf-axioms", "relations", "dual-hopf", "pairing", "ideal", "forms", "qlie", "crossval", "coproducts", "all"];

/// Suite parameters. The defaults reproduce the acceptance runs; every field
/// can be set from a flat `key = value` file.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SuiteConfig {
    pub hopf_degree: usize,
    pub pairing_degree: usize,
    pub quotient_degrees: Vec<usize>,
    pub ideal_printed_delta: bool,
    pub lorentz_convention: LorentzConvention,
    pub basis_x_degree: usize,
    pub basis_l_degree: usize,
    pub involution_calc_x_degree: usize,
    pub involution_calc_l_degree: usize,
    pub convolution_x_degree: usize,
    pub convolution_l_degree: usize,
    pub seed: u64,
    pub coproduct_degree: usize,
    pub fji_degree: usize,
    pub threads: usize,
    pub record_timings: bool,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            hopf_degree: 2,
            pairing_degree: 2,
            quotient_degrees: vec![2, 3],
            ideal_printed_delta: false,
            lorentz_convention: LorentzConvention::Standard,
            basis_x_degree: 3,
            basis_l_degree: 2,
            involution_calc_x_degree: 2,
            involution_calc_l_degree: 1,
            convolution_x_degree: 2,
            convolution_l_degree: 2,
            seed: 20240917,
            coproduct_degree: 2,
            fji_degree: 1,
            threads: 0,
            record_timings: false,
        }
    }
}

impl SuiteConfig {
    /// Parses `key = value` lines; `#` starts a comment. Strings may be
    /// quoted or bare, lists are `[a, b]`.
    pub fn parse(text: &str) -> Result<Self> {
        let mut table = toml::Table::new();
        for (n, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| Error::Config(format!("line {}: expected key = value", n + 1)))?;
            let (k, v) = (k.trim(), v.trim());
            let value = format!("v = {}", v)
                .parse::<toml::Table>()
                .ok()
                .and_then(|mut t| t.remove("v"))
                .unwrap_or_else(|| toml::Value::String(v.to_string()));
            if table.insert(k.to_string(), value).is_some() {
                return Err(Error::Config(format!("line {}: duplicate key {}", n + 1, k)));
            }
        }
        table.try_into().map_err(|e: toml::de::Error| Error::Config(e.message().to_string()))
    }

    pub fn variant(&self) -> IdealVariant {
        IdealVariant { printed_delta: self.ideal_printed_delta }
    }

    fn basis(&self) -> Vec<crate::galg::GMonomial> {
        test_basis(self.basis_x_degree, self.basis_l_degree)
    }
}

fn ideal_suite(cfg: &SuiteConfig) -> Vec<CheckResult> {
    let v = cfg.variant();
    let counit = all_components(v)
        .into_iter()
        .find(|g| !g.element.counit().is_zero())
        .map(|g| format!("ε({}) = {}", g.kind, g.element.counit()));
    let mut out = vec![CheckResult::from_witness("ideal.counit", "every generator lies in ker ε", counit)];
    if !v.printed_delta {
        let printed = IdealVariant { printed_delta: true };
        let statement = "D[m,n,a] with the printed delta^m_n in its last term lies in ker ε";
        let w = all_components(printed)
            .into_iter()
            .find(|g| !g.element.counit().is_zero())
            .map(|g| format!("ε({}) = {}", g.kind, g.element.counit()));
        out.push(match w {
            None => CheckResult::pass("ideal.delta_placement", statement),
            Some(w) => {
                let mut r = CheckResult::reconciled(
                    "ideal.delta_placement",
                    statement,
                    "the last term of D[m,n,a] carries delta^a_n; with it every generator lies in ker ε and is ad-invariant",
                );
                r.witness = Some(w);
                r
            }
        });
    }
    out.extend(ideal_checks::ad_invariance_checks(v));
    out.extend(ideal_checks::printed_ad_checks(v));
    out.extend(ideal_checks::star_closure_checks(v));
    for &d in &cfg.quotient_degrees {
        let dim = Quotient::build(d, v).dim();
        out.push(CheckResult::from_witness(
            format!("ideal.quotient_dim.{}", d),
            format!("dim of ker ε / R truncated at degree {} is 8", d),
            (dim != 8).then(|| format!("dim = {}", dim)),
        ));
    }
    out
}

fn forms_suite() -> Vec<CheckResult> {
    let mut out = printed::omega_checks();
    out.extend(printed::commutation_checks());
    out.extend(printed::coaction_checks());
    out.extend(printed::eta_checks());
    out.extend(printed::sigma_table_checks());
    out.extend(printed::wedge_relation_checks());
    out.extend(printed::star_checks());
    out.extend(printed::cartan_maurer_checks());
    out.extend(structural_checks());
    out
}

fn qlie_suite(cfg: &SuiteConfig) -> Vec<CheckResult> {
    let basis = cfg.basis();
    let mut out = Vec::new();
    for b in [Backend::Calc, Backend::Dual] {
        out.extend(fc::check_qlie(&basis, b));
    }
    out.extend(fc::pauli_lubanski_check(&basis));
    out.extend(fc::involution_check(&basis, Backend::Dual));
    let small = test_basis(cfg.involution_calc_x_degree, cfg.involution_calc_l_degree);
    out.extend(fc::involution_check(&small, Backend::Calc));
    for b in [Backend::Calc, Backend::Dual] {
        out.push(fc::form_pairing_check(b));
    }
    let conv = test_basis(cfg.convolution_x_degree, cfg.convolution_l_degree);
    out.extend(fc::convolution_checks(&conv, cfg.seed));
    out
}

fn coproducts_suite(cfg: &SuiteConfig) -> Vec<CheckResult> {
    let mut out = fc::coproduct_checks(&monomials_upto(cfg.coproduct_degree));
    out.extend(fc::fji_checks(&monomials_upto(cfg.fji_degree)));
    out
}

fn suite_checks(name: &str, cfg: &SuiteConfig) -> Result<Vec<CheckResult>> {
    Ok(match name {
        "hopf-axioms" => hopf_checks::group_hopf_checks(cfg.hopf_degree),
        "relations" => hopf_checks::relation_checks(),
        "dual-hopf" => hopf_checks::dual_hopf_checks(),
        "pairing" => hopf_checks::pairing_checks(cfg.pairing_degree, cfg.lorentz_convention),
        "ideal" => ideal_suite(cfg),
        "forms" => forms_suite(),
        "qlie" => qlie_suite(cfg),
        "crossval" => fc::cross_validate(&cfg.basis()),
        "coproducts" => coproducts_suite(cfg),
        "all" => {
            let mut out = Vec::new();
            for s in &SUITES[..SUITES.len() - 1] {
                out.extend(suite_checks(s, cfg)?);
            }
            out
        }
        _ => return Err(Error::UnknownSuite(name.to_string())),
    })
}

/// Runs a registered suite. Checks are sorted by id and `elapsed_ms` is only
/// filled in when `record_timings` is set, so reports are reproducible.
pub fn run_suite(name: &str, cfg: &SuiteConfig) -> Result<Report> {
    if !SUITES.contains(&name) {
        return Err(Error::UnknownSuite(name.to_string()));
    }
    let run = || {
        let t = std::time::Instant::now();
        let checks = suite_checks(name, cfg);
        (checks, t.elapsed())
    };
    let (checks, elapsed) = if cfg.threads > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(cfg.threads)
            .build()
            .map_err(|e| Error::Config(e.to_string()))?
            .install(run)
    } else {
        run()
    };
    let mut checks = checks?;
    if cfg.record_timings {
        let ms = elapsed.as_millis() as u64 / checks.len().max(1) as u64;
        for c in &mut checks {
            c.elapsed_ms = ms;
        }
    }
    let config = serde_json::to_value(cfg).expect("config serializes");
    Ok(Report::new(name, config, checks))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_suite_rejected() {
        let e = run_suite("unknown", &SuiteConfig::default()).unwrap_err();
        assert!(e.to_string().contains("unknown suite"));
    }

    #[test]
    fn parse_flat_config() {
        let c = SuiteConfig::parse("# comment\nseed = 7\nlorentz_convention = Opposite\nquotient_degrees = [2]\n").unwrap();
        assert_eq!(c.seed, 7);
        assert_eq!(c.lorentz_convention, LorentzConvention::Opposite);
        assert_eq!(c.quotient_degrees, vec![2]);
        assert_eq!(c.basis_x_degree, 3);
        assert_eq!(SuiteConfig::parse("").unwrap(), SuiteConfig::default());
    }

    #[test]
    fn parse_rejects_bad_input() {
        assert!(SuiteConfig::parse("nonsense").is_err());
        assert!(SuiteConfig::parse("no_such_key = 1").is_err());
        assert!(SuiteConfig::parse("seed = 1\nseed = 2").is_err());
        assert!(SuiteConfig::parse("seed = abc").is_err());
    }

    #[test]
    fn relations_suite_is_deterministic() {
        let cfg = SuiteConfig::default();
        let a = run_suite("relations", &cfg).unwrap().to_json();
        let b = run_suite("relations", &cfg).unwrap().to_json();
        assert_eq!(a, b);
        assert!(a.contains("\"relations.printed\""));
    }
}
