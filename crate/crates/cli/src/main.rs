mod dsl;
mod eval;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use kappa3_core::calculus::{Calculus, N};
use kappa3_core::functionals::{eval_named, Backend, NAMES};
use kappa3_core::galg::{GGen, GroupElement};
use kappa3_core::ideal::{phi, IdealVariant, Quotient, QLabel};
use kappa3_core::printed::derived_sigma;
use kappa3_core::verify::{run_suite, SuiteConfig};

use crate::eval::{eval, Value};

const USAGE: u8 = 1;
const FAIL: u8 = 2;

#[derive(Parser)]
#[command(name = "kappa3", version, about = "Exact algebra for the 3D kappa-Poincare group and its bicovariant calculus")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum Derivation {
    Omega,
    Commutation,
    Sigma,
}

#[derive(Subcommand)]
enum Cmd {
    /// Normal form of an expression
    Nf {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Pairing of a group expression with a dual expression
    Pair {
        #[arg(allow_hyphen_values = true)]
        group: String,
        #[arg(allow_hyphen_values = true)]
        dual: String,
    },
    /// Exterior derivative
    D {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// A named functional on a group expression, on both backends
    Chi {
        name: String,
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Print derived 1-forms, commutation rules or the braiding
    Derive { what: Derivation },
    /// Run a verification suite
    Verify {
        suite: String,
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Dimension of ker ε / R truncated at a degree
    QuotientDim {
        #[arg(long)]
        degree: usize,
    },
}

/// Writes a line to stdout, exiting quietly when the reader has gone away.
fn emit(line: &str) {
    use std::io::Write;
    let mut out = std::io::stdout().lock();
    if writeln!(out, "{}", line).is_err() {
        std::process::exit(0);
    }
}

fn value(src: &str) -> Result<Value, String> {
    let ast = dsl::parse(src).map_err(|e| e.to_string())?;
    eval(&ast).map_err(|e| e.to_string())
}

fn group(src: &str) -> Result<GroupElement, String> {
    value(src)?.into_group().map_err(|e| e.to_string())
}

fn derive(what: Derivation) {
    let c = Calculus::global();
    match what {
        Derivation::Omega => {
            let mut gens: Vec<(String, GroupElement)> =
                GGen::all().into_iter().map(|g| (g.to_string(), GroupElement::gen(g))).collect();
            gens.push(("phi".into(), phi()));
            for (name, b) in gens {
                emit(&format!("omega({}) = {}", name, c.omega_of(&b)));
            }
        }
        Derivation::Commutation => {
            for g in GGen::all() {
                for i in 0..N {
                    emit(&format!("[{}, {}] = {}", g, QLabel::ALL[i], c.commutator(&GroupElement::gen(g), i)));
                }
            }
        }
        Derivation::Sigma => {
            let basis = |i: usize| {
                let mut v = vec![kappa3_core::scalar::KScalar::zero(); N];
                v[i] = kappa3_core::scalar::KScalar::one();
                v
            };
            for i in 0..N {
                for j in 0..N {
                    emit(&format!("s({} (x) {}) = {}", QLabel::ALL[i], QLabel::ALL[j], derived_sigma(&basis(i), &basis(j))));
                }
            }
        }
    }
}

fn verify(suite: &str, config: Option<PathBuf>, out: Option<PathBuf>, format: Format) -> Result<u8, String> {
    let cfg = match config {
        Some(p) => {
            let text = std::fs::read_to_string(&p).map_err(|e| format!("{}: {}", p.display(), e))?;
            SuiteConfig::parse(&text).map_err(|e| e.to_string())?
        }
        None => SuiteConfig::default(),
    };
    let report = run_suite(suite, &cfg).map_err(|e| e.to_string())?;
    let body = match format {
        Format::Json => report.to_json() + "\n",
        Format::Text => report.to_text(),
    };
    match out {
        Some(p) => {
            std::fs::write(&p, body).map_err(|e| format!("{}: {}", p.display(), e))?;
            let s = &report.summary;
            emit(&format!("{}: pass={} fail={} reconciled={}", report.suite, s.pass, s.fail, s.reconciled));
        }
        None => emit(body.trim_end()),
    }
    for c in report.failures() {
        eprintln!("FAIL {}: {}", c.id, c.witness.as_deref().unwrap_or(""));
    }
    Ok(if report.ok() { 0 } else { FAIL })
}

fn run(cmd: Cmd) -> Result<u8, String> {
    match cmd {
        Cmd::Nf { expr } => emit(&value(&expr)?.to_string()),
        Cmd::Pair { group: g, dual } => {
            let a = group(&g)?;
            let f = value(&dual)?.into_dual().map_err(|e| e.to_string())?;
            emit(&kappa3_core::dual::pair(&a, &f).to_string());
        }
        Cmd::D { expr } => {
            let v = dsl::parse(&expr).map_err(|e| e.to_string())?;
            let call = dsl::Ast::Apply(dsl::Func::D, vec![v]);
            emit(&eval(&call).map_err(|e| e.to_string())?.to_string());
        }
        Cmd::Chi { name, expr } => {
            if !NAMES.contains(&name.as_str()) {
                return Err(format!("unknown functional {:?}; expected one of {}", name, NAMES.join(", ")));
            }
            let a = group(&expr)?;
            let calc = eval_named(&name, Backend::Calc, &a).expect("name checked");
            let dual = eval_named(&name, Backend::Dual, &a).expect("name checked");
            let agree = calc == dual;
            emit(&format!("CALC = {}, DUAL = {}, {}", calc, dual, if agree { "AGREE" } else { "DISAGREE" }));
            if !agree {
                return Ok(FAIL);
            }
        }
        Cmd::Derive { what } => derive(what),
        Cmd::Verify { suite, config, out, format } => return verify(&suite, config, out, format),
        Cmd::QuotientDim { degree } => {
            if !(1..=4).contains(&degree) {
                return Err(format!("degree {} out of range 1..=4", degree));
            }
            emit(&Quotient::build(degree, IdealVariant::default()).dim().to_string());
        }
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { USAGE } else { 0 });
        }
    };
    match run(cli.cmd) {
        Ok(code) => ExitCode::from(code),
        Err(msg) => {
            eprintln!("error: {}", msg);
            ExitCode::from(USAGE)
        }
    }
}
