//! Command-line front end.
//!
//! Text mode prints exact symbolic output. Records mode (`--format records`)
//! prints one JSON object per line: one per term for algebraic commands, one
//! per index or pair for `verify` followed by a summary object.

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::algebra::{product, Product};
use crate::bivariate::zeta_xy;
use crate::error::MzvError;
use crate::index::parse_index;
use crate::numeric::{EvalCache, Evaluator};
use crate::regularization::{regularize, RegPolynomial};
use crate::rho::apply_rho;
use crate::verification::{
    verify_main_theorem, verify_product_hom, verify_reg_coeff, verify_regularization_theorem,
    verify_stuffle_hom_xy, verify_t_independence, VerificationReport,
};

/// Exit status for a domain or verification failure.
pub const EXIT_FAILURE: i32 = 1;
/// Exit status for malformed command lines.
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "mzv",
    version,
    about = "Stuffle/shuffle algebra and regularized multiple zeta values"
)]
pub struct CliConfig {
    /// Evaluation cache file (overrides MZV_CACHE).
    #[arg(long, global = true)]
    pub cache: Option<PathBuf>,

    /// Output mode.
    #[arg(long, global = true, value_enum, default_value_t = OutputMode::Text)]
    pub format: OutputMode,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputMode {
    Text,
    Records,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ProductArg {
    Stuffle,
    Shuffle,
}

impl From<ProductArg> for Product {
    fn from(p: ProductArg) -> Self {
        match p {
            ProductArg::Stuffle => Product::Stuffle,
            ProductArg::Shuffle => Product::Shuffle,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Identity {
    Ikz,
    Main,
    TIndependence,
    StuffleHomXy,
    RegCoeff,
    ProductHom,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Product of two indices.
    Product {
        #[arg(long = "type", value_enum)]
        product: ProductArg,
        k: String,
        l: String,
    },
    /// Regularized polynomial ζ^•(K;T).
    Regularize {
        #[arg(long = "type", value_enum)]
        product: ProductArg,
        k: String,
    },
    /// ρ(ζ*(K;T)).
    Rho { k: String },
    /// Bivariate polynomial ζ_{x,y}^•(K;T).
    Bivariate {
        #[arg(long = "type", value_enum)]
        product: ProductArg,
        k: String,
    },
    /// Decimal value of an admissible ζ(K) with exactly D digits after the point.
    Eval {
        k: String,
        #[arg(long, default_value_t = 40, value_parser = clap::value_parser!(u32).range(10..))]
        digits: u32,
    },
    /// Sweep an identity over all indices up to a weight bound.
    Verify {
        #[arg(long, value_enum)]
        identity: Identity,
        #[arg(long)]
        max_weight: usize,
        #[arg(long, default_value_t = 40, value_parser = clap::value_parser!(u32).range(10..))]
        digits: u32,
        /// Absolute tolerance, a power of ten such as 1e-30.
        #[arg(long, default_value = "1e-30", value_parser = parse_tolerance)]
        tol: f64,
        /// Product for identities that take one; both when omitted.
        #[arg(long = "type", value_enum)]
        product: Option<ProductArg>,
    },
}

fn parse_tolerance(text: &str) -> Result<f64, String> {
    let value: f64 = text
        .parse()
        .map_err(|_| format!("{text:?} is not a number"))?;
    if !(value.is_finite() && value > 0.0) {
        return Err(format!("{text:?} must be positive"));
    }
    let exponent = value.log10();
    if (exponent - exponent.round()).abs() > 1e-9 {
        return Err(format!("{text:?} is not a power of ten"));
    }
    Ok(value)
}

/// Exit status and rendered streams of one invocation.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub status: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            status: 0,
            stdout,
            stderr: String::new(),
        }
    }

    fn error(status: i32, stderr: String) -> Self {
        Outcome {
            status,
            stdout: String::new(),
            stderr,
        }
    }
}

/// Parses `argv` (including the program name) and runs the command.
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let config = match CliConfig::try_parse_from(argv) {
        Ok(config) => config,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome::error(EXIT_USAGE, text)
            } else {
                Outcome::ok(text)
            };
        }
    };
    match execute(&config) {
        Ok(outcome) => outcome,
        Err(e) => Outcome::error(EXIT_FAILURE, format!("error: {e}\n")),
    }
}

fn open_evaluator(config: &CliConfig) -> Result<Evaluator, MzvError> {
    let path = config.cache.clone().or_else(EvalCache::path_from_env);
    Ok(match path {
        Some(path) => Evaluator::with_cache(EvalCache::open(path)?),
        None => Evaluator::new(),
    })
}

fn execute(config: &CliConfig) -> Result<Outcome, MzvError> {
    let records = config.format == OutputMode::Records;
    match &config.command {
        Command::Product {
            product: which,
            k,
            l,
        } => {
            let (k, l) = (parse_index(k)?, parse_index(l)?);
            let result = product(&k, &l, (*which).into());
            if records {
                let lines = result
                    .iter()
                    .map(|(index, c)| json!({"index": index.to_string(), "coefficient": c.to_string()}))
                    .collect();
                Ok(Outcome::ok(json_lines(lines)))
            } else {
                Ok(Outcome::ok(format!("{result}\n")))
            }
        }
        Command::Regularize { product: which, k } => {
            let p = regularize(&parse_index(k)?, (*which).into());
            Ok(Outcome::ok(render_reg(&p, records)))
        }
        Command::Rho { k } => {
            let p = apply_rho(&regularize(&parse_index(k)?, Product::Stuffle));
            Ok(Outcome::ok(render_reg(&p, records)))
        }
        Command::Bivariate { product: which, k } => {
            let p = zeta_xy(&parse_index(k)?, (*which).into());
            if records {
                let mut lines = Vec::new();
                for ((a, b, j), e) in p.iter() {
                    for (m, c) in e.iter() {
                        lines.push(json!({
                            "x": a, "y": b, "t": j,
                            "monomial": m.to_string(), "coefficient": c.to_string(),
                        }));
                    }
                }
                Ok(Outcome::ok(json_lines(lines)))
            } else {
                Ok(Outcome::ok(format!("{p}\n")))
            }
        }
        Command::Eval { k, digits } => {
            let k = parse_index(k)?;
            let ev = open_evaluator(config)?;
            let value = ev.eval_index(&k, *digits)?.to_decimal_string(*digits);
            ev.save()?;
            if records {
                let line = json!({"index": k.to_string(), "digits": digits, "value": value});
                Ok(Outcome::ok(json_lines(vec![line])))
            } else {
                Ok(Outcome::ok(format!("{value}\n")))
            }
        }
        Command::Verify {
            identity,
            max_weight,
            digits,
            tol,
            product: which,
        } => {
            let ev = open_evaluator(config)?;
            let products: Vec<Product> = match which {
                Some(p) => vec![(*p).into()],
                None => Product::ALL.to_vec(),
            };
            let (w, d, t) = (*max_weight, *digits, *tol);
            let reports: Vec<VerificationReport> = match identity {
                Identity::Ikz => vec![verify_regularization_theorem(&ev, w, d, t)?],
                Identity::Main => vec![verify_main_theorem(&ev, w, d, t)?],
                Identity::StuffleHomXy => vec![verify_stuffle_hom_xy(w)],
                Identity::TIndependence => products
                    .iter()
                    .map(|&p| verify_t_independence(&ev, w, d, t, p))
                    .collect::<Result<_, _>>()?,
                Identity::RegCoeff => products.iter().map(|&p| verify_reg_coeff(w, p)).collect(),
                Identity::ProductHom => products
                    .iter()
                    .map(|&p| verify_product_hom(&ev, w, p, d, t))
                    .collect::<Result<_, _>>()?,
            };
            ev.save()?;
            let mut out = String::new();
            for report in &reports {
                if records {
                    out.push_str(&report.to_json_lines());
                } else {
                    out.push_str(&format!("{report}\n"));
                    for failure in report.failures() {
                        let note = failure.note.as_deref().unwrap_or("mismatch");
                        out.push_str(&format!("  FAIL {}: {note}\n", failure.subject));
                    }
                }
            }
            let status = if reports.iter().all(VerificationReport::passed) {
                0
            } else {
                EXIT_FAILURE
            };
            Ok(Outcome {
                status,
                stdout: out,
                stderr: String::new(),
            })
        }
    }
}

fn render_reg(p: &RegPolynomial, records: bool) -> String {
    if !records {
        return format!("{p}\n");
    }
    let mut lines = Vec::new();
    for (j, e) in p.iter() {
        for (m, c) in e.iter() {
            lines.push(json!({"t": j, "monomial": m.to_string(), "coefficient": c.to_string()}));
        }
    }
    json_lines(lines)
}

fn json_lines(lines: Vec<serde_json::Value>) -> String {
    lines.iter().map(|v| format!("{v}\n")).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tolerance_parsing() {
        assert_eq!(parse_tolerance("1e-30"), Ok(1e-30));
        assert!(parse_tolerance("3e-30").is_err());
        assert!(parse_tolerance("-1e-3").is_err());
        assert!(parse_tolerance("x").is_err());
    }

    #[test]
    fn usage_errors_exit_two() {
        assert_eq!(run(["mzv", "frobnicate"]).status, EXIT_USAGE);
        assert_eq!(
            run(["mzv", "eval", "2", "--digits", "5"]).status,
            EXIT_USAGE
        );
        assert_eq!(
            run(["mzv", "product", "--type", "both", "2", "3"]).status,
            EXIT_USAGE
        );
    }

    #[test]
    fn domain_errors_exit_one() {
        let out = run(["mzv", "eval", "1,2", "--digits", "20"]);
        assert_eq!(out.status, EXIT_FAILURE);
        assert!(out.stderr.contains("not admissible"), "{}", out.stderr);
        assert_eq!(
            run(["mzv", "regularize", "--type", "stuffle", "2,0"]).status,
            EXIT_FAILURE
        );
    }
}
