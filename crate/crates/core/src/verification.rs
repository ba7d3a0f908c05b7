//! Sweep checkers for the regularization identities.
//!
//! Two classes of checks live here. Symbolic checks compare canonical forms
//! with zero tolerance: the stuffle homomorphisms, the leading-ones expansion
//! of `ζ^•(k;T)`, and the splitting identity for `A`. Numeric checks evaluate
//! the symbolic difference of both sides: the two regularization theorems,
//! the shuffle homomorphism and `T`-independence at `(x,y) = (−1,1)`. Those are
//! identities between real numbers that need relations among MZVs (already
//! `ζ(2,1) = ζ(3)` at weight 3), so their formal difference need not vanish.
//!
//! Numeric residuals are absolute. Each one is computed at `digits` and again
//! at `digits + 10`; a record passes only if the first is below the tolerance
//! and the second is at least `10³` times smaller than the larger of the first
//! and the noise floor `10^{−digits}`.

use std::fmt;
use std::time::Instant;

use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{product, stuffle, Product};
use crate::bivariate::{zeta_xy, zeta_xy_linear, BivariatePolynomial};
use crate::error::Result;
use crate::expr::MzvExpr;
use crate::index::{enumerate_indices, Index};
use crate::numeric::Evaluator;
use crate::regularization::{
    leading_ones_expansion, poly_multiply, regularize, regularize_linear, RegPolynomial,
};
use crate::rho::{a_coefficients, a_coefficients_xy, apply_rho, apply_rho_xy, XyPoly};
use crate::Rational;

/// Extra digits for the confirmation pass of numeric checks.
pub const CONFIRM_EXTRA_DIGITS: u32 = 10;
/// Required shrink factor of residuals between the two passes.
pub const CONFIRM_SHRINK: f64 = 1e-3;

/// Outcome for one index or index pair.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Record {
    pub subject: String,
    pub passed: bool,
    /// Largest absolute residual at the base precision (0 or 1 for symbolic checks).
    pub residual: f64,
    /// Same residual at the confirmation precision, for numeric checks.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residual_confirm: Option<f64>,
    /// Whether the two sides agree as canonical forms.
    pub exact: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

/// Result of one sweep.
#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub identity: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub product: Option<Product>,
    pub max_weight: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub digits: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
    pub records: Vec<Record>,
    pub elapsed_ms: u128,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.records.iter().all(|r| r.passed)
    }

    pub fn pass_count(&self) -> usize {
        self.records.iter().filter(|r| r.passed).count()
    }

    pub fn failures(&self) -> impl Iterator<Item = &Record> {
        self.records.iter().filter(|r| !r.passed)
    }

    pub fn max_residual(&self) -> f64 {
        self.records.iter().map(|r| r.residual).fold(0.0, f64::max)
    }

    /// The record with the largest residual, failures first.
    pub fn worst(&self) -> Option<&Record> {
        self.records.iter().max_by(|a, b| {
            (!a.passed).cmp(&!b.passed).then(
                a.residual
                    .partial_cmp(&b.residual)
                    .unwrap_or(std::cmp::Ordering::Equal),
            )
        })
    }

    pub fn record(&self, subject: &str) -> Option<&Record> {
        self.records.iter().find(|r| r.subject == subject)
    }

    /// One JSON object per record, then a summary object.
    pub fn to_json_lines(&self) -> String {
        #[derive(Serialize)]
        struct Line<'a> {
            identity: &'a str,
            #[serde(flatten)]
            record: &'a Record,
        }
        #[derive(Serialize)]
        struct Summary<'a> {
            identity: &'a str,
            summary: bool,
            #[serde(skip_serializing_if = "Option::is_none")]
            product: Option<Product>,
            max_weight: usize,
            #[serde(skip_serializing_if = "Option::is_none")]
            digits: Option<u32>,
            #[serde(skip_serializing_if = "Option::is_none")]
            tolerance: Option<f64>,
            checked: usize,
            passed: usize,
            max_residual: f64,
            #[serde(skip_serializing_if = "Option::is_none")]
            worst: Option<&'a str>,
            elapsed_ms: u128,
        }
        let mut out = String::new();
        for record in &self.records {
            let line = Line {
                identity: &self.identity,
                record,
            };
            out.push_str(&serde_json::to_string(&line).expect("record serializes"));
            out.push('\n');
        }
        let summary = Summary {
            identity: &self.identity,
            summary: true,
            product: self.product,
            max_weight: self.max_weight,
            digits: self.digits,
            tolerance: self.tolerance,
            checked: self.records.len(),
            passed: self.pass_count(),
            max_residual: self.max_residual(),
            worst: self.worst().map(|r| r.subject.as_str()),
            elapsed_ms: self.elapsed_ms,
        };
        out.push_str(&serde_json::to_string(&summary).expect("summary serializes"));
        out.push('\n');
        out
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        write!(f, "{status} {}", self.identity)?;
        if let Some(p) = self.product {
            write!(f, " [{p}]")?;
        }
        write!(
            f,
            ": {}/{} passed, max weight {}",
            self.pass_count(),
            self.records.len(),
            self.max_weight
        )?;
        if let (Some(d), Some(t)) = (self.digits, self.tolerance) {
            write!(
                f,
                ", {d} digits, tol {t:e}, max residual {:e}",
                self.max_residual()
            )?;
            if let Some(w) = self.worst() {
                write!(f, " at {}", w.subject)?;
            }
        } else if let Some(w) = self.failures().next() {
            write!(f, ", first mismatch at {}", w.subject)?;
        }
        write!(f, " ({} ms)", self.elapsed_ms)
    }
}

struct Sweep {
    identity: &'static str,
    product: Option<Product>,
    max_weight: usize,
    digits: Option<u32>,
    tolerance: Option<f64>,
    started: Instant,
}

impl Sweep {
    fn new(identity: &'static str, max_weight: usize) -> Self {
        Sweep {
            identity,
            product: None,
            max_weight,
            digits: None,
            tolerance: None,
            started: Instant::now(),
        }
    }

    fn numeric(mut self, digits: u32, tol: f64) -> Self {
        self.digits = Some(digits);
        self.tolerance = Some(tol);
        self
    }

    fn product(mut self, which: Product) -> Self {
        self.product = Some(which);
        self
    }

    fn finish(self, records: Vec<Record>) -> VerificationReport {
        VerificationReport {
            identity: self.identity.to_string(),
            product: self.product,
            max_weight: self.max_weight,
            digits: self.digits,
            tolerance: self.tolerance,
            records,
            elapsed_ms: self.started.elapsed().as_millis(),
        }
    }
}

fn symbolic_record(subject: String, equal: bool, note: Option<String>) -> Record {
    Record {
        subject,
        passed: equal,
        residual: if equal { 0.0 } else { 1.0 },
        residual_confirm: None,
        exact: equal,
        note,
    }
}

/// Largest absolute value among `exprs` at two precisions.
fn residuals(ev: &Evaluator, exprs: &[MzvExpr], digits: u32) -> Result<(f64, f64)> {
    let mut lo = 0.0f64;
    let mut hi = 0.0f64;
    for e in exprs.iter().filter(|e| !e.is_zero()) {
        lo = lo.max(ev.eval_expr(e, digits)?.abs().to_f64());
        hi = hi.max(
            ev.eval_expr(e, digits + CONFIRM_EXTRA_DIGITS)?
                .abs()
                .to_f64(),
        );
    }
    Ok((lo, hi))
}

fn numeric_record(
    ev: &Evaluator,
    subject: String,
    differences: &[MzvExpr],
    digits: u32,
    tol: f64,
    exact: bool,
) -> Result<Record> {
    let (lo, hi) = residuals(ev, differences, digits)?;
    // below 10^{-digits} a residual is rounding noise, so measure the shrink from there
    let floor = 10f64.powi(-(digits as i32));
    let confirmed = hi <= lo.max(floor) * CONFIRM_SHRINK;
    let mut note = None;
    if lo >= tol {
        note = Some(format!("residual {lo:e} is not below {tol:e}"));
    } else if !confirmed {
        note = Some(format!("residual did not shrink: {lo:e} -> {hi:e}"));
    }
    Ok(Record {
        subject,
        passed: lo < tol && confirmed,
        residual: lo,
        residual_confirm: Some(hi),
        exact,
        note,
    })
}

fn pair_subject(k: &Index, l: &Index) -> String {
    format!("{k} | {l}")
}

/// Nonempty indices of weight `1..=max_weight`; the empty index is trivial
/// for every univariate identity and is left to unit tests.
pub fn sweep_indices(max_weight: usize) -> Vec<Index> {
    (1..=max_weight).flat_map(enumerate_indices).collect()
}

/// All pairs `(k, l)` with `weight(k) + weight(l) ≤ max_total_weight`.
pub fn index_pairs(max_total_weight: usize) -> Vec<(Index, Index)> {
    let mut pairs = Vec::new();
    for total in 0..=max_total_weight {
        for wk in 0..=total {
            for k in enumerate_indices(wk) {
                for l in enumerate_indices(total - wk) {
                    pairs.push((k.clone(), l));
                }
            }
        }
    }
    pairs
}

fn t_coefficients(p: &RegPolynomial, q: &RegPolynomial) -> Vec<MzvExpr> {
    let top = p.degree().max(q.degree()).unwrap_or(0);
    (0..=top)
        .map(|j| &p.coefficient(j) - &q.coefficient(j))
        .collect()
}

/// Both sides of the regularization theorem for one index:
/// `(ζ^ш(k;T), ρ(ζ*(k;T)))`.
pub fn regularization_theorem_sides(k: &Index) -> (RegPolynomial, RegPolynomial) {
    (
        regularize(k, Product::Shuffle),
        apply_rho(&regularize(k, Product::Stuffle)),
    )
}

/// `ζ^ш(k;T) = ρ(ζ*(k;T))` for every index of weight ≤ `max_weight`.
pub fn verify_regularization_theorem(
    ev: &Evaluator,
    max_weight: usize,
    digits: u32,
    tol: f64,
) -> Result<VerificationReport> {
    let sweep = Sweep::new("ikz", max_weight).numeric(digits, tol);
    let indices = sweep_indices(max_weight);
    let records = indices
        .par_iter()
        .map(|k| {
            let (lhs, rhs) = regularization_theorem_sides(k);
            let diff = t_coefficients(&rhs, &lhs);
            let exact = diff.iter().all(MzvExpr::is_zero);
            numeric_record(ev, k.to_string(), &diff, digits, tol, exact)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(sweep.finish(records))
}

/// Cleared-denominator form of the main theorem for one index.
///
/// Returns `(L, q, m)` with `L = ζ_{x,y}^ш(k;T)` and `ρ_{x,y}(ζ_{x,y}^*(k;T)) = q/(x+y)^m`.
pub fn main_theorem_sides(k: &Index) -> (BivariatePolynomial, BivariatePolynomial, u32) {
    let lhs = zeta_xy(k, Product::Shuffle);
    let (q, m) = apply_rho_xy(&zeta_xy(k, Product::Stuffle));
    (lhs, q, m)
}

/// `ζ_{x,y}^ш(k;T) = ρ_{x,y}(ζ_{x,y}^*(k;T))`, checked monomialwise on
/// `q − (x+y)^m·ζ_{x,y}^ш(k;T)`, plus the exact `(x,y) = (0,1)` consistency
/// with the univariate comparison.
pub fn verify_main_theorem(
    ev: &Evaluator,
    max_weight: usize,
    digits: u32,
    tol: f64,
) -> Result<VerificationReport> {
    let sweep = Sweep::new("main", max_weight).numeric(digits, tol);
    let indices = sweep_indices(max_weight);
    let zero = Rational::zero();
    let one = Rational::one();
    let records = indices
        .par_iter()
        .map(|k| {
            let (lhs, q, m) = main_theorem_sides(k);
            let diff = q.sub(&lhs.mul_x_plus_y_pow(m));
            let exprs: Vec<MzvExpr> = diff.iter().map(|(_, e)| e.clone()).collect();
            let mut record =
                numeric_record(ev, k.to_string(), &exprs, digits, tol, diff.is_zero())?;

            let (uni_lhs, uni_rhs) = regularization_theorem_sides(k);
            let consistent =
                lhs.specialize(&zero, &one) == uni_lhs && q.specialize(&zero, &one) == uni_rhs;
            if !consistent {
                record.passed = false;
                record.note = Some("(0,1) specialization differs from the univariate sides".into());
            }
            Ok(record)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(sweep.finish(records))
}

/// `ζ_{−1,1}^•(k;T)`.
pub fn symmetric_value(k: &Index, which: Product) -> RegPolynomial {
    zeta_xy(k, which).specialize(&-Rational::one(), &Rational::one())
}

/// Every `T^j` coefficient (`j ≥ 1`) of `ζ_{−1,1}^•(k;T)` vanishes numerically.
pub fn verify_t_independence(
    ev: &Evaluator,
    max_weight: usize,
    digits: u32,
    tol: f64,
    which: Product,
) -> Result<VerificationReport> {
    let sweep = Sweep::new("t-independence", max_weight)
        .numeric(digits, tol)
        .product(which);
    let indices = sweep_indices(max_weight);
    let records = indices
        .par_iter()
        .map(|k| {
            let p = symmetric_value(k, which);
            let exprs: Vec<MzvExpr> = p
                .iter()
                .filter(|(j, _)| *j >= 1)
                .map(|(_, e)| e.clone())
                .collect();
            let exact = exprs.is_empty();
            numeric_record(ev, k.to_string(), &exprs, digits, tol, exact)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(sweep.finish(records))
}

/// `ζ_{x,y}^*(k;T)·ζ_{x,y}^*(l;T) = ζ_{x,y}^*(k*l;T)` as flattened canonical forms.
pub fn verify_stuffle_hom_xy(max_total_weight: usize) -> VerificationReport {
    let sweep = Sweep::new("stuffle-hom-xy", max_total_weight).product(Product::Stuffle);
    let records = index_pairs(max_total_weight)
        .par_iter()
        .map(|(k, l)| {
            let lhs = zeta_xy(k, Product::Stuffle)
                .mul(&zeta_xy(l, Product::Stuffle))
                .flatten();
            let rhs = zeta_xy_linear(&stuffle(k, l), Product::Stuffle).flatten();
            symbolic_record(pair_subject(k, l), lhs == rhs, None)
        })
        .collect();
    sweep.finish(records)
}

/// `ζ^•(k;T) = Σ_j ζ^•(k^j;0)·T^j/j!` as canonical forms.
pub fn verify_reg_coeff(max_weight: usize, which: Product) -> VerificationReport {
    let sweep = Sweep::new("reg-coeff", max_weight).product(which);
    let indices = sweep_indices(max_weight);
    let records = indices
        .par_iter()
        .map(|k| {
            let equal = regularize(k, which) == leading_ones_expansion(k, which);
            symbolic_record(k.to_string(), equal, None)
        })
        .collect();
    sweep.finish(records)
}

/// `ζ^•(k;T)·ζ^•(l;T) = ζ^•(k•l;T)`: exact after flattening for the stuffle
/// product, numeric for the shuffle product.
pub fn verify_product_hom(
    ev: &Evaluator,
    max_total_weight: usize,
    which: Product,
    digits: u32,
    tol: f64,
) -> Result<VerificationReport> {
    let mut sweep = Sweep::new("product-hom", max_total_weight).product(which);
    if which == Product::Shuffle {
        sweep = sweep.numeric(digits, tol);
    }
    let records = index_pairs(max_total_weight)
        .par_iter()
        .map(|(k, l)| {
            let lhs = poly_multiply(&regularize(k, which), &regularize(l, which));
            let rhs = regularize_linear(&product(k, l, which), which);
            let exact = lhs.flatten() == rhs;
            match which {
                Product::Stuffle => Ok(symbolic_record(pair_subject(k, l), exact, None)),
                Product::Shuffle => numeric_record(
                    ev,
                    pair_subject(k, l),
                    &t_coefficients(&lhs, &rhs),
                    digits,
                    tol,
                    exact,
                ),
            }
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(sweep.finish(records))
}

/// `Σ_{i+j=n} aᵢaⱼxⁱyʲ = a_{x,y,n}·(x+y)ⁿ` for `n ≤ n_max`, exactly.
pub fn verify_a_splitting(n_max: usize) -> VerificationReport {
    let sweep = Sweep::new("a-splitting", n_max);
    let a = a_coefficients(n_max);
    let axy = a_coefficients_xy(n_max);
    let records = (0..=n_max)
        .map(|n| {
            let mut lhs = XyPoly::zero();
            for i in 0..=n {
                lhs.add_term(
                    i as u32,
                    (n - i) as u32,
                    &a.get(i).mul(a.get(n - i)),
                    &Rational::one(),
                );
            }
            let coeff = &axy[n];
            let rhs = coeff
                .numerator
                .mul(&XyPoly::x_plus_y_pow(n as u32 - coeff.denom_power));
            symbolic_record(format!("n={n}"), lhs == rhs, None)
        })
        .collect();
    sweep.finish(records)
}
