//! Values of `dn(K/3)`: the nested-radical closed form in `k`, tabulated
//! radicals at singular moduli, the `dn²` equation in `X` for general `h`,
//! and recovery of `k` from a value of `dn(K/3)`.

pub mod radical;

use std::collections::BTreeMap;
use std::sync::OnceLock;

use crate::claims::Claim;
use crate::elliptic::{dn_third_of_k, incomplete_f, jacobi, Modulus};
use crate::error::{domain, Error, Result};
use crate::modular::{singular_modulus, Rational};
use crate::poly::RootScan;
use crate::recognize::BigReal;

pub use radical::{parse_table, Expr, RadicalField};

const TABLE_SOURCE: &str = include_str!("../../data/dn_third_values.radicals");
const EXAMPLES_SOURCE: &str = include_str!("../../data/worked_examples.radicals");

/// Tolerance for tabulated values against direct evaluation.
pub const TABLE_TOLERANCE: f64 = 1e-9;
/// Tolerance for the `X` equation residual.
pub const EQUATION_TOLERANCE: f64 = 1e-9;

/// The `r` with a tabulated radical, in table order.
pub const TABULATED_R: [&str; 23] = [
    "1", "2", "3", "2/3", "4/3", "5/3", "7/3", "8/3", "10/3", "11/3", "13/3", "14/3", "16/3", "17/3", "19/3", "20/3",
    "25/3", "26/3", "29/3", "31/3", "34/3", "41/3", "49/3",
];

fn table(src: &'static str, cell: &'static OnceLock<BTreeMap<String, Expr>>) -> &'static BTreeMap<String, Expr> {
    cell.get_or_init(|| parse_table(src).expect("bundled radical table parses"))
}

/// Radicals for `dn(K/3, k_r²)`, keyed by `r`.
pub fn tabulated_radicals() -> &'static BTreeMap<String, Expr> {
    static CELL: OnceLock<BTreeMap<String, Expr>> = OnceLock::new();
    table(TABLE_SOURCE, &CELL)
}

/// Parameters and printed coefficients of the worked quintics.
pub fn example_radicals() -> &'static BTreeMap<String, Expr> {
    static CELL: OnceLock<BTreeMap<String, Expr>> = OnceLock::new();
    table(EXAMPLES_SOURCE, &CELL)
}

/// Working precision for printed radicals; nested radicals near 1 cancel
/// too many digits in binary64.
pub const RADICAL_PRECISION: u32 = 256;

/// Evaluates a radical at [`RADICAL_PRECISION`], rounded to binary64.
pub fn radical_value(expr: &Expr) -> Result<f64> {
    Ok(expr.eval::<BigReal>(RADICAL_PRECISION)?.to_f64())
}

/// Evaluates a bundled example radical, rounded to binary64.
pub fn example_value(key: &str) -> Result<f64> {
    radical_value(example_radicals().get(key).ok_or_else(|| Error::Parse(format!("no example value {key:?}")))?)
}

/// Sign given to the inner radical `A` of the closed form.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RadicalBranch {
    /// `dn² = 1 − k² − A + ½√B`, principal roots throughout.
    Principal,
    /// `A` replaced by `−A`.
    Negated,
}

/// `dn²(K/3)` from the nested-radical formula in `k` with
/// `A = √((kk′)^(4/3)/2^(2/3) + k⁴ − k²)`.
pub fn dn_third_squared_closed_form(k: f64, branch: RadicalBranch) -> Result<f64> {
    if !(k > 0.0 && k < 1.0) {
        return Err(domain("k", k, "(0, 1)"));
    }
    let kp2 = (1.0 - k) * (1.0 + k);
    let k2 = k * k;
    let k4 = k2 * k2;
    let kkp43 = (k * kp2.sqrt()).powf(4.0 / 3.0);
    let inner = kkp43 / 2f64.powf(2.0 / 3.0) + k4 - k2;
    if inner < 0.0 {
        return Err(Error::BranchFailure {
            what: "dn(K/3) closed form",
            detail: format!("inner radicand {inner:e} is negative"),
        });
    }
    let a = match branch {
        RadicalBranch::Principal => inner.sqrt(),
        RadicalBranch::Negated => -inner.sqrt(),
    };
    if a.abs() < 1e-300 {
        return Err(Error::BranchFailure {
            what: "dn(K/3) closed form",
            detail: "inner radical vanishes and divides the outer one".into(),
        });
    }
    let outer = -2.0 * 2f64.cbrt() * kkp43 + 4.0 * (2.0 * k4 * k2 - 3.0 * k4 + k2) / a + 8.0 * kp2 * kp2 - 8.0 * kp2;
    if outer < 0.0 {
        return Err(Error::BranchFailure {
            what: "dn(K/3) closed form",
            detail: format!("outer radicand {outer:e} is negative"),
        });
    }
    Ok(kp2 - a + 0.5 * outer.sqrt())
}

/// `dn(K/3)` from the closed form on the given branch.
pub fn dn_third_closed_form_with_branch(k: f64, branch: RadicalBranch) -> Result<f64> {
    let sq = dn_third_squared_closed_form(k, branch)?;
    if sq < 0.0 {
        return Err(Error::BranchFailure { what: "dn(K/3) closed form", detail: format!("dn² = {sq:e} is negative") });
    }
    Ok(sq.sqrt())
}

/// `dn(K/3)` from the closed form with principal roots.
pub fn dn_third_closed_form(k: f64) -> Result<f64> {
    dn_third_closed_form_with_branch(k, RadicalBranch::Principal)
}

/// A tabulated radical against direct evaluation at `k_r`.
#[derive(Debug, Clone, PartialEq)]
pub struct TrisectionValue {
    pub r: Rational,
    pub k: f64,
    pub closed_form_value: Result<f64>,
    pub numeric_value: f64,
}

impl TrisectionValue {
    /// `|closed − numeric|`, NaN when the radical failed to evaluate.
    pub fn deviation(&self) -> f64 {
        match &self.closed_form_value {
            Ok(v) => (v - self.numeric_value).abs(),
            Err(_) => f64::NAN,
        }
    }
}

/// Evaluates the tabulated radical for `r`.
pub fn tabulated_value(r: Rational) -> Result<TrisectionValue> {
    let key = r.to_string();
    let expr =
        tabulated_radicals().get(&key).ok_or_else(|| Error::Parse(format!("no tabulated value for r = {key}")))?;
    let s = singular_modulus(r)?;
    Ok(TrisectionValue {
        r,
        k: s.k(),
        closed_form_value: radical_value(expr),
        numeric_value: dn_third_of_k(s.modulus.m())?,
    })
}

/// Every tabulated value, in table order.
pub fn tabulated_values() -> Result<Vec<TrisectionValue>> {
    TABULATED_R.iter().map(|r| tabulated_value(r.parse()?)).collect()
}

/// One claim per tabulated `r` at tolerance [`TABLE_TOLERANCE`].
pub fn verify_tabulated_values() -> Result<Vec<Claim>> {
    Ok(tabulated_values()?
        .into_iter()
        .map(|v| {
            let claim = Claim::check(
                format!("table.r={}", v.r),
                format!("tabulated radical equals dn(K/3, k_r^2) at r = {}", v.r),
                v.deviation(),
                TABLE_TOLERANCE,
            );
            match &v.closed_form_value {
                Err(e) => claim.with_note(format!("radical failed to evaluate: {e}")),
                Ok(_) => claim,
            }
        })
        .collect())
}

/// Left side of the equation in `X = dn²(u)` whose root is fixed by
/// `h = sn(3u)`. Returns the value and the sum of term magnitudes.
pub fn x_equation(h: f64, k: f64, x: f64) -> (f64, f64) {
    let k2 = k * k;
    let k4 = k2 * k2;
    let w = 1.0 - x;
    let first = h * k * (k4 + k2 * (-4.0 * x.powi(3) + 6.0 * x * x - 2.0) + w.powi(3) * (3.0 * x + 1.0));
    let second = (k4 * (1.0 - 4.0 * x) + k2 * (-6.0 * x * x + 8.0 * x - 2.0) + w.powi(4)) * w.max(0.0).sqrt();
    (first + second, first.abs() + second.abs())
}

fn relative(value: f64, scale: f64) -> f64 {
    value.abs() / scale.max(1.0)
}

/// `X` from the elliptic functions, under both readings.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct XEquationSolution {
    /// `dn²(F(arcsin h, k²)/3)`.
    pub x_squared: f64,
    pub residual_squared: f64,
    /// `dn(F(arcsin h, k²)/3)`.
    pub x_unsquared: f64,
    pub residual_unsquared: f64,
}

impl XEquationSolution {
    /// The reading with the smaller residual: `true` for the squared one.
    pub fn squared_is_better(&self) -> bool {
        !(self.residual_unsquared < self.residual_squared)
    }

    pub fn best_residual(&self) -> f64 {
        self.residual_squared.min(self.residual_unsquared)
    }
}

pub fn x_equation_solution(h: f64, k: f64) -> Result<XEquationSolution> {
    if !(h.abs() <= 1.0) {
        return Err(domain("h", h, "[-1, 1]"));
    }
    let md = Modulus::from_k(k)?;
    if !(k > 0.0) {
        return Err(domain("k", k, "(0, 1)"));
    }
    let m = md.m();
    let u = incomplete_f(h.asin(), m)? / 3.0;
    let dn = jacobi(u, m)?.dn;
    let eval = |x: f64| {
        let (v, s) = x_equation(h, k, x);
        relative(v, s)
    };
    Ok(XEquationSolution {
        x_squared: dn * dn,
        residual_squared: eval(dn * dn),
        x_unsquared: dn,
        residual_unsquared: eval(dn),
    })
}

/// The degree-15 polynomial printed for `h = 1/2`, with its term scale.
pub fn half_h_polynomial(k: f64, x: f64) -> (f64, f64) {
    let k2 = k * k;
    let k4 = k2 * k2;
    let terms = [
        2.0 * x.powi(15),
        18.0 * x.powi(13),
        42.0 * x.powi(11),
        -38.0 * x.powi(9),
        7.0 * x.powi(8),
        -186.0 * x.powi(7),
        -8.0 * x.powi(6),
        (12.0 * k2 + 54.0) * x.powi(5),
        (6.0 - 6.0 * k2) * x.powi(4),
        (8.0 * k4 - 24.0 * k2 + 270.0) * x.powi(3),
        (-6.0 * k4 + 12.0 * k2 - 162.0) * x,
        -k4 + 2.0 * k2 - 1.0,
    ];
    (terms.iter().sum(), terms.iter().map(|t| t.abs()).sum())
}

/// Relative residual of the printed `h = 1/2` polynomial at both readings of `X`.
pub fn half_h_residuals(k: f64) -> Result<(f64, f64)> {
    let s = x_equation_solution(0.5, k)?;
    let eval = |x: f64| {
        let (v, sc) = half_h_polynomial(k, x);
        relative(v, sc)
    };
    Ok((eval(s.x_squared), eval(s.x_unsquared)))
}

/// Every `k ∈ (0, 1)` with `dn(K/3, k²) = v`; the map is monotone, so at
/// most one is expected.
pub fn modulus_from_dn_third(v: f64) -> Result<Vec<f64>> {
    if !(v > 0.0 && v < 1.0) {
        return Err(domain("v", v, "(0, 1)"));
    }
    let g = |k: f64| dn_third_of_k(k * k).map_or(f64::NAN, |d| d - v);
    let found: Vec<f64> = RootScan::default()
        .with_width(1e-15)
        .run(g, 1e-9, 1.0 - 1e-12)
        .into_iter()
        .filter(|&k| g(k).abs() < 1e-12)
        .collect();
    if found.is_empty() {
        return Err(Error::NoAdmissibleRoot { what: "modulus from dn(K/3)" });
    }
    Ok(found)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::claims::Status;

    #[test]
    fn closed_form_below_critical_modulus() {
        for k in [0.1, 0.3, 0.5, 0.6, 0.7] {
            let c = dn_third_closed_form(k).unwrap();
            let d = dn_third_of_k(k * k).unwrap();
            assert!((c - d).abs() < 1e-10, "k = {k}: {c} vs {d}");
        }
    }

    #[test]
    fn closed_form_principal_branch_fails_above_critical_modulus() {
        for k in [0.72, 0.8, 0.9, 0.95] {
            let d = dn_third_of_k(k * k).unwrap();
            let principal = dn_third_closed_form(k);
            assert!(principal.map_or(true, |v| (v - d).abs() > 1e-6), "k = {k}");
            let negated = dn_third_closed_form_with_branch(k, RadicalBranch::Negated).unwrap();
            assert!((negated - d).abs() < 1e-9, "k = {k}");
        }
        assert!(matches!(dn_third_closed_form(0.5f64.sqrt()), Err(Error::BranchFailure { .. })));
    }

    #[test]
    fn table_values() {
        let v = tabulated_value("2/3".parse().unwrap()).unwrap();
        assert!(v.deviation() < 1e-12);
        assert!((v.closed_form_value.unwrap() - (3f64.sqrt() - 1.0).sqrt()).abs() < 1e-15);
        let v = tabulated_value("5/3".parse().unwrap()).unwrap();
        assert!(v.deviation() < 1e-12);
        let v = tabulated_value("1".parse().unwrap()).unwrap();
        assert_eq!(v.k, 0.5f64.sqrt());
        let claims = verify_tabulated_values().unwrap();
        assert_eq!(claims.len(), 23);
        assert!(claims.iter().all(|c| c.status == Status::Pass), "{claims:#?}");
    }

    #[test]
    fn bundled_examples_parse() {
        assert_eq!(example_value("x_half.x").unwrap(), 0.5);
        assert!((example_value("five_thirds.x").unwrap() - 0.9659258262890683).abs() < 1e-15);
        assert!(example_value("missing").is_err());
    }

    #[test]
    fn squared_reading_solves_x_equation() {
        let s = x_equation_solution(0.0, 0.6).unwrap();
        assert_eq!(s.x_squared, 1.0);
        assert_eq!(s.residual_squared, 0.0);
        for h in [0.1, 0.5, 0.9] {
            for k in [0.1, 0.5, 0.9] {
                let s = x_equation_solution(h, k).unwrap();
                assert!(s.residual_squared < EQUATION_TOLERANCE);
                assert!(s.squared_is_better());
            }
        }
        let s = x_equation_solution(1.0, 0.6).unwrap();
        assert!((s.x_squared.sqrt() - dn_third_closed_form(0.6).unwrap()).abs() < 1e-10);
    }

    #[test]
    fn half_h_polynomial_is_reported() {
        let (sq, unsq) = half_h_residuals(0.6).unwrap();
        assert!(sq.is_finite() && unsq.is_finite());
    }

    #[test]
    fn modulus_from_dn_third_round_trips() {
        for k in [0.5, 0.9] {
            let v = dn_third_of_k(k * k).unwrap();
            let found = modulus_from_dn_third(v).unwrap();
            assert!(found.iter().any(|f| (f - k).abs() < 1e-10), "{found:?}");
        }
        let found = modulus_from_dn_third(0.999).unwrap();
        assert!(found[0] < 0.1);
        assert!(modulus_from_dn_third(1.5).is_err());
    }
}
