//! Minimal-polynomial recognition of real constants by lattice reduction.
//!
//! For each degree `d` the rows `eᵢ ++ round(2^s·αⁱ)`, `i = 0..=d`, are
//! LLL-reduced; a short vector carries integer coefficients `c` with
//! `Σ cᵢαⁱ ≈ 0`. A vector is accepted when its height is within bounds and
//! `|p(α)| < 2^(−precision/2)` on resubstitution.

mod bigreal;
mod lll;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

pub use bigreal::{BigReal, DEFAULT_PRECISION};
pub use lll::lll_reduce;

use crate::error::{Error, Result};

pub const MAX_DEGREE: usize = 16;
/// Bits of the scale `2^s` withheld from the working precision.
const SCALE_MARGIN: u32 = 8;

#[derive(Debug, Clone, PartialEq)]
pub struct AlgebraicCandidate {
    pub degree: usize,
    /// Constant term first; coprime, positive leading coefficient.
    pub coefficients: Vec<i64>,
    pub eval_residual: BigReal,
    pub height: i64,
}

impl AlgebraicCandidate {
    /// Builds a candidate from raw coefficients, normalizing content and sign.
    /// `None` for the zero polynomial or coefficients beyond `i64`.
    pub fn from_coefficients(raw: &[BigInt], alpha: &BigReal) -> Option<Self> {
        let degree = raw.iter().rposition(|c| !c.is_zero())?;
        let g = raw.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
        let sign = BigInt::from(if raw[degree].is_negative() { -1 } else { 1 });
        let coefficients: Vec<i64> = raw[..=degree].iter().map(|c| (c / &g * &sign).to_i64()).collect::<Option<_>>()?;
        let height = coefficients.iter().map(|c| c.checked_abs()).collect::<Option<Vec<_>>>()?.into_iter().max()?;
        let eval_residual = evaluate(&coefficients, alpha);
        Some(AlgebraicCandidate { degree, coefficients, eval_residual, height })
    }

    /// Human-readable polynomial in `Y`, highest power first.
    pub fn polynomial_string(&self) -> String {
        let mut out = String::new();
        for (i, &c) in self.coefficients.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let mag = c.unsigned_abs();
            if out.is_empty() {
                if c < 0 {
                    out.push('-');
                }
            } else {
                out.push_str(if c < 0 { " - " } else { " + " });
            }
            let coef = if mag == 1 && i > 0 { String::new() } else { mag.to_string() };
            let sep = if coef.is_empty() || i == 0 { "" } else { "*" };
            match i {
                0 => out.push_str(&coef),
                1 => out.push_str(&format!("{coef}{sep}Y")),
                _ => out.push_str(&format!("{coef}{sep}Y^{i}")),
            }
        }
        out
    }

    /// A rational root `p/q` of the candidate, if any; a linear factor makes a
    /// candidate of degree above one reducible.
    pub fn rational_root(&self) -> Option<(i64, i64)> {
        let c0 = *self.coefficients.first()?;
        let lead = *self.coefficients.last()?;
        if c0 == 0 {
            return Some((0, 1));
        }
        let divisors = |n: i64| -> Vec<i64> {
            let n = n.unsigned_abs();
            if n > 1_000_000_000_000 {
                return Vec::new();
            }
            (1..)
                .take_while(|d| d * d <= n)
                .filter(|d| n.is_multiple_of(*d))
                .flat_map(|d| [d, n / d])
                .map(|d| d as i64)
                .collect()
        };
        for p in divisors(c0) {
            for q in divisors(lead) {
                for p in [p, -p] {
                    // exact test of p/q: Σ cᵢ pⁱ q^(d−i) = 0
                    let d = self.degree as u32;
                    let mut total: i128 = 0;
                    let mut overflow = false;
                    for (i, &c) in self.coefficients.iter().enumerate() {
                        let term = (p as i128)
                            .checked_pow(i as u32)
                            .and_then(|a| (q as i128).checked_pow(d - i as u32).and_then(|b| a.checked_mul(b)))
                            .and_then(|t| t.checked_mul(c as i128));
                        match term.and_then(|t| total.checked_add(t)) {
                            Some(t) => total = t,
                            None => {
                                overflow = true;
                                break;
                            }
                        }
                    }
                    if !overflow && total == 0 {
                        return Some((p, q));
                    }
                }
            }
        }
        None
    }
}

fn evaluate(coefficients: &[i64], alpha: &BigReal) -> BigReal {
    let prec = alpha.precision();
    coefficients.iter().rev().fold(BigReal::zero(prec), |acc, &c| &(&acc * alpha) + &BigReal::from_int(c, prec)).abs()
}

/// `|p(α)|` by Horner evaluation at the precision of `alpha`.
pub fn verify_candidate(candidate: &AlgebraicCandidate, alpha: &BigReal) -> BigReal {
    evaluate(&candidate.coefficients, alpha)
}

/// `true` when `residual < 2^(−precision/2)`.
pub fn below_acceptance(residual: &BigReal, precision: u32) -> bool {
    residual.log2_floor().is_none_or(|l| l < -(i64::from(precision) / 2))
}

/// Searches degrees `1..=max_degree` for an integer polynomial vanishing at
/// `alpha`. `Ok(None)` means no relation within the bounds.
pub fn recognize(alpha: &BigReal, max_degree: usize, max_height: i64) -> Result<Option<AlgebraicCandidate>> {
    if !(1..=MAX_DEGREE).contains(&max_degree) {
        return Err(Error::Domain { name: "max_degree", value: max_degree as f64, domain: "[1, 16]" });
    }
    if max_height < 1 {
        return Err(Error::Domain { name: "max_height", value: max_height as f64, domain: "[1, inf)" });
    }
    let prec = alpha.precision();
    let scale = i64::from(prec.saturating_sub(SCALE_MARGIN));
    let wide = alpha.with_precision(prec + 32);
    let mut powers = vec![BigReal::from_int(1, prec + 32)];
    for _ in 0..max_degree {
        let next = powers.last().map(|p| p * &wide).unwrap_or_else(|| BigReal::zero(prec));
        powers.push(next);
    }
    for d in 1..=max_degree {
        let rows: Vec<Vec<BigInt>> = (0..=d)
            .map(|i| {
                let mut row = vec![BigInt::zero(); d + 2];
                row[i] = BigInt::from(1);
                row[d + 1] = powers[i].mul_pow2(scale).round();
                row
            })
            .collect();
        let reduced = match lll_reduce(rows) {
            Ok(r) => r,
            Err(_) => continue,
        };
        for row in &reduced {
            let coeffs = &row[..=d];
            if coeffs.iter().any(|c| c.abs() > BigInt::from(max_height)) {
                continue;
            }
            let Some(candidate) = AlgebraicCandidate::from_coefficients(coeffs, alpha) else {
                continue;
            };
            if candidate.degree >= 1 && below_acceptance(&candidate.eval_residual, prec) {
                return Ok(Some(candidate));
            }
        }
    }
    Ok(None)
}
