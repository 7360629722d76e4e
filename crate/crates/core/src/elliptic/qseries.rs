//! Fourier (nome) series for the Jacobi functions.
//!
//! These are independent of the Landen evaluation in the parent module and
//! exist to cross-check it. They converge geometrically in the nome `q`.

use std::f64::consts::PI;

use super::{check_parameter, complete_k, nome_from_modulus};
use crate::error::{domain, Error, Result};

const TERM_FLOOR: f64 = 1e-17;
const MAX_TERMS: usize = 400;

struct SeriesSetup {
    q: f64,
    kk: f64,
    k: f64,
    z: f64,
}

fn setup(u: f64, m: f64) -> Result<SeriesSetup> {
    check_parameter(m)?;
    if m == 0.0 {
        return Err(domain("m", m, "(0, 1)"));
    }
    if !u.is_finite() {
        return Err(domain("u", u, "finite reals"));
    }
    let kk = complete_k(m)?;
    Ok(SeriesSetup { q: nome_from_modulus(m)?, kk, k: m.sqrt(), z: PI * u / (2.0 * kk) })
}

fn sum_terms(mut term: impl FnMut(usize) -> (f64, f64)) -> Result<f64> {
    let mut acc = 0.0;
    for n in 0..MAX_TERMS {
        let (value, bound) = term(n);
        acc += value;
        if bound < TERM_FLOOR {
            return Ok(acc);
        }
    }
    Err(Error::Convergence { what: "nome series", iterations: MAX_TERMS })
}

/// `sn(u|m) = 2π/(K k) Σ q^{n+½} sin((2n+1)z) / (1 − q^{2n+1})`.
pub fn qseries_sn(u: f64, m: f64) -> Result<f64> {
    let s = setup(u, m)?;
    let sum = sum_terms(|n| {
        let w = s.q.powf(n as f64 + 0.5) / (1.0 - s.q.powi(2 * n as i32 + 1));
        (w * ((2 * n + 1) as f64 * s.z).sin(), w)
    })?;
    Ok(2.0 * PI / (s.kk * s.k) * sum)
}

/// `cn(u|m) = 2π/(K k) Σ q^{n+½} cos((2n+1)z) / (1 + q^{2n+1})`.
pub fn qseries_cn(u: f64, m: f64) -> Result<f64> {
    let s = setup(u, m)?;
    let sum = sum_terms(|n| {
        let w = s.q.powf(n as f64 + 0.5) / (1.0 + s.q.powi(2 * n as i32 + 1));
        (w * ((2 * n + 1) as f64 * s.z).cos(), w)
    })?;
    Ok(2.0 * PI / (s.kk * s.k) * sum)
}

/// The `cn` series with the denominator `1 + q^{2n−1}` instead of
/// `1 + q^{2n+1}`. Kept only so the audit can show it disagrees with `cn`.
pub fn qseries_cn_as_printed(u: f64, m: f64) -> Result<f64> {
    let s = setup(u, m)?;
    let sum = sum_terms(|n| {
        let w = s.q.powf(n as f64 + 0.5) / (1.0 + s.q.powi(2 * n as i32 - 1));
        (w * ((2 * n + 1) as f64 * s.z).cos(), w)
    })?;
    Ok(2.0 * PI / (s.kk * s.k) * sum)
}

/// `dn(u|m) = π/(2K) + 2π/K Σ_{n≥1} q^n cos(2nz) / (1 + q^{2n})`.
pub fn qseries_dn(u: f64, m: f64) -> Result<f64> {
    let s = setup(u, m)?;
    let sum = sum_terms(|i| {
        let n = i + 1;
        let w = s.q.powi(n as i32) / (1.0 + s.q.powi(2 * n as i32));
        (w * (2.0 * n as f64 * s.z).cos(), w)
    })?;
    Ok(PI / (2.0 * s.kk) + 2.0 * PI / s.kk * sum)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::elliptic::jacobi;

    #[test]
    fn sn_series_vanishes_at_origin() {
        assert_eq!(qseries_sn(0.0, 0.4).unwrap(), 0.0);
    }

    #[test]
    fn sn_series_is_one_at_quarter_period() {
        let kk = complete_k(0.5).unwrap();
        assert!((qseries_sn(kk, 0.5).unwrap() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn series_match_landen() {
        for &(u, m) in &[(0.7, 0.3), (1.0, 0.5), (2.2, 0.9), (0.1, 0.05)] {
            let t = jacobi(u, m).unwrap();
            assert!((qseries_sn(u, m).unwrap() - t.sn).abs() < 1e-10);
            assert!((qseries_cn(u, m).unwrap() - t.cn).abs() < 1e-10);
            assert!((qseries_dn(u, m).unwrap() - t.dn).abs() < 1e-10);
        }
    }

    #[test]
    fn printed_cn_series_disagrees() {
        let t = jacobi(1.0, 0.5).unwrap();
        assert!((qseries_cn_as_printed(1.0, 0.5).unwrap() - t.cn).abs() > 1e-3);
    }

    #[test]
    fn series_reject_m_zero() {
        assert!(qseries_sn(0.3, 0.0).is_err());
    }
}
