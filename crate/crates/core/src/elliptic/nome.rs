use std::f64::consts::PI;

use super::{check_parameter, complete_k, complete_k_complement, Modulus};
use crate::error::{domain, Error, Result};

const TERM_FLOOR: f64 = 1e-17;
const MAX_TERMS: usize = 400;

/// Nome `q = exp(−π K(1−m) / K(m))`.
pub fn nome_from_modulus(m: f64) -> Result<f64> {
    check_parameter(m)?;
    if m == 0.0 {
        return Err(domain("m", m, "(0, 1)"));
    }
    Ok((-PI * complete_k_complement(m)? / complete_k(m)?).exp())
}

/// Modulus from the nome by theta quotients: `k = θ₂²/θ₃²`, `k' = θ₄²/θ₃²`.
pub fn modulus_from_nome(q: f64) -> Result<Modulus> {
    if !(q > 0.0 && q < 1.0) {
        return Err(domain("q", q, "(0, 1)"));
    }
    // θ₂ = 2 q^{1/4} Σ q^{n(n+1)}, θ₃ = 1 + 2 Σ q^{n²}, θ₄ = 1 + 2 Σ (−1)^n q^{n²}
    let mut theta2 = 0.0;
    let mut converged = false;
    for n in 0..MAX_TERMS {
        let t = q.powf((n * (n + 1)) as f64);
        theta2 += t;
        if t < TERM_FLOOR * theta2 {
            converged = true;
            break;
        }
    }
    let mut theta3 = 1.0;
    let mut theta4 = 1.0;
    if converged {
        converged = false;
        for n in 1..MAX_TERMS {
            let t = q.powf((n * n) as f64);
            theta3 += 2.0 * t;
            theta4 += if n % 2 == 0 { 2.0 * t } else { -2.0 * t };
            if t < TERM_FLOOR * theta4.min(1.0) {
                converged = true;
                break;
            }
        }
    }
    if !converged {
        return Err(Error::Convergence { what: "theta series", iterations: MAX_TERMS });
    }
    let theta2 = 2.0 * q.powf(0.25) * theta2;
    let k = (theta2 / theta3).powi(2);
    let kprime = (theta4 / theta3).powi(2);
    Modulus::from_k_kprime(k, kprime)
}
