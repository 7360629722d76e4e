//! Slow reference evaluations used by the audit and tests.
//!
//! Nothing here shares code with the production paths in the parent module.

use std::f64::consts::FRAC_PI_2;

/// `K(m) = π/2 · ₂F₁(½, ½; 1; m)` summed until a term falls below `1e-18`
/// or `max_terms` terms have been added.
pub fn hypergeometric_k(m: f64, max_terms: usize) -> f64 {
    let mut term = 1.0;
    let mut sum = 1.0;
    for n in 0..max_terms {
        // ((1/2)_n / n!)² m^n ratio
        let ratio = ((n as f64 + 0.5) / (n as f64 + 1.0)).powi(2) * m;
        term *= ratio;
        sum += term;
        if term < 1e-18 {
            break;
        }
    }
    FRAC_PI_2 * sum
}

/// Gauss-Legendre estimate of `∫₀^φ dθ / √(1 − m sin²θ)` on `panels` subintervals.
pub fn quadrature_f(phi: f64, m: f64, panels: usize) -> f64 {
    // 8-point Gauss-Legendre nodes/weights on [-1, 1]
    const NODES: [f64; 4] =
        [0.183_434_642_495_649_8, 0.525_532_409_916_329, 0.796_666_477_413_626_7, 0.960_289_856_497_536_3];
    const WEIGHTS: [f64; 4] =
        [0.362_683_783_378_362, 0.313_706_645_877_887_3, 0.222_381_034_453_374_5, 0.101_228_536_290_376_3];
    let f = |t: f64| 1.0 / (1.0 - m * t.sin().powi(2)).sqrt();
    let h = phi / panels as f64;
    let mut total = 0.0;
    for p in 0..panels {
        let mid = (p as f64 + 0.5) * h;
        let half = 0.5 * h;
        for (x, w) in NODES.iter().zip(WEIGHTS.iter()) {
            total += w * (f(mid - half * x) + f(mid + half * x)) * half;
        }
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hypergeometric_k_at_half() {
        let v = hypergeometric_k(0.5, 400);
        assert!((v - 1.854_074_677_301_372).abs() < 1e-14);
    }

    #[test]
    fn quadrature_of_constant_integrand() {
        assert!((quadrature_f(1.0, 0.0, 4) - 1.0).abs() < 1e-15);
    }
}
