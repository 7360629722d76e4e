//! Duplication and triplication of the Jacobi functions written in terms of
//! `x = dn(u)` and the modulus `k`, plus the addition theorem that serves as
//! their oracle.
//!
//! With `x = dn(u)` one has `cn(u) = √(k²+x²−1)/k` and `sn(u) = √(1−x²)/k`
//! for `u ∈ [0, K]`. The real entry points require `k' ≤ x ≤ 1`. The complex
//! entry points take any `x`, `k` and use principal square roots.
//!
//! All three triplication components share the denominator
//! `D = −(1−k²)² + 6(1−k²)x⁴ − 4(2−k²)x⁶ + 3x⁸`. In particular
//! `dn(3u) = −x·N_dn/D`; the variant with denominator
//! `(1−k²)² − 6(1−k²)x⁴ + 8x⁶ − 7x⁸` is kept in [`dn_3u_alternate_denominator`]
//! for auditing only.

use num_complex::{Complex64, ComplexFloat};

use crate::elliptic::{JacobiTriple, Modulus};
use crate::error::{domain, Error, Result};

const SINGULAR: f64 = 1e-13;
const REGIME_SLACK: f64 = 1e-14;

/// `dn(u) = x` re-expressed as the full triple at `u ∈ [0, K]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DnParametrization {
    pub x: f64,
    pub k: f64,
    /// `cn(u)`; NaN outside the real regime.
    pub alpha: f64,
    /// `sn(u)`.
    pub beta: f64,
    /// `k' ≤ x ≤ 1`.
    pub real_regime: bool,
}

impl DnParametrization {
    pub fn new(x: f64, modulus: Modulus) -> Self {
        let k = modulus.k();
        let real_regime = in_real_regime(x, modulus);
        let kp = modulus.kprime();
        let alpha = if real_regime { ((x - kp) * (x + kp)).max(0.0).sqrt() / k } else { f64::NAN };
        let beta = ((1.0 - x) * (1.0 + x)).max(0.0).sqrt() / k;
        DnParametrization { x, k, alpha, beta, real_regime }
    }

    pub fn triple(&self) -> JacobiTriple {
        JacobiTriple { sn: self.beta, cn: self.alpha, dn: self.x }
    }
}

/// Triple of complex values, for parameters outside the real `dn` range.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexTriple {
    pub sn: Complex64,
    pub cn: Complex64,
    pub dn: Complex64,
}

fn in_real_regime(x: f64, modulus: Modulus) -> bool {
    x >= modulus.kprime() - REGIME_SLACK && x <= 1.0 + REGIME_SLACK
}

fn require_real_regime(x: f64, modulus: Modulus) -> Result<f64> {
    if in_real_regime(x, modulus) {
        Ok(x.clamp(modulus.kprime(), 1.0))
    } else {
        Err(domain("x", x, "[k', 1]"))
    }
}

fn check_denominator<T: ComplexFloat<Real = f64>>(value: T, what: &'static str) -> Result<T> {
    if value.abs() > SINGULAR {
        Ok(value)
    } else {
        Err(Error::SingularDenominator { what, magnitude: value.abs() })
    }
}

fn lit<T: ComplexFloat>(v: f64) -> T {
    T::from(v).expect("literal fits the scalar type")
}

/// Numerators and shared denominator of the triplication formulas.
#[derive(Debug, Clone, Copy)]
pub(crate) struct TriplicationParts<T> {
    pub n_sn: T,
    pub n_cn: T,
    pub n_dn: T,
    pub denominator: T,
}

pub(crate) fn triplication_parts<T: ComplexFloat<Real = f64>>(x: T, k: T) -> TriplicationParts<T> {
    // polynomials in w = 1 − x², which stay well conditioned near u = 0
    let one: T = lit(1.0);
    let k2 = k * k;
    let k4 = k2 * k2;
    let w = (one - x) * (one + x);
    let w2 = w * w;
    let w3 = w2 * w;
    let w4 = w2 * w2;
    let c = |v: f64| lit::<T>(v);
    TriplicationParts {
        n_sn: k4 * (c(4.0) * w - c(3.0)) + k2 * (c(4.0) * w - c(6.0) * w2) + w4,
        n_cn: k4 + k2 * (c(6.0) * w2 - c(4.0) * w - c(4.0) * w3) + w4,
        n_dn: k4 * (one - c(4.0) * w) + c(6.0) * k2 * w2 + w4 - c(4.0) * w3,
        denominator: -k4 + k2 * (c(6.0) * w2 - c(4.0) * w3) + c(3.0) * w4 - c(4.0) * w3,
    }
}

/// Square roots `√(1−x²)` and `√(k²+x²−1)`, i.e. `k·sn(u)` and `k·cn(u)`.
#[derive(Debug, Clone, Copy)]
struct Roots<T> {
    k_sn: T,
    k_cn: T,
}

fn real_roots(x: f64, modulus: Modulus) -> Roots<f64> {
    let kp = modulus.kprime();
    Roots { k_sn: ((1.0 - x) * (1.0 + x)).max(0.0).sqrt(), k_cn: ((x - kp) * (x + kp)).max(0.0).sqrt() }
}

fn principal_roots(x: Complex64, k: Complex64) -> Roots<Complex64> {
    let one = Complex64::new(1.0, 0.0);
    Roots { k_sn: ((one - x) * (one + x)).sqrt(), k_cn: (k * k + x * x - one).sqrt() }
}

fn triplicate<T: ComplexFloat<Real = f64>>(x: T, k: T, roots: Roots<T>) -> Result<(T, T, T)> {
    let parts = triplication_parts(x, k);
    let d = check_denominator(parts.denominator, "triplication")?;
    let sn = roots.k_sn / k * parts.n_sn / d;
    let cn = -roots.k_cn * parts.n_cn / (k * d);
    let dn = -x * parts.n_dn / d;
    Ok((sn, cn, dn))
}

fn duplicate<T: ComplexFloat<Real = f64>>(x: T, k: T, roots: Roots<T>) -> Result<(T, T, T)> {
    let one: T = lit(1.0);
    let two: T = lit(2.0);
    let k2 = k * k;
    let x2 = x * x;
    let w = (one - x) * (one + x);
    let d = check_denominator(k2 - w * w, "duplication")?;
    let sn = two * x * roots.k_sn * roots.k_cn / d;
    let cn = (k2 - w * (one + x2)) / d;
    let dn = (w * w - k2 * (one - two * x2)) / d;
    Ok((sn, cn, dn))
}

/// `sn(u₁+u₂)` from the two triples.
pub fn addition_sn(t1: JacobiTriple, t2: JacobiTriple, modulus: Modulus) -> Result<f64> {
    let d = addition_denominator(t1, t2, modulus)?;
    Ok((t1.sn * t2.cn * t2.dn + t2.sn * t1.cn * t1.dn) / d)
}

/// `cn(u₁+u₂)` from the two triples.
pub fn addition_cn(t1: JacobiTriple, t2: JacobiTriple, modulus: Modulus) -> Result<f64> {
    let d = addition_denominator(t1, t2, modulus)?;
    Ok((t1.cn * t2.cn - t1.sn * t2.sn * t1.dn * t2.dn) / d)
}

/// `dn(u₁+u₂)` from the two triples.
pub fn addition_dn(t1: JacobiTriple, t2: JacobiTriple, modulus: Modulus) -> Result<f64> {
    let d = addition_denominator(t1, t2, modulus)?;
    Ok((t1.dn * t2.dn - modulus.m() * t1.sn * t2.sn * t1.cn * t2.cn) / d)
}

/// All three addition formulas at once.
pub fn addition(t1: JacobiTriple, t2: JacobiTriple, modulus: Modulus) -> Result<JacobiTriple> {
    Ok(JacobiTriple {
        sn: addition_sn(t1, t2, modulus)?,
        cn: addition_cn(t1, t2, modulus)?,
        dn: addition_dn(t1, t2, modulus)?,
    })
}

fn addition_denominator(t1: JacobiTriple, t2: JacobiTriple, modulus: Modulus) -> Result<f64> {
    check_denominator(1.0 - modulus.m() * t1.sn * t1.sn * t2.sn * t2.sn, "addition formula")
}

/// Triple at `3u` built as `u + (u + u)` from the addition formulas alone.
pub fn triple_by_addition(t: JacobiTriple, modulus: Modulus) -> Result<JacobiTriple> {
    let doubled = addition(t, t, modulus)?;
    addition(t, doubled, modulus)
}

/// `(sn, cn, dn)` at `2u` from `x = dn(u)`.
pub fn duplication_from_dn(x: f64, modulus: Modulus) -> Result<JacobiTriple> {
    let x = require_real_regime(x, modulus)?;
    let k = modulus.k();
    let (sn, cn, dn) = duplicate(x, k, real_roots(x, modulus))?;
    Ok(JacobiTriple { sn, cn, dn })
}

/// `(sn, cn, dn)` at `3u` from `x = dn(u)`.
pub fn triplication_from_dn(x: f64, modulus: Modulus) -> Result<JacobiTriple> {
    let x = require_real_regime(x, modulus)?;
    let k = modulus.k();
    let (sn, cn, dn) = triplicate(x, k, real_roots(x, modulus))?;
    Ok(JacobiTriple { sn, cn, dn })
}

/// `dn(4u)` as duplication applied twice; `dn(2u)` depends on `x²` only.
pub fn dn_4u_from_dn(x: f64, modulus: Modulus) -> Result<f64> {
    let x = require_real_regime(x, modulus)?;
    let k = modulus.k();
    let (_, _, dn2) = duplicate(x, k, real_roots(x, modulus))?;
    let (_, _, dn4) = duplicate(dn2, k, real_roots(dn2, modulus))?;
    Ok(dn4)
}

/// `sd(3u) = sn(3u)/dn(3u)` from `x = dn(u)`.
pub fn sd_3u(x: f64, modulus: Modulus) -> Result<f64> {
    let t = triplication_from_dn(x, modulus)?;
    Ok(t.sn / check_denominator(t.dn, "sd(3u)")?)
}

/// Duplication for arbitrary complex `x`, `k` (principal square roots).
pub fn duplication_from_dn_complex(x: Complex64, k: Complex64) -> Result<ComplexTriple> {
    let (sn, cn, dn) = duplicate(x, k, principal_roots(x, k))?;
    Ok(ComplexTriple { sn, cn, dn })
}

/// Triplication for arbitrary complex `x`, `k` (principal square roots).
pub fn triplication_from_dn_complex(x: Complex64, k: Complex64) -> Result<ComplexTriple> {
    let (sn, cn, dn) = triplicate(x, k, principal_roots(x, k))?;
    Ok(ComplexTriple { sn, cn, dn })
}

/// `sn(3u) = (√(1−x²)/k)·N_sn/D`. Needs no `cn`, so it is valid for every
/// real `x ∈ [−1, 1]` and `k ∈ (0, 1)` regardless of the `dn` range.
pub fn sn_3u_closed_form(x: f64, k: f64) -> Result<f64> {
    let parts = triplication_parts(x, k);
    let d = check_denominator(parts.denominator, "triplication")?;
    Ok(((1.0 - x) * (1.0 + x)).sqrt() / k * parts.n_sn / d)
}

/// `dn(3u)` with the denominator `(1−k²)² − 6(1−k²)x⁴ + 8x⁶ − 7x⁸` in place
/// of the shared one. Disagrees with `dn(3u)`; used only by the audit.
pub fn dn_3u_alternate_denominator(x: f64, k: f64) -> Result<f64> {
    let parts = triplication_parts(x, k);
    let kp2 = 1.0 - k * k;
    let x4 = x.powi(4);
    let d = kp2 * kp2 - 6.0 * kp2 * x4 + 8.0 * x.powi(6) - 7.0 * x4 * x4;
    Ok(x * parts.n_dn / check_denominator(d, "alternate dn(3u)")?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::elliptic::jacobi;

    fn md(m: f64) -> Modulus {
        Modulus::from_m(m).unwrap()
    }

    fn close(a: JacobiTriple, b: JacobiTriple, tol: f64) -> bool {
        (a.sn - b.sn).abs() < tol && (a.cn - b.cn).abs() < tol && (a.dn - b.dn).abs() < tol
    }

    #[test]
    fn parametrization_invariants() {
        let m = md(0.5);
        let x = jacobi(0.6, 0.5).unwrap().dn;
        let p = DnParametrization::new(x, m);
        assert!(p.real_regime);
        assert!((p.alpha.powi(2) + p.beta.powi(2) - 1.0).abs() < 1e-12);
        assert!((m.m() * p.beta.powi(2) + x * x - 1.0).abs() < 1e-12);
        assert!(!DnParametrization::new(0.5, m).real_regime);
    }

    #[test]
    fn addition_identity_element() {
        let m = md(0.3);
        let t = jacobi(0.9, 0.3).unwrap();
        let s = addition(t, JacobiTriple::IDENTITY, m).unwrap();
        assert!(close(s, t, 1e-15));
    }

    #[test]
    fn addition_matches_direct() {
        let a = jacobi(0.4, 0.5).unwrap();
        let s = addition(a, a, md(0.5)).unwrap();
        assert!(close(s, jacobi(0.8, 0.5).unwrap(), 1e-11));
        let a = jacobi(0.3, 0.25).unwrap();
        let b = jacobi(0.5, 0.25).unwrap();
        assert!(close(addition(a, b, md(0.25)).unwrap(), jacobi(0.8, 0.25).unwrap(), 1e-11));
    }

    #[test]
    fn duplication_cases() {
        let m = md(0.5);
        assert!(close(duplication_from_dn(1.0, m).unwrap(), JacobiTriple::IDENTITY, 1e-15));
        let x = jacobi(0.6, 0.5).unwrap().dn;
        assert!(close(duplication_from_dn(x, m).unwrap(), jacobi(1.2, 0.5).unwrap(), 1e-11));
        let t = duplication_from_dn(m.kprime(), m).unwrap();
        assert!(close(t, JacobiTriple { sn: 0.0, cn: -1.0, dn: 1.0 }, 1e-12));
        assert!(duplication_from_dn(0.5, m).is_err());
    }

    #[test]
    fn duplication_matches_addition() {
        let m = md(0.7);
        let t = jacobi(0.45, 0.7).unwrap();
        let a = addition(t, t, m).unwrap();
        assert!(close(duplication_from_dn(t.dn, m).unwrap(), a, 1e-11));
    }

    #[test]
    fn triplication_cases() {
        let m = md(0.3);
        assert!(close(triplication_from_dn(1.0, m).unwrap(), JacobiTriple::IDENTITY, 1e-14));
        let x = jacobi(0.4, 0.3).unwrap().dn;
        assert!(close(triplication_from_dn(x, m).unwrap(), jacobi(1.2, 0.3).unwrap(), 1e-10));
    }

    #[test]
    fn alternate_dn_denominator_disagrees() {
        let x = jacobi(0.4, 0.3).unwrap().dn;
        let direct = jacobi(1.2, 0.3).unwrap().dn;
        let alt = dn_3u_alternate_denominator(x, 0.3f64.sqrt()).unwrap();
        assert!((alt - direct).abs() > 1e-3);
    }

    #[test]
    fn dn_4u_cases() {
        assert!((dn_4u_from_dn(1.0, md(0.5)).unwrap() - 1.0).abs() < 1e-15);
        let x = jacobi(0.3, 0.5).unwrap().dn;
        assert!((dn_4u_from_dn(x, md(0.5)).unwrap() - jacobi(1.2, 0.5).unwrap().dn).abs() < 1e-10);
        let x = jacobi(0.25, 0.7).unwrap().dn;
        assert!((dn_4u_from_dn(x, md(0.7)).unwrap() - jacobi(1.0, 0.7).unwrap().dn).abs() < 1e-10);
    }

    #[test]
    fn sd_3u_cases() {
        let m = md(0.4);
        assert_eq!(sd_3u(1.0, m).unwrap(), 0.0);
        let x = jacobi(0.5, 0.4).unwrap().dn;
        let t = jacobi(1.5, 0.4).unwrap();
        assert!((sd_3u(x, m).unwrap() - t.sn / t.dn).abs() < 1e-10);
        let at_k = sd_3u(m.kprime(), m).unwrap();
        assert!((at_k + 1.0 / m.kprime()).abs() < 1e-10);
    }

    #[test]
    fn complex_entry_agrees_on_reals() {
        let m = md(0.6);
        let x = jacobi(0.7, 0.6).unwrap().dn;
        let r = triplication_from_dn(x, m).unwrap();
        let c = triplication_from_dn_complex(Complex64::new(x, 0.0), Complex64::new(m.k(), 0.0)).unwrap();
        assert!((c.sn.re - r.sn).abs() < 1e-14 && c.sn.im == 0.0);
        assert!((c.cn.re - r.cn).abs() < 1e-14);
        assert!((c.dn.re - r.dn).abs() < 1e-14);
    }

    #[test]
    fn complex_regime_sn3() {
        // x = 1/2, k = 1/√2: sn(3u) = −33·√(3/2)/37 exactly
        let k = Complex64::new(0.5f64.sqrt(), 0.0);
        let t = triplication_from_dn_complex(Complex64::new(0.5, 0.0), k).unwrap();
        assert!((t.sn.re + 33.0 * 1.5f64.sqrt() / 37.0).abs() < 1e-14);
        assert!(t.cn.im.abs() > 0.0);
    }
}
