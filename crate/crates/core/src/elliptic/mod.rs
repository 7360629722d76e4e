//! Real-domain elliptic integrals and Jacobi elliptic functions.
//!
//! Everything here uses the parameter convention `m = k²`. Accuracy targets
//! hold for `m` in [`ACCURATE_RANGE`]; the routines accept all of `[0, 1)`
//! and do their best outside that window.

mod nome;
pub mod oracle;
mod qseries;

pub use nome::{modulus_from_nome, nome_from_modulus};
pub use qseries::{qseries_cn, qseries_cn_as_printed, qseries_dn, qseries_sn};

use std::f64::consts::{FRAC_PI_2, PI};

use crate::error::{domain, Result};

/// Parameter window on which the documented tolerances are guaranteed.
pub const ACCURATE_RANGE: (f64, f64) = (1e-6, 1.0 - 1e-6);

/// Descent stops once the Landen modulus drops below this.
const LANDEN_CUTOFF: f64 = 1e-15;
const MAX_DESCENT: usize = 40;

/// Elliptic modulus `k` with its parameter `m = k²` and complement `k' = √(1−k²)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Modulus {
    k: f64,
    m: f64,
    kprime: f64,
}

impl Modulus {
    pub fn from_k(k: f64) -> Result<Self> {
        if !(k > 0.0 && k < 1.0) {
            return Err(domain("k", k, "(0, 1)"));
        }
        Ok(Modulus { k, m: k * k, kprime: ((1.0 - k) * (1.0 + k)).sqrt() })
    }

    pub fn from_m(m: f64) -> Result<Self> {
        if !(m > 0.0 && m < 1.0) {
            return Err(domain("m", m, "(0, 1)"));
        }
        Ok(Modulus { k: m.sqrt(), m, kprime: (1.0 - m).sqrt() })
    }

    /// Builds a modulus from independently computed `k` and `k'`, which must
    /// satisfy `k² + k'² = 1` to within 1e-14.
    pub fn from_k_kprime(k: f64, kprime: f64) -> Result<Self> {
        if !(k > 0.0 && k < 1.0) {
            return Err(domain("k", k, "(0, 1)"));
        }
        if !(kprime > 0.0 && kprime < 1.0) || (k * k + kprime * kprime - 1.0).abs() > 1e-14 {
            return Err(domain("kprime", kprime, "sqrt(1 - k^2)"));
        }
        Ok(Modulus { k, m: k * k, kprime })
    }

    pub fn k(&self) -> f64 {
        self.k
    }

    pub fn m(&self) -> f64 {
        self.m
    }

    pub fn kprime(&self) -> f64 {
        self.kprime
    }
}

/// Values of `sn`, `cn`, `dn` at a common argument.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JacobiTriple {
    pub sn: f64,
    pub cn: f64,
    pub dn: f64,
}

impl JacobiTriple {
    /// The triple at `u = 0`.
    pub const IDENTITY: JacobiTriple = JacobiTriple { sn: 0.0, cn: 1.0, dn: 1.0 };

    /// Largest violation of `sn² + cn² = 1` and `m·sn² + dn² = 1`.
    pub fn pythagorean_defect(&self, m: f64) -> f64 {
        let a = self.sn * self.sn + self.cn * self.cn - 1.0;
        let b = m * self.sn * self.sn + self.dn * self.dn - 1.0;
        a.abs().max(b.abs())
    }
}

/// An argument `u` together with its normalized angle `z = πu/(2K)` and amplitude `am(u)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EllipticPoint {
    pub u: f64,
    pub z: f64,
    pub amplitude: f64,
}

impl EllipticPoint {
    pub fn new(u: f64, m: f64) -> Result<Self> {
        let kk = complete_k(m)?;
        Ok(EllipticPoint { u, z: PI * u / (2.0 * kk), amplitude: amplitude(u, m)? })
    }
}

pub(crate) fn check_parameter(m: f64) -> Result<()> {
    if m.is_finite() && (0.0..1.0).contains(&m) {
        Ok(())
    } else {
        Err(domain("m", m, "[0, 1)"))
    }
}

fn agm(mut a: f64, mut b: f64) -> f64 {
    for _ in 0..64 {
        if (a - b).abs() <= f64::EPSILON * a {
            break;
        }
        let next = 0.5 * (a + b);
        b = (a * b).sqrt();
        a = next;
    }
    0.5 * (a + b)
}

/// Complete elliptic integral of the first kind `K(m)`, by the AGM.
pub fn complete_k(m: f64) -> Result<f64> {
    check_parameter(m)?;
    Ok(FRAC_PI_2 / agm(1.0, (1.0 - m).sqrt()))
}

/// `K(1 − m)`, evaluated without forming `1 − m`.
pub fn complete_k_complement(m: f64) -> Result<f64> {
    if !(m.is_finite() && m > 0.0 && m <= 1.0) {
        return Err(domain("m", m, "(0, 1]"));
    }
    Ok(FRAC_PI_2 / agm(1.0, m.sqrt()))
}

/// Carlson's symmetric integral `R_F(x, y, z)` by duplication, with the
/// seventh-order expansion once the arguments are within 0.25% of their mean.
pub(crate) fn carlson_rf(mut x: f64, mut y: f64, mut z: f64) -> f64 {
    const TOL: f64 = 0.0025;
    let mut mean;
    let (mut dx, mut dy, mut dz);
    loop {
        let (sx, sy, sz) = (x.sqrt(), y.sqrt(), z.sqrt());
        let lambda = sx * (sy + sz) + sy * sz;
        x = 0.25 * (x + lambda);
        y = 0.25 * (y + lambda);
        z = 0.25 * (z + lambda);
        mean = (x + y + z) / 3.0;
        dx = (mean - x) / mean;
        dy = (mean - y) / mean;
        dz = (mean - z) / mean;
        if dx.abs().max(dy.abs()).max(dz.abs()) < TOL {
            break;
        }
    }
    let dz = -(dx + dy);
    let e2 = dx * dy - dz * dz;
    let e3 = dx * dy * dz;
    let series = 1.0 - e2 / 10.0 + e3 / 14.0 + e2 * e2 / 24.0 - 3.0 * e2 * e3 / 44.0 - 5.0 * e2 * e2 * e2 / 208.0
        + 3.0 * e3 * e3 / 104.0
        + e2 * e2 * e3 / 16.0;
    series / mean.sqrt()
}

fn f_principal(phi: f64, m: f64) -> f64 {
    let (s, c) = phi.sin_cos();
    if s == 0.0 {
        return 0.0;
    }
    s * carlson_rf(c * c, 1.0 - m * s * s, 1.0)
}

/// Incomplete elliptic integral of the first kind `F(φ | m)`.
///
/// Amplitudes outside `[−π/2, π/2]` are reduced with `F(φ + π) = F(φ) + 2K`.
pub fn incomplete_f(phi: f64, m: f64) -> Result<f64> {
    check_parameter(m)?;
    if !phi.is_finite() {
        return Err(domain("phi", phi, "finite reals"));
    }
    if phi.abs() <= FRAC_PI_2 {
        return Ok(f_principal(phi, m));
    }
    let turns = ((phi + FRAC_PI_2) / PI).floor();
    let reduced = phi - turns * PI;
    Ok(f_principal(reduced, m) + 2.0 * turns * complete_k(m)?)
}

/// Amplitude `am(u)` by descending Landen transformations seeded with the AGM.
fn landen_amplitude(u: f64, m: f64) -> f64 {
    let mut a = [0.0f64; MAX_DESCENT + 1];
    let mut c = [0.0f64; MAX_DESCENT + 1];
    a[0] = 1.0;
    c[0] = m.sqrt();
    let mut b = (1.0 - m).sqrt();
    let mut n = 0;
    while c[n] >= LANDEN_CUTOFF && n < MAX_DESCENT {
        let an = a[n];
        a[n + 1] = 0.5 * (an + b);
        c[n + 1] = c[n] * c[n] / (4.0 * a[n + 1]);
        b = (an * b).sqrt();
        n += 1;
    }
    let mut phi = (n as f64).exp2() * a[n] * u;
    for j in (1..=n).rev() {
        phi = 0.5 * (phi + (c[j] / a[j] * phi.sin()).asin());
    }
    phi
}

/// Jacobi amplitude `am(u | m)`.
pub fn amplitude(u: f64, m: f64) -> Result<f64> {
    check_parameter(m)?;
    if !u.is_finite() {
        return Err(domain("u", u, "finite reals"));
    }
    if m == 0.0 {
        return Ok(u);
    }
    let period = 4.0 * complete_k(m)?;
    let turns = (u / period).floor();
    let reduced = u - turns * period;
    Ok(landen_amplitude(reduced, m) + 2.0 * PI * turns)
}

/// Jacobi elliptic functions `sn`, `cn`, `dn` at `u` for parameter `m`.
///
/// `u` is reduced modulo `4K` before the Landen descent. `dn` is taken from
/// `dn² = cn² + k'²·sn²`, which has no cancellation anywhere on the period.
pub fn jacobi(u: f64, m: f64) -> Result<JacobiTriple> {
    check_parameter(m)?;
    if !u.is_finite() {
        return Err(domain("u", u, "finite reals"));
    }
    if m == 0.0 {
        let (sn, cn) = u.sin_cos();
        return Ok(JacobiTriple { sn, cn, dn: 1.0 });
    }
    let period = 4.0 * complete_k(m)?;
    let reduced = u.rem_euclid(period);
    let (sn, cn) = landen_amplitude(reduced, m).sin_cos();
    let dn = (cn * cn + (1.0 - m) * sn * sn).sqrt();
    Ok(JacobiTriple { sn, cn, dn })
}

/// Inverse of `sn` on the principal branch: `u = F(arcsin s | m)`, so `u ∈ [−K, K]`.
pub fn inverse_sn(s: f64, m: f64) -> Result<f64> {
    check_parameter(m)?;
    if !(s.abs() <= 1.0 + 1e-15) {
        return Err(domain("s", s, "[-1, 1]"));
    }
    incomplete_f(s.clamp(-1.0, 1.0).asin(), m)
}

/// Inverse of `dn` on `[0, K]`: the `u` with `dn(u | m) = x` for `k' ≤ x ≤ 1`.
///
/// The amplitude is `arcsin √((1−x²)/m)`, evaluated as
/// `atan2(√(1−x²), √(x²−k'²))` so it stays accurate next to `u = K`.
pub fn inverse_dn(x: f64, m: f64) -> Result<f64> {
    check_parameter(m)?;
    let kprime = (1.0 - m).sqrt();
    const SLACK: f64 = 1e-14;
    if !(x >= kprime - SLACK && x <= 1.0 + SLACK) {
        return Err(domain("x", x, "[k', 1]"));
    }
    let x = x.clamp(kprime, 1.0);
    if m == 0.0 {
        return Ok(0.0);
    }
    let sin_part = ((1.0 - x) * (1.0 + x)).sqrt();
    let cos_part = ((x - kprime) * (x + kprime)).sqrt();
    incomplete_f(sin_part.atan2(cos_part), m)
}

/// `dn(K/3 | m)`, the trisection value of the quarter period.
pub fn dn_third_of_k(m: f64) -> Result<f64> {
    let kk = complete_k(m)?;
    Ok(jacobi(kk / 3.0, m)?.dn)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn simpson_f(phi: f64, m: f64) -> f64 {
        // composite Simpson, fine enough for 1e-13 on smooth integrands
        let n = 20_000;
        let h = phi / n as f64;
        let f = |t: f64| 1.0 / (1.0 - m * t.sin().powi(2)).sqrt();
        let mut acc = f(0.0) + f(phi);
        for i in 1..n {
            let w = if i % 2 == 1 { 4.0 } else { 2.0 };
            acc += w * f(i as f64 * h);
        }
        acc * h / 3.0
    }

    #[test]
    fn k_at_zero_is_half_pi() {
        assert_eq!(complete_k(0.0).unwrap(), FRAC_PI_2);
    }

    #[test]
    fn k_rejects_out_of_domain() {
        assert!(complete_k(1.0).is_err());
        assert!(complete_k(-0.1).is_err());
        assert!(complete_k(f64::NAN).is_err());
    }

    #[test]
    fn k_complement_matches_direct() {
        for &m in &[0.1, 0.3, 0.5, 0.9] {
            let a = complete_k_complement(m).unwrap();
            let b = complete_k(1.0 - m).unwrap();
            assert!((a - b).abs() < 1e-14 * b);
        }
    }

    #[test]
    fn f_edge_values() {
        assert_eq!(incomplete_f(0.0, 0.3).unwrap(), 0.0);
        let kk = complete_k(0.5).unwrap();
        assert!((incomplete_f(FRAC_PI_2, 0.5).unwrap() - kk).abs() < 1e-13);
        assert!(incomplete_f(0.3, 1.0).is_err());
    }

    #[test]
    fn f_matches_quadrature() {
        let phi = PI / 6.0;
        let got = incomplete_f(phi, 0.5).unwrap();
        let want = simpson_f(phi, 0.5);
        assert!((got - want).abs() < 1e-13, "{got} vs {want}");
    }

    #[test]
    fn f_quasi_periodic() {
        let m = 0.4;
        let kk = complete_k(m).unwrap();
        let a = incomplete_f(0.7, m).unwrap();
        let b = incomplete_f(0.7 + PI, m).unwrap();
        let c = incomplete_f(0.7 - 2.0 * PI, m).unwrap();
        assert!((b - a - 2.0 * kk).abs() < 1e-13);
        assert!((c - a + 4.0 * kk).abs() < 1e-12);
    }

    #[test]
    fn jacobi_identity_and_quarter_period() {
        assert_eq!(jacobi(0.0, 0.5).unwrap(), JacobiTriple::IDENTITY);
        let kk = complete_k(0.5).unwrap();
        let t = jacobi(kk, 0.5).unwrap();
        assert!((t.sn - 1.0).abs() < 1e-15);
        assert!(t.cn.abs() < 1e-15);
        assert!((t.dn - 0.5f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn jacobi_periodic_and_odd() {
        let m = 0.7;
        let kk = complete_k(m).unwrap();
        let a = jacobi(0.9, m).unwrap();
        let b = jacobi(0.9 + 4.0 * kk, m).unwrap();
        let c = jacobi(-0.9, m).unwrap();
        assert!((a.sn - b.sn).abs() < 1e-11);
        assert!((a.sn + c.sn).abs() < 1e-15);
        assert!((a.cn - c.cn).abs() < 1e-15);
    }

    #[test]
    fn jacobi_m_zero_is_trigonometric() {
        let t = jacobi(1.1, 0.0).unwrap();
        assert_eq!(t.sn, 1.1f64.sin());
        assert_eq!(t.dn, 1.0);
    }

    #[test]
    fn inverse_sn_edges_and_round_trip() {
        assert_eq!(inverse_sn(0.0, 0.5).unwrap(), 0.0);
        let kk = complete_k(0.5).unwrap();
        assert!((inverse_sn(1.0, 0.5).unwrap() - kk).abs() < 1e-13);
        let u = inverse_sn(0.5, 0.5).unwrap();
        assert!((jacobi(u, 0.5).unwrap().sn - 0.5).abs() < 1e-12);
        assert!(inverse_sn(1.2, 0.5).is_err());
    }

    #[test]
    fn inverse_dn_edges_and_round_trip() {
        assert_eq!(inverse_dn(1.0, 0.5).unwrap(), 0.0);
        let kk = complete_k(0.5).unwrap();
        assert!((inverse_dn(0.5f64.sqrt(), 0.5).unwrap() - kk).abs() < 1e-13);
        let u = inverse_dn(0.9, 0.5).unwrap();
        assert!((jacobi(u, 0.5).unwrap().dn - 0.9).abs() < 1e-12);
        assert!(inverse_dn(0.5, 0.5).is_err());
        assert!(inverse_dn(1.01, 0.5).is_err());
    }

    #[test]
    fn elliptic_point_consistency() {
        let m = 0.3;
        let p = EllipticPoint::new(1.3, m).unwrap();
        let kk = complete_k(m).unwrap();
        assert!((p.z - PI * 1.3 / (2.0 * kk)).abs() < 1e-12);
        assert!((p.amplitude.sin() - jacobi(1.3, m).unwrap().sn).abs() < 1e-14);
        let far = EllipticPoint::new(1.3 + 4.0 * kk, m).unwrap();
        assert!((far.amplitude - p.amplitude - 2.0 * PI).abs() < 1e-12);
    }

    #[test]
    fn modulus_invariants() {
        let md = Modulus::from_k(0.6).unwrap();
        assert!((md.kprime() - 0.8).abs() < 1e-15);
        assert!((md.m() - 0.36).abs() < 1e-15);
        assert!(Modulus::from_k(1.0).is_err());
        assert!(Modulus::from_k_kprime(0.6, 0.7).is_err());
        assert!(Modulus::from_m(0.0).is_err());
    }

    #[test]
    fn dn_third_monotone_in_m() {
        let mut prev = 1.0;
        for i in 1..100 {
            let v = dn_third_of_k(i as f64 / 100.0).unwrap();
            assert!(v < prev);
            prev = v;
        }
    }
}
