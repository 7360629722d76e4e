//! The quintic family `e + h·d·Y + c·Y² + h·b·Y³ + a·Y⁴ + h·Y⁵ = 0`, its
//! elliptic root, modulus recovery from `(x, h)`, deflation to the remaining
//! four roots, and the modulus problems built on the multiple-angle formulas.
//!
//! With `x = dn(u)`, `h = sn(3u)` and `k` the modulus, `Y = k` is a root.
//! This is exact: the triplication denominator `D` and
//! `M = d + b·k² + k⁴` satisfy `D + M = 0` identically.

use crate::elliptic::{complete_k, incomplete_f, inverse_dn, jacobi, Modulus};
use crate::error::{domain, Error, Result};
use crate::multiangle::{dn_4u_from_dn, sd_3u, triplication_from_dn, triplication_parts};
use crate::poly::{self, RootScan, C64};

/// Upper end of modulus scans; `K(m)` is still moderate there.
const M_CEILING: f64 = 1.0 - 1e-12;
/// Certification threshold for the elliptic root found by `recover_modulus`.
pub const RECOVERY_TOLERANCE: f64 = 1e-10;
/// Certification threshold for the forward elliptic root.
pub const FORWARD_TOLERANCE: f64 = 1e-11;
/// Round-trip tolerance for the modulus problems.
pub const ROUND_TRIP_TOLERANCE: f64 = 1e-9;
/// A known root with a larger residual is refused by deflation.
const DEFLATION_REFUSE: f64 = 1e-8;
/// Above this the deflation is flagged ill-conditioned.
const DEFLATION_WARN: f64 = 1e-10;
const POLISH_STEPS: usize = 5;

/// Coefficients of the family at a fixed `x`; `h` is supplied per evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuinticFamily {
    x: C64,
    e: C64,
    d: C64,
    c: C64,
    b: C64,
    a: C64,
}

impl QuinticFamily {
    /// Coefficients with the principal `√(1−x²)`.
    pub fn new(x: impl Into<C64>) -> Self {
        let x = x.into();
        let one = C64::new(1.0, 0.0);
        Self::with_complement(x, (one - x) * (one + x))
    }

    /// Coefficients from `x` and a separately known `w = 1 − x²`.
    ///
    /// Near `x = 1` the difference `1 − x²` formed from `x` has few correct
    /// digits; with `x = dn(u)` the exact value is `k²·sn²(u)`.
    pub fn with_complement(x: impl Into<C64>, w: impl Into<C64>) -> Self {
        let x = x.into();
        let w = w.into();
        // written in w; the x-expansions lose digits near x = 1
        let s = w.sqrt();
        let w2 = w * w;
        let w3 = w2 * w;
        let w4 = w2 * w2;
        QuinticFamily {
            x,
            e: s * w4,
            d: 4.0 * w3 - 3.0 * w4,
            c: s * (4.0 * w - 6.0 * w2),
            b: 4.0 * w3 - 6.0 * w2,
            a: s * (4.0 * w - 3.0),
        }
    }

    pub fn x(&self) -> C64 {
        self.x
    }
    pub fn e(&self) -> C64 {
        self.e
    }
    pub fn d(&self) -> C64 {
        self.d
    }
    pub fn c(&self) -> C64 {
        self.c
    }
    pub fn b(&self) -> C64 {
        self.b
    }
    pub fn a(&self) -> C64 {
        self.a
    }

    /// `[e, d, c, b, a]`.
    pub fn coefficients(&self) -> [C64; 5] {
        [self.e, self.d, self.c, self.b, self.a]
    }

    /// Polynomial coefficients in `Y`, constant term first, for a given `h`.
    pub fn polynomial(&self, h: impl Into<C64>) -> [C64; 6] {
        let h = h.into();
        [self.e, h * self.d, self.c, h * self.b, self.a, h]
    }

    /// `max(|e|, |d|, |c|, |b|, |a|, 1)`.
    pub fn coefficient_scale(&self) -> f64 {
        self.coefficients().iter().map(|v| v.norm()).fold(1.0, f64::max)
    }

    /// True at `x = ±1`, where every coefficient vanishes.
    pub fn is_degenerate(&self) -> bool {
        self.coefficients().iter().all(|v| v.norm() == 0.0)
    }
}

/// Same as [`QuinticFamily::new`].
pub fn build_family(x: impl Into<C64>) -> QuinticFamily {
    QuinticFamily::new(x)
}

/// The coefficients evaluated from their expanded polynomials in `x`.
pub fn expanded_coefficients(x: impl Into<C64>) -> [C64; 5] {
    let x = x.into();
    let one = C64::new(1.0, 0.0);
    let s = ((one - x) * (one + x)).sqrt();
    let x2 = x * x;
    let x4 = x2 * x2;
    let x6 = x4 * x2;
    let x8 = x4 * x4;
    [
        s * (1.0 - 4.0 * x2 + 6.0 * x4 - 4.0 * x6 + x8),
        1.0 - 6.0 * x4 + 8.0 * x6 - 3.0 * x8,
        s * (-2.0 + 8.0 * x2 - 6.0 * x4),
        -2.0 + 6.0 * x4 - 4.0 * x6,
        (1.0 - 4.0 * x2) * s,
    ]
}

/// `e + h·d·Y + c·Y² + h·b·Y³ + a·Y⁴ + h·Y⁵`.
pub fn evaluate_quintic(f: &QuinticFamily, h: impl Into<C64>, y: impl Into<C64>) -> C64 {
    let h = h.into();
    let y = y.into();
    ((((h * y + f.a) * y + h * f.b) * y + f.c) * y + h * f.d) * y + f.e
}

/// Backward-error residual `|p(Y)| / Σ|cᵢ||Y|ⁱ` at a candidate root.
pub fn normalized_residual(f: &QuinticFamily, h: impl Into<C64>, y: impl Into<C64>) -> f64 {
    poly::normalized_residual(&f.polynomial(h), y.into())
}

/// How a certified root was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolveMethod {
    ForwardIdentity,
    InverseBisection,
    Deflation,
}

impl SolveMethod {
    pub fn tag(&self) -> &'static str {
        match self {
            SolveMethod::ForwardIdentity => "forward-identity",
            SolveMethod::InverseBisection => "inverse-bisection",
            SolveMethod::Deflation => "deflation",
        }
    }
}

/// A certified elliptic root and the remaining four roots.
#[derive(Debug, Clone, PartialEq)]
pub struct SolveCertificate {
    pub x: f64,
    pub h: f64,
    pub root_y: C64,
    pub residual: f64,
    pub recovered_m0: Option<f64>,
    pub co_roots: Vec<C64>,
    pub co_root_residuals: Vec<f64>,
    pub method: SolveMethod,
    pub ill_conditioned: bool,
}

impl SolveCertificate {
    /// All five roots, the elliptic root first.
    pub fn roots(&self) -> Vec<C64> {
        std::iter::once(self.root_y).chain(self.co_roots.iter().copied()).collect()
    }

    pub fn max_residual(&self) -> f64 {
        self.co_root_residuals.iter().copied().fold(self.residual, f64::max)
    }
}

/// Output of [`deflate_and_solve`].
#[derive(Debug, Clone, PartialEq)]
pub struct Deflation {
    pub co_roots: Vec<C64>,
    pub residuals: Vec<f64>,
    pub known_residual: f64,
    /// `h` vanished and the quartic `e + c·Y² + a·Y⁴` was solved directly;
    /// `co_roots` then holds its four roots.
    pub degree_dropped: bool,
    pub ill_conditioned: bool,
}

/// Deflates a quintic (constant term first) by a known root and solves the
/// quotient quartic. Every root is polished on the original polynomial.
pub fn deflate_coefficients(coeffs: &[C64; 6], known_root: C64) -> Result<Deflation> {
    let scale = coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);
    let polish = |z: C64| poly::polish_newton(coeffs, z, POLISH_STEPS);
    let residual = |z: C64| poly::normalized_residual(coeffs, z);
    if coeffs[5].norm() <= 1e-14 * scale {
        let quartic = &coeffs[..5];
        let roots: Vec<C64> = poly::roots_up_to_quartic(quartic)
            .into_iter()
            .map(|z| poly::polish_newton(quartic, z, POLISH_STEPS))
            .collect();
        let residuals = roots.iter().map(|&z| poly::normalized_residual(quartic, z)).collect();
        return Ok(Deflation {
            co_roots: roots,
            residuals,
            known_residual: residual(known_root),
            degree_dropped: true,
            ill_conditioned: false,
        });
    }
    let known_residual = residual(known_root);
    if !(known_residual < DEFLATION_REFUSE) {
        return Err(Error::NotARoot { value: known_root.re, residual: known_residual });
    }
    let (quotient, _) = poly::deflate(coeffs, known_root);
    let co_roots: Vec<C64> = poly::roots_up_to_quartic(&quotient).into_iter().map(polish).collect();
    let residuals = co_roots.iter().map(|&z| residual(z)).collect();
    Ok(Deflation {
        co_roots,
        residuals,
        known_residual,
        degree_dropped: false,
        ill_conditioned: known_residual > DEFLATION_WARN,
    })
}

/// Deflates the family at `h` by `known_root`.
pub fn deflate_and_solve(f: &QuinticFamily, h: impl Into<C64>, known_root: impl Into<C64>) -> Result<Deflation> {
    deflate_coefficients(&f.polynomial(h), known_root.into())
}

fn certificate(
    family: &QuinticFamily,
    h: f64,
    m: f64,
    method: SolveMethod,
    tolerance: f64,
) -> Result<SolveCertificate> {
    let family = *family;
    let y = C64::new(m.sqrt(), 0.0);
    let residual = normalized_residual(&family, h, y);
    if !(residual < tolerance) {
        return Err(Error::NotARoot { value: y.re, residual });
    }
    let deflation = deflate_and_solve(&family, h, y)?;
    Ok(SolveCertificate {
        x: family.x().re,
        h,
        root_y: y,
        residual,
        recovered_m0: (method == SolveMethod::InverseBisection).then_some(m),
        co_roots: deflation.co_roots,
        co_root_residuals: deflation.residuals,
        method,
        ill_conditioned: deflation.ill_conditioned,
    })
}

/// Sets `x = dn(u)`, `h = sn(3u)`, certifies `Y = √m` and deflates.
pub fn elliptic_root_forward(u: f64, m: f64) -> Result<SolveCertificate> {
    if !(m > 0.0 && m < 1.0) {
        return Err(domain("m", m, "(0, 1)"));
    }
    let kk = complete_k(m)?;
    if !(u > 0.0 && u < kk) {
        return Err(domain("u", u, "(0, K)"));
    }
    let t = jacobi(u, m)?;
    let h = jacobi(3.0 * u, m)?.sn;
    let family = QuinticFamily::with_complement(t.dn, m * t.sn * t.sn);
    certificate(&family, h, m, SolveMethod::ForwardIdentity, FORWARD_TOLERANCE)
}

/// Result of a modulus search that can also be degenerate.
#[derive(Debug, Clone, PartialEq)]
pub enum Candidates<T> {
    Found(Vec<T>),
    /// The data fix no modulus (the `u = 0` point).
    Underdetermined,
}

impl<T> Candidates<T> {
    pub fn found(&self) -> &[T] {
        match self {
            Candidates::Found(v) => v,
            Candidates::Underdetermined => &[],
        }
    }

    pub fn is_underdetermined(&self) -> bool {
        matches!(self, Candidates::Underdetermined)
    }
}

/// Which preimage of `sn(3u) = h` the candidate uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SnBranch {
    /// `3u = F(arcsin h, m)`.
    Principal,
    /// `3u = 2K − F(arcsin h, m)`.
    Reflected,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModulusCandidate {
    pub m: f64,
    pub u: f64,
    pub branch: SnBranch,
    /// Residual of the quintic at `Y = √m`.
    pub residual: f64,
}

fn three_u(branch: SnBranch, h: f64, m: f64) -> Result<f64> {
    let v = incomplete_f(h.asin(), m)?;
    Ok(match branch {
        SnBranch::Principal => v,
        SnBranch::Reflected => 2.0 * complete_k(m)? - v,
    })
}

fn push_distinct(list: &mut Vec<f64>, value: f64, gap: f64) {
    if list.iter().all(|v| (v - value).abs() > gap) {
        list.push(value);
    }
}

/// Every `m₀` with `dn(u, m₀) = x` and `sn(3u, m₀) = h` for some `u`, found
/// by scanning `dn(3u/3, m) − x` over `m ∈ [1−x², 1)` on both preimages of
/// `sn(3u) = h`. Each candidate is certified on the quintic at `Y = √m₀`.
pub fn recover_modulus(x: f64, h: f64) -> Result<Candidates<ModulusCandidate>> {
    if !(h.abs() <= 1.0) {
        return Err(domain("h", h, "[-1, 1]"));
    }
    if !(x > 0.0 && x <= 1.0) {
        return Err(domain("x", x, "(0, 1]"));
    }
    if x == 1.0 {
        return if h.abs() <= 1e-15 {
            Ok(Candidates::Underdetermined)
        } else {
            Err(Error::NoAdmissibleRoot { what: "modulus recovery (x = 1 forces h = 0)" })
        };
    }
    let lo = (1.0 - x) * (1.0 + x);
    let family = build_family(x);
    let scan = RootScan::default();
    let mut found: Vec<ModulusCandidate> = Vec::new();
    for branch in [SnBranch::Principal, SnBranch::Reflected] {
        let g = |m: f64| match three_u(branch, h, m).and_then(|v| jacobi(v / 3.0, m)) {
            Ok(t) => t.dn - x,
            Err(_) => f64::NAN,
        };
        for m in scan.run(g, lo, M_CEILING) {
            let residual = normalized_residual(&family, h, m.sqrt());
            if residual < RECOVERY_TOLERANCE && found.iter().all(|c| (c.m - m).abs() > 1e-10) {
                found.push(ModulusCandidate { m, u: three_u(branch, h, m)? / 3.0, branch, residual });
            }
        }
    }
    if found.is_empty() {
        return Err(Error::NoAdmissibleRoot { what: "modulus recovery" });
    }
    found.sort_by(|a, b| a.m.total_cmp(&b.m));
    Ok(Candidates::Found(found))
}

/// Recovers the modulus from `(x, h)` and returns one certificate per candidate.
pub fn solve(x: f64, h: f64) -> Result<Candidates<SolveCertificate>> {
    match recover_modulus(x, h)? {
        Candidates::Underdetermined => Ok(Candidates::Underdetermined),
        Candidates::Found(list) => list
            .iter()
            .map(|c| {
                let family = build_family(x);
                certificate(&family, h, c.m, SolveMethod::InverseBisection, RECOVERY_TOLERANCE)
            })
            .collect::<Result<Vec<_>>>()
            .map(Candidates::Found),
    }
}

/// `dn(K/3)` recovered from the family at `h = 1`, `Y = k`.
#[derive(Debug, Clone, PartialEq)]
pub struct TrisectionRoot {
    /// The candidate closest to `direct`.
    pub x: f64,
    /// Every certified real root in `[k′, 1]`.
    pub candidates: Vec<f64>,
    /// `dn(K/3, k²)` from the elliptic functions.
    pub direct: f64,
}

/// Solves the family at `h = 1`, `Y = k` for `x ∈ [k′, 1]`.
///
/// At `h = 1` the value at `Y = k` is `k·D·(sn(3u) − 1)`, which only touches
/// zero, so its real roots are taken from the `cn(3u)` numerator instead: a
/// quartic in `w = 1 − x²`. Each root is checked against the family.
pub fn dn_third_from_quintic(modulus: Modulus) -> Result<TrisectionRoot> {
    let k = modulus.k();
    let m = modulus.m();
    if !(k > 0.0) {
        return Err(domain("k", k, "(0, 1)"));
    }
    let quartic = [m * m, -4.0 * m, 6.0 * m, -4.0 * m, 1.0].map(|v| C64::new(v, 0.0));
    let mut candidates: Vec<f64> = Vec::new();
    for z in poly::roots_up_to_quartic(&quartic) {
        let z = poly::polish_newton(&quartic, z, 8);
        if z.im.abs() > 1e-8 * z.norm().max(m) {
            continue;
        }
        let w = z.re;
        if !(w >= -1e-15 && w <= m * (1.0 + 1e-12)) {
            continue;
        }
        let x = (1.0 - w.clamp(0.0, m)).sqrt();
        let family = build_family(x);
        if normalized_residual(&family, 1.0, k) < RECOVERY_TOLERANCE {
            push_distinct(&mut candidates, x, 1e-12);
        }
    }
    let direct = crate::elliptic::dn_third_of_k(m)?;
    let x = candidates
        .iter()
        .copied()
        .min_by(|a, b| (a - direct).abs().total_cmp(&(b - direct).abs()))
        .ok_or(Error::NoAdmissibleRoot { what: "dn(K/3) from the quintic" })?;
    candidates.sort_by(f64::total_cmp);
    Ok(TrisectionRoot { x, candidates, direct })
}

/// A value of `dn(3u)` compatible with a known ratio `dn(u)/dn(3u)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RatioCandidate {
    pub dn_3u: f64,
    pub dn_u: f64,
}

/// Given `λ = dn(u)/dn(3u)` and `k`, every `y = dn(3u)` solving
/// `dn(3u)(λy) = y` on the real range.
pub fn dn_3u_from_ratio(lambda: f64, modulus: Modulus) -> Result<Vec<RatioCandidate>> {
    if !(lambda > 0.0 && lambda.is_finite()) {
        return Err(domain("lambda", lambda, "(0, inf)"));
    }
    let k = modulus.k();
    let kp = modulus.kprime();
    // y = −λy·N_dn/D, cleared of the denominator
    let g = |y: f64| {
        let p = triplication_parts(lambda * y, k);
        p.denominator + lambda * p.n_dn
    };
    let lo = kp.max(kp / lambda);
    let hi = 1f64.min(1.0 / lambda);
    let mut out: Vec<RatioCandidate> = Vec::new();
    for y in RootScan::default().with_zero_tol(1e-15).run(g, lo, hi) {
        let x = lambda * y;
        let Ok(t) = triplication_from_dn(x, modulus) else { continue };
        if (t.dn - y).abs() < ROUND_TRIP_TOLERANCE && out.iter().all(|c| (c.dn_3u - y).abs() > 1e-12) {
            out.push(RatioCandidate { dn_3u: y, dn_u: x });
        }
    }
    if out.is_empty() {
        return Err(Error::NoAdmissibleRoot { what: "dn(3u) from dn(u)/dn(3u)" });
    }
    Ok(out)
}

fn dn_multiple(x: f64, n: f64, m: f64) -> Result<f64> {
    Ok(jacobi(n * inverse_dn(x, m)?, m)?.dn)
}

fn check_unit(name: &'static str, v: f64) -> Result<f64> {
    if v > 0.0 && v <= 1.0 {
        Ok(v)
    } else {
        Err(domain(name, v, "(0, 1]"))
    }
}

/// Moduli `k` with `dn(u) = x1` and `dn(3u) = x3`.
///
/// `x1·N_dn + x3·D = 0` is quadratic in `m = k²`.
pub fn modulus_from_dn_and_dn_3u(x1: f64, x3: f64) -> Result<Candidates<f64>> {
    check_unit("x1", x1)?;
    check_unit("x3", x3)?;
    if x1 == 1.0 && x3 == 1.0 {
        return Ok(Candidates::Underdetermined);
    }
    let w = (1.0 - x1) * (1.0 + x1);
    let w2 = w * w;
    let w3 = w2 * w;
    let w4 = w2 * w2;
    let qa = x1 * (1.0 - 4.0 * w) - x3;
    let qb = 6.0 * w2 * x1 + x3 * (6.0 * w2 - 4.0 * w3);
    let qc = x1 * (w4 - 4.0 * w3) + x3 * (3.0 * w4 - 4.0 * w3);
    let roots = poly::roots_up_to_quartic(&[qc, qb, qa].map(|v| C64::new(v, 0.0)));
    let mut out: Vec<f64> = Vec::new();
    for z in roots {
        let m = z.re;
        if z.im.abs() > 1e-12 || !(m > 0.0 && m < 1.0) || m < w * (1.0 - 1e-14) {
            continue;
        }
        let m = m.max(w);
        if let Ok(v) = dn_multiple(x1, 3.0, m) {
            if (v - x3).abs() < ROUND_TRIP_TOLERANCE {
                push_distinct(&mut out, m.sqrt(), 1e-12);
            }
        }
    }
    finish_moduli(out, "modulus from dn(u), dn(3u)")
}

fn finish_moduli(mut out: Vec<f64>, what: &'static str) -> Result<Candidates<f64>> {
    if out.is_empty() {
        return Err(Error::NoAdmissibleRoot { what });
    }
    out.sort_by(f64::total_cmp);
    Ok(Candidates::Found(out))
}

/// Moduli `k` with `dn(u) = x1` and `dn(4u) = x4`, by scanning `m`.
pub fn modulus_from_dn_and_dn_4u(x1: f64, x4: f64) -> Result<Candidates<f64>> {
    check_unit("x1", x1)?;
    check_unit("x4", x4)?;
    if x1 == 1.0 {
        return if x4 == 1.0 {
            Ok(Candidates::Underdetermined)
        } else {
            Err(Error::NoAdmissibleRoot { what: "modulus from dn(u), dn(4u)" })
        };
    }
    let lo = (1.0 - x1) * (1.0 + x1);
    let g = |m: f64| match Modulus::from_m(m).and_then(|md| dn_4u_from_dn(x1, md)) {
        Ok(v) => v - x4,
        Err(_) => f64::NAN,
    };
    let mut out: Vec<f64> = Vec::new();
    for m in RootScan::default().run(g, lo, M_CEILING) {
        if let Ok(v) = dn_multiple(x1, 4.0, m) {
            if (v - x4).abs() < ROUND_TRIP_TOLERANCE {
                push_distinct(&mut out, m.sqrt(), 1e-12);
            }
        }
    }
    finish_moduli(out, "modulus from dn(u), dn(4u)")
}

/// `1 − 9x² + 24x⁴ − 16x⁶`.
pub fn sd_condition_target(x: f64) -> f64 {
    let x2 = x * x;
    1.0 + x2 * (-9.0 + x2 * (24.0 - 16.0 * x2))
}

/// Moduli `k` with `sd(3u) = 1 − 9x² + 24x⁴ − 16x⁶` where `x = dn(u)`.
/// Most `x` admit none.
pub fn moduli_with_sd_3u_condition(x: f64) -> Result<Candidates<f64>> {
    check_unit("x", x)?;
    if x == 1.0 {
        return Ok(Candidates::Underdetermined);
    }
    let target = sd_condition_target(x);
    let g = |k: f64| match Modulus::from_k(k).and_then(|md| sd_3u(x, md)) {
        Ok(v) => v - target,
        Err(_) => f64::NAN,
    };
    let lo = ((1.0 - x) * (1.0 + x)).sqrt().max(1e-8);
    let mut out: Vec<f64> = Vec::new();
    for k in RootScan::default().run(g, lo, M_CEILING.sqrt()) {
        let m = k * k;
        let direct = inverse_dn(x, m).and_then(|u| jacobi(3.0 * u, m));
        if let Ok(t) = direct {
            if (t.sn / t.dn - target).abs() < ROUND_TRIP_TOLERANCE {
                push_distinct(&mut out, k, 1e-12);
            }
        }
    }
    finish_moduli(out, "modulus from the sd(3u) condition")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multiangle::sn_3u_closed_form;
    use proptest::prelude::*;

    fn md(m: f64) -> Modulus {
        Modulus::from_m(m).unwrap()
    }

    fn close(a: C64, b: C64, tol: f64) -> bool {
        (a - b).norm() < tol
    }

    #[test]
    fn coefficients_at_zero_and_one() {
        let f = build_family(0.0);
        let want = [1.0, 1.0, -2.0, -2.0, 1.0];
        for (c, w) in f.coefficients().iter().zip(want) {
            assert!(close(*c, C64::new(w, 0.0), 1e-15));
        }
        let f = build_family(1.0);
        assert!(f.is_degenerate());
    }

    #[test]
    fn coefficients_at_one_half() {
        let f = build_family(0.5);
        let r3 = 3f64.sqrt();
        let want = [81.0 * r3 / 512.0, 189.0 / 256.0, -3.0 * r3 / 16.0, -27.0 / 16.0, 0.0];
        for (c, w) in f.coefficients().iter().zip(want) {
            assert!(close(*c, C64::new(w, 0.0), 1e-15), "{c} vs {w}");
        }
    }

    #[test]
    fn evaluation_special_cases() {
        let f = build_family(0.3);
        assert_eq!(evaluate_quintic(&f, 0.7, 0.0), f.e());
        let y = C64::new(0.4, 0.2);
        let even = f.e() + f.c() * y * y + f.a() * y.powi(4);
        assert!(close(evaluate_quintic(&f, 0.0, y), even, 1e-15));
    }

    #[test]
    fn complex_x_beyond_one() {
        let f = build_family(1.5);
        let ex = expanded_coefficients(1.5);
        for (a, b) in f.coefficients().iter().zip(ex) {
            assert!(close(*a, b, 1e-12));
        }
        assert!(f.e().im.abs() > 0.0);
    }

    #[test]
    fn forward_roots() {
        let cert = elliptic_root_forward(0.5, 0.5).unwrap();
        assert!((cert.root_y.re - 0.5f64.sqrt()).abs() < 1e-15);
        assert!(cert.residual < 1e-11);
        assert_eq!(cert.co_roots.len(), 4);
        assert!(cert.max_residual() < 1e-10);
        assert_eq!(cert.method, SolveMethod::ForwardIdentity);

        let cert = elliptic_root_forward(0.3, 0.09).unwrap();
        assert!((cert.root_y.re - 0.3).abs() < 1e-15);
        assert!(cert.max_residual() < 1e-10);

        let cert = elliptic_root_forward(1e-6, 0.5).unwrap();
        assert!(cert.residual < 1e-11);
    }

    #[test]
    fn forward_domain() {
        assert!(elliptic_root_forward(0.5, 1.0).is_err());
        assert!(elliptic_root_forward(0.0, 0.5).is_err());
        assert!(elliptic_root_forward(2.0, 0.5).is_err());
    }

    #[test]
    fn deflation_of_constructed_quintic() {
        let c = [2.0, -1.0, 0.0, 0.0, -2.0, 1.0].map(|v| C64::new(v, 0.0));
        let d = deflate_coefficients(&c, C64::new(2.0, 0.0)).unwrap();
        for want in [C64::new(1.0, 0.0), C64::new(-1.0, 0.0), C64::new(0.0, 1.0), C64::new(0.0, -1.0)] {
            assert!(d.co_roots.iter().any(|z| close(*z, want, 1e-12)), "{want}");
        }
        assert!(!d.degree_dropped);
        assert!(deflate_coefficients(&c, C64::new(3.0, 0.0)).is_err());
    }

    #[test]
    fn deflation_random_family() {
        let h = sn_3u_closed_form(0.6, 0.4).unwrap();
        let f = build_family(0.6);
        let d = deflate_and_solve(&f, h, 0.4).unwrap();
        assert!(d.residuals.iter().all(|r| *r < 1e-10), "{:?}", d.residuals);
        let product = d.co_roots.iter().fold(C64::new(0.4, 0.0), |p, z| p * z);
        let want = -f.e() / h;
        assert!((product - want).norm() < 1e-9 * want.norm());
    }

    #[test]
    fn deflation_degree_drop() {
        let f = build_family(0.3);
        let d = deflate_and_solve(&f, 0.0, 0.0).unwrap();
        assert!(d.degree_dropped);
        assert_eq!(d.co_roots.len(), 4);
        assert!(d.residuals.iter().all(|r| *r < 1e-12));
    }

    #[test]
    fn recovery_round_trips() {
        for (u, m) in [(0.4, 0.36), (0.7, 0.81)] {
            let x = jacobi(u, m).unwrap().dn;
            let h = jacobi(3.0 * u, m).unwrap().sn;
            let c = recover_modulus(x, h).unwrap();
            assert!(c.found().iter().any(|c| (c.m - m).abs() < 1e-10), "{c:?}");
        }
        assert!(recover_modulus(1.0, 0.0).unwrap().is_underdetermined());
        assert!(recover_modulus(0.5, 1.5).is_err());
    }

    #[test]
    fn reflected_branch_is_used_past_k_over_three() {
        let m = 0.5;
        let kk = complete_k(m).unwrap();
        let u = 0.6 * kk;
        let x = jacobi(u, m).unwrap().dn;
        let h = jacobi(3.0 * u, m).unwrap().sn;
        let c = recover_modulus(x, h).unwrap();
        let hit = c.found().iter().find(|c| (c.m - m).abs() < 1e-10).unwrap();
        assert_eq!(hit.branch, SnBranch::Reflected);
    }

    #[test]
    fn solve_produces_certificates() {
        let (u, m) = (0.4, 0.36);
        let x = jacobi(u, m).unwrap().dn;
        let h = jacobi(3.0 * u, m).unwrap().sn;
        let certs = solve(x, h).unwrap();
        let c = certs.found().iter().find(|c| (c.recovered_m0.unwrap() - m).abs() < 1e-10).unwrap();
        assert_eq!(c.method, SolveMethod::InverseBisection);
        assert!(c.max_residual() < 1e-10);
    }

    #[test]
    fn dn_third_from_quintic_values() {
        let r1 = ((1.0 + (2.0 * 3f64.sqrt() - 3.0).sqrt()) / 2.0).sqrt();
        let t = dn_third_from_quintic(Modulus::from_k(0.5f64.sqrt()).unwrap()).unwrap();
        assert!((t.x - r1).abs() < 1e-10, "{} vs {}", t.x, r1);
        let t = dn_third_from_quintic(Modulus::from_k(0.6).unwrap()).unwrap();
        assert!((t.x - t.direct).abs() < 1e-10);
        let t = dn_third_from_quintic(Modulus::from_k(0.01).unwrap()).unwrap();
        assert!((t.x - 1.0).abs() < 1e-4 && (t.x - t.direct).abs() < 1e-12);
    }

    #[test]
    fn dn_3u_from_ratio_round_trips() {
        for (u, m) in [(0.4, 0.5), (0.2, 0.3)] {
            let d1 = jacobi(u, m).unwrap().dn;
            let d3 = jacobi(3.0 * u, m).unwrap().dn;
            let c = dn_3u_from_ratio(d1 / d3, md(m)).unwrap();
            assert!(c.iter().any(|c| (c.dn_3u - d3).abs() < 1e-9), "{c:?}");
        }
        let c = dn_3u_from_ratio(1.0, md(0.4)).unwrap();
        assert!(c.iter().any(|c| (c.dn_3u - 1.0).abs() < 1e-12));
    }

    #[test]
    fn modulus_from_dn_and_dn_3u_round_trips() {
        for (u, m) in [(0.4, 0.49), (0.5, 0.25)] {
            let x1 = jacobi(u, m).unwrap().dn;
            let x3 = jacobi(3.0 * u, m).unwrap().dn;
            let c = modulus_from_dn_and_dn_3u(x1, x3).unwrap();
            assert!(c.found().iter().any(|k| (k - m.sqrt()).abs() < 1e-9), "{c:?}");
        }
        assert!(modulus_from_dn_and_dn_3u(1.0, 1.0).unwrap().is_underdetermined());
    }

    #[test]
    fn modulus_from_dn_and_dn_4u_round_trips() {
        for (u, m) in [(0.3, 0.5), (0.25, 0.64)] {
            let x1 = jacobi(u, m).unwrap().dn;
            let x4 = jacobi(4.0 * u, m).unwrap().dn;
            let c = modulus_from_dn_and_dn_4u(x1, x4).unwrap();
            assert!(c.found().iter().any(|k| (k - m.sqrt()).abs() < 1e-9), "{c:?}");
        }
        assert!(modulus_from_dn_and_dn_4u(1.0, 1.0).unwrap().is_underdetermined());
    }

    #[test]
    fn sd_3u_condition_scan() {
        assert!(moduli_with_sd_3u_condition(1.0).unwrap().is_underdetermined());
        assert_eq!(sd_condition_target(1.0), 0.0);
        for x in [0.95, 0.9] {
            match moduli_with_sd_3u_condition(x) {
                Ok(c) => {
                    for &k in c.found() {
                        let m = k * k;
                        let t = jacobi(3.0 * inverse_dn(x, m).unwrap(), m).unwrap();
                        assert!((t.sn / t.dn - sd_condition_target(x)).abs() < 1e-9);
                    }
                }
                Err(Error::NoAdmissibleRoot { .. }) => {}
                Err(e) => panic!("{e}"),
            }
        }
    }

    proptest! {
        #[test]
        fn expanded_and_factored_coefficients_agree(x in -1.0f64..1.0) {
            let f = build_family(x);
            for (a, b) in f.coefficients().iter().zip(expanded_coefficients(x)) {
                prop_assert!((a - b).norm() < 1e-13);
            }
        }

        #[test]
        fn elliptic_root_is_exact(x in 0.001f64..0.999, k in 0.001f64..0.999) {
            let f = build_family(x);
            let h = sn_3u_closed_form(x, k).unwrap();
            let v = evaluate_quintic(&f, h, k).norm();
            prop_assert!(v < 1e-12 * f.coefficient_scale(), "value {v:e}");
        }

        #[test]
        fn triplication_denominator_cancels(x in 0.0f64..1.0, k in 0.0f64..1.0) {
            let f = build_family(x);
            let p = triplication_parts(x, k);
            let m = f.d().re + f.b().re * k * k + k.powi(4);
            prop_assert!((p.denominator + m).abs() < 1e-14);
        }

        #[test]
        fn forward_then_recover(t in 0.1f64..0.9, m in 0.05f64..0.95) {
            let u = t * complete_k(m).unwrap();
            let cert = elliptic_root_forward(u, m).unwrap();
            prop_assert!(cert.max_residual() < 1e-10);
            let c = recover_modulus(cert.x, cert.h).unwrap();
            prop_assert!(c.found().iter().any(|c| (c.m - m).abs() < 1e-10), "{:?}", c);
        }
    }
}
