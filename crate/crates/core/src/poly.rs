//! Low-degree polynomial roots over the complex numbers, Newton polishing,
//! and bracketing root isolation for real functions on an interval.
//!
//! Coefficient slices are ordered constant term first.

use num_complex::Complex64;

pub type C64 = Complex64;

/// Horner evaluation.
pub fn eval(coeffs: &[C64], z: C64) -> C64 {
    coeffs.iter().rev().fold(C64::new(0.0, 0.0), |acc, &c| acc * z + c)
}

/// Value and first derivative.
pub fn eval_with_derivative(coeffs: &[C64], z: C64) -> (C64, C64) {
    let zero = C64::new(0.0, 0.0);
    coeffs.iter().rev().fold((zero, zero), |(p, dp), &c| (p * z + c, dp * z + p))
}

/// `Σ |cᵢ| |z|ⁱ`, the natural scale for a backward-error residual at `z`.
pub fn magnitude_scale(coeffs: &[C64], z: C64) -> f64 {
    let r = z.norm();
    coeffs.iter().rev().fold(0.0, |acc, c| acc * r + c.norm())
}

/// `|p(z)| / Σ |cᵢ||z|ⁱ`; falls back to `|p(z)|` when the scale vanishes.
pub fn normalized_residual(coeffs: &[C64], z: C64) -> f64 {
    let value = eval(coeffs, z).norm();
    let scale = magnitude_scale(coeffs, z);
    if scale > 0.0 {
        value / scale
    } else {
        value
    }
}

/// Synthetic division by `(z − root)`: quotient and remainder.
pub fn deflate(coeffs: &[C64], root: C64) -> (Vec<C64>, C64) {
    let n = coeffs.len();
    if n < 2 {
        return (Vec::new(), coeffs.first().copied().unwrap_or_default());
    }
    let mut quotient = vec![C64::new(0.0, 0.0); n - 1];
    let mut carry = coeffs[n - 1];
    for i in (0..n - 1).rev() {
        quotient[i] = carry;
        carry = coeffs[i] + carry * root;
    }
    (quotient, carry)
}

fn solve_linear(c0: C64, c1: C64) -> C64 {
    -c0 / c1
}

/// Roots of `c0 + c1 z + c2 z²` with the cancellation-free form.
pub fn solve_quadratic(c0: C64, c1: C64, c2: C64) -> [C64; 2] {
    let disc = (c1 * c1 - 4.0 * c2 * c0).sqrt();
    // pick the sign that avoids cancellation in −c1 ∓ disc
    let s = if (c1.conj() * disc).re >= 0.0 { disc } else { -disc };
    let t = -0.5 * (c1 + s);
    if t.norm() == 0.0 {
        return [C64::new(0.0, 0.0); 2];
    }
    [t / c2, c0 / t]
}

/// Roots of a cubic by Cardano's formula in complex arithmetic.
pub fn solve_cubic(c: [C64; 4]) -> [C64; 3] {
    let a = c[2] / c[3];
    let b = c[1] / c[3];
    let d = c[0] / c[3];
    // z = t − a/3 gives t³ + p t + q = 0
    let p = b - a * a / 3.0;
    let q = 2.0 * a * a * a / 27.0 - a * b / 3.0 + d;
    let shift = -a / 3.0;
    let root = (q * q / 4.0 + p * p * p / 27.0).sqrt();
    let w1 = -q / 2.0 + root;
    let w2 = -q / 2.0 - root;
    let w = if w1.norm() >= w2.norm() { w1 } else { w2 };
    let omega = C64::new(-0.5, 3f64.sqrt() / 2.0);
    if w.norm() == 0.0 {
        return [C64::new(shift.re, shift.im); 3];
    }
    let s = w.cbrt();
    let mut out = [C64::new(0.0, 0.0); 3];
    let mut rot = C64::new(1.0, 0.0);
    for slot in out.iter_mut() {
        let si = s * rot;
        *slot = si - p / (3.0 * si) + shift;
        rot *= omega;
    }
    out
}

/// Roots of a quartic by Ferrari's method through the resolvent cubic.
pub fn solve_quartic(c: [C64; 5]) -> [C64; 4] {
    let a = c[3] / c[4];
    let b = c[2] / c[4];
    let cc = c[1] / c[4];
    let d = c[0] / c[4];
    // z = y − a/4 gives y⁴ + p y² + q y + r = 0
    let p = b - 3.0 * a * a / 8.0;
    let q = a * a * a / 8.0 - a * b / 2.0 + cc;
    let r = -3.0 * a * a * a * a / 256.0 + a * a * b / 16.0 - a * cc / 4.0 + d;
    let shift = -a / 4.0;
    let scale = 1.0 + p.norm() + r.norm().sqrt();
    let ys: [C64; 4] = if q.norm() <= 1e-14 * scale * scale.sqrt() {
        let [z1, z2] = solve_quadratic(r, p, C64::new(1.0, 0.0));
        let (s1, s2) = (z1.sqrt(), z2.sqrt());
        [s1, -s1, s2, -s2]
    } else {
        // 8m³ + 8p m² + (2p² − 8r) m − q² = 0
        let resolvent = solve_cubic([-q * q, 2.0 * p * p - 8.0 * r, 8.0 * p, C64::new(8.0, 0.0)]);
        let m = resolvent.iter().copied().max_by(|x, y| x.norm().total_cmp(&y.norm())).unwrap_or_default();
        let s = (2.0 * m).sqrt();
        let half = p / 2.0 + m;
        let skew = q / (2.0 * s);
        let one = C64::new(1.0, 0.0);
        let [y1, y2] = solve_quadratic(half + skew, -s, one);
        let [y3, y4] = solve_quadratic(half - skew, s, one);
        [y1, y2, y3, y4]
    };
    ys.map(|y| y + shift)
}

/// All roots of a polynomial of degree at most four.
///
/// Leading coefficients below `1e-15` of the largest coefficient are dropped
/// and the degree reduced accordingly.
pub fn roots_up_to_quartic(coeffs: &[C64]) -> Vec<C64> {
    let biggest = coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);
    let mut n = coeffs.len();
    while n > 0 && coeffs[n - 1].norm() <= 1e-15 * biggest {
        n -= 1;
    }
    let c = &coeffs[..n];
    match n {
        0 | 1 => Vec::new(),
        2 => vec![solve_linear(c[0], c[1])],
        3 => solve_quadratic(c[0], c[1], c[2]).to_vec(),
        4 => solve_cubic([c[0], c[1], c[2], c[3]]).to_vec(),
        5 => solve_quartic([c[0], c[1], c[2], c[3], c[4]]).to_vec(),
        _ => panic!("roots_up_to_quartic called with degree {}", n - 1),
    }
}

/// Up to `steps` Newton iterations on `coeffs`, keeping a step only when it
/// lowers `|p(z)|`.
pub fn polish_newton(coeffs: &[C64], mut z: C64, steps: usize) -> C64 {
    let mut best = eval(coeffs, z).norm();
    for _ in 0..steps {
        if best == 0.0 {
            break;
        }
        let (p, dp) = eval_with_derivative(coeffs, z);
        if dp.norm() == 0.0 {
            break;
        }
        let next = z - p / dp;
        let val = eval(coeffs, next).norm();
        if !(val < best) {
            break;
        }
        z = next;
        best = val;
    }
    z
}

/// Grid-and-bisect root isolation for a continuous real function.
#[derive(Debug, Clone, Copy)]
pub struct RootScan {
    /// Number of grid intervals.
    pub grid: usize,
    /// Bisection stops when the bracket is narrower than this.
    pub width: f64,
    /// Grid points (including the end points) where `|f| ≤ zero_tol` count as roots.
    pub zero_tol: f64,
}

impl Default for RootScan {
    fn default() -> Self {
        RootScan { grid: 1024, width: 1e-14, zero_tol: 0.0 }
    }
}

impl RootScan {
    pub fn with_grid(mut self, grid: usize) -> Self {
        self.grid = grid;
        self
    }

    pub fn with_width(mut self, width: f64) -> Self {
        self.width = width;
        self
    }

    pub fn with_zero_tol(mut self, zero_tol: f64) -> Self {
        self.zero_tol = zero_tol;
        self
    }

    /// Roots of `f` on `[lo, hi]`, in increasing order. Intervals where `f`
    /// is not finite at an end point are skipped.
    pub fn run<F: Fn(f64) -> f64>(&self, f: F, lo: f64, hi: f64) -> Vec<f64> {
        let mut roots: Vec<f64> = Vec::new();
        if !(hi > lo) {
            if hi == lo && f(lo).abs() <= self.zero_tol {
                roots.push(lo);
            }
            return roots;
        }
        let step = (hi - lo) / self.grid as f64;
        let at = |i: usize| if i == self.grid { hi } else { lo + step * i as f64 };
        let mut prev_x = lo;
        let mut prev_f = f(lo);
        if prev_f.abs() <= self.zero_tol {
            roots.push(lo);
        }
        for i in 1..=self.grid {
            let x = at(i);
            let fx = f(x);
            if fx.abs() <= self.zero_tol {
                roots.push(x);
            } else if prev_f.is_finite()
                && fx.is_finite()
                && prev_f.abs() > self.zero_tol
                && prev_f.signum() != fx.signum()
            {
                roots.push(self.bisect(&f, prev_x, prev_f, x));
            }
            prev_x = x;
            prev_f = fx;
        }
        roots
    }

    fn bisect<F: Fn(f64) -> f64>(&self, f: &F, mut a: f64, mut fa: f64, mut b: f64) -> f64 {
        for _ in 0..200 {
            if (b - a).abs() <= self.width {
                break;
            }
            let mid = 0.5 * (a + b);
            if mid <= a || mid >= b {
                break;
            }
            let fm = f(mid);
            if fm == 0.0 {
                return mid;
            }
            if fm.signum() == fa.signum() {
                a = mid;
                fa = fm;
            } else {
                b = mid;
            }
        }
        0.5 * (a + b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> C64 {
        C64::new(re, 0.0)
    }

    fn contains(roots: &[C64], z: C64, tol: f64) -> bool {
        roots.iter().any(|r| (r - z).norm() < tol)
    }

    #[test]
    fn quadratic_without_cancellation() {
        let [a, b] = solve_quadratic(c(1.0), c(-1e8), c(1.0));
        let small = if a.norm() < b.norm() { a } else { b };
        assert!((small.re - 1e-8).abs() < 1e-22);
    }

    #[test]
    fn cubic_known_roots() {
        // (z−1)(z−2)(z+3) = z³ − 7z + 6
        let r = solve_cubic([c(6.0), c(-7.0), c(0.0), c(1.0)]);
        for z in [1.0, 2.0, -3.0] {
            assert!(contains(&r, c(z), 1e-12));
        }
    }

    #[test]
    fn quartic_known_roots() {
        // z⁴ − 1
        let r = solve_quartic([c(-1.0), c(0.0), c(0.0), c(0.0), c(1.0)]);
        for z in [c(1.0), c(-1.0), C64::new(0.0, 1.0), C64::new(0.0, -1.0)] {
            assert!(contains(&r, z, 1e-12));
        }
        // (z−1)(z−2)(z−3)(z−4) = z⁴ − 10z³ + 35z² − 50z + 24
        let r = solve_quartic([c(24.0), c(-50.0), c(35.0), c(-10.0), c(1.0)]);
        for z in 1..=4 {
            assert!(contains(&r, c(z as f64), 1e-9));
        }
    }

    #[test]
    fn deflation_remainder_is_value() {
        let p = [c(24.0), c(-50.0), c(35.0), c(-10.0), c(1.0)];
        let (q, rem) = deflate(&p, c(5.0));
        assert_eq!(rem, eval(&p, c(5.0)));
        assert_eq!(q.len(), 4);
        let (_, rem) = deflate(&p, c(2.0));
        assert!(rem.norm() < 1e-12);
    }

    #[test]
    fn degree_drops_with_zero_leading() {
        let r = roots_up_to_quartic(&[c(-4.0), c(0.0), c(1.0), c(0.0), c(0.0)]);
        assert_eq!(r.len(), 2);
        assert!(contains(&r, c(2.0), 1e-14));
    }

    #[test]
    fn newton_improves() {
        let p = [c(-2.0), c(0.0), c(1.0)];
        let z = polish_newton(&p, c(1.4), 5);
        assert!((z.re - 2f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn scan_finds_all_sign_changes() {
        let roots = RootScan::default().run(|x| (x - 0.25) * (x - 0.5) * (x - 0.75), 0.0, 1.0);
        assert_eq!(roots.len(), 3);
        for (r, want) in roots.iter().zip([0.25, 0.5, 0.75]) {
            assert!((r - want).abs() < 1e-13);
        }
    }

    #[test]
    fn scan_endpoint_zero() {
        let roots = RootScan::default().with_zero_tol(1e-15).run(|x| 1.0 - x, 0.0, 1.0);
        assert_eq!(roots, vec![1.0]);
    }
}
