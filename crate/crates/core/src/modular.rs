//! Singular moduli: the `k_r` with `K(1−k²)/K(k²) = √r`.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;

use crate::elliptic::{complete_k, complete_k_complement, Modulus};
use crate::error::{Error, Result};
use crate::recognize::{recognize, AlgebraicCandidate, BigReal};

const BISECTION_CAP: usize = 200;
const LOWER_M: f64 = 1e-16;

/// Positive rational `num/den` in lowest terms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Rational {
    num: u64,
    den: u64,
}

impl Rational {
    pub fn new(num: u64, den: u64) -> Result<Self> {
        if num == 0 || den == 0 {
            return Err(Error::Domain { name: "r", value: num as f64 / den as f64, domain: "positive rationals" });
        }
        let g = num.gcd(&den);
        Ok(Rational { num: num / g, den: den / g })
    }

    pub fn integer(n: u64) -> Result<Self> {
        Self::new(n, 1)
    }

    pub fn num(&self) -> u64 {
        self.num
    }

    pub fn den(&self) -> u64 {
        self.den
    }

    pub fn recip(&self) -> Self {
        Rational { num: self.den, den: self.num }
    }

    pub fn to_f64(&self) -> f64 {
        self.num as f64 / self.den as f64
    }

    /// `√r`, from the exact ratio.
    pub fn sqrt(&self) -> f64 {
        (self.num as f64).sqrt() / (self.den as f64).sqrt()
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

impl FromStr for Rational {
    type Err = Error;

    /// Accepts `n` or `n/d` with positive integers.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("not a positive rational: {s:?}"));
        let (n, d) = s.trim().split_once('/').unwrap_or((s.trim(), "1"));
        let n = n.trim().parse::<u64>().map_err(|_| bad())?;
        let d = d.trim().parse::<u64>().map_err(|_| bad())?;
        Rational::new(n, d).map_err(|_| bad())
    }
}

/// `k_r` together with its nome and the defining-equation residual.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SingularModulus {
    pub r: Rational,
    pub modulus: Modulus,
    /// `e^(−π√r)`.
    pub q: f64,
    /// `|K(1−m)/K(m) − √r|`.
    pub residual: f64,
}

impl SingularModulus {
    pub fn k(&self) -> f64 {
        self.modulus.k()
    }
}

/// `K(1−m)/K(m)`, strictly decreasing on `(0, 1)`.
pub fn period_ratio(m: f64) -> Result<f64> {
    Ok(complete_k_complement(m)? / complete_k(m)?)
}

/// Bisection on `m ∈ (0, 1/2]` for `r ≥ 1`; smaller `r` use `k_r = k′_{1/r}`.
pub fn singular_modulus(r: Rational) -> Result<SingularModulus> {
    if r.num < r.den {
        let dual = singular_modulus(r.recip())?;
        let modulus = Modulus::from_k_kprime(dual.modulus.kprime(), dual.modulus.k())?;
        // K(1−m)/K(m) with 1 − m = k′² taken from the dual, not formed from m
        let mc = dual.modulus.m();
        let residual = (complete_k(mc)? / complete_k_complement(mc)? - r.sqrt()).abs();
        return Ok(SingularModulus { r, modulus, q: (-std::f64::consts::PI * r.sqrt()).exp(), residual });
    }
    let target = r.sqrt();
    let (mut lo, mut hi) = (LOWER_M, 0.5);
    let mut iterations = 0;
    // relative width keeps digits when k_r is small
    while hi - lo >= 1e-15 * hi {
        iterations += 1;
        if iterations > BISECTION_CAP {
            return Err(Error::Convergence { what: "singular modulus bisection", iterations: BISECTION_CAP });
        }
        let mid = 0.5 * (lo + hi);
        if period_ratio(mid)? > target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let m = 0.5 * (lo + hi);
    let modulus = if r.num == r.den {
        Modulus::from_k_kprime(std::f64::consts::FRAC_1_SQRT_2, std::f64::consts::FRAC_1_SQRT_2)?
    } else {
        Modulus::from_m(m)?
    };
    Ok(SingularModulus {
        r,
        modulus,
        q: (-std::f64::consts::PI * target).exp(),
        residual: (period_ratio(modulus.m())? - target).abs(),
    })
}

/// `(θ₂, θ₃, θ₄)` at nome `q`, summed until terms drop below `2^(−prec−40)`.
fn thetas(q: &BigReal, prec: u32) -> (BigReal, BigReal, BigReal) {
    let limit = -(i64::from(prec) + 40);
    let tiny = |v: &BigReal| v.log2_floor().is_none_or(|l| l < limit);
    let one = BigReal::from_int(1, prec);
    let q2 = q * q;
    // θ₂/(2q^¼) = Σ q^(n(n+1)); ratio between terms q^(2n)
    let mut s2 = one.clone();
    let mut term = one.clone();
    let mut ratio = one.clone();
    loop {
        ratio = &ratio * &q2;
        term = &term * &ratio;
        if tiny(&term) {
            break;
        }
        s2 = &s2 + &term;
    }
    // Σ q^(n²) with ratio q^(2n−1)
    let mut s3 = BigReal::zero(prec);
    let mut s4 = BigReal::zero(prec);
    let mut term = one.clone();
    let mut ratio = q / &q2;
    let mut n = 0u64;
    loop {
        n += 1;
        ratio = &ratio * &q2;
        term = &term * &ratio;
        if tiny(&term) {
            break;
        }
        s3 = &s3 + &term;
        s4 = if n % 2 == 1 { &s4 - &term } else { &s4 + &term };
    }
    let two = BigReal::from_int(2, prec);
    let quarter = q.nth_root(4).expect("nome is positive");
    let theta2 = &(&two * &quarter) * &s2;
    let theta3 = &one + &(&two * &s3);
    let theta4 = &one + &(&two * &s4);
    (theta2, theta3, theta4)
}

/// `k_r` at `prec` bits from theta series at `q = e^(−π√r)`.
pub fn singular_modulus_extended(r: Rational, prec: u32) -> BigReal {
    let work = prec + 32;
    let big_r = if r.num >= r.den { r } else { r.recip() };
    let sqrt_r =
        (BigReal::from_int(big_r.num, work) / BigReal::from_int(big_r.den, work)).sqrt().expect("r is positive");
    let q = (-(&BigReal::pi(work) * &sqrt_r)).exp();
    let (t2, t3, t4) = thetas(&q, work);
    let t3sq = &t3 * &t3;
    let k = if r.num >= r.den { &t2 * &t2 / &t3sq } else { &t4 * &t4 / &t3sq };
    k.with_precision(prec)
}

/// Default bounds for [`modulus_is_algebraic_note`].
pub const NOTE_PRECISION: u32 = 768;
pub const NOTE_DEGREE: usize = 8;
pub const NOTE_HEIGHT: i64 = 1_000_000_000_000;

/// Integer polynomial candidate for `k_r`, or `None` within the bounds.
pub fn modulus_is_algebraic_note(
    r: Rational,
    precision: u32,
    max_degree: usize,
    max_height: i64,
) -> Result<Option<AlgebraicCandidate>> {
    recognize(&singular_modulus_extended(r, precision), max_degree, max_height)
}
