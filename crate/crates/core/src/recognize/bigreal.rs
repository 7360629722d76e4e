//! Binary floating point with an arbitrary-size mantissa.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{Float, One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub const DEFAULT_PRECISION: u32 = 256;

/// `mant · 2^exp`, with `|mant|` holding exactly `prec` bits unless zero.
#[derive(Clone, PartialEq, Eq)]
pub struct BigReal {
    mant: BigInt,
    exp: i64,
    prec: u32,
}

fn bit_len(v: &BigInt) -> i64 {
    v.bits() as i64
}

/// `v / 2^shift` rounded half away from zero.
fn shift_round(v: &BigInt, shift: u64) -> BigInt {
    if shift == 0 {
        return v.clone();
    }
    let mag = v.magnitude();
    let rounded = (mag + (num_bigint::BigUint::one() << (shift - 1))) >> shift;
    BigInt::from_biguint(if v.sign() == Sign::Minus { Sign::Minus } else { Sign::Plus }, rounded)
}

impl BigReal {
    fn normalized(mant: BigInt, exp: i64, prec: u32) -> Self {
        if mant.is_zero() {
            return BigReal::zero(prec);
        }
        let p = prec as i64;
        let bits = bit_len(&mant);
        let (mut mant, mut exp) = if bits > p {
            let s = (bits - p) as u64;
            (shift_round(&mant, s), exp + s as i64)
        } else {
            ((mant << (p - bits) as usize), exp - (p - bits))
        };
        if bit_len(&mant) > p {
            mant = shift_round(&mant, 1);
            exp += 1;
        }
        BigReal { mant, exp, prec }
    }

    pub fn zero(prec: u32) -> Self {
        BigReal { mant: BigInt::zero(), exp: 0, prec }
    }

    pub fn from_int(v: impl Into<BigInt>, prec: u32) -> Self {
        Self::normalized(v.into(), 0, prec)
    }

    /// `num / den`.
    pub fn from_ratio(num: i64, den: i64, prec: u32) -> Self {
        Self::from_int(num, prec) / Self::from_int(den, prec)
    }

    /// Exact conversion; `None` for NaN and infinities.
    pub fn from_f64(v: f64, prec: u32) -> Option<Self> {
        if !v.is_finite() {
            return None;
        }
        let (m, e, s) = v.integer_decode();
        let mant = BigInt::from(m) * i64::from(s);
        Some(Self::normalized(mant, i64::from(e), prec))
    }

    pub fn precision(&self) -> u32 {
        self.prec
    }

    /// The same value re-rounded to `prec` bits.
    pub fn with_precision(&self, prec: u32) -> Self {
        Self::normalized(self.mant.clone(), self.exp, prec)
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.mant.is_negative()
    }

    pub fn abs(&self) -> Self {
        BigReal { mant: self.mant.abs(), ..self.clone() }
    }

    /// `⌊log₂|x|⌋`; `None` for zero.
    pub fn log2_floor(&self) -> Option<i64> {
        (!self.is_zero()).then(|| self.exp + bit_len(&self.mant) - 1)
    }

    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let bits = bit_len(&self.mant);
        let shift = (bits - 64).max(0);
        let top = (&self.mant >> shift as usize).to_f64().unwrap_or(f64::NAN);
        let e = self.exp + shift;
        // two steps keep the intermediate power of two representable
        let half = (e / 2).clamp(-1100, 1100) as i32;
        let rest = (e - e / 2).clamp(-1100, 1100) as i32;
        top * 2f64.powi(half) * 2f64.powi(rest)
    }

    fn working(&self, other: &Self) -> u32 {
        self.prec.max(other.prec)
    }

    fn sum(&self, other: &Self, negate: bool) -> Self {
        let prec = self.working(other);
        let other_mant = if negate { -&other.mant } else { other.mant.clone() };
        if other.is_zero() {
            return self.with_precision(prec);
        }
        if self.is_zero() {
            return Self::normalized(other_mant, other.exp, prec);
        }
        let top_a = self.exp + bit_len(&self.mant);
        let top_b = other.exp + bit_len(&other.mant);
        let gap = prec as i64 + 2;
        if top_a - top_b > gap {
            return self.with_precision(prec);
        }
        if top_b - top_a > gap {
            return Self::normalized(other_mant, other.exp, prec);
        }
        let e = self.exp.min(other.exp);
        let a = &self.mant << (self.exp - e) as usize;
        let b = other_mant << (other.exp - e) as usize;
        Self::normalized(a + b, e, prec)
    }

    fn product(&self, other: &Self) -> Self {
        Self::normalized(&self.mant * &other.mant, self.exp + other.exp, self.working(other))
    }

    /// Quotient; division by zero yields an error.
    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        if other.is_zero() {
            return Err(Error::SingularDenominator { what: "extended-precision division", magnitude: 0.0 });
        }
        let prec = self.working(other);
        let s = (prec as i64 + 2 + bit_len(&other.mant) - bit_len(&self.mant)).max(0);
        let q = (&self.mant << s as usize) / &other.mant;
        Ok(Self::normalized(q, self.exp - s - other.exp, prec))
    }

    /// Real `n`-th root; negative input is allowed only for odd `n`.
    pub fn nth_root(&self, n: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::Domain { name: "root index", value: 0.0, domain: "n >= 1" });
        }
        if self.is_zero() || n == 1 {
            return Ok(self.clone());
        }
        if self.is_negative() {
            if n.is_multiple_of(2) {
                return Err(Error::Domain {
                    name: "radicand",
                    value: self.to_f64(),
                    domain: "[0, inf) for even roots",
                });
            }
            return Ok(-self.abs().nth_root(n)?);
        }
        let n64 = i64::from(n);
        let target = n64 * (self.prec as i64 + 2);
        let mut t = (target - bit_len(&self.mant)).max(0);
        t += (self.exp - t).rem_euclid(n64);
        let scaled = &self.mant << t as usize;
        let root = scaled.magnitude().nth_root(n);
        Ok(Self::normalized(BigInt::from(root), (self.exp - t) / n64, self.prec))
    }

    pub fn sqrt(&self) -> Result<Self> {
        self.nth_root(2)
    }

    pub fn powi(&self, n: i64) -> Result<Self> {
        let mut base = self.clone();
        let mut acc = BigReal::from_int(1, self.prec);
        let mut e = n.unsigned_abs();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        if n < 0 {
            BigReal::from_int(1, self.prec).checked_div(&acc)
        } else {
            Ok(acc)
        }
    }

    /// `π` by Machin's formula in fixed point.
    pub fn pi(prec: u32) -> Self {
        let guard = 32;
        let bits = prec as usize + guard;
        let one = BigInt::one() << bits;
        // atan(1/x) · 2^bits
        let atan_inv = |x: i64| {
            let x2 = BigInt::from(x * x);
            let mut term = &one / x;
            let mut sum = term.clone();
            let mut n = 1i64;
            while !term.is_zero() {
                term /= &x2;
                let piece = &term / (2 * n + 1);
                if n % 2 == 1 {
                    sum -= piece;
                } else {
                    sum += piece;
                }
                n += 1;
            }
            sum
        };
        let v = atan_inv(5) * 16 - atan_inv(239) * 4;
        Self::normalized(v, -(bits as i64), prec)
    }

    /// `e^x` by argument halving and a Taylor series.
    pub fn exp(&self) -> Self {
        let prec = self.prec;
        if self.is_zero() {
            return BigReal::from_int(1, prec);
        }
        let top = self.log2_floor().unwrap_or(0);
        let halvings = (top + 8).max(0) as u32;
        let work = prec + 32 + halvings;
        let x = BigReal::normalized(self.mant.clone(), self.exp - i64::from(halvings), work);
        let one = BigReal::from_int(1, work);
        let mut sum = one.clone();
        let mut term = one;
        let limit = -(i64::from(work) + 4);
        let mut n = 1i64;
        loop {
            term = (&term * &x) / &BigReal::from_int(n, work);
            if term.log2_floor().is_none_or(|l| l < limit) {
                break;
            }
            sum = &sum + &term;
            n += 1;
        }
        for _ in 0..halvings {
            sum = &sum * &sum;
        }
        sum.with_precision(prec)
    }

    /// Nearest integer.
    pub fn round(&self) -> BigInt {
        if self.exp >= 0 {
            &self.mant << self.exp as usize
        } else {
            shift_round(&self.mant, (-self.exp) as u64)
        }
    }

    /// `self · 2^k`, exact.
    pub fn mul_pow2(&self, k: i64) -> Self {
        BigReal { exp: if self.is_zero() { 0 } else { self.exp + k }, ..self.clone() }
    }

    /// Parses decimal notation such as `-12.5e-3`.
    pub fn parse_decimal(text: &str, prec: u32) -> Result<Self> {
        let bad = || Error::Parse(format!("not a decimal number: {text:?}"));
        let t = text.trim();
        let (body, exp10) = match t.find(['e', 'E']) {
            Some(i) => (&t[..i], t[i + 1..].parse::<i64>().map_err(|_| bad())?),
            None => (t, 0),
        };
        let (negative, body) = match body.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, body.strip_prefix('+').unwrap_or(body)),
        };
        let (int_part, frac_part) = body.split_once('.').unwrap_or((body, ""));
        if int_part.is_empty() && frac_part.is_empty() {
            return Err(bad());
        }
        if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        let digits = format!("{int_part}{frac_part}");
        let mut n: BigInt = digits.parse().map_err(|_| bad())?;
        if negative {
            n = -n;
        }
        let e10 = exp10 - frac_part.len() as i64;
        let ten = BigInt::from(10);
        if e10 >= 0 {
            return Ok(Self::normalized(n * num_traits::pow(ten, e10 as usize), 0, prec));
        }
        let den = num_traits::pow(ten, (-e10) as usize);
        let s = (prec as i64 + 2 + bit_len(&den) - bit_len(&n)).max(0);
        let q = (n << s as usize).div_floor(&den);
        Ok(Self::normalized(q, -s, prec))
    }

    /// Significant decimal digits supported by the precision.
    pub fn decimal_digits(&self) -> usize {
        ((self.prec as f64) * std::f64::consts::LOG10_2).floor() as usize
    }

    /// Scientific notation with `digits` significant digits.
    pub fn to_scientific(&self, digits: usize) -> String {
        let digits = digits.max(1);
        if self.is_zero() {
            return format!("0.{}e0", "0".repeat(digits - 1));
        }
        let ten = BigInt::from(10);
        let l2 = self.log2_floor().unwrap_or(0) as f64;
        let mut e10 = (l2 * std::f64::consts::LOG10_2).floor() as i64;
        let abs = self.abs();
        let work = self.prec + 16 + (digits as f64 * 3.33) as u32;
        let scaled = |e10: i64| -> BigInt {
            let shift = digits as i64 - 1 - e10;
            let p = BigReal::from_int(num_traits::pow(ten.clone(), shift.unsigned_abs() as usize), work);
            let v = abs.with_precision(work);
            if shift >= 0 {
                (&v * &p).round()
            } else {
                (&v / &p).round()
            }
        };
        let lower = num_traits::pow(ten.clone(), digits - 1);
        let upper = &lower * &ten;
        let mut n = scaled(e10);
        for _ in 0..4 {
            if n >= upper {
                e10 += 1;
            } else if n < lower {
                e10 -= 1;
            } else {
                break;
            }
            n = scaled(e10);
        }
        if n >= upper {
            // rounding carried into a new digit
            n /= &ten;
            e10 += 1;
        }
        let s = n.to_string();
        let sign = if self.is_negative() { "-" } else { "" };
        if s.len() > 1 {
            format!("{sign}{}.{}e{e10}", &s[..1], &s[1..])
        } else {
            format!("{sign}{s}e{e10}")
        }
    }
}

impl fmt::Debug for BigReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BigReal({}, {} bits)", self.to_scientific(20), self.prec)
    }
}

impl fmt::Display for BigReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_scientific(self.decimal_digits()))
    }
}

impl PartialOrd for BigReal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        let d = self.sum(other, true);
        Some(match d.mant.sign() {
            Sign::Minus => Ordering::Less,
            Sign::NoSign => Ordering::Equal,
            Sign::Plus => Ordering::Greater,
        })
    }
}

impl Neg for BigReal {
    type Output = BigReal;
    fn neg(self) -> BigReal {
        BigReal { mant: -self.mant, ..self }
    }
}

impl Neg for &BigReal {
    type Output = BigReal;
    fn neg(self) -> BigReal {
        -self.clone()
    }
}

macro_rules! binary_op {
    ($trait:ident, $method:ident, |$a:ident, $b:ident| $body:expr) => {
        impl $trait<&BigReal> for &BigReal {
            type Output = BigReal;
            fn $method(self, rhs: &BigReal) -> BigReal {
                let ($a, $b) = (self, rhs);
                $body
            }
        }
        impl $trait<BigReal> for BigReal {
            type Output = BigReal;
            fn $method(self, rhs: BigReal) -> BigReal {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&BigReal> for BigReal {
            type Output = BigReal;
            fn $method(self, rhs: &BigReal) -> BigReal {
                (&self).$method(rhs)
            }
        }
    };
}

binary_op!(Add, add, |a, b| a.sum(b, false));
binary_op!(Sub, sub, |a, b| a.sum(b, true));
binary_op!(Mul, mul, |a, b| a.product(b));
// panics on a zero divisor, like integer division; see `checked_div`
binary_op!(Div, div, |a, b| a.checked_div(b).expect("division by zero"));

#[cfg(test)]
mod tests {
    use super::*;

    fn below(v: BigReal, bits: i64) -> bool {
        v.abs().log2_floor().is_none_or(|l| l < bits)
    }

    fn br(v: f64) -> BigReal {
        BigReal::from_f64(v, 256).unwrap()
    }

    #[test]
    fn normalization_keeps_precision_bits() {
        let v = BigReal::from_int(3, 64);
        assert_eq!(v.mant.bits(), 64);
        assert_eq!(v.to_f64(), 3.0);
        assert!(BigReal::zero(64).is_zero());
    }

    #[test]
    fn arithmetic_matches_binary64() {
        let xs = [0.1, -2.5, 3.0e10, 7.25e-8, 1.0 / 3.0];
        for &a in &xs {
            for &b in &xs {
                let (x, y) = (br(a), br(b));
                assert_eq!((&x + &y).to_f64(), a + b);
                assert_eq!((&x - &y).to_f64(), a - b);
                assert_eq!((&x * &y).to_f64(), a * b);
                assert_eq!((&x / &y).to_f64(), a / b);
            }
            if a > 0.0 {
                assert_eq!(br(a).sqrt().unwrap().to_f64(), a.sqrt());
            }
        }
    }

    #[test]
    fn roots_and_powers() {
        let two = BigReal::from_int(2, 256);
        let r = two.sqrt().unwrap();
        let err = (&(&r * &r) - &two).abs();
        assert!(err.log2_floor().unwrap() < -250);
        let c = BigReal::from_int(-27, 128).nth_root(3).unwrap();
        assert_eq!(c.to_f64(), -3.0);
        assert!(BigReal::from_int(-4, 64).sqrt().is_err());
        assert_eq!(two.powi(-3).unwrap().to_f64(), 0.125);
        assert_eq!(two.powi(10).unwrap().to_f64(), 1024.0);
    }

    #[test]
    fn constants() {
        let pi = BigReal::pi(256);
        let digits = "3.14159265358979323846264338327950288419716939937510582097494459230781640628620899";
        let want = BigReal::parse_decimal(digits, 256).unwrap();
        assert!(below(&pi - &want, -250));
        let e = BigReal::from_int(1, 256).exp();
        let want =
            BigReal::parse_decimal("2.71828182845904523536028747135266249775724709369995957496696762772407663", 256)
                .unwrap();
        assert!(below(&e - &want, -230));
        let small = BigReal::from_int(-20, 128).exp();
        assert!((small.to_f64() - (-20f64).exp()).abs() < 1e-23);
    }

    #[test]
    fn decimal_round_trip() {
        let v = BigReal::parse_decimal("-1.25e-3", 128).unwrap();
        assert_eq!(v.to_f64(), -0.00125);
        assert_eq!(v.to_scientific(3), "-1.25e-3");
        assert_eq!(BigReal::parse_decimal("9.999", 64).unwrap().to_scientific(2), "1.0e1");
        assert_eq!(BigReal::parse_decimal("42", 64).unwrap().to_f64(), 42.0);
        assert!(BigReal::parse_decimal("1.2.3", 64).is_err());
        assert!(BigReal::parse_decimal("abc", 64).is_err());
        let pi = BigReal::pi(200);
        let back = BigReal::parse_decimal(&pi.to_string(), 200).unwrap();
        assert!(below(&pi - &back, -190));
    }

    #[test]
    fn ordering_and_rounding() {
        assert!(br(1.0) < br(2.0));
        assert!(br(-1.0) < br(0.5));
        assert_eq!(br(2.5).round(), BigInt::from(3));
        assert_eq!(br(-2.5).round(), BigInt::from(-3));
        assert_eq!(br(1.0).mul_pow2(-3).to_f64(), 0.125);
    }
}
