//! Integral LLL reduction with exact Gram-Schmidt data (Cohen, Algorithm 2.6.7).

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};

fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum::<BigInt>()
}

/// `round(n / d)` for `d > 0`.
fn round_div(n: &BigInt, d: &BigInt) -> BigInt {
    let two = BigInt::from(2);
    (n * &two + d).div_floor(&(d * &two))
}

struct State {
    b: Vec<Vec<BigInt>>,
    // 1-based: d[0] = 1, d[i] for i = 1..=n
    d: Vec<BigInt>,
    // lambda[k][j] for j < k, 1-based
    lambda: Vec<Vec<BigInt>>,
}

impl State {
    fn redi(&mut self, k: usize, l: usize) {
        if (&self.lambda[k][l] * BigInt::from(2)).abs() <= self.d[l] {
            return;
        }
        let q = round_div(&self.lambda[k][l], &self.d[l]);
        let bl = self.b[l - 1].clone();
        for (x, y) in self.b[k - 1].iter_mut().zip(&bl) {
            *x -= &q * y;
        }
        self.lambda[k][l] = &self.lambda[k][l] - &q * &self.d[l];
        for i in 1..l {
            let t = &q * &self.lambda[l][i];
            self.lambda[k][i] -= t;
        }
    }

    fn swapi(&mut self, k: usize, k_max: usize) {
        self.b.swap(k - 1, k - 2);
        for j in 1..k - 1 {
            let t = self.lambda[k][j].clone();
            self.lambda[k][j] = std::mem::replace(&mut self.lambda[k - 1][j], t);
        }
        let lam = self.lambda[k][k - 1].clone();
        let big_b = (&self.d[k - 2] * &self.d[k] + &lam * &lam) / &self.d[k - 1];
        for i in k + 1..=k_max {
            let t = self.lambda[i][k].clone();
            self.lambda[i][k] = (&self.d[k] * &self.lambda[i][k - 1] - &lam * &t) / &self.d[k - 1];
            self.lambda[i][k - 1] = (&big_b * &t + &lam * &self.lambda[i][k]) / &self.d[k];
        }
        self.d[k - 1] = big_b;
    }
}

/// LLL-reduces linearly independent integer rows with `δ = 3/4`.
pub fn lll_reduce(rows: Vec<Vec<BigInt>>) -> Result<Vec<Vec<BigInt>>> {
    let n = rows.len();
    if n <= 1 {
        return Ok(rows);
    }
    let mut s = State { d: vec![BigInt::zero(); n + 1], lambda: vec![vec![BigInt::zero(); n + 1]; n + 1], b: rows };
    s.d[0] = BigInt::from(1);
    s.d[1] = dot(&s.b[0], &s.b[0]);
    let mut k = 2;
    let mut k_max = 1;
    while k <= n {
        if k > k_max {
            k_max = k;
            for j in 1..=k {
                let mut u = dot(&s.b[k - 1], &s.b[j - 1]);
                for i in 1..j {
                    u = (&s.d[i] * &u - &s.lambda[k][i] * &s.lambda[j][i]) / &s.d[i - 1];
                }
                if j < k {
                    s.lambda[k][j] = u;
                } else {
                    if u.is_zero() {
                        return Err(Error::Domain {
                            name: "lattice basis",
                            value: 0.0,
                            domain: "linearly independent rows",
                        });
                    }
                    s.d[k] = u;
                }
            }
        }
        loop {
            s.redi(k, k - 1);
            let lhs = BigInt::from(4) * &s.d[k] * &s.d[k - 2];
            let rhs = BigInt::from(3) * &s.d[k - 1] * &s.d[k - 1]
                - BigInt::from(4) * &s.lambda[k][k - 1] * &s.lambda[k][k - 1];
            if lhs < rhs {
                s.swapi(k, k_max);
                k = (k - 1).max(2);
            } else {
                for l in (1..k - 1).rev() {
                    s.redi(k, l);
                }
                k += 1;
                break;
            }
        }
    }
    Ok(s.b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rows(v: &[&[i64]]) -> Vec<Vec<BigInt>> {
        v.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
    }

    fn norm2(r: &[BigInt]) -> BigInt {
        dot(r, r)
    }

    #[test]
    fn reduces_textbook_basis() {
        let out = lll_reduce(rows(&[&[1, 1, 1], &[-1, 0, 2], &[3, 5, 6]])).unwrap();
        assert_eq!(out, rows(&[&[0, 1, 0], &[1, 0, 1], &[-1, 0, 2]]));
    }

    #[test]
    fn first_vector_is_short() {
        let out = lll_reduce(rows(&[&[1, 0, 0, 1000], &[0, 1, 0, 1414], &[0, 0, 1, 1732]])).unwrap();
        let first = norm2(&out[0]);
        assert!(first < BigInt::from(100));
    }

    #[test]
    fn dependent_rows_are_rejected() {
        assert!(lll_reduce(rows(&[&[1, 2], &[2, 4]])).is_err());
    }
}
