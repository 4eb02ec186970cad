//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use std::cell::RefCell;
use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Exact value of a finite double.
pub fn exact(v: f64) -> BigRational {
    BigRational::from_float(v).expect("finite")
}

fn ln_bigint(n: &BigInt) -> f64 {
    let bits = n.bits();
    let shift = bits.saturating_sub(60);
    let top = (n >> shift).to_f64().unwrap();
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

/// Natural log of a positive rational, accurate to a few ulps in absolute terms.
pub fn ln_rational(r: &BigRational) -> f64 {
    assert!(r.is_positive());
    ln_bigint(r.numer()) - ln_bigint(r.denom())
}

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * i)
}

fn pow(base: &BigRational, e: usize) -> BigRational {
    num_traits::pow(base.clone(), e)
}

/// `2^k / k! * y * ((x+y)^k - y^k)`, computed exactly.
pub fn d1_exact(k: usize, x: &BigRational, y: &BigRational) -> BigRational {
    let two_k = BigRational::from_integer(BigInt::one() << k);
    let s = x + y;
    two_k / BigRational::from_integer(factorial(k)) * y * (pow(&s, k) - pow(y, k))
}

/// Exact `d_{n,k}` and `delta_n` tables, evaluated straight from the
/// defining sums without memo sharing or log scaling.
pub struct ExactBounds {
    x: BigRational,
    y: BigRational,
    cache: RefCell<HashMap<(usize, usize), BigRational>>,
}

impl ExactBounds {
    pub fn new(x: f64, y: f64) -> Self {
        ExactBounds {
            x: exact(x),
            y: exact(y),
            cache: RefCell::default(),
        }
    }

    pub fn d(&self, n: usize, k: usize) -> BigRational {
        assert!(n >= 1 && k >= n);
        if let Some(v) = self.cache.borrow().get(&(n, k)) {
            return v.clone();
        }
        let v = self.d_uncached(n, k);
        self.cache.borrow_mut().insert((n, k), v.clone());
        v
    }

    fn d_uncached(&self, n: usize, k: usize) -> BigRational {
        if n == 1 {
            return d1_exact(k, &self.x, &self.y);
        }
        let delta = self.delta(n);
        let mut acc = BigRational::zero();
        for j in 0..k / n {
            let c = pow(&(BigRational::from_integer(2.into()) * &delta), j)
                / BigRational::from_integer(factorial(j));
            acc += c * self.d(n - 1, k - n * j);
        }
        acc
    }

    pub fn delta(&self, n: usize) -> BigRational {
        assert!(n >= 2);
        if n == 2 {
            return &self.x * &self.y;
        }
        let row = ((n - 1) / 2).max(1);
        self.d(row, n - 1) / BigRational::from_integer(n.into())
    }
}

/// Every `(n+1)`-tuple with weighted sum `n`, filtered by the prefix rule,
/// found by exhaustive search over the box `0..=n` in each slot.
pub fn brute_force_index_set(n: usize) -> Vec<Vec<usize>> {
    let weight = |m: usize| m.max(1);
    let mut out = Vec::new();
    let mut cur = vec![0usize; n + 1];
    loop {
        let total: usize = cur.iter().enumerate().map(|(m, &i)| weight(m) * i).sum();
        if total == n {
            let ok = (0..n).all(|j| {
                let prefix: usize = cur[..=j]
                    .iter()
                    .enumerate()
                    .map(|(m, &i)| weight(m) * i)
                    .sum();
                prefix > j
            });
            if ok {
                out.push(cur.clone());
            }
        }
        // odometer increment
        let mut p = 0;
        loop {
            if p > n {
                out.sort();
                return out;
            }
            cur[p] += 1;
            if cur[p] * weight(p) <= n {
                break;
            }
            cur[p] = 0;
            p += 1;
        }
    }
}
