//! Double-double scalars (about 32 significant digits) and small dense
//! matrices over them, used by the numerical order test.

use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{FromPrimitive, ToPrimitive};

use crate::rational::ExactRational;

/// Unevaluated sum `hi + lo` with `|lo| <= ulp(hi) / 2`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct DoubleDouble {
    pub hi: f64,
    pub lo: f64,
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

impl DoubleDouble {
    pub const ZERO: DoubleDouble = DoubleDouble { hi: 0.0, lo: 0.0 };
    pub const ONE: DoubleDouble = DoubleDouble { hi: 1.0, lo: 0.0 };

    pub fn from_f64(v: f64) -> Self {
        DoubleDouble { hi: v, lo: 0.0 }
    }

    fn from_bigint(n: &BigInt) -> Self {
        let hi = n.to_f64().unwrap_or(f64::NAN);
        let rest = n - BigInt::from_f64(hi).unwrap_or_default();
        let lo = rest.to_f64().unwrap_or(0.0);
        let (hi, lo) = quick_two_sum(hi, lo);
        DoubleDouble { hi, lo }
    }

    /// Nearest double-double to an exact rational (for moderate sizes).
    pub fn from_rational(r: &ExactRational) -> Self {
        Self::from_bigint(r.numer()) / Self::from_bigint(r.denom())
    }

    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    pub fn abs(self) -> Self {
        if self.hi < 0.0 {
            -self
        } else {
            self
        }
    }

    /// Multiplication by a double; exact when `s` is a power of two.
    pub fn scale(self, s: f64) -> Self {
        let (p, e) = two_prod(self.hi, s);
        let (hi, lo) = quick_two_sum(p, e + self.lo * s);
        DoubleDouble { hi, lo }
    }
}

impl Div for DoubleDouble {
    type Output = DoubleDouble;
    fn div(self, b: DoubleDouble) -> DoubleDouble {
        let q1 = self.hi / b.hi;
        let r = self - b.scale(q1);
        let q2 = r.hi / b.hi;
        let r = r - b.scale(q2);
        let q3 = r.hi / b.hi;
        let (q1, q2) = quick_two_sum(q1, q2);
        DoubleDouble { hi: q1, lo: q2 } + DoubleDouble::from_f64(q3)
    }
}

impl Add for DoubleDouble {
    type Output = DoubleDouble;
    #[inline]
    fn add(self, b: DoubleDouble) -> DoubleDouble {
        let (s, e) = two_sum(self.hi, b.hi);
        let (t, f) = two_sum(self.lo, b.lo);
        let (s, e) = quick_two_sum(s, e + t);
        let (hi, lo) = quick_two_sum(s, e + f);
        DoubleDouble { hi, lo }
    }
}

impl Neg for DoubleDouble {
    type Output = DoubleDouble;
    fn neg(self) -> DoubleDouble {
        DoubleDouble {
            hi: -self.hi,
            lo: -self.lo,
        }
    }
}

impl Sub for DoubleDouble {
    type Output = DoubleDouble;
    #[inline]
    fn sub(self, b: DoubleDouble) -> DoubleDouble {
        self + (-b)
    }
}

impl Mul for DoubleDouble {
    type Output = DoubleDouble;
    #[inline]
    fn mul(self, b: DoubleDouble) -> DoubleDouble {
        let (p, e) = two_prod(self.hi, b.hi);
        let e = e + (self.hi * b.lo + self.lo * b.hi);
        let (hi, lo) = quick_two_sum(p, e);
        DoubleDouble { hi, lo }
    }
}

/// Square matrix stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct DdMatrix {
    dim: usize,
    data: Vec<DoubleDouble>,
}

impl DdMatrix {
    pub fn zeros(dim: usize) -> Self {
        DdMatrix {
            dim,
            data: vec![DoubleDouble::ZERO; dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.data[i * dim + i] = DoubleDouble::ONE;
        }
        m
    }

    pub fn from_f64(dim: usize, values: &[f64]) -> Self {
        assert_eq!(values.len(), dim * dim);
        DdMatrix {
            dim,
            data: values.iter().copied().map(DoubleDouble::from_f64).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> DoubleDouble {
        self.data[i * self.dim + j]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|v| v.hi == 0.0 && v.lo == 0.0)
    }

    pub fn add(&self, other: &DdMatrix) -> DdMatrix {
        DdMatrix {
            dim: self.dim,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| *a + *b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &DdMatrix) -> DdMatrix {
        DdMatrix {
            dim: self.dim,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| *a - *b)
                .collect(),
        }
    }

    pub fn scale(&self, c: DoubleDouble) -> DdMatrix {
        DdMatrix {
            dim: self.dim,
            data: self.data.iter().map(|a| *a * c).collect(),
        }
    }

    pub fn scale_f64(&self, c: f64) -> DdMatrix {
        DdMatrix {
            dim: self.dim,
            data: self.data.iter().map(|a| a.scale(c)).collect(),
        }
    }

    pub fn mul(&self, other: &DdMatrix) -> DdMatrix {
        let n = self.dim;
        let mut out = DdMatrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = DoubleDouble::ZERO;
                for k in 0..n {
                    acc = acc + self.data[i * n + k] * other.data[k * n + j];
                }
                out.data[i * n + j] = acc;
            }
        }
        out
    }

    pub fn commutator(&self, other: &DdMatrix) -> DdMatrix {
        self.mul(other).sub(&other.mul(self))
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data
            .iter()
            .map(|v| {
                let x = v.to_f64();
                x * x
            })
            .sum::<f64>()
            .sqrt()
    }

    /// Maximum absolute column sum, from the leading parts.
    pub fn one_norm(&self) -> f64 {
        let n = self.dim;
        (0..n)
            .map(|j| (0..n).map(|i| self.data[i * n + j].hi.abs()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    /// Matrix exponential by scaling and squaring around a Taylor
    /// polynomial. The scaled argument has one-norm at most 2^-12 and the
    /// series is cut once the next term is below 1e-34.
    pub fn exp(&self) -> DdMatrix {
        const THETA: f64 = 1.0 / 4096.0;
        const TAIL: f64 = 1e-34;
        let mut norm = self.one_norm();
        let mut squarings = 0u32;
        let mut factor = 1.0;
        while norm > THETA {
            norm *= 0.5;
            factor *= 0.5;
            squarings += 1;
        }
        let b = self.scale_f64(factor);
        let mut sum = DdMatrix::identity(self.dim);
        let mut term = DdMatrix::identity(self.dim);
        let mut k = 1.0;
        loop {
            term = term
                .mul(&b)
                .scale(DoubleDouble::ONE / DoubleDouble::from_f64(k));
            if term.is_zero() {
                break;
            }
            sum = sum.add(&term);
            // remaining tail <= |term| * r / (1 - r), r = norm / (k + 1) <= 1/2
            if term.one_norm() < TAIL || k > 60.0 {
                break;
            }
            k += 1.0;
        }
        for _ in 0..squarings {
            sum = sum.mul(&sum);
        }
        sum
    }
}
