//! Norm bounds for the Zassenhaus exponents in a Banach algebra and the
//! convergence domain they certify.
//!
//! With `x = ||X||`, `y = ||Y||` the recursion for `f_{n,k}` is mirrored by
//!
//! ```text
//! d_{1,k} = 2^k / k! * y * ((x+y)^k - y^k)
//! d_{n,k} = sum_{j=0..[k/n]-1} 2^j / j! * delta_n^j * d_{n-1,k-nj}
//! delta_2 = x y,   delta_n = d_{[(n-1)/2],n-1} / n   (n >= 3)
//! ```
//!
//! and `||C_n|| <= delta_n`. The product converges when
//! `delta_{n+1} / delta_n < 1` in the limit; the scan evaluates the ratio at
//! a fixed `n_max`. These quantities span hundreds of orders of magnitude,
//! so everything is carried as natural logarithms.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lie::{CommutatorTerm, Generator, LiePolynomial};

/// A non-negative magnitude stored as its natural log; `-inf` encodes zero.
#[derive(Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LogMagnitude(f64);

impl LogMagnitude {
    pub const ZERO: LogMagnitude = LogMagnitude(f64::NEG_INFINITY);
    pub const ONE: LogMagnitude = LogMagnitude(0.0);

    /// Panics on negative or NaN input.
    pub fn from_value(v: f64) -> Self {
        assert!(v >= 0.0, "magnitude must be non-negative, got {v}");
        LogMagnitude(v.ln())
    }

    pub fn from_ln(ln: f64) -> Self {
        assert!(!ln.is_nan() && ln != f64::INFINITY);
        LogMagnitude(ln)
    }

    pub fn ln(self) -> f64 {
        self.0
    }

    /// Linear value; under/overflows for extreme magnitudes.
    pub fn value(self) -> f64 {
        self.0.exp()
    }

    pub fn is_zero(self) -> bool {
        self.0 == f64::NEG_INFINITY
    }

    /// `self / other` in linear scale.
    pub fn ratio(self, other: LogMagnitude) -> f64 {
        match (self.is_zero(), other.is_zero()) {
            (true, _) => 0.0,
            (false, true) => f64::INFINITY,
            (false, false) => (self.0 - other.0).exp(),
        }
    }
}

impl Mul for LogMagnitude {
    type Output = LogMagnitude;
    fn mul(self, other: LogMagnitude) -> LogMagnitude {
        if self.is_zero() || other.is_zero() {
            LogMagnitude::ZERO
        } else {
            LogMagnitude(self.0 + other.0)
        }
    }
}

impl Add for LogMagnitude {
    type Output = LogMagnitude;
    fn add(self, other: LogMagnitude) -> LogMagnitude {
        LogMagnitude(log_sum_exp(&[self.0, other.0]))
    }
}

impl PartialOrd for LogMagnitude {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.0.partial_cmp(&other.0)
    }
}

impl fmt::Debug for LogMagnitude {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "exp({})", self.0)
    }
}

/// `ln(sum exp(t_i))` with `-inf` entries treated as zeros.
fn log_sum_exp(terms: &[f64]) -> f64 {
    let max = terms.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if max == f64::NEG_INFINITY {
        return max;
    }
    let s: f64 = terms.iter().map(|t| (t - max).exp()).sum();
    max + s.ln()
}

/// `ln k!` for `k = 0..=n`, summed with compensation.
fn ln_factorials(n: usize) -> Vec<f64> {
    let mut out = Vec::with_capacity(n + 1);
    let (mut sum, mut comp) = (0.0f64, 0.0f64);
    out.push(0.0);
    for i in 1..=n {
        let v = (i as f64).ln();
        let t = sum + v;
        comp += if sum.abs() >= v.abs() {
            (sum - t) + v
        } else {
            (v - t) + sum
        };
        sum = t;
        out.push(sum + comp);
    }
    out
}

fn check_inputs(x: f64, y: f64) -> Result<()> {
    if x.is_nan() || y.is_nan() || x < 0.0 || y < 0.0 || x.is_infinite() || y.is_infinite() {
        return Err(Error::InvalidArgument(format!(
            "norms must be finite and non-negative, got ({x}, {y})"
        )));
    }
    Ok(())
}

fn d1_with(k: usize, x: f64, y: f64, ln_fact: f64) -> LogMagnitude {
    if x == 0.0 || y == 0.0 {
        return LogMagnitude::ZERO;
    }
    let kf = k as f64;
    let ln_s = (x + y).ln();
    // (x+y)^k - y^k = (x+y)^k (1 - exp(k (ln y - ln(x+y))))
    let diff = kf * ln_s + (-(kf * (y.ln() - ln_s)).exp_m1()).ln();
    LogMagnitude(kf * std::f64::consts::LN_2 - ln_fact + y.ln() + diff)
}

/// Closed-form `d_{1,k} = 2^k / k! * y * ((x+y)^k - y^k)`.
pub fn d1(k: usize, x: f64, y: f64) -> Result<LogMagnitude> {
    check_inputs(x, y)?;
    if k == 0 {
        return Err(Error::InvalidIndex("d_{1,k} needs k >= 1".into()));
    }
    Ok(d1_with(k, x, y, ln_factorials(k)[k]))
}

/// Tables of `d_{n,k}` and `delta_n` for one `(x, y)`, up to `n_max`.
#[derive(Clone)]
pub struct BoundTable {
    x: f64,
    y: f64,
    n_max: usize,
    /// `d[n - 1][k]` is `ln d_{n,k}` (entries with `k < n` unused).
    d: Vec<Vec<f64>>,
    /// `delta[n]` is `ln delta_n` for `2 <= n <= n_max`.
    delta: Vec<f64>,
}

impl BoundTable {
    /// Rows `n <= max(1, [(n_max-1)/2])`, columns `k <= n_max - 1`.
    pub fn build(x: f64, y: f64, n_max: usize) -> Result<Self> {
        check_inputs(x, y)?;
        if n_max < 3 {
            return Err(Error::InvalidArgument(format!(
                "n_max must be >= 3, got {n_max}"
            )));
        }
        let rows = ((n_max - 1) / 2).max(1);
        let cols = n_max;
        let ln_fact = ln_factorials(n_max);
        let mut d = vec![vec![f64::NEG_INFINITY; cols]; rows];
        let mut delta = vec![f64::NEG_INFINITY; n_max + 1];
        delta[2] = LogMagnitude::from_value(x * y).ln();
        // coef[n][j] = ln(2^j / j! * delta_n^j), filled once delta_n is known
        let mut coef: Vec<Vec<f64>> = vec![Vec::new(); rows + 1];
        let mut terms: Vec<f64> = Vec::with_capacity(n_max);

        for k in 1..cols {
            d[0][k] = d1_with(k, x, y, ln_fact[k]).ln();
            for n in 2..=rows.min(k) {
                if coef[n].is_empty() {
                    let ln_delta = delta[n];
                    let top = (n_max - 1) / n;
                    coef[n] = (0..top)
                        .map(|j| {
                            if j == 0 {
                                0.0
                            } else if ln_delta == f64::NEG_INFINITY {
                                f64::NEG_INFINITY
                            } else {
                                j as f64 * (std::f64::consts::LN_2 + ln_delta) - ln_fact[j]
                            }
                        })
                        .collect();
                }
                let top = k / n;
                d[n - 1][k] = if top <= 1 {
                    d[n - 2][k]
                } else {
                    terms.clear();
                    terms.extend((0..top).map(|j| coef[n][j] + d[n - 2][k - n * j]));
                    log_sum_exp(&terms)
                };
            }
            let m = k + 1;
            if m >= 3 {
                let row = (k / 2).max(1);
                delta[m] = d[row - 1][k] - (m as f64).ln();
            }
        }
        Ok(BoundTable {
            x,
            y,
            n_max,
            d,
            delta,
        })
    }

    pub fn x(&self) -> f64 {
        self.x
    }

    pub fn y(&self) -> f64 {
        self.y
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    /// `d_{n,k}` for `1 <= n <= k < n_max` within the stored rows.
    pub fn d(&self, n: usize, k: usize) -> Result<LogMagnitude> {
        if n == 0 || k < n || n > self.d.len() || k >= self.n_max {
            return Err(Error::InvalidIndex(format!(
                "d_{{{n},{k}}} is outside the table"
            )));
        }
        Ok(LogMagnitude(self.d[n - 1][k]))
    }

    /// `delta_n` for `2 <= n <= n_max`.
    pub fn delta(&self, n: usize) -> Result<LogMagnitude> {
        if n < 2 || n > self.n_max {
            return Err(Error::InvalidIndex(format!(
                "delta_{n} is outside the table"
            )));
        }
        Ok(LogMagnitude(self.delta[n]))
    }

    /// `delta_{n+1} / delta_n` for the last `count` values of `n`.
    pub fn trailing_ratios(&self, count: usize) -> Vec<f64> {
        let lo = (self.n_max - count).max(2);
        (lo..self.n_max)
            .map(|n| LogMagnitude(self.delta[n + 1]).ratio(LogMagnitude(self.delta[n])))
            .collect()
    }
}

/// Bound on `||p||` from the triangle inequality, `||X|| = x`, `||Y|| = y`
/// and `||[A,B]|| <= 2 ||A|| ||B||`.
pub fn triangle_norm_bound(p: &LiePolynomial, x: f64, y: f64) -> f64 {
    fn tree(t: &CommutatorTerm, x: f64, y: f64) -> f64 {
        match (t.as_generator(), t.children()) {
            (Some(Generator::X), _) => x,
            (Some(Generator::Y), _) => y,
            (None, Some((l, r))) => 2.0 * tree(l, x, y) * tree(r, x, y),
            (None, None) => unreachable!(),
        }
    }
    p.iter()
        .map(|(t, c)| c.abs().to_f64() * tree(t, x, y))
        .sum()
}

/// Ratio-test decision at a single point.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceVerdict {
    pub x: f64,
    pub y: f64,
    pub n_max: usize,
    pub convergent: bool,
    /// `delta_{n_max} / delta_{n_max - 1}`.
    pub final_ratio: f64,
    /// The last ten ratios, oldest first.
    pub trailing_ratios: Vec<f64>,
}

/// `delta_{n_max} / delta_{n_max-1} < 1`. All-zero bounds (`x = 0` or
/// `y = 0`) count as convergent with ratio 0.
pub fn converges(x: f64, y: f64, n_max: usize) -> Result<ConvergenceVerdict> {
    let table = BoundTable::build(x, y, n_max)?;
    let ratio = table.delta(n_max)?.ratio(table.delta(n_max - 1)?);
    Ok(ConvergenceVerdict {
        x,
        y,
        n_max,
        convergent: ratio < 1.0,
        final_ratio: ratio,
        trailing_ratios: table.trailing_ratios(10),
    })
}

/// One row of the boundary scan.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundaryPoint {
    pub x: f64,
    /// Largest `y` found convergent (infinite if no divergence was found).
    pub y_boundary: f64,
    pub n_max: usize,
    /// Final ratio at `(x, y_boundary)`.
    pub ratio: f64,
}

const SCAN_START: f64 = 4.0;
const SCAN_CEILING: f64 = 1e6;

/// Upper boundary `y(x)` of the certified domain at each `x`, by bisection
/// on `y` to within `y_tolerance`.
pub fn domain_boundary(
    x_values: &[f64],
    n_max: usize,
    y_tolerance: f64,
) -> Result<Vec<BoundaryPoint>> {
    if y_tolerance.is_nan() || y_tolerance <= 0.0 {
        return Err(Error::InvalidArgument(format!(
            "tolerance must be positive, got {y_tolerance}"
        )));
    }
    if x_values
        .windows(2)
        .any(|w| w[0].is_nan() || w[1].is_nan() || w[0] > w[1])
    {
        return Err(Error::InvalidArgument(
            "x values must be sorted ascending".into(),
        ));
    }
    x_values
        .iter()
        .map(|&x| boundary_at(x, n_max, y_tolerance))
        .collect()
}

fn boundary_at(x: f64, n_max: usize, tol: f64) -> Result<BoundaryPoint> {
    let mut hi = SCAN_START;
    while converges(x, hi, n_max)?.convergent {
        hi *= 2.0;
        if hi > SCAN_CEILING {
            return Ok(BoundaryPoint {
                x,
                y_boundary: f64::INFINITY,
                n_max,
                ratio: 0.0,
            });
        }
    }
    let mut lo = 0.0;
    let mut lo_ratio = 0.0;
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        let v = converges(x, mid, n_max)?;
        if v.convergent {
            lo = mid;
            lo_ratio = v.final_ratio;
        } else {
            hi = mid;
        }
    }
    Ok(BoundaryPoint {
        x,
        y_boundary: lo,
        n_max,
        ratio: lo_ratio,
    })
}

/// `count` points geometrically spaced over `[lo, hi]`.
pub fn geometric_grid(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    match count {
        0 => Vec::new(),
        1 => vec![lo],
        _ => {
            let step = (hi / lo).ln() / (count - 1) as f64;
            (0..count)
                .map(|i| {
                    if i + 1 == count {
                        hi
                    } else {
                        lo * (step * i as f64).exp()
                    }
                })
                .collect()
        }
    }
}

/// `log 2 - 1/2`, the earlier sufficient radius for `||X|| + ||Y||`.
pub fn suzuki_radius() -> f64 {
    std::f64::consts::LN_2 - 0.5
}

/// `(e^{2w} - 1) / w`, continued by 2 at `w = 0`.
fn bayen_integrand(w: f64) -> f64 {
    if w == 0.0 {
        2.0
    } else {
        (2.0 * w).exp_m1() / w
    }
}

fn simpson(a: f64, b: f64, fa: f64, fm: f64, fb: f64) -> f64 {
    (b - a) / 6.0 * (fa + 4.0 * fm + fb)
}

#[allow(clippy::too_many_arguments)]
fn adaptive_simpson_rec(
    f: &impl Fn(f64) -> f64,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: u32,
) -> f64 {
    let m = 0.5 * (a + b);
    let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
    let (flm, frm) = (f(lm), f(rm));
    let left = simpson(a, m, fa, flm, fm);
    let right = simpson(m, b, fm, frm, fb);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= 15.0 * tol {
        left + right + delta / 15.0
    } else {
        adaptive_simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)
            + adaptive_simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)
    }
}

/// Adaptive Simpson quadrature of `f` over `[a, b]` to absolute `tol`.
pub fn adaptive_simpson(f: impl Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    let (fa, fb, fm) = (f(a), f(b), f(0.5 * (a + b)));
    let whole = simpson(a, b, fa, fm, fb);
    adaptive_simpson_rec(&f, a, b, fa, fm, fb, whole, tol, 48)
}

/// `z^2 (1 + 2 int_0^z (e^{2w} - 1)/w dw)`.
pub fn bayen_lhs(z: f64) -> f64 {
    let integral = adaptive_simpson(bayen_integrand, 0.0, z, 1e-14);
    z * z * (1.0 + 2.0 * integral)
}

/// `4 (2 log 2 - 1)`.
pub fn bayen_rhs() -> f64 {
    4.0 * (2.0 * std::f64::consts::LN_2 - 1.0)
}

/// Positive root of `bayen_lhs(z) = bayen_rhs()`, bracketed on `[0.1, 1]`.
pub fn bayen_radius() -> Result<f64> {
    let g = |z: f64| bayen_lhs(z) - bayen_rhs();
    let (mut lo, mut hi) = (0.1, 1.0);
    let (mut glo, ghi) = (g(lo), g(hi));
    if glo.signum() == ghi.signum() {
        return Err(Error::Bracket { lo, hi });
    }
    while hi - lo > 1e-13 {
        let mid = 0.5 * (lo + hi);
        let gm = g(mid);
        if gm.signum() == glo.signum() {
            lo = mid;
            glo = gm;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}
