//! Order-of-accuracy test on random matrices.
//!
//! For a series truncated at `N` the residual
//! `|| e^{λ(X+Y)} - e^{λX} e^{λY} e^{λ^2 C_2} ... e^{λ^N C_N} ||_F`
//! behaves like `λ^{N+1}`. All matrix work is done in double-double so the
//! residuals at the small end of the ladder stay above rounding noise.

use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use super::ddouble::{DdMatrix, DoubleDouble};
use super::{VerificationReport, VerifyMode};
use crate::error::{Error, Result};
use crate::lie::{CommutatorTerm, Generator, LiePolynomial};
use crate::series::{zassenhaus_series, Orientation, ZassenhausSeries};

/// Residuals at or below this are treated as rounding noise and left out of
/// the fit.
pub const MATRIX_NOISE_FLOOR: f64 = 1e-26;

/// Allowed shortfall of the fitted slope below `N + 1`.
pub const SLOPE_TOLERANCE: f64 = 0.25;

/// Upper bound on `||X||_F + ||Y||_F` for the sampled pair.
const NORM_BUDGET: f64 = 0.5;

/// `λ = 2^-1, ..., 2^-6`.
pub fn lambda_ladder() -> Vec<f64> {
    (1..=6).map(|k| 0.5f64.powi(k)).collect()
}

/// Two `dim x dim` matrices with entries uniform in `[-1, 1]`, scaled so
/// that `||X||_F + ||Y||_F <= 0.5`.
pub fn random_pair(dim: usize, seed: u64) -> (DdMatrix, DdMatrix) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut draw = || -> Vec<f64> { (0..dim * dim).map(|_| rng.gen_range(-1.0..=1.0)).collect() };
    let x = DdMatrix::from_f64(dim, &draw());
    let y = DdMatrix::from_f64(dim, &draw());
    let total = x.frobenius_norm() + y.frobenius_norm();
    let s = NORM_BUDGET * (1.0 - 1e-12) / total;
    (x.scale_f64(s), y.scale_f64(s))
}

fn evaluate_term(
    t: &CommutatorTerm,
    x: &DdMatrix,
    y: &DdMatrix,
    memo: &mut HashMap<CommutatorTerm, DdMatrix>,
) -> DdMatrix {
    if let Some(m) = memo.get(t) {
        return m.clone();
    }
    let m = match (t.as_generator(), t.children()) {
        (Some(Generator::X), _) => x.clone(),
        (Some(Generator::Y), _) => y.clone(),
        (None, Some((l, r))) => {
            let a = evaluate_term(l, x, y, memo);
            let b = evaluate_term(r, x, y, memo);
            a.commutator(&b)
        }
        (None, None) => unreachable!("bracket without children"),
    };
    memo.insert(t.clone(), m.clone());
    m
}

/// Evaluates a Lie polynomial with `X`, `Y` replaced by matrices.
pub fn evaluate_polynomial(p: &LiePolynomial, x: &DdMatrix, y: &DdMatrix) -> DdMatrix {
    let mut memo = HashMap::new();
    let mut acc = DdMatrix::zeros(x.dim());
    for (t, c) in p.sorted_terms() {
        let m = evaluate_term(t, x, y, &mut memo);
        acc = acc.add(&m.scale(DoubleDouble::from_rational(c)));
    }
    acc
}

/// Frobenius residual of the truncated product at each `λ`.
pub fn matrix_residuals(
    series: &ZassenhausSeries,
    x: &DdMatrix,
    y: &DdMatrix,
    lambdas: &[f64],
) -> Vec<f64> {
    let exponents: Vec<(usize, DdMatrix)> = series
        .iter()
        .map(|(n, c)| (n, evaluate_polynomial(c, x, y)))
        .filter(|(_, m)| !m.is_zero())
        .collect();
    let sum = x.add(y);
    lambdas
        .iter()
        .map(|&lambda| {
            let exact = sum.scale_f64(lambda).exp();
            let mut factors = vec![x.scale_f64(lambda).exp(), y.scale_f64(lambda).exp()];
            for (n, m) in &exponents {
                factors.push(m.scale_f64(lambda.powi(*n as i32)).exp());
            }
            if series.orientation == Orientation::Left {
                factors.reverse();
            }
            let mut product = factors[0].clone();
            for f in &factors[1..] {
                product = product.mul(f);
            }
            exact.sub(&product).frobenius_norm()
        })
        .collect()
}

/// Least-squares slope of `log2 r` against `log2 λ`.
pub fn fit_slope(points: &[(f64, f64)]) -> f64 {
    let n = points.len() as f64;
    let (sx, sy) = points
        .iter()
        .fold((0.0, 0.0), |(a, b), (l, r)| (a + l.log2(), b + r.log2()));
    let (mx, my) = (sx / n, sy / n);
    let (num, den) = points.iter().fold((0.0, 0.0), |(a, b), (l, r)| {
        let dx = l.log2() - mx;
        (a + dx * (r.log2() - my), b + dx * dx)
    });
    num / den
}

/// Runs `trials` seeded trials (seeds `seed, seed + 1, ...`) on an already
/// computed series.
pub fn verify_matrix_series(
    series: &ZassenhausSeries,
    dim: usize,
    trials: usize,
    seed: u64,
) -> Result<VerificationReport> {
    if dim < 2 {
        return Err(Error::InvalidArgument(format!(
            "matrix dimension must be >= 2, got {dim}"
        )));
    }
    if trials == 0 {
        return Err(Error::InvalidArgument(
            "at least one trial is required".into(),
        ));
    }
    let n = series.max_degree;
    let target = (n + 1) as f64 - SLOPE_TOLERANCE;
    let lambdas = lambda_ladder();
    let mut details = Vec::with_capacity(trials);
    let mut passed = true;
    for trial in 0..trials {
        let trial_seed = seed.wrapping_add(trial as u64);
        let (x, y) = random_pair(dim, trial_seed);
        let residuals = matrix_residuals(series, &x, &y, &lambdas);
        let usable: Vec<(f64, f64)> = lambdas
            .iter()
            .zip(&residuals)
            .filter(|(_, &r)| r > MATRIX_NOISE_FLOOR)
            .map(|(&l, &r)| (l, r))
            .collect();
        let (ok, slope, status) = if usable.len() < 3 {
            (false, None, "inconclusive")
        } else {
            let s = fit_slope(&usable);
            (
                s >= target,
                Some(s),
                if s >= target { "passed" } else { "failed" },
            )
        };
        passed &= ok;
        details.push(json!({
            "check": "slope",
            "degree": n,
            "trial": trial,
            "seed": trial_seed,
            "dim": dim,
            "passed": ok,
            "status": status,
            "slope": slope,
            "required_slope": target,
            "lambdas": lambdas,
            "residuals": residuals,
            "usable_points": usable.len(),
        }));
    }
    Ok(VerificationReport {
        mode: VerifyMode::Matrix,
        degree: n,
        passed,
        details,
    })
}

pub fn verify_matrix(
    max_degree: usize,
    dim: usize,
    trials: usize,
    seed: u64,
) -> Result<VerificationReport> {
    verify_matrix_series(&zassenhaus_series(max_degree)?, dim, trials, seed)
}
