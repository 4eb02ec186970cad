//! Independent checks of a computed series.
//!
//! * associative: the defining identity in the word algebra truncated at
//!   degree `N`, with exact rationals; no tolerance.
//! * matrix: order of accuracy of the truncated product on random matrices.
//! * independence: exact rank of the word expansions of the terms of `C_n`.

mod ddouble;
mod matrix;
mod rank;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::lie::Generator;
use crate::rational::ExactRational;
use crate::series::{zassenhaus_series, Orientation, ZassenhausSeries};
use crate::words::NCPolynomial;

pub use ddouble::{DdMatrix, DoubleDouble};
pub use matrix::{
    fit_slope, lambda_ladder, matrix_residuals, random_pair, verify_matrix, verify_matrix_series,
    MATRIX_NOISE_FLOOR, SLOPE_TOLERANCE,
};
pub use rank::{independence_rank, verify_independence, witt_dimension, RANK_DEGREE_LIMIT};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum VerifyMode {
    Associative,
    Matrix,
    Independence,
}

/// Outcome of one oracle run. Serializes as
/// `{"mode": ..., "degree": N, "passed": bool, "details": [...]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub mode: VerifyMode,
    pub degree: usize,
    pub passed: bool,
    pub details: Vec<Value>,
}

impl VerificationReport {
    /// Lowest degree whose detail entry is marked as failed.
    pub fn lowest_failing_degree(&self) -> Option<usize> {
        self.details
            .iter()
            .filter(|d| d.get("passed") == Some(&Value::Bool(false)))
            .filter_map(|d| d.get("degree").and_then(Value::as_u64))
            .map(|d| d as usize)
            .min()
    }
}

/// `sum_{j=0..N} P^j / j!` in the truncated word algebra.
pub fn truncated_exp(p: &NCPolynomial) -> Result<NCPolynomial> {
    if !p.constant_term().is_zero() {
        return Err(Error::NonzeroConstantTerm);
    }
    let n = p.truncation();
    let mut sum = NCPolynomial::one(n);
    let mut power = NCPolynomial::one(n);
    for j in 1..=n {
        power = power.mul(p);
        if power.is_zero() {
            break;
        }
        sum = sum.add(&power.scale(&ExactRational::inv_factorial(j)));
    }
    Ok(sum)
}

/// Product of the exponentials of the series in its own orientation, minus
/// `exp(X + Y)`, truncated at `truncation`.
pub fn associative_defect(series: &ZassenhausSeries, truncation: usize) -> Result<NCPolynomial> {
    let x = NCPolynomial::generator(Generator::X, truncation);
    let y = NCPolynomial::generator(Generator::Y, truncation);
    let mut factors = vec![truncated_exp(&x)?, truncated_exp(&y)?];
    for (n, c) in series.iter() {
        if n > truncation {
            break;
        }
        factors.push(truncated_exp(&c.expand_to_words(truncation)?)?);
    }
    if series.orientation == Orientation::Left {
        factors.reverse();
    }
    let product = factors
        .iter()
        .fold(NCPolynomial::one(truncation), |acc, f| acc.mul(f));
    Ok(product.sub(&truncated_exp(&x.add(&y))?))
}

/// Checks the defining identity for a given series at its own degree.
pub fn verify_associative_series(series: &ZassenhausSeries) -> Result<VerificationReport> {
    let n = series.max_degree;
    let defect = associative_defect(series, n)?;
    let mut per_degree = vec![0usize; n + 1];
    for (w, _) in defect.iter() {
        per_degree[w.len()] += 1;
    }
    let details = (1..=n)
        .map(|d| {
            json!({
                "check": "word-degree",
                "degree": d,
                "passed": per_degree[d] == 0,
                "nonzero_words": per_degree[d],
            })
        })
        .collect();
    Ok(VerificationReport {
        mode: VerifyMode::Associative,
        degree: n,
        passed: defect.is_zero(),
        details,
    })
}

/// Computes `C_2..C_N` and checks `e^X e^Y e^{C_2} ... e^{C_N} = e^{X+Y}`
/// modulo words longer than `N`.
pub fn verify_associative(max_degree: usize) -> Result<VerificationReport> {
    verify_associative_series(&zassenhaus_series(max_degree)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::LiePolynomial;

    #[test]
    fn exp_of_zero_is_one() {
        let z = NCPolynomial::zero(4);
        assert_eq!(truncated_exp(&z).unwrap(), NCPolynomial::one(4));
    }

    #[test]
    fn exp_of_generator() {
        let x = NCPolynomial::generator(Generator::X, 2);
        assert_eq!(truncated_exp(&x).unwrap().to_string(), "1 + X + 1/2 XX");
    }

    #[test]
    fn exp_of_sum() {
        let s =
            NCPolynomial::generator(Generator::X, 2).add(&NCPolynomial::generator(Generator::Y, 2));
        assert_eq!(
            truncated_exp(&s).unwrap().to_string(),
            "1 + X + Y + 1/2 XX + 1/2 XY + 1/2 YX + 1/2 YY"
        );
    }

    #[test]
    fn exp_rejects_constant_term() {
        assert_eq!(
            truncated_exp(&NCPolynomial::one(3)),
            Err(Error::NonzeroConstantTerm)
        );
    }

    #[test]
    fn degree_two_identity() {
        let r = verify_associative(2).unwrap();
        assert!(r.passed);
        assert_eq!(r.lowest_failing_degree(), None);
    }

    #[test]
    fn zeroed_c4_breaks_at_degree_four() {
        let mut s = zassenhaus_series(4).unwrap();
        s.exponents[2] = LiePolynomial::zero();
        let d = associative_defect(&s, 4).unwrap();
        assert_eq!(d.lowest_degree(), Some(4));
        let r = verify_associative_series(&s).unwrap();
        assert!(!r.passed);
        assert_eq!(r.lowest_failing_degree(), Some(4));
    }

    #[test]
    fn report_json_shape() {
        let r = verify_associative(3).unwrap();
        let v = serde_json::to_value(&r).unwrap();
        assert_eq!(v["mode"], "associative");
        assert_eq!(v["degree"], 3);
        assert_eq!(v["passed"], true);
        assert!(v["details"].is_array());
        let back: VerificationReport = serde_json::from_value(v).unwrap();
        assert_eq!(back, r);
    }
}
