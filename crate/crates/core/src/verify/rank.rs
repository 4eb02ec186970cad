//! Exact rank of the word expansions of the terms of a Lie polynomial.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde_json::json;

use super::{VerificationReport, VerifyMode};
use crate::error::Result;
use crate::lie::LiePolynomial;
use crate::series::zassenhaus_series;

/// Degrees above this only get the dimension check in [`verify_independence`].
pub const RANK_DEGREE_LIMIT: usize = 12;

type SparseRow = Vec<(usize, BigInt)>;

fn content_normalize(row: &mut SparseRow) {
    let g = row.iter().fold(BigInt::zero(), |g, (_, v)| g.gcd(v));
    if !g.is_zero() && !g.is_one() {
        for (_, v) in row.iter_mut() {
            *v /= &g;
        }
    }
    if row.first().is_some_and(|(_, v)| v.is_negative()) {
        for (_, v) in row.iter_mut() {
            *v = -&*v;
        }
    }
}

/// `a * row - b * pivot`, dropping zero entries.
fn combine(row: &SparseRow, a: &BigInt, pivot: &SparseRow, b: &BigInt) -> SparseRow {
    let mut out = Vec::with_capacity(row.len() + pivot.len());
    let (mut i, mut j) = (0, 0);
    while i < row.len() || j < pivot.len() {
        let ci = row.get(i).map(|e| e.0).unwrap_or(usize::MAX);
        let cj = pivot.get(j).map(|e| e.0).unwrap_or(usize::MAX);
        let (col, v) = if ci < cj {
            i += 1;
            (ci, a * &row[i - 1].1)
        } else if cj < ci {
            j += 1;
            (cj, -(b * &pivot[j - 1].1))
        } else {
            i += 1;
            j += 1;
            (ci, a * &row[i - 1].1 - b * &pivot[j - 1].1)
        };
        if !v.is_zero() {
            out.push((col, v));
        }
    }
    out
}

/// Rank over the rationals of integer sparse rows, by fraction-free
/// elimination with content removal.
pub(crate) fn exact_rank(rows: Vec<SparseRow>) -> usize {
    let mut pivots: BTreeMap<usize, SparseRow> = BTreeMap::new();
    for mut row in rows {
        content_normalize(&mut row);
        while let Some((lead, _)) = row.first() {
            match pivots.get(lead) {
                Some(p) => {
                    let a = p[0].1.clone();
                    let b = row[0].1.clone();
                    let g = a.gcd(&b);
                    row = combine(&row, &(&a / &g), p, &(&b / &g));
                    content_normalize(&mut row);
                }
                None => {
                    pivots.insert(*lead, row);
                    break;
                }
            }
        }
    }
    pivots.len()
}

/// `(number of terms, rank)` of the word vectors of the individual terms of
/// `c`, coefficients stripped.
pub fn independence_rank(c: &LiePolynomial) -> (usize, usize) {
    let rows = c
        .iter()
        .map(|(t, _)| {
            t.word_expansion()
                .into_iter()
                .map(|(w, k)| (w.index() | (1 << w.len()), BigInt::from(k)))
                .collect()
        })
        .collect();
    (c.len(), exact_rank(rows))
}

fn mobius(mut n: usize) -> i32 {
    let mut result = 1;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            result = -result;
        }
        p += 1;
    }
    if n > 1 {
        result = -result;
    }
    result
}

/// Dimension of the degree-`n` component of the free Lie algebra on two
/// generators: `(1/n) sum_{d | n} mu(d) 2^{n/d}`. Valid for `1 <= n <= 126`.
pub fn witt_dimension(n: usize) -> u128 {
    assert!(
        (1..=126).contains(&n),
        "witt_dimension supports 1 <= n <= 126"
    );
    let total: i128 = (1..=n)
        .filter(|d| n.is_multiple_of(*d))
        .map(|d| mobius(d) as i128 * (1i128 << (n / d)))
        .sum();
    (total / n as i128) as u128
}

/// For each `C_n`, `n <= max_degree`: term count within the Witt dimension,
/// and (for `n <= RANK_DEGREE_LIMIT`) rank equal to the term count.
pub fn verify_independence(max_degree: usize) -> Result<VerificationReport> {
    let series = zassenhaus_series(max_degree)?;
    let mut passed = true;
    let mut details = Vec::new();
    for (n, c) in series.iter() {
        let witt = witt_dimension(n);
        let within = (c.len() as u128) <= witt;
        let rank = (n <= RANK_DEGREE_LIMIT).then(|| independence_rank(c).1);
        let ok = within && rank.is_none_or(|r| r == c.len());
        passed &= ok;
        details.push(json!({
            "check": "independence",
            "degree": n,
            "passed": ok,
            "terms": c.len(),
            "rank": rank,
            "witt_dimension": witt,
        }));
    }
    Ok(VerificationReport {
        mode: VerifyMode::Independence,
        degree: max_degree,
        passed,
        details,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(v: &[i64]) -> SparseRow {
        v.iter()
            .enumerate()
            .filter(|(_, &x)| x != 0)
            .map(|(i, &x)| (i, BigInt::from(x)))
            .collect()
    }

    #[test]
    fn rank_of_small_matrices() {
        assert_eq!(exact_rank(vec![row(&[1, 2]), row(&[2, 4])]), 1);
        assert_eq!(
            exact_rank(vec![row(&[1, 2, 3]), row(&[4, 5, 6]), row(&[7, 8, 9])]),
            2
        );
        assert_eq!(exact_rank(vec![row(&[0, 0]), row(&[0, 3])]), 1);
        assert_eq!(
            exact_rank(vec![row(&[2, 1, 0]), row(&[0, 3, 1]), row(&[1, 0, 5])]),
            3
        );
    }

    #[test]
    fn dependent_brackets_detected() {
        // [X,Y] and [Y,X] are negatives of each other
        let p: LiePolynomial = "(1)[X,Y] + (1)[Y,X]".parse().unwrap();
        assert_eq!(independence_rank(&p), (2, 1));
        let jacobi: LiePolynomial = "(1)[X,[X,Y]] + (1)[X,[Y,X]] + (1)[Y,[X,X]]"
            .parse()
            .unwrap();
        assert_eq!(independence_rank(&jacobi), (3, 1));
    }

    #[test]
    fn witt_small_values() {
        let expect = [2, 1, 2, 3, 6, 9, 18, 30, 56, 99];
        for (i, &w) in expect.iter().enumerate() {
            assert_eq!(witt_dimension(i + 1), w);
        }
        assert_eq!(witt_dimension(16), 4080);
    }
}
