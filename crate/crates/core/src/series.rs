//! The Zassenhaus exponents `C_n`.
//!
//! The main route builds the coefficients `f_{n,k}` of the generator series
//! `F_n` recursively:
//!
//! ```text
//! f_{1,k} = sum_{j=1..k} (-1)^k / (j! (k-j)!) ad_Y^{k-j} ad_X^j Y
//! f_{n,k} = sum_{j=0..[k/n]-1} (-1)^j / j! ad_{C_n}^j f_{n-1,k-nj}     (k >= n)
//! C_n     = f_{m,n-1} / n,   m = max(1, [(n-1)/2])
//! ```
//!
//! A second, independent route sums the ad-words selected by the index sets
//! `I_n` directly ([`term_via_index_formula`]).

use std::collections::HashMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lie::{CommutatorTerm, LiePolynomial};
use crate::rational::ExactRational;

/// Which side of `e^X e^Y` the exponentials `e^{C_n}` are collected on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Orientation {
    /// `e^{X+Y} = e^X e^Y e^{C_2} e^{C_3} ...`
    #[default]
    Right,
    /// `e^{X+Y} = ... e^{C_3} e^{C_2} e^Y e^X`
    Left,
}

impl Orientation {
    pub fn as_str(self) -> &'static str {
        match self {
            Orientation::Right => "right",
            Orientation::Left => "left",
        }
    }

    pub fn flipped(self) -> Self {
        match self {
            Orientation::Right => Orientation::Left,
            Orientation::Left => Orientation::Right,
        }
    }
}

/// Memo of `f_{n,k}` keyed by `(n, k)`, `k >= n`. Each entry is homogeneous
/// of degree `k + 1`.
#[derive(Default, Clone)]
pub struct FTable {
    memo: HashMap<(usize, usize), Arc<LiePolynomial>>,
}

impl FTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, n: usize, k: usize) -> Option<&Arc<LiePolynomial>> {
        self.memo.get(&(n, k))
    }

    pub fn len(&self) -> usize {
        self.memo.len()
    }

    pub fn is_empty(&self) -> bool {
        self.memo.is_empty()
    }

    pub fn keys(&self) -> impl Iterator<Item = &(usize, usize)> {
        self.memo.keys()
    }

    fn insert(&mut self, n: usize, k: usize, p: Arc<LiePolynomial>) {
        debug_assert!(k >= n && p.is_homogeneous(k + 1));
        self.memo.insert((n, k), p);
    }
}

/// Incremental computation of `C_2, C_3, ...` sharing one [`FTable`].
#[derive(Default, Clone)]
pub struct SeriesEngine {
    table: FTable,
    /// `exponents[i]` holds `C_{i+2}`.
    exponents: Vec<LiePolynomial>,
}

impl SeriesEngine {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn table(&self) -> &FTable {
        &self.table
    }

    /// Highest `n` for which `C_n` is known (1 when none are).
    pub fn computed_degree(&self) -> usize {
        self.exponents.len() + 1
    }

    pub fn exponent(&self, n: usize) -> Option<&LiePolynomial> {
        n.checked_sub(2).and_then(|i| self.exponents.get(i))
    }

    pub fn f1(&mut self, k: usize) -> Result<Arc<LiePolynomial>> {
        if k == 0 {
            return Err(Error::InvalidIndex("f_{1,k} needs k >= 1".into()));
        }
        if let Some(p) = self.table.get(1, k) {
            return Ok(p.clone());
        }
        let x = CommutatorTerm::x();
        let y = CommutatorTerm::y();
        let sign = ExactRational::sign_power(k);
        let mut out = LiePolynomial::zero();
        // ad_X^j Y, grown one bracket per step
        let mut inner = y.clone();
        for j in 1..=k {
            inner = CommutatorTerm::bracket(&x, &inner);
            let mut term = inner.clone();
            for _ in 0..k - j {
                term = CommutatorTerm::bracket(&y, &term);
            }
            let c =
                &(&sign * &ExactRational::inv_factorial(j)) * &ExactRational::inv_factorial(k - j);
            out.add_term(term, c);
        }
        let out = Arc::new(out);
        self.table.insert(1, k, out.clone());
        Ok(out)
    }

    /// `f_{n,k}`; needs `C_n` to be known already.
    pub fn f(&mut self, n: usize, k: usize) -> Result<Arc<LiePolynomial>> {
        if n == 0 || k < n {
            return Err(Error::InvalidIndex(format!(
                "f_{{n,k}} needs 1 <= n <= k, got n={n}, k={k}"
            )));
        }
        if n == 1 {
            return self.f1(k);
        }
        if let Some(p) = self.table.get(n, k) {
            return Ok(p.clone());
        }
        let c_n = self.exponent(n).cloned().ok_or(Error::MissingExponent(n))?;
        let top = k / n - 1;
        let out = if top == 0 {
            self.f(n - 1, k)?
        } else {
            let mut acc = LiePolynomial::zero();
            let mut inv_fact = ExactRational::one();
            for j in 0..=top {
                if j > 0 {
                    inv_fact = inv_fact / ExactRational::from(j as i64);
                }
                let base = self.f(n - 1, k - n * j)?;
                let ad = LiePolynomial::ad_power(&c_n, j, &base);
                acc.add_scaled(&ad, &(&ExactRational::sign_power(j) * &inv_fact));
            }
            Arc::new(acc)
        };
        self.table.insert(n, k, out.clone());
        Ok(out)
    }

    /// Computes `C_{n}` for the next `n` and returns it.
    pub fn next_term(&mut self) -> Result<&LiePolynomial> {
        let n = self.exponents.len() + 2;
        let row = ((n - 1) / 2).max(1);
        let f = self.f(row, n - 1)?;
        let c = f.scale(&ExactRational::new(1, n as i64));
        debug_assert!(c.is_homogeneous(n));
        self.exponents.push(c);
        Ok(self.exponents.last().expect("just pushed"))
    }

    /// `C_n`, computing any missing lower exponents first.
    pub fn zassenhaus_term(&mut self, n: usize) -> Result<LiePolynomial> {
        if n < 2 {
            return Err(Error::InvalidIndex(format!("C_n needs n >= 2, got {n}")));
        }
        while self.computed_degree() < n {
            self.next_term()?;
        }
        Ok(self.exponent(n).cloned().expect("computed above"))
    }

    pub fn into_series(self) -> ZassenhausSeries {
        ZassenhausSeries {
            max_degree: self.exponents.len() + 1,
            orientation: Orientation::Right,
            exponents: self.exponents,
        }
    }
}

/// Exponents `C_2 ..= C_max_degree`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZassenhausSeries {
    pub max_degree: usize,
    pub orientation: Orientation,
    /// `exponents[i]` holds `C_{i+2}`.
    pub exponents: Vec<LiePolynomial>,
}

impl ZassenhausSeries {
    pub fn exponent(&self, n: usize) -> Option<&LiePolynomial> {
        n.checked_sub(2).and_then(|i| self.exponents.get(i))
    }

    /// `(n, C_n)` pairs in increasing degree.
    pub fn iter(&self) -> impl Iterator<Item = (usize, &LiePolynomial)> {
        self.exponents.iter().enumerate().map(|(i, c)| (i + 2, c))
    }

    pub fn term_counts(&self) -> Vec<(usize, usize)> {
        self.iter().map(|(n, c)| (n, c.len())).collect()
    }
}

/// Right-oriented exponents `C_2..C_N`.
pub fn zassenhaus_series(max_degree: usize) -> Result<ZassenhausSeries> {
    if max_degree < 2 {
        return Err(Error::InvalidArgument(format!(
            "max degree must be at least 2, got {max_degree}"
        )));
    }
    let mut engine = SeriesEngine::new();
    for _ in 2..=max_degree {
        engine.next_term()?;
    }
    Ok(engine.into_series())
}

/// Switches orientation: `C^_n = (-1)^{n+1} C_n`. Applying it twice is the
/// identity.
pub fn left_oriented(series: &ZassenhausSeries) -> ZassenhausSeries {
    let minus_one = -ExactRational::one();
    ZassenhausSeries {
        max_degree: series.max_degree,
        orientation: series.orientation.flipped(),
        exponents: series
            .iter()
            .map(|(n, c)| {
                if n % 2 == 0 {
                    c.scale(&minus_one)
                } else {
                    c.clone()
                }
            })
            .collect(),
    }
}

/// Exponent tuple `(i_0, i_1, ..., i_n)` selecting the ad-word
/// `ad_{C_n}^{i_n} ... ad_{C_2}^{i_2} ad_Y^{i_1} ad_X^{i_0} Y`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IndexTuple(pub Vec<usize>);

impl IndexTuple {
    /// `i_0 + i_1 + 2 i_2 + ... + n i_n`
    pub fn weight(&self) -> usize {
        self.0.iter().enumerate().map(|(m, &i)| m.max(1) * i).sum()
    }
}

/// All `(n+1)`-tuples of `I_n` in lexicographic order: weighted sum `n` and
/// every prefix `j < n` with weighted sum at least `j + 1`.
pub fn enumerate_index_set(n: usize) -> Vec<IndexTuple> {
    fn go(n: usize, pos: usize, partial: usize, cur: &mut Vec<usize>, out: &mut Vec<IndexTuple>) {
        if pos == n + 1 {
            if partial == n {
                out.push(IndexTuple(cur.clone()));
            }
            return;
        }
        let w = pos.max(1);
        let mut i = 0;
        while partial + w * i <= n {
            let sum = partial + w * i;
            // prefix condition for j = pos
            if pos == n || sum > pos {
                cur.push(i);
                go(n, pos + 1, sum, cur, out);
                cur.pop();
            }
            i += 1;
        }
    }
    if n == 0 {
        return Vec::new();
    }
    let mut out = Vec::new();
    go(n, 0, 0, &mut Vec::with_capacity(n + 1), &mut out);
    out
}

/// `C_{n+1}` from the index-set sum over `I_n`, using `prior = [C_2, ..., C_n]`.
pub fn term_via_index_formula(n: usize, prior: &[LiePolynomial]) -> Result<LiePolynomial> {
    if n == 0 {
        return Err(Error::InvalidIndex("index formula needs n >= 1".into()));
    }
    if prior.len() + 1 < n {
        return Err(Error::MissingExponent(prior.len() + 2));
    }
    let x = LiePolynomial::x();
    let y = LiePolynomial::y();
    let mut acc = LiePolynomial::zero();
    for tuple in enumerate_index_set(n) {
        let idx = &tuple.0;
        let mut word = LiePolynomial::ad_power(&x, idx[0], &y);
        word = LiePolynomial::ad_power(&y, idx[1], &word);
        for m in 2..=n {
            if idx[m] > 0 {
                word = LiePolynomial::ad_power(&prior[m - 2], idx[m], &word);
            }
        }
        let total: usize = idx.iter().sum();
        let mut c = ExactRational::sign_power(total);
        for &i in idx {
            c *= &ExactRational::inv_factorial(i);
        }
        acc.add_scaled(&word, &c);
    }
    Ok(acc.scale(&ExactRational::new(1, n as i64 + 1)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(s: &str) -> LiePolynomial {
        s.parse().unwrap()
    }

    #[test]
    fn f1_small_cases() {
        let mut e = SeriesEngine::new();
        assert_eq!(*e.f1(1).unwrap(), poly("(-1)[X,Y]"));
        assert_eq!(*e.f1(2).unwrap(), poly("(1/2)[X,[X,Y]] + (1)[Y,[X,Y]]"));
        assert!(e.f1(0).is_err());
    }

    #[test]
    fn f_rejects_missing_exponent() {
        let mut e = SeriesEngine::new();
        assert_eq!(e.f(2, 3).unwrap_err(), Error::MissingExponent(2));
        assert!(e.f(3, 2).is_err());
    }

    #[test]
    fn f22_is_single_summand() {
        let mut e = SeriesEngine::new();
        e.zassenhaus_term(2).unwrap();
        let f22 = e.f(2, 2).unwrap();
        let f12 = e.f1(2).unwrap();
        assert_eq!(*f22, *f12);
    }

    #[test]
    fn f24_hand_unrolled() {
        let mut e = SeriesEngine::new();
        let c2 = e.zassenhaus_term(2).unwrap();
        let f14 = e.f1(4).unwrap();
        let f12 = e.f1(2).unwrap();
        let expect = f14.add(&c2.bracket(&f12).scale(&-ExactRational::one()));
        assert_eq!(*e.f(2, 4).unwrap(), expect);
        let c5 = e.zassenhaus_term(5).unwrap();
        assert_eq!(expect.scale(&ExactRational::new(1, 5)), c5);
    }

    #[test]
    fn zassenhaus_term_rejects_small_n() {
        let mut e = SeriesEngine::new();
        assert!(e.zassenhaus_term(1).is_err());
        assert!(e.zassenhaus_term(0).is_err());
        assert!(zassenhaus_series(1).is_err());
    }

    #[test]
    fn table_entries_respect_shape() {
        let mut e = SeriesEngine::new();
        e.zassenhaus_term(12).unwrap();
        for &(n, k) in e.table().keys() {
            assert!(k >= n);
            assert!(e.table().get(n, k).unwrap().is_homogeneous(k + 1));
        }
        // rows n <= max(1, (N-1)/2), columns k <= N-1
        assert!(e.table().keys().all(|&(n, k)| n <= 5 && k <= 11));
    }

    #[test]
    fn small_index_sets() {
        assert_eq!(enumerate_index_set(1), vec![IndexTuple(vec![1, 0])]);
        assert_eq!(
            enumerate_index_set(2),
            vec![IndexTuple(vec![1, 1, 0]), IndexTuple(vec![2, 0, 0])]
        );
        assert!(enumerate_index_set(0).is_empty());
    }

    #[test]
    fn left_orientation_signs() {
        let s = zassenhaus_series(3).unwrap();
        let l = left_oriented(&s);
        assert_eq!(l.orientation, Orientation::Left);
        assert_eq!(l.exponent(2).unwrap(), &poly("(1/2)[X,Y]"));
        assert_eq!(l.exponent(3), s.exponent(3));
        assert_eq!(left_oriented(&l), s);
    }
}
