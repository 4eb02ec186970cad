//! Truncated noncommutative polynomials over words in `{X, Y}`.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::lie::Generator;
use crate::rational::ExactRational;

/// Maximum word length representable by [`Word`].
pub const MAX_WORD_LEN: usize = 63;

/// A word over `{X, Y}`, packed as bits (`X = 0`, `Y = 1`, first letter most
/// significant). Ordering is by length, then lexicographic with `X < Y`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    len: u8,
    bits: u64,
}

impl Word {
    pub const EMPTY: Word = Word { len: 0, bits: 0 };

    pub fn letter(g: Generator) -> Word {
        Word {
            len: 1,
            bits: matches!(g, Generator::Y) as u64,
        }
    }

    pub fn len(&self) -> usize {
        self.len as usize
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Dense index among words of the same length.
    pub fn index(&self) -> usize {
        self.bits as usize
    }

    pub fn concat(&self, other: &Word) -> Word {
        debug_assert!(self.len() + other.len() <= MAX_WORD_LEN);
        Word {
            len: self.len + other.len,
            bits: (self.bits << other.len) | other.bits,
        }
    }

    pub fn letters(&self) -> impl Iterator<Item = Generator> + '_ {
        (0..self.len).rev().map(move |i| {
            if (self.bits >> i) & 1 == 1 {
                Generator::Y
            } else {
                Generator::X
            }
        })
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for g in self.letters() {
            write!(f, "{}", g.symbol())?;
        }
        Ok(())
    }
}

impl std::str::FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Word> {
        if s.len() > MAX_WORD_LEN {
            return Err(Error::InvalidArgument(format!(
                "word too long: {}",
                s.len()
            )));
        }
        let mut w = Word::EMPTY;
        for (pos, ch) in s.chars().enumerate() {
            let g = match ch {
                'X' => Generator::X,
                'Y' => Generator::Y,
                _ => {
                    return Err(Error::Parse {
                        pos,
                        msg: format!("unexpected letter {ch:?}"),
                    })
                }
            };
            w = w.concat(&Word::letter(g));
        }
        Ok(w)
    }
}

/// Element of the free associative algebra on `{X, Y}` modulo words longer
/// than `truncation`.
#[derive(Clone, PartialEq, Eq)]
pub struct NCPolynomial {
    truncation: usize,
    coeffs: HashMap<Word, ExactRational>,
}

impl NCPolynomial {
    pub fn zero(truncation: usize) -> Self {
        assert!(truncation <= MAX_WORD_LEN, "truncation degree too large");
        NCPolynomial {
            truncation,
            coeffs: HashMap::new(),
        }
    }

    pub fn one(truncation: usize) -> Self {
        let mut p = Self::zero(truncation);
        p.add_word(Word::EMPTY, ExactRational::one());
        p
    }

    pub fn generator(g: Generator, truncation: usize) -> Self {
        let mut p = Self::zero(truncation);
        p.add_word(Word::letter(g), ExactRational::one());
        p
    }

    pub fn truncation(&self) -> usize {
        self.truncation
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    pub fn coefficient(&self, w: &Word) -> ExactRational {
        self.coeffs.get(w).cloned().unwrap_or_default()
    }

    pub fn constant_term(&self) -> ExactRational {
        self.coefficient(&Word::EMPTY)
    }

    /// Adds `c * w`; words beyond the truncation degree are dropped.
    pub fn add_word(&mut self, w: Word, c: ExactRational) {
        if c.is_zero() || w.len() > self.truncation {
            return;
        }
        use std::collections::hash_map::Entry;
        match self.coeffs.entry(w) {
            Entry::Occupied(mut e) => {
                *e.get_mut() += &c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
            Entry::Vacant(e) => {
                e.insert(c);
            }
        }
    }

    pub fn sorted_words(&self) -> Vec<(&Word, &ExactRational)> {
        let mut v: Vec<_> = self.coeffs.iter().collect();
        v.sort_unstable_by_key(|(w, _)| **w);
        v
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Word, &ExactRational)> {
        self.coeffs.iter()
    }

    /// Length of the shortest word with nonzero coefficient.
    pub fn lowest_degree(&self) -> Option<usize> {
        self.coeffs.keys().map(Word::len).min()
    }

    pub fn add(&self, other: &NCPolynomial) -> NCPolynomial {
        let mut out = self.clone();
        out.truncation = self.truncation.min(other.truncation);
        out.coeffs.retain(|w, _| w.len() <= out.truncation);
        for (w, c) in &other.coeffs {
            out.add_word(*w, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &NCPolynomial) -> NCPolynomial {
        self.add(&other.scale(&-ExactRational::one()))
    }

    pub fn scale(&self, c: &ExactRational) -> NCPolynomial {
        let mut out = NCPolynomial::zero(self.truncation);
        if c.is_zero() {
            return out;
        }
        out.coeffs = self.coeffs.iter().map(|(w, v)| (*w, v * c)).collect();
        out
    }

    /// Concatenation product, discarding words longer than the truncation.
    pub fn mul(&self, other: &NCPolynomial) -> NCPolynomial {
        let truncation = self.truncation.min(other.truncation);
        let mut by_len: Vec<Vec<(&Word, &ExactRational)>> = vec![Vec::new(); truncation + 1];
        for (w, c) in &other.coeffs {
            if w.len() <= truncation {
                by_len[w.len()].push((w, c));
            }
        }
        let mut out = NCPolynomial::zero(truncation);
        for (wa, ca) in &self.coeffs {
            if wa.len() > truncation {
                continue;
            }
            for bucket in &by_len[..=truncation - wa.len()] {
                for (wb, cb) in bucket {
                    out.add_word(wa.concat(wb), ca * *cb);
                }
            }
        }
        out
    }
}

/// Renders as e.g. `1 + X + 1/2 XX` or `XY - YX`; `0` when empty.
impl fmt::Display for NCPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.sorted_words();
        if terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (w, c)) in terms.into_iter().enumerate() {
            let neg = c.is_negative();
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let a = c.abs();
            if w.is_empty() {
                write!(f, "{a}")?;
            } else if a == ExactRational::one() {
                write!(f, "{w}")?;
            } else {
                write!(f, "{a} {w}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for NCPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod deg > {})", self, self.truncation)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn word_concat_and_order() {
        assert_eq!(w("XY").concat(&w("YX")), w("XYYX"));
        assert_eq!(w("XYYX").to_string(), "XYYX");
        assert!(w("Y") < w("XX"));
        assert!(w("XY") < w("YX"));
        assert!(w("") < w("X"));
    }

    #[test]
    fn product_truncates() {
        let x = NCPolynomial::generator(Generator::X, 2);
        let y = NCPolynomial::generator(Generator::Y, 2);
        let xy = x.mul(&y);
        assert_eq!(xy.to_string(), "XY");
        assert!(xy.mul(&x).is_zero());
        assert_eq!(x.add(&y).mul(&x.add(&y)).to_string(), "XX + XY + YX + YY");
    }

    #[test]
    fn no_zero_entries() {
        let x = NCPolynomial::generator(Generator::X, 3);
        let d = x.sub(&x);
        assert!(d.is_zero());
        assert_eq!(d.to_string(), "0");
    }
}
