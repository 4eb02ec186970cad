//! Commutator trees over the generators `X`, `Y` and their linear
//! combinations with exact rational coefficients.
//!
//! Like terms merge only when their trees are structurally identical. No
//! antisymmetry or Jacobi rewriting is ever applied, so `[X,Y]` and `[Y,X]`
//! are distinct keys.

use std::collections::HashMap;
use std::fmt;
use std::hash::{BuildHasherDefault, Hash, Hasher};
use std::str::FromStr;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::rational::ExactRational;
use crate::words::{NCPolynomial, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Generator {
    X,
    Y,
}

impl Generator {
    pub fn symbol(self) -> char {
        match self {
            Generator::X => 'X',
            Generator::Y => 'Y',
        }
    }
}

#[derive(Debug)]
enum Shape {
    Leaf(Generator),
    Bracket(CommutatorTerm, CommutatorTerm),
}

#[derive(Debug)]
struct Node {
    shape: Shape,
    degree: u32,
    hash: u64,
}

/// A binary bracket tree with leaves in `{X, Y}`.
///
/// Cloning is cheap (shared subtrees); the structural hash is computed once
/// at construction.
#[derive(Clone)]
pub struct CommutatorTerm(Arc<Node>);

fn mix(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

impl CommutatorTerm {
    pub fn generator(g: Generator) -> Self {
        let hash = match g {
            Generator::X => mix(0x5851_f42d_4c95_7f2d),
            Generator::Y => mix(0x1405_7b7e_f767_814f),
        };
        CommutatorTerm(Arc::new(Node {
            shape: Shape::Leaf(g),
            degree: 1,
            hash,
        }))
    }

    pub fn x() -> Self {
        Self::generator(Generator::X)
    }

    pub fn y() -> Self {
        Self::generator(Generator::Y)
    }

    /// The bracket `[left, right]` as a new tree.
    pub fn bracket(left: &CommutatorTerm, right: &CommutatorTerm) -> Self {
        let hash = mix(left.0.hash ^ mix(right.0.hash.wrapping_add(0x9e37_79b9_7f4a_7c15)));
        CommutatorTerm(Arc::new(Node {
            shape: Shape::Bracket(left.clone(), right.clone()),
            degree: left.0.degree + right.0.degree,
            hash,
        }))
    }

    /// Number of leaves.
    pub fn degree(&self) -> usize {
        self.0.degree as usize
    }

    pub fn as_generator(&self) -> Option<Generator> {
        match self.0.shape {
            Shape::Leaf(g) => Some(g),
            Shape::Bracket(..) => None,
        }
    }

    pub fn children(&self) -> Option<(&CommutatorTerm, &CommutatorTerm)> {
        match &self.0.shape {
            Shape::Leaf(_) => None,
            Shape::Bracket(l, r) => Some((l, r)),
        }
    }

    /// Count of `X` and `Y` leaves.
    pub fn letter_counts(&self) -> (usize, usize) {
        match &self.0.shape {
            Shape::Leaf(Generator::X) => (1, 0),
            Shape::Leaf(Generator::Y) => (0, 1),
            Shape::Bracket(l, r) => {
                let (a, b) = l.letter_counts();
                let (c, d) = r.letter_counts();
                (a + c, b + d)
            }
        }
    }

    fn write_canonical(&self, out: &mut String) {
        match &self.0.shape {
            Shape::Leaf(g) => out.push(g.symbol()),
            Shape::Bracket(l, r) => {
                out.push('[');
                l.write_canonical(out);
                out.push(',');
                r.write_canonical(out);
                out.push(']');
            }
        }
    }

    /// Fully parenthesized form, e.g. `[X,[X,Y]]`.
    pub fn canonical(&self) -> String {
        let mut s = String::with_capacity(4 * self.degree());
        self.write_canonical(&mut s);
        s
    }

    /// The associative expansion with `[A,B] -> AB - BA`, as sorted
    /// `(word, integer coefficient)` pairs with zero entries removed.
    pub fn word_expansion(&self) -> Vec<(Word, i64)> {
        let mut map: HashMap<Word, i64> = HashMap::new();
        for (w, c) in self.expand_raw() {
            *map.entry(w).or_insert(0) += c;
        }
        let mut v: Vec<_> = map.into_iter().filter(|&(_, c)| c != 0).collect();
        v.sort_unstable();
        v
    }

    fn expand_raw(&self) -> Vec<(Word, i64)> {
        match &self.0.shape {
            Shape::Leaf(g) => vec![(Word::letter(*g), 1)],
            Shape::Bracket(l, r) => {
                let a = l.expand_raw();
                let b = r.expand_raw();
                let mut out = Vec::with_capacity(2 * a.len() * b.len());
                for (wa, ca) in &a {
                    for (wb, cb) in &b {
                        out.push((wa.concat(wb), ca * cb));
                        out.push((wb.concat(wa), -ca * cb));
                    }
                }
                out
            }
        }
    }
}

impl PartialEq for CommutatorTerm {
    fn eq(&self, other: &Self) -> bool {
        if Arc::ptr_eq(&self.0, &other.0) {
            return true;
        }
        if self.0.hash != other.0.hash || self.0.degree != other.0.degree {
            return false;
        }
        match (&self.0.shape, &other.0.shape) {
            (Shape::Leaf(a), Shape::Leaf(b)) => a == b,
            (Shape::Bracket(a, b), Shape::Bracket(c, d)) => a == c && b == d,
            _ => false,
        }
    }
}

impl Eq for CommutatorTerm {}

impl Hash for CommutatorTerm {
    fn hash<H: Hasher>(&self, state: &mut H) {
        state.write_u64(self.0.hash);
    }
}

impl fmt::Display for CommutatorTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.canonical())
    }
}

impl fmt::Debug for CommutatorTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.canonical())
    }
}

struct TermParser<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl TermParser<'_> {
    fn err(&self, msg: &str) -> Error {
        Error::Parse {
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

    fn expect(&mut self, b: u8) -> Result<()> {
        if self.bytes.get(self.pos) == Some(&b) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(&format!("expected '{}'", b as char)))
        }
    }

    fn term(&mut self) -> Result<CommutatorTerm> {
        match self.bytes.get(self.pos) {
            Some(b'X') => {
                self.pos += 1;
                Ok(CommutatorTerm::x())
            }
            Some(b'Y') => {
                self.pos += 1;
                Ok(CommutatorTerm::y())
            }
            Some(b'[') => {
                self.pos += 1;
                let l = self.term()?;
                self.expect(b',')?;
                let r = self.term()?;
                self.expect(b']')?;
                Ok(CommutatorTerm::bracket(&l, &r))
            }
            _ => Err(self.err("expected 'X', 'Y' or '['")),
        }
    }
}

impl FromStr for CommutatorTerm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut p = TermParser {
            bytes: s.as_bytes(),
            pos: 0,
        };
        let t = p.term()?;
        if p.pos != s.len() {
            return Err(p.err("trailing input"));
        }
        Ok(t)
    }
}

/// Hasher for keys that already carry a well-mixed 64-bit hash.
#[derive(Default)]
pub struct PrehashedHasher(u64);

impl Hasher for PrehashedHasher {
    fn finish(&self) -> u64 {
        self.0
    }

    fn write(&mut self, bytes: &[u8]) {
        for &b in bytes {
            self.0 = (self.0 ^ b as u64).wrapping_mul(0x0100_0000_01b3);
        }
    }

    fn write_u64(&mut self, n: u64) {
        self.0 = n;
    }
}

type TermMap = HashMap<CommutatorTerm, ExactRational, BuildHasherDefault<PrehashedHasher>>;

/// Finite linear combination of commutator trees. The empty polynomial is 0
/// and no zero coefficient is ever stored.
#[derive(Clone, Default)]
pub struct LiePolynomial {
    terms: TermMap,
}

impl LiePolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn generator(g: Generator) -> Self {
        Self::from_term(CommutatorTerm::generator(g), ExactRational::one())
    }

    pub fn x() -> Self {
        Self::generator(Generator::X)
    }

    pub fn y() -> Self {
        Self::generator(Generator::Y)
    }

    pub fn from_term(term: CommutatorTerm, coefficient: ExactRational) -> Self {
        let mut p = Self::zero();
        p.add_term(term, coefficient);
        p
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, term: &CommutatorTerm) -> Option<&ExactRational> {
        self.terms.get(term)
    }

    /// Unordered iteration; use [`LiePolynomial::sorted_terms`] for output.
    pub fn iter(&self) -> impl Iterator<Item = (&CommutatorTerm, &ExactRational)> {
        self.terms.iter()
    }

    /// Terms ordered by degree, then by canonical string.
    pub fn sorted_terms(&self) -> Vec<(&CommutatorTerm, &ExactRational)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by_cached_key(|(t, _)| (t.degree(), t.canonical()));
        v
    }

    pub fn add_term(&mut self, term: CommutatorTerm, coefficient: ExactRational) {
        if coefficient.is_zero() {
            return;
        }
        use std::collections::hash_map::Entry;
        match self.terms.entry(term) {
            Entry::Occupied(mut e) => {
                *e.get_mut() += &coefficient;
                if e.get().is_zero() {
                    e.remove();
                }
            }
            Entry::Vacant(e) => {
                e.insert(coefficient);
            }
        }
    }

    /// `self += scale * other`, merging like terms in place.
    pub fn add_scaled(&mut self, other: &LiePolynomial, scale: &ExactRational) {
        if scale.is_zero() {
            return;
        }
        self.terms.reserve(other.len());
        for (t, c) in &other.terms {
            self.add_term(t.clone(), c * scale);
        }
    }

    pub fn add(&self, other: &LiePolynomial) -> LiePolynomial {
        let mut out = self.clone();
        out.add_scaled(other, &ExactRational::one());
        out
    }

    pub fn scale(&self, c: &ExactRational) -> LiePolynomial {
        if c.is_zero() {
            return Self::zero();
        }
        LiePolynomial {
            terms: self.terms.iter().map(|(t, v)| (t.clone(), v * c)).collect(),
        }
    }

    /// Bilinear extension of the tree pairing `(s, t) -> [s, t]`.
    pub fn bracket(&self, other: &LiePolynomial) -> LiePolynomial {
        // Distinct (s, t) pairs give distinct trees, so nothing merges here.
        let mut terms = TermMap::default();
        terms.reserve(self.len() * other.len());
        for (s, a) in &self.terms {
            for (t, b) in &other.terms {
                terms.insert(CommutatorTerm::bracket(s, t), a * b);
            }
        }
        LiePolynomial { terms }
    }

    /// `ad_A^j B = [A, ad_A^{j-1} B]`, `ad_A^0 B = B`.
    pub fn ad_power(a: &LiePolynomial, j: usize, b: &LiePolynomial) -> LiePolynomial {
        let mut out = b.clone();
        for _ in 0..j {
            out = a.bracket(&out);
        }
        out
    }

    pub fn max_degree(&self) -> usize {
        self.terms
            .keys()
            .map(CommutatorTerm::degree)
            .max()
            .unwrap_or(0)
    }

    /// True when every term has exactly degree `n` (vacuously true for 0).
    pub fn is_homogeneous(&self, n: usize) -> bool {
        self.terms.keys().all(|t| t.degree() == n)
    }

    /// Replaces each bracket `[A,B]` by `AB - BA` in the word algebra
    /// truncated at `truncation`.
    pub fn expand_to_words(&self, truncation: usize) -> Result<NCPolynomial> {
        let mut out = NCPolynomial::zero(truncation);
        for (t, c) in &self.terms {
            if t.degree() > truncation {
                return Err(Error::DegreeOverflow {
                    degree: t.degree(),
                    limit: truncation,
                });
            }
            for (w, k) in t.word_expansion() {
                out.add_word(w, c * &ExactRational::from(k));
            }
        }
        Ok(out)
    }
}

impl PartialEq for LiePolynomial {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms
    }
}

impl Eq for LiePolynomial {}

/// Renders as `(c1)t1 + (c2)t2 + ...` in sorted order, `0` when empty.
impl fmt::Display for LiePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("0");
        }
        for (i, (t, c)) in self.sorted_terms().into_iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "({c}){t}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for LiePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Parses the [`Display`](fmt::Display) rendering back.
impl FromStr for LiePolynomial {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut p = LiePolynomial::zero();
        if s == "0" {
            return Ok(p);
        }
        for piece in s.split(" + ") {
            let piece = piece.trim();
            let rest = piece.strip_prefix('(').ok_or(Error::Parse {
                pos: 0,
                msg: format!("expected '(' in {piece:?}"),
            })?;
            let (c, t) = rest.split_once(')').ok_or(Error::Parse {
                pos: 0,
                msg: format!("expected ')' in {piece:?}"),
            })?;
            p.add_term(t.parse()?, c.parse()?);
        }
        Ok(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(p: i64, q: i64) -> ExactRational {
        ExactRational::new(p, q)
    }

    fn t(s: &str) -> CommutatorTerm {
        s.parse().unwrap()
    }

    fn xy() -> LiePolynomial {
        LiePolynomial::x().bracket(&LiePolynomial::y())
    }

    #[test]
    fn add_cancels_to_empty() {
        let a = xy().scale(&r(-1, 2));
        let b = xy().scale(&r(1, 2));
        assert!(a.add(&b).is_empty());
    }

    #[test]
    fn add_builds_c3() {
        let a = LiePolynomial::from_term(t("[Y,[X,Y]]"), r(1, 3));
        let b = LiePolynomial::from_term(t("[X,[X,Y]]"), r(1, 6));
        let c = a.add(&b);
        assert_eq!(c.len(), 2);
        assert_eq!(c.to_string(), "(1/6)[X,[X,Y]] + (1/3)[Y,[X,Y]]");
    }

    #[test]
    fn add_merges_like_terms() {
        let c = xy().scale(&r(2, 1)).add(&xy().scale(&r(3, 1)));
        assert_eq!(c, xy().scale(&r(5, 1)));
    }

    #[test]
    fn scale_examples() {
        let c3: LiePolynomial = "(1/3)[Y,[X,Y]] + (1/6)[X,[X,Y]]".parse().unwrap();
        assert!(c3.scale(&ExactRational::zero()).is_empty());
        assert_eq!(xy().scale(&r(-1, 1)).scale(&r(1, 2)), xy().scale(&r(-1, 2)));
        let p = LiePolynomial::from_term(t("[X,[X,Y]]"), r(1, 6));
        assert_eq!(
            p.scale(&r(-1, 1)),
            LiePolynomial::from_term(t("[X,[X,Y]]"), r(-1, 6))
        );
    }

    #[test]
    fn bracket_examples() {
        assert_eq!(xy().to_string(), "(1)[X,Y]");
        assert!(LiePolynomial::x()
            .bracket(&LiePolynomial::zero())
            .is_empty());
        let b = xy().scale(&r(-1, 2)).bracket(&LiePolynomial::y());
        assert_eq!(b, LiePolynomial::from_term(t("[[X,Y],Y]"), r(-1, 2)));
    }

    #[test]
    fn no_antisymmetry_rewriting() {
        let yx = LiePolynomial::y().bracket(&LiePolynomial::x());
        assert_eq!(xy().add(&yx).len(), 2);
        assert_eq!(LiePolynomial::x().bracket(&LiePolynomial::x()).len(), 1);
    }

    #[test]
    fn ad_power_examples() {
        let x = LiePolynomial::x();
        let y = LiePolynomial::y();
        assert_eq!(LiePolynomial::ad_power(&x, 0, &y), y);
        assert_eq!(
            LiePolynomial::ad_power(&x, 2, &y),
            LiePolynomial::from_term(t("[X,[X,Y]]"), ExactRational::one())
        );
        let c2 = xy().scale(&r(-1, 2));
        assert_eq!(
            LiePolynomial::ad_power(&c2, 1, &y),
            LiePolynomial::from_term(t("[[X,Y],Y]"), r(-1, 2))
        );
    }

    #[test]
    fn expand_examples() {
        assert_eq!(xy().expand_to_words(2).unwrap().to_string(), "XY - YX");
        assert_eq!(
            xy().scale(&r(-1, 2))
                .expand_to_words(2)
                .unwrap()
                .to_string(),
            "-1/2 XY + 1/2 YX"
        );
        let xxy = LiePolynomial::from_term(t("[X,[X,Y]]"), ExactRational::one());
        assert_eq!(
            xxy.expand_to_words(3).unwrap().to_string(),
            "XXY - 2 XYX + YXX"
        );
    }

    #[test]
    fn expand_rejects_overflow() {
        let xxy = LiePolynomial::from_term(t("[X,[X,Y]]"), ExactRational::one());
        assert_eq!(
            xxy.expand_to_words(2),
            Err(Error::DegreeOverflow {
                degree: 3,
                limit: 2
            })
        );
    }

    #[test]
    fn term_grammar() {
        assert_eq!(t("[[X,Y],[Y,[X,Y]]]").degree(), 5);
        assert_eq!(t("[[X,Y],[Y,[X,Y]]]").letter_counts(), (2, 3));
        for bad in ["", "Z", "[X,Y", "[X Y]", "[X,Y]]", " X"] {
            assert!(bad.parse::<CommutatorTerm>().is_err(), "{bad:?}");
        }
    }

    #[test]
    fn display_parse_round_trip() {
        let s = "(-1/24)[X,[X,[X,Y]]] + (-1/8)[Y,[X,[X,Y]]] + (-1/8)[Y,[Y,[X,Y]]]";
        let p: LiePolynomial = s.parse().unwrap();
        assert_eq!(p.to_string(), s);
        assert_eq!("0".parse::<LiePolynomial>().unwrap(), LiePolynomial::zero());
    }
}
