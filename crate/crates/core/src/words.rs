//! Words in the Humphrey generators `T_alpha`, `T_beta_i` and the central
//! letter `t`, together with constructors for every relator family used by
//! the presentations of the pure mapping class group of the punctured torus.
//!
//! Orientation: the leftmost letter of a word is applied last when the word
//! acts on an object, so `a b1` means "first `b1`, then `a`".

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("index {index} out of range 1..={n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("n must be at least {min}, got {n}")]
    TooFewPunctures { n: usize, min: usize },
    #[error("({i}, {j}, {k}) is not cyclically ordered in Z/{n}")]
    NotCyclicTriple {
        i: usize,
        j: usize,
        k: usize,
        n: usize,
    },
    #[error("variant {variant} requires n = 2, got n = {n}")]
    VariantNeedsTwo { variant: Variant, n: usize },
    #[error("parse error at token {position} ({token:?}): {reason}")]
    Parse {
        position: usize,
        token: String,
        reason: String,
    },
}

/// A residue in `1..=n`, the cyclic index set of the punctures.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CyclicIndex {
    value: usize,
    n: usize,
}

impl CyclicIndex {
    pub fn new(value: usize, n: usize) -> Result<Self, WordError> {
        if n == 0 || value == 0 || value > n {
            return Err(WordError::IndexOutOfRange { index: value, n });
        }
        Ok(CyclicIndex { value, n })
    }

    /// Reduces any integer to its representative in `1..=n`.
    pub fn wrap(raw: i64, n: usize) -> Self {
        assert!(n > 0, "modulus must be positive");
        let m = n as i64;
        let value = ((raw - 1).rem_euclid(m) + 1) as usize;
        CyclicIndex { value, n }
    }

    pub fn value(self) -> usize {
        self.value
    }

    pub fn modulus(self) -> usize {
        self.n
    }

    pub fn succ(self) -> Self {
        self.offset(1)
    }

    pub fn pred(self) -> Self {
        self.offset(-1)
    }

    pub fn offset(self, by: i64) -> Self {
        CyclicIndex::wrap(self.value as i64 + by, self.n)
    }

    /// Forward cyclic distance from `self` to `other`, in `0..n`.
    pub fn distance_to(self, other: CyclicIndex) -> usize {
        debug_assert_eq!(self.n, other.n);
        (other.value + self.n - self.value) % self.n
    }
}

impl fmt::Display for CyclicIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

/// `i ≼ j ≼ k` (non-strict) or `i ≺ j ≺ k` (strict) in the cyclic order.
///
/// Reading forward from `i`, `j` must be met no later than `k`. The strict
/// variant additionally requires the three indices to be distinct.
pub fn is_cyclic_triple(i: CyclicIndex, j: CyclicIndex, k: CyclicIndex, strict: bool) -> bool {
    if strict && (i == j || j == k || i == k) {
        return false;
    }
    i.distance_to(j) <= i.distance_to(k)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Generator {
    Alpha,
    Beta(usize),
    Central,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub generator: Generator,
    pub inverse: bool,
}

impl Letter {
    pub const fn new(generator: Generator, inverse: bool) -> Self {
        Letter { generator, inverse }
    }

    pub const fn alpha() -> Self {
        Letter::new(Generator::Alpha, false)
    }

    pub const fn beta(i: usize) -> Self {
        Letter::new(Generator::Beta(i), false)
    }

    pub const fn central() -> Self {
        Letter::new(Generator::Central, false)
    }

    pub fn exponent(self) -> i32 {
        if self.inverse {
            -1
        } else {
            1
        }
    }

    pub fn inv(self) -> Self {
        Letter {
            generator: self.generator,
            inverse: !self.inverse,
        }
    }

    pub fn is_inverse_of(self, other: Letter) -> bool {
        self.generator == other.generator && self.inverse != other.inverse
    }

    pub fn check(self, n: usize) -> Result<(), WordError> {
        match self.generator {
            Generator::Beta(i) if i == 0 || i > n => {
                Err(WordError::IndexOutOfRange { index: i, n })
            }
            _ => Ok(()),
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.generator {
            Generator::Alpha => write!(f, "a")?,
            Generator::Beta(i) => write!(f, "b{i}")?,
            Generator::Central => write!(f, "t")?,
        }
        if self.inverse {
            write!(f, "'")?;
        }
        Ok(())
    }
}

impl FromStr for Letter {
    type Err = String;

    fn from_str(token: &str) -> Result<Self, Self::Err> {
        let (body, inverse) = match token.strip_suffix('\'') {
            Some(body) => (body, true),
            None => (token, false),
        };
        let generator = match body {
            "a" => Generator::Alpha,
            "t" => Generator::Central,
            _ => {
                let digits = body
                    .strip_prefix('b')
                    .ok_or_else(|| "expected a, b<i> or t".to_string())?;
                let i: usize = digits
                    .parse()
                    .map_err(|_| format!("bad beta index {digits:?}"))?;
                if i == 0 {
                    return Err("beta indices start at 1".into());
                }
                Generator::Beta(i)
            }
        };
        Ok(Letter { generator, inverse })
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(pub Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn from_letters(letters: impl IntoIterator<Item = Letter>) -> Self {
        Word(letters.into_iter().collect())
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn check(&self, n: usize) -> Result<(), WordError> {
        self.0.iter().try_for_each(|l| l.check(n))
    }

    /// Reverse and flip every exponent.
    pub fn invert(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.inv()).collect())
    }

    /// Stack-based free reduction.
    pub fn free_reduce(&self) -> Word {
        let mut out: Vec<Letter> = Vec::with_capacity(self.0.len());
        for &l in &self.0 {
            match out.last() {
                Some(&top) if top.is_inverse_of(l) => {
                    out.pop();
                }
                _ => out.push(l),
            }
        }
        Word(out)
    }

    pub fn is_freely_reduced(&self) -> bool {
        self.0.windows(2).all(|w| !w[0].is_inverse_of(w[1]))
    }

    /// Free reduction followed by stripping inverse pairs at the two ends.
    pub fn cyclically_reduce(&self) -> Word {
        let mut w = self.free_reduce().0;
        while w.len() >= 2 && w[0].is_inverse_of(w[w.len() - 1]) {
            w.pop();
            w.remove(0);
        }
        Word(w)
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = self.0.clone();
        letters.extend_from_slice(&other.0);
        Word(letters)
    }

    pub fn pow(&self, k: usize) -> Word {
        Word(
            std::iter::repeat_n(self.0.iter().copied(), k)
                .flatten()
                .collect(),
        )
    }

    pub fn rotate(&self, by: usize) -> Word {
        let mut letters = self.0.clone();
        if !letters.is_empty() {
            let by = by % letters.len();
            letters.rotate_left(by);
        }
        Word(letters)
    }

    /// True if `other` is a cyclic rotation of `self`.
    pub fn is_rotation_of(&self, other: &Word) -> bool {
        if self.len() != other.len() {
            return false;
        }
        if self.is_empty() {
            return true;
        }
        (0..self.len()).any(|r| self.rotate(r) == *other)
    }
}

impl std::ops::Mul for &Word {
    type Output = Word;

    fn mul(self, rhs: &Word) -> Word {
        self.concat(rhs)
    }
}

impl FromIterator<Letter> for Word {
    fn from_iter<T: IntoIterator<Item = Letter>>(iter: T) -> Self {
        Word(iter.into_iter().collect())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (idx, l) in self.0.iter().enumerate() {
            if idx > 0 {
                write!(f, " ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = WordError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.split_whitespace()
            .enumerate()
            .map(|(position, token)| {
                token.parse::<Letter>().map_err(|reason| WordError::Parse {
                    position,
                    token: token.to_string(),
                    reason,
                })
            })
            .collect::<Result<Vec<_>, _>>()
            .map(Word)
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Word {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl Serialize for Letter {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Letter {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Shorthand used by the constructors below.
fn b(i: CyclicIndex) -> Letter {
    Letter::beta(i.value())
}

const A: Letter = Letter::alpha();

/// A named claim `lhs = rhs` in the target group.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Relator {
    pub name: String,
    pub family: Family,
    pub lhs: Word,
    pub rhs: Word,
}

impl Relator {
    pub fn new(name: impl Into<String>, family: Family, lhs: Word, rhs: Word) -> Self {
        Relator {
            name: name.into(),
            family,
            lhs,
            rhs,
        }
    }

    /// `lhs · rhs⁻¹`
    pub fn word(&self) -> Word {
        self.lhs.concat(&self.rhs.invert())
    }

    pub fn check(&self, n: usize) -> Result<(), WordError> {
        self.lhs.check(n)?;
        self.rhs.check(n)
    }
}

/// Relator families, used both to tag relators and to filter suites.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Commutation,
    Braid,
    Commutativity,
    G,
    G2,
    Centrality,
    Star,
    LemmaG,
}

impl Family {
    pub const ALL: [Family; 8] = [
        Family::Commutation,
        Family::Braid,
        Family::Commutativity,
        Family::G,
        Family::G2,
        Family::Centrality,
        Family::Star,
        Family::LemmaG,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Family::Commutation => "commutation",
            Family::Braid => "braid",
            Family::Commutativity => "commutativity",
            Family::G => "g",
            Family::G2 => "g2",
            Family::Centrality => "centrality",
            Family::Star => "star",
            Family::LemmaG => "lemmag",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Family {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Family::ALL
            .into_iter()
            .find(|f| f.as_str().eq_ignore_ascii_case(s))
            .ok_or_else(|| format!("unknown family {s:?}"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Variant {
    /// `PM(T_{n-1,1})`: braid and commutativity relations only.
    Boundary,
    /// `PM(T_n)`: adds the G-relation.
    Punctured,
    /// The central extension by `t`, closing with `G̃`.
    Extended,
    /// `PM(T_2)` closed by `(b1 a b2)^4 = 1`.
    TwoAlt,
    /// The central extension of `PM(T_2)` closed by `(b1 a b2)^4 = t^2`.
    ExtendedTwoAlt,
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Variant::Boundary => "boundary",
            Variant::Punctured => "punctured",
            Variant::Extended => "extended",
            Variant::TwoAlt => "two_alt",
            Variant::ExtendedTwoAlt => "extended_two_alt",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PresentationSpec {
    pub n: usize,
    pub variant: Variant,
}

impl PresentationSpec {
    pub fn new(n: usize, variant: Variant) -> Result<Self, WordError> {
        if n == 0 {
            return Err(WordError::TooFewPunctures { n, min: 1 });
        }
        if matches!(variant, Variant::TwoAlt | Variant::ExtendedTwoAlt) && n != 2 {
            return Err(WordError::VariantNeedsTwo { variant, n });
        }
        Ok(PresentationSpec { n, variant })
    }

    pub fn is_extended(self) -> bool {
        matches!(self.variant, Variant::Extended | Variant::ExtendedTwoAlt)
    }
}

fn idx(i: usize, n: usize) -> Result<CyclicIndex, WordError> {
    CyclicIndex::new(i, n)
}

/// `A_{i,j}`, the twelve-letter product expressing the push of puncture `i`.
pub fn a_word(i: usize, j: usize, n: usize) -> Result<Word, WordError> {
    if n < 2 {
        return Err(WordError::TooFewPunctures { n, min: 2 });
    }
    let i = idx(i, n)?;
    let j = idx(j, n)?;
    let (i1, j1) = (i.succ(), j.succ());
    Ok(Word(vec![
        b(j1),
        A,
        b(i1).inv(),
        b(i),
        A.inv(),
        b(j1).inv(),
        A,
        b(i).inv(),
        b(i1),
        A.inv(),
        b(i1).inv(),
        b(i),
    ]))
}

/// `T_{γ_{i,j}} = A_{i,j} A_{i+1,j} ⋯ A_{j-1,j}`, empty when `i = j`.
pub fn gamma_twist_word(i: usize, j: usize, n: usize) -> Result<Word, WordError> {
    let start = idx(i, n)?;
    let end = idx(j, n)?;
    let mut out = Word::empty();
    let mut cur = start;
    while cur != end {
        out = out.concat(&a_word(cur.value(), end.value(), n)?);
        cur = cur.succ();
    }
    Ok(out)
}

/// `A_{i,i+n-1} A_{i+1,i+n-1} ⋯ A_{i+n-2,i+n-1}`; empty for `n = 1`.
pub fn based_a_product(i: usize, n: usize) -> Result<Word, WordError> {
    let i = idx(i, n)?;
    if n == 1 {
        return Ok(Word::empty());
    }
    gamma_twist_word(i.value(), i.pred().value(), n)
}

/// The inner conjugate of `b_k` appearing in the commutativity relation for
/// the strict cyclic triple `i ≺ j ≺ k`.
pub fn commutativity_inner(j: usize, k: usize, n: usize) -> Result<Word, WordError> {
    let j = idx(j, n)?;
    let k = idx(k, n)?;
    let k1 = k.succ();
    Ok(Word(vec![
        A.inv(),
        b(k1).inv(),
        b(j).inv(),
        A.inv(),
        b(k),
        A,
        b(j),
        b(k1),
        A,
    ]))
}

pub fn commutation_relator(i: usize, j: usize, n: usize) -> Result<Relator, WordError> {
    let (bi, bj) = (b(idx(i, n)?), b(idx(j, n)?));
    Ok(Relator::new(
        format!("commutation(b{i},b{j})"),
        Family::Commutation,
        Word(vec![bi, bj]),
        Word(vec![bj, bi]),
    ))
}

pub fn braid_relator(i: usize, n: usize) -> Result<Relator, WordError> {
    let bi = b(idx(i, n)?);
    Ok(Relator::new(
        format!("braid(a,b{i})"),
        Family::Braid,
        Word(vec![A, bi, A]),
        Word(vec![bi, A, bi]),
    ))
}

pub fn commutativity_relator(i: usize, j: usize, k: usize, n: usize) -> Result<Relator, WordError> {
    let (ci, cj, ck) = (idx(i, n)?, idx(j, n)?, idx(k, n)?);
    if !is_cyclic_triple(ci, cj, ck, true) {
        return Err(WordError::NotCyclicTriple { i, j, k, n });
    }
    let inner = commutativity_inner(j, k, n)?;
    let bi = Word(vec![b(ci)]);
    Ok(Relator::new(
        format!("commutativity({i},{j},{k})"),
        Family::Commutativity,
        bi.concat(&inner),
        inner.concat(&bi),
    ))
}

fn t_squared() -> Word {
    Word(vec![Letter::central(), Letter::central()])
}

fn alpha_beta_sixth(i: CyclicIndex) -> Word {
    Word(vec![A, b(i)]).pow(6)
}

/// `(a b_i)^6 = A_{i,i+n-1} ⋯ A_{i+n-2,i+n-1} t^2`. For `i = 1` this is the
/// closing relation of the extended presentation.
pub fn g_relator_based_at(i: usize, n: usize) -> Result<Relator, WordError> {
    let ci = idx(i, n)?;
    let rhs = based_a_product(i, n)?.concat(&t_squared());
    Ok(Relator::new(
        format!("G~@{i}"),
        Family::LemmaG,
        alpha_beta_sixth(ci),
        rhs,
    ))
}

fn g_tilde(n: usize) -> Result<Relator, WordError> {
    let mut r = g_relator_based_at(1, n)?;
    r.name = "G~".into();
    r.family = Family::G;
    Ok(r)
}

fn g_plain(n: usize) -> Result<Relator, WordError> {
    Ok(Relator::new(
        "G",
        Family::G,
        alpha_beta_sixth(idx(1, n)?),
        based_a_product(1, n)?,
    ))
}

fn g2_word() -> Word {
    Word(vec![Letter::beta(1), A, Letter::beta(2)]).pow(4)
}

/// `(a b_i b_j b_k)^3 = T_{γ_{i,j}} T_{γ_{j,k}} T_{γ_{k,i}}` for `i ≼ j ≼ k`.
pub fn star_relator(i: usize, j: usize, k: usize, n: usize) -> Result<Relator, WordError> {
    let (ci, cj, ck) = (idx(i, n)?, idx(j, n)?, idx(k, n)?);
    if !is_cyclic_triple(ci, cj, ck, false) {
        return Err(WordError::NotCyclicTriple { i, j, k, n });
    }
    let lhs = Word(vec![A, b(ci), b(cj), b(ck)]).pow(3);
    let rhs = if n == 1 {
        Word::empty()
    } else if i == j && j == k {
        // the degenerate star: the γ_{i,i}-product collapses to γ_{i,i-1}
        gamma_twist_word(i, ci.pred().value(), n)?
    } else {
        gamma_twist_word(i, j, n)?
            .concat(&gamma_twist_word(j, k, n)?)
            .concat(&gamma_twist_word(k, i, n)?)
    };
    Ok(Relator::new(
        format!("star({i},{j},{k})"),
        Family::Star,
        lhs,
        rhs,
    ))
}

/// All strict cyclic triples `i ≺ j ≺ k`, ordered by `(i, j, k)`.
pub fn strict_cyclic_triples(n: usize) -> Vec<(usize, usize, usize)> {
    triples(n, true)
}

/// All non-strict cyclic triples `i ≼ j ≼ k`, ordered by `(i, j, k)`.
pub fn cyclic_triples(n: usize) -> Vec<(usize, usize, usize)> {
    triples(n, false)
}

fn triples(n: usize, strict: bool) -> Vec<(usize, usize, usize)> {
    let mut out = Vec::new();
    for i in 1..=n {
        for j in 1..=n {
            for k in 1..=n {
                let c = |v| CyclicIndex::wrap(v as i64, n);
                if is_cyclic_triple(c(i), c(j), c(k), strict) {
                    out.push((i, j, k));
                }
            }
        }
    }
    out
}

/// Commutativity relators, one per strict cyclic triple, dropping any whose
/// relator word is a cyclic rotation of one already emitted.
pub fn commutativity_relators(n: usize) -> Result<Vec<Relator>, WordError> {
    let mut out: Vec<Relator> = Vec::new();
    let mut seen: Vec<Word> = Vec::new();
    for (i, j, k) in strict_cyclic_triples(n) {
        let rel = commutativity_relator(i, j, k, n)?;
        let w = rel.word().cyclically_reduce();
        if seen.iter().any(|s| s.is_rotation_of(&w)) {
            continue;
        }
        seen.push(w);
        out.push(rel);
    }
    Ok(out)
}

pub fn centrality_relators(n: usize) -> Vec<Relator> {
    let t = Word(vec![Letter::central()]);
    std::iter::once(A)
        .chain((1..=n).map(Letter::beta))
        .map(|g| {
            let g = Word(vec![g]);
            Relator::new(
                format!("centrality(t,{g})"),
                Family::Centrality,
                t.concat(&g),
                g.concat(&t),
            )
        })
        .collect()
}

/// Every defining relator of the requested presentation, deterministically
/// ordered: β-commutations, braids, commutativity, the closing relation,
/// then centrality of `t` for the extended variants.
pub fn relators(spec: PresentationSpec) -> Result<Vec<Relator>, WordError> {
    let spec = PresentationSpec::new(spec.n, spec.variant)?;
    let n = spec.n;
    let mut out = Vec::new();
    for i in 1..=n {
        for j in (i + 1)..=n {
            out.push(commutation_relator(i, j, n)?);
        }
    }
    for i in 1..=n {
        out.push(braid_relator(i, n)?);
    }
    if !matches!(spec.variant, Variant::TwoAlt | Variant::ExtendedTwoAlt) {
        out.extend(commutativity_relators(n)?);
    }
    match spec.variant {
        Variant::Boundary => {}
        Variant::Punctured => out.push(g_plain(n)?),
        Variant::Extended => out.push(g_tilde(n)?),
        Variant::TwoAlt => out.push(Relator::new("G2", Family::G2, g2_word(), Word::empty())),
        Variant::ExtendedTwoAlt => {
            out.push(Relator::new("G2~", Family::G2, g2_word(), t_squared()))
        }
    }
    if spec.is_extended() {
        out.extend(centrality_relators(n));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn free_reduce_cancels_pairs() {
        assert_eq!(w("a a'").free_reduce(), Word::empty());
        assert_eq!(w("b1 a a' b1'").free_reduce(), Word::empty());
        assert_eq!(w("a b2 b2' a").free_reduce(), w("a a"));
        assert_eq!(w("t t' t").free_reduce(), w("t"));
    }

    #[test]
    fn invert_examples() {
        assert_eq!(Word::empty().invert(), Word::empty());
        assert_eq!(w("a").invert(), w("a'"));
        assert_eq!(w("a b2'").invert(), w("b2 a'"));
    }

    #[test]
    fn parse_and_print() {
        let word = w("a b1 a b1' a' b1'");
        assert_eq!(word.to_string(), "a b1 a b1' a' b1'");
        assert_eq!(word.len(), 6);
        let err = "a b0".parse::<Word>().unwrap_err();
        assert!(matches!(err, WordError::Parse { position: 1, .. }));
        assert!(matches!(
            "a x".parse::<Word>(),
            Err(WordError::Parse { position: 1, .. })
        ));
        assert!("b".parse::<Word>().is_err());
        assert!("a''".parse::<Word>().is_err());
    }

    #[test]
    fn a_word_direct_substitution() {
        // n=3, i=1, j=3: j+1 ≡ 1, i+1 = 2
        assert_eq!(
            a_word(1, 3, 3).unwrap(),
            w("b1 a b2' b1 a' b1' a b1' b2 a' b2' b1")
        );
        // n=2, i=1, j=2: same substitution pattern
        assert_eq!(
            a_word(1, 2, 2).unwrap(),
            w("b1 a b2' b1 a' b1' a b1' b2 a' b2' b1")
        );
        assert_eq!(
            a_word(2, 2, 3).unwrap(),
            w("b3 a b3' b2 a' b3' a b2' b3 a' b3' b2")
        );
        assert!(matches!(
            a_word(1, 1, 1),
            Err(WordError::TooFewPunctures { .. })
        ));
        assert!(a_word(4, 1, 3).is_err());
    }

    #[test]
    fn gamma_words() {
        assert_eq!(gamma_twist_word(2, 2, 4).unwrap(), Word::empty());
        let expected = a_word(1, 4, 4)
            .unwrap()
            .concat(&a_word(2, 4, 4).unwrap())
            .concat(&a_word(3, 4, 4).unwrap());
        assert_eq!(gamma_twist_word(1, 4, 4).unwrap(), expected);
        // wraps past n
        let wrapped = a_word(3, 1, 3).unwrap();
        assert_eq!(gamma_twist_word(3, 1, 3).unwrap(), wrapped);
    }

    #[test]
    fn cyclic_index_arithmetic() {
        let n = 5;
        assert_eq!(CyclicIndex::new(5, n).unwrap().succ().value(), 1);
        assert_eq!(CyclicIndex::new(1, n).unwrap().pred().value(), 5);
        assert_eq!(CyclicIndex::wrap(2 + 5 - 1, 5).value(), 1);
        assert!(CyclicIndex::new(0, 3).is_err());
        assert!(CyclicIndex::new(4, 3).is_err());
    }

    #[test]
    fn cyclic_triple_examples() {
        let c = |v| CyclicIndex::new(v, 5).unwrap();
        assert!(is_cyclic_triple(c(1), c(3), c(4), true));
        assert!(is_cyclic_triple(c(4), c(1), c(3), true));
        assert!(!is_cyclic_triple(c(3), c(1), c(4), true));
        assert!(is_cyclic_triple(c(2), c(2), c(2), false));
        assert!(!is_cyclic_triple(c(2), c(2), c(2), true));
    }

    #[test]
    fn n1_extended_relators() {
        let rels = relators(PresentationSpec::new(1, Variant::Extended).unwrap()).unwrap();
        let names: Vec<_> = rels.iter().map(|r| r.name.as_str()).collect();
        assert_eq!(
            names,
            ["braid(a,b1)", "G~", "centrality(t,a)", "centrality(t,b1)"]
        );
        let g = &rels[1];
        assert_eq!(g.lhs, w("a b1").pow(6));
        assert_eq!(g.rhs, w("t t"));
    }

    #[test]
    fn n3_punctured_counts() {
        let rels = relators(PresentationSpec::new(3, Variant::Punctured).unwrap()).unwrap();
        let count = |f| rels.iter().filter(|r| r.family == f).count();
        assert_eq!(count(Family::Commutation), 3);
        assert_eq!(count(Family::Braid), 3);
        assert_eq!(count(Family::Commutativity), 3);
        assert_eq!(count(Family::G), 1);
        let names: Vec<_> = rels
            .iter()
            .filter(|r| r.family == Family::Commutativity)
            .map(|r| r.name.clone())
            .collect();
        assert_eq!(
            names,
            [
                "commutativity(1,2,3)",
                "commutativity(2,3,1)",
                "commutativity(3,1,2)"
            ]
        );
    }

    #[test]
    fn two_alt_variants() {
        let rels = relators(PresentationSpec::new(2, Variant::ExtendedTwoAlt).unwrap()).unwrap();
        let closing = rels.iter().find(|r| r.family == Family::G2).unwrap();
        assert_eq!(closing.lhs, w("b1 a b2").pow(4));
        assert_eq!(closing.rhs, w("t t"));
        assert!(rels.iter().all(|r| r.family != Family::Commutativity));
        assert!(PresentationSpec::new(3, Variant::TwoAlt).is_err());
        assert!(PresentationSpec::new(0, Variant::Extended).is_err());
    }

    #[test]
    fn boundary_has_no_closing_relation() {
        let rels = relators(PresentationSpec::new(4, Variant::Boundary).unwrap()).unwrap();
        assert!(rels
            .iter()
            .all(|r| !matches!(r.family, Family::G | Family::G2)));
    }

    #[test]
    fn star_examples() {
        let s = star_relator(2, 2, 2, 4).unwrap();
        assert_eq!(s.lhs, w("a b2 b2 b2").pow(3));
        assert_eq!(s.rhs, gamma_twist_word(2, 1, 4).unwrap());
        let s = star_relator(1, 2, 3, 3).unwrap();
        let expected = gamma_twist_word(1, 2, 3)
            .unwrap()
            .concat(&gamma_twist_word(2, 3, 3).unwrap())
            .concat(&gamma_twist_word(3, 1, 3).unwrap());
        assert_eq!(s.rhs, expected);
        assert!(star_relator(1, 3, 2, 3).is_err());
    }

    #[test]
    fn based_g_relators() {
        let g1 = g_relator_based_at(1, 3).unwrap();
        let closing = relators(PresentationSpec::new(3, Variant::Extended).unwrap())
            .unwrap()
            .into_iter()
            .find(|r| r.name == "G~")
            .unwrap();
        assert_eq!((g1.lhs, g1.rhs), (closing.lhs, closing.rhs));
        let g2 = g_relator_based_at(2, 3).unwrap();
        assert_eq!(g2.lhs, w("a b2").pow(6));
        let expected = a_word(2, 1, 3)
            .unwrap()
            .concat(&a_word(3, 1, 3).unwrap())
            .concat(&w("t t"));
        assert_eq!(g2.rhs, expected);
    }
}
