//! The closed object calculus on a cycle of `n` projective lines.
//!
//! Objects are shifted line bundles `O(D)[s]` with `D` supported on the marked
//! points `x_1..x_n` (`x_i` on the `i`-th component) and shifted skyscrapers
//! `k(x_i)[s]`. Twists act by the single-letter rewrite rules in
//! [`apply_generator`]; anything the rules do not cover is reported as
//! [`ApplyError::NotReducible`].

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{OnceLock, RwLock};

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::exact;
use crate::words::{Generator, Letter, Word};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Divisor(pub Vec<i64>);

impl Divisor {
    pub fn zero(n: usize) -> Self {
        Divisor(vec![0; n])
    }

    /// `m · x_i`
    pub fn point(i: usize, n: usize, m: i64) -> Self {
        let mut d = Divisor::zero(n);
        d.0[i - 1] = m;
        d
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&a| a == 0)
    }

    pub fn neg(&self) -> Divisor {
        Divisor(self.0.iter().map(|a| -a).collect())
    }

    pub fn add_point(&self, i: usize, m: i64) -> Divisor {
        let mut d = self.clone();
        d.0[i - 1] += m;
        d
    }

    /// `Some(i)` when the divisor is `sign · x_i` for a single point.
    pub fn as_single_point(&self, sign: i64) -> Option<usize> {
        let mut found = None;
        for (idx, &a) in self.0.iter().enumerate() {
            match a {
                0 => {}
                a if a == sign && found.is_none() => found = Some(idx + 1),
                _ => return None,
            }
        }
        found
    }
}

impl fmt::Display for Divisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (idx, a) in self.0.iter().enumerate() {
            if idx > 0 {
                write!(f, ",")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, "]")
    }
}

impl FromStr for Divisor {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_divisor(s, 0).map(|(d, _)| d)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at offset {offset} in {input:?}: {reason}")]
pub struct ParseError {
    pub input: String,
    pub offset: usize,
    pub reason: String,
}

fn parse_err(input: &str, offset: usize, reason: impl Into<String>) -> ParseError {
    ParseError {
        input: input.to_string(),
        offset,
        reason: reason.into(),
    }
}

/// Parses `[a1,...,an]` starting at byte `start`; returns the divisor and the
/// offset just past the closing bracket.
fn parse_divisor(s: &str, start: usize) -> Result<(Divisor, usize), ParseError> {
    let rest = &s[start..];
    let trimmed = rest.trim_start();
    let open = start + (rest.len() - trimmed.len());
    if !trimmed.starts_with('[') {
        return Err(parse_err(s, open, "expected '['"));
    }
    let close = s[open..]
        .find(']')
        .map(|p| open + p)
        .ok_or_else(|| parse_err(s, s.len(), "missing ']'"))?;
    let body = &s[open + 1..close];
    let mut coeffs = Vec::new();
    let mut offset = open + 1;
    for piece in body.split(',') {
        let value = piece
            .trim()
            .parse::<i64>()
            .map_err(|_| parse_err(s, offset, format!("bad integer {:?}", piece.trim())))?;
        coeffs.push(value);
        offset += piece.len() + 1;
    }
    Ok((Divisor(coeffs), close + 1))
}

/// `h^0` and `h^1` of a line bundle on the cycle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CohomDims {
    pub h0: u64,
    pub h1: u64,
}

impl CohomDims {
    pub fn vanishes(self) -> bool {
        self.h0 == 0 && self.h1 == 0
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SheafError {
    #[error(
        "h1 mismatch for {divisor}: Riemann-Roch gives {riemann_roch}, Serre duality gives {serre}"
    )]
    Inconsistent {
        divisor: Divisor,
        riemann_roch: i64,
        serre: u64,
    },
    #[error("object lives on n = {object} but n = {expected} was requested")]
    WrongN { object: usize, expected: usize },
    #[error("skyscraper index {0} out of range")]
    BadPoint(usize),
}

/// `dim H^0(O(D))`, computed from the gluing conditions of the normalization.
///
/// Component `i` is a projective line with coordinate `z`; node `r` glues
/// `z = ∞` on component `r` to `z = 0` on component `r + 1` (cyclically, so
/// for `n = 1` it identifies `0` and `∞` on the single component) and `x_i`
/// sits at `z = 1`. Sections with pole order at most `a_i` at `x_i` are
/// spanned by `(z - 1)^{-k}`, `0 ≤ k ≤ a_i`, which take the value `(-1)^k` at
/// `0` and `[k = 0]` at `∞`. `H^0` is the kernel of the node-matching
/// conditions.
pub fn h0_oracle(d: &Divisor) -> u64 {
    let n = d.n();
    assert!(n >= 1, "divisor on an empty curve");
    let dims: Vec<usize> = d.0.iter().map(|&a| (a + 1).max(0) as usize).collect();
    let offsets: Vec<usize> = dims
        .iter()
        .scan(0, |acc, &k| {
            let o = *acc;
            *acc += k;
            Some(o)
        })
        .collect();
    let unknowns: usize = dims.iter().sum();
    if unknowns == 0 {
        return 0;
    }
    let mut rows = Vec::with_capacity(n);
    for r in 0..n {
        let next = (r + 1) % n;
        let mut row = vec![0i64; unknowns];
        // f_r(∞): only the constant term survives
        if dims[r] > 0 {
            row[offsets[r]] += 1;
        }
        // - f_{r+1}(0)
        for k in 0..dims[next] {
            row[offsets[next] + k] -= if k % 2 == 0 { 1 } else { -1 };
        }
        rows.push(row);
    }
    (unknowns - exact::rank_i64(&rows, unknowns)) as u64
}

fn cache() -> &'static RwLock<HashMap<Divisor, CohomDims>> {
    static CACHE: OnceLock<RwLock<HashMap<Divisor, CohomDims>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// `h^0` and `h^1`, with `h^1` computed both by Riemann-Roch (`χ(O) = 0`) and
/// by Serre duality (trivial dualizing sheaf). Disagreement is an oracle bug.
pub fn cohomology(d: &Divisor) -> Result<CohomDims, SheafError> {
    if let Some(hit) = cache().read().expect("cohomology cache poisoned").get(d) {
        return Ok(*hit);
    }
    let h0 = h0_oracle(d);
    let riemann_roch = h0 as i64 - d.degree();
    let serre = h0_oracle(&d.neg());
    if riemann_roch != serre as i64 {
        return Err(SheafError::Inconsistent {
            divisor: d.clone(),
            riemann_roch,
            serre,
        });
    }
    let dims = CohomDims { h0, h1: serre };
    cache()
        .write()
        .expect("cohomology cache poisoned")
        .insert(d.clone(), dims);
    Ok(dims)
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ObjectKind {
    LineBundle(Divisor),
    Skyscraper(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DObject {
    pub kind: ObjectKind,
    pub shift: i64,
}

impl DObject {
    pub fn structure_sheaf(n: usize) -> Self {
        DObject::line_bundle(Divisor::zero(n))
    }

    pub fn line_bundle(d: Divisor) -> Self {
        DObject {
            kind: ObjectKind::LineBundle(d),
            shift: 0,
        }
    }

    pub fn skyscraper(i: usize) -> Self {
        DObject {
            kind: ObjectKind::Skyscraper(i),
            shift: 0,
        }
    }

    pub fn shifted(mut self, by: i64) -> Self {
        self.shift += by;
        self
    }

    /// The generating objects `O, k(x_1), ..., k(x_n)`.
    pub fn generators(n: usize) -> Vec<DObject> {
        std::iter::once(DObject::structure_sheaf(n))
            .chain((1..=n).map(DObject::skyscraper))
            .collect()
    }

    /// Same object with shift zero.
    pub fn unshifted(&self) -> DObject {
        DObject {
            kind: self.kind.clone(),
            shift: 0,
        }
    }

    pub fn check(&self, n: usize) -> Result<(), SheafError> {
        match &self.kind {
            ObjectKind::LineBundle(d) if d.n() != n => Err(SheafError::WrongN {
                object: d.n(),
                expected: n,
            }),
            ObjectKind::Skyscraper(i) if *i == 0 || *i > n => Err(SheafError::BadPoint(*i)),
            _ => Ok(()),
        }
    }
}

impl fmt::Display for DObject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            ObjectKind::LineBundle(d) => write!(f, "O({d})")?,
            ObjectKind::Skyscraper(i) => write!(f, "k({i})")?,
        }
        if self.shift != 0 {
            write!(f, "[{}]", self.shift)?;
        }
        Ok(())
    }
}

impl FromStr for DObject {
    type Err = ParseError;

    fn from_str(input: &str) -> Result<Self, Self::Err> {
        let s = input.trim();
        let lead = input.len() - input.trim_start().len();
        let (kind, after) = if s.starts_with("O(") {
            let (d, end) = parse_divisor(s, 2)?;
            let tail = &s[end..];
            let tail_trim = tail.trim_start();
            if !tail_trim.starts_with(')') {
                return Err(parse_err(input, lead + end, "expected ')'"));
            }
            (
                ObjectKind::LineBundle(d),
                end + (tail.len() - tail_trim.len()) + 1,
            )
        } else if let Some(rest) = s.strip_prefix("k(") {
            let close = rest
                .find(')')
                .ok_or_else(|| parse_err(input, lead + s.len(), "missing ')'"))?;
            let i: usize = rest[..close]
                .trim()
                .parse()
                .map_err(|_| parse_err(input, lead + 2, "bad point index"))?;
            if i == 0 {
                return Err(parse_err(input, lead + 2, "point indices start at 1"));
            }
            (ObjectKind::Skyscraper(i), 2 + close + 1)
        } else {
            return Err(parse_err(input, lead, "expected 'O(' or 'k('"));
        };
        let tail = s[after..].trim();
        let shift = if tail.is_empty() {
            0
        } else {
            let inner = tail
                .strip_prefix('[')
                .and_then(|t| t.strip_suffix(']'))
                .ok_or_else(|| parse_err(input, lead + after, "expected shift '[s]'"))?;
            inner
                .trim()
                .parse::<i64>()
                .map_err(|_| parse_err(input, lead + after, "bad shift"))?
        };
        Ok(DObject { kind, shift })
    }
}

impl Serialize for DObject {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for DObject {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ApplyError {
    #[error("{letter} does not reduce on O({divisor}) (h0 = {}, h1 = {})", .dims.h0, .dims.h1)]
    NotReducible {
        letter: Letter,
        divisor: Divisor,
        dims: CohomDims,
    },
    #[error(transparent)]
    Sheaf(#[from] SheafError),
}

/// One twist letter applied to one object, or `NotReducible` when the image
/// leaves the calculus.
///
/// * `b_i^{±1}` tensors line bundles with `O(±x_i)` and fixes skyscrapers.
/// * `t^{±1}` shifts by `±1`.
/// * `a` fixes `O` and every `O(D)` with `H^* = 0`, sends `O(x_i)` to
///   `k(x_i)` and `k(x_i)` to `O(-x_i)[1]`; `a'` is the inverse.
pub fn apply_generator(letter: Letter, obj: &DObject, n: usize) -> Result<DObject, ApplyError> {
    obj.check(n)?;
    let sign = letter.exponent() as i64;
    let shift = obj.shift;
    let out = match (letter.generator, &obj.kind) {
        (Generator::Central, _) => obj.clone().shifted(sign),
        (Generator::Beta(i), ObjectKind::LineBundle(d)) => {
            if i == 0 || i > n {
                return Err(SheafError::BadPoint(i).into());
            }
            DObject {
                kind: ObjectKind::LineBundle(d.add_point(i, sign)),
                shift,
            }
        }
        (Generator::Beta(_), ObjectKind::Skyscraper(_)) => obj.clone(),
        (Generator::Alpha, ObjectKind::Skyscraper(i)) => {
            if sign > 0 {
                DObject {
                    kind: ObjectKind::LineBundle(Divisor::point(*i, n, -1)),
                    shift: shift + 1,
                }
            } else {
                DObject {
                    kind: ObjectKind::LineBundle(Divisor::point(*i, n, 1)),
                    shift,
                }
            }
        }
        (Generator::Alpha, ObjectKind::LineBundle(d)) => {
            if d.is_zero() {
                obj.clone()
            } else if let Some(i) = d.as_single_point(sign) {
                DObject {
                    kind: ObjectKind::Skyscraper(i),
                    shift: if sign > 0 { shift } else { shift - 1 },
                }
            } else {
                let dims = cohomology(d)?;
                if dims.vanishes() {
                    obj.clone()
                } else {
                    return Err(ApplyError::NotReducible {
                        letter,
                        divisor: d.clone(),
                        dims,
                    });
                }
            }
        }
    };
    Ok(out)
}

/// Where evaluation stopped: `remaining` still has to act on `object`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StuckState {
    pub remaining: Word,
    pub object: DObject,
    pub reason: ApplyError,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Evaluation {
    Done(DObject),
    Stuck(StuckState),
}

impl Evaluation {
    pub fn done(self) -> Option<DObject> {
        match self {
            Evaluation::Done(o) => Some(o),
            Evaluation::Stuck(_) => None,
        }
    }
}

/// Applies the letters of `w` right to left.
pub fn evaluate_word(w: &Word, obj: &DObject, n: usize) -> Evaluation {
    let mut cur = obj.clone();
    let letters = w.letters();
    for pos in (0..letters.len()).rev() {
        match apply_generator(letters[pos], &cur, n) {
            Ok(next) => cur = next,
            Err(reason) => {
                return Evaluation::Stuck(StuckState {
                    remaining: Word(letters[..=pos].to_vec()),
                    object: cur,
                    reason,
                })
            }
        }
    }
    Evaluation::Done(cur)
}

/// Like [`evaluate_word`] but also returns every intermediate object, starting
/// with `obj`.
pub fn evaluate_chain(w: &Word, obj: &DObject, n: usize) -> Result<Vec<DObject>, StuckState> {
    let mut chain = vec![obj.clone()];
    let letters = w.letters();
    for pos in (0..letters.len()).rev() {
        let cur = chain.last().expect("chain starts non-empty");
        match apply_generator(letters[pos], cur, n) {
            Ok(next) => chain.push(next),
            Err(reason) => {
                return Err(StuckState {
                    remaining: Word(letters[..=pos].to_vec()),
                    object: cur.clone(),
                    reason,
                })
            }
        }
    }
    Ok(chain)
}
