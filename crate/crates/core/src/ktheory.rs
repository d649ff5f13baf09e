//! The integer lattice representation on `Z^{n+1}` = (rank, multidegree).
//!
//! Twists act as transvections: `T_{k(x_i)}` adds `rank · e_i` to the
//! multidegree, `T_O` subtracts the total degree from the rank, and `t`
//! acts as `-1`. All arithmetic is on big integers.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::exact;
use crate::sheaf::{DObject, ObjectKind};
use crate::words::{Generator, Letter, Relator, Word};

/// A numerical class: coordinate 0 is the rank, coordinates `1..=n` the
/// multidegree.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct KClass(pub Vec<BigInt>);

impl KClass {
    pub fn from_ints(rank: i64, multidegree: &[i64]) -> Self {
        let mut v = Vec::with_capacity(multidegree.len() + 1);
        v.push(BigInt::from(rank));
        v.extend(multidegree.iter().map(|&d| BigInt::from(d)));
        KClass(v)
    }

    pub fn n(&self) -> usize {
        self.0.len() - 1
    }

    pub fn rank(&self) -> &BigInt {
        &self.0[0]
    }

    pub fn multidegree(&self) -> &[BigInt] {
        &self.0[1..]
    }

    pub fn total_degree(&self) -> BigInt {
        self.multidegree().iter().sum()
    }

    pub fn neg(&self) -> KClass {
        KClass(self.0.iter().map(|x| -x).collect())
    }
}

impl fmt::Display for KClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (idx, x) in self.0.iter().enumerate() {
            if idx > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

/// `[O(D)[s]] = (-1)^s (1, D)`, `[k(x_i)[s]] = (-1)^s (0, e_i)`.
pub fn class_of(obj: &DObject, n: usize) -> KClass {
    let base = match &obj.kind {
        ObjectKind::LineBundle(d) => {
            assert_eq!(d.n(), n, "divisor length does not match n");
            KClass::from_ints(1, &d.0)
        }
        ObjectKind::Skyscraper(i) => {
            let mut deg = vec![0; n];
            deg[i - 1] = 1;
            KClass::from_ints(0, &deg)
        }
    };
    if obj.shift.rem_euclid(2) == 1 {
        base.neg()
    } else {
        base
    }
}

/// `χ(E, F) = rank(E)·deg(F) − rank(F)·deg(E)`.
pub fn euler_form(e: &KClass, f: &KClass) -> BigInt {
    assert_eq!(e.n(), f.n(), "classes on different curves");
    e.rank() * f.total_degree() - f.rank() * e.total_degree()
}

/// A square integer matrix acting on [`KClass`] coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LatticeMap {
    /// Row-major, `(n+1) × (n+1)`.
    pub entries: Vec<Vec<BigInt>>,
}

impl LatticeMap {
    pub fn identity(n: usize) -> Self {
        let d = n + 1;
        let entries = (0..d)
            .map(|r| {
                (0..d)
                    .map(|c| {
                        if r == c {
                            BigInt::one()
                        } else {
                            BigInt::zero()
                        }
                    })
                    .collect()
            })
            .collect();
        LatticeMap { entries }
    }

    pub fn from_ints(rows: &[Vec<i64>]) -> Self {
        LatticeMap {
            entries: rows
                .iter()
                .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
                .collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn n(&self) -> usize {
        self.dim() - 1
    }

    pub fn neg(&self) -> Self {
        LatticeMap {
            entries: self
                .entries
                .iter()
                .map(|r| r.iter().map(|x| -x).collect())
                .collect(),
        }
    }

    pub fn mul(&self, other: &LatticeMap) -> LatticeMap {
        let d = self.dim();
        assert_eq!(d, other.dim(), "dimension mismatch");
        let mut entries = vec![vec![BigInt::zero(); d]; d];
        for (r, row) in entries.iter_mut().enumerate() {
            for (k, a) in self.entries[r].iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                for (c, out) in row.iter_mut().enumerate() {
                    let b = &other.entries[k][c];
                    if !b.is_zero() {
                        *out += a * b;
                    }
                }
            }
        }
        LatticeMap { entries }
    }

    pub fn apply(&self, v: &KClass) -> KClass {
        assert_eq!(self.dim(), v.0.len(), "dimension mismatch");
        KClass(
            self.entries
                .iter()
                .map(|row| row.iter().zip(&v.0).map(|(a, b)| a * b).sum())
                .collect(),
        )
    }

    pub fn is_identity(&self) -> bool {
        *self == LatticeMap::identity(self.n())
    }

    /// Determinant by fraction-free elimination.
    pub fn determinant(&self) -> BigInt {
        let d = self.dim();
        let mut m = self.entries.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for c in 0..d {
            let Some(p) = (c..d).find(|&r| !m[r][c].is_zero()) else {
                return BigInt::zero();
            };
            if p != c {
                m.swap(p, c);
                sign = -sign;
            }
            for r in (c + 1)..d {
                for k in (c + 1)..d {
                    m[r][k] = (&m[c][c] * &m[r][k] - &m[r][c] * &m[c][k]) / &prev;
                }
                m[r][c] = BigInt::zero();
            }
            prev = m[c][c].clone();
        }
        sign * prev
    }
}

impl fmt::Display for LatticeMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.entries {
            let cells: Vec<String> = row.iter().map(|x| format!("{x:>3}")).collect();
            writeln!(f, "[{}]", cells.join(" "))?;
        }
        Ok(())
    }
}

/// Image of one letter. The inverse letter maps to the exact integer inverse.
pub fn twist_matrix(letter: Letter, n: usize) -> LatticeMap {
    let mut m = LatticeMap::identity(n);
    let s = BigInt::from(letter.exponent());
    match letter.generator {
        Generator::Beta(i) => {
            assert!(i >= 1 && i <= n, "beta index {i} out of range for n = {n}");
            // d_i += s·r
            m.entries[i][0] = s;
        }
        Generator::Alpha => {
            // r -= s·Σd
            for c in 1..=n {
                m.entries[0][c] = -&s;
            }
        }
        Generator::Central => m = m.neg(),
    }
    m
}

/// Product of generator matrices in word order.
pub fn evaluate_word_matrix(w: &Word, n: usize) -> LatticeMap {
    w.letters().iter().fold(LatticeMap::identity(n), |acc, &l| {
        acc.mul(&twist_matrix(l, n))
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MatrixOutcome {
    Equal,
    /// `lhs = -rhs`: the relator holds up to the image of an odd power of `t`.
    NegatedCentral,
    Unequal,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixReport {
    pub relator: String,
    pub n: usize,
    pub outcome: MatrixOutcome,
    pub lhs: LatticeMap,
    pub rhs: LatticeMap,
}

pub fn verify_relator_matrix(rel: &Relator, n: usize) -> MatrixReport {
    let lhs = evaluate_word_matrix(&rel.lhs, n);
    let rhs = evaluate_word_matrix(&rel.rhs, n);
    let outcome = if lhs == rhs {
        MatrixOutcome::Equal
    } else if lhs == rhs.neg() {
        MatrixOutcome::NegatedCentral
    } else {
        MatrixOutcome::Unequal
    };
    MatrixReport {
        relator: rel.name.clone(),
        n,
        outcome,
        lhs,
        rhs,
    }
}

pub fn basis_vector(idx: usize, n: usize) -> KClass {
    let mut v = vec![BigInt::zero(); n + 1];
    v[idx] = BigInt::one();
    KClass(v)
}

/// Gram matrix `G[a][b] = χ(e_a, e_b)`.
pub fn gram_matrix(n: usize) -> Vec<Vec<BigInt>> {
    (0..=n)
        .map(|a| {
            (0..=n)
                .map(|b| euler_form(&basis_vector(a, n), &basis_vector(b, n)))
                .collect()
        })
        .collect()
}

/// Integral basis of the radical `{v : χ(v, w) = 0 ∀ w}`.
pub fn radical_basis(n: usize) -> Vec<KClass> {
    // χ(v, w) = 0 for all w  <=>  Gᵀ v = 0
    let g = gram_matrix(n);
    let gt: Vec<Vec<BigInt>> = (0..=n)
        .map(|r| (0..=n).map(|c| g[c][r].clone()).collect())
        .collect();
    exact::kernel_basis(&gt, n + 1)
        .into_iter()
        .map(KClass)
        .collect()
}

/// `χ(m u, m v) = χ(u, v)` on all basis pairs.
pub fn check_form_preserved(m: &LatticeMap, n: usize) -> bool {
    let images: Vec<KClass> = (0..=n).map(|a| m.apply(&basis_vector(a, n))).collect();
    (0..=n).all(|a| {
        (0..=n).all(|b| {
            euler_form(&images[a], &images[b])
                == euler_form(&basis_vector(a, n), &basis_vector(b, n))
        })
    })
}

/// `±1` determinant.
pub fn is_unimodular(m: &LatticeMap) -> bool {
    m.determinant().abs().is_one()
}
