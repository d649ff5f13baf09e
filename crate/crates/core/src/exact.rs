//! Exact rank and kernel computations over the rationals, done with
//! fraction-free (Bareiss) elimination on big integers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Row-echelon form by fraction-free elimination. Returns the reduced rows and
/// the pivot column of each nonzero row.
fn echelon(rows: &[Vec<BigInt>], cols: usize) -> (Vec<Vec<BigInt>>, Vec<usize>) {
    let mut m: Vec<Vec<BigInt>> = rows.to_vec();
    let mut pivots = Vec::new();
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..cols {
        if r == m.len() {
            break;
        }
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        for i in (r + 1)..m.len() {
            for k in (c + 1)..cols {
                let v = (&m[r][c] * &m[i][k] - &m[i][c] * &m[r][k]) / &prev;
                m[i][k] = v;
            }
            m[i][c] = BigInt::zero();
        }
        prev = m[r][c].clone();
        pivots.push(c);
        r += 1;
    }
    m.truncate(r);
    (m, pivots)
}

pub fn rank(rows: &[Vec<BigInt>], cols: usize) -> usize {
    echelon(rows, cols).1.len()
}

pub fn rank_i64(rows: &[Vec<i64>], cols: usize) -> usize {
    let big: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
        .collect();
    rank(&big, cols)
}

/// A basis of the rational kernel `{v : M v = 0}`, each vector scaled to a
/// primitive integer vector whose first nonzero entry is positive.
pub fn kernel_basis(rows: &[Vec<BigInt>], cols: usize) -> Vec<Vec<BigInt>> {
    let (ech, pivots) = echelon(rows, cols);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    let mut basis = Vec::with_capacity(free.len());
    for &f in &free {
        // back-substitute with v_f = 1 and the other free variables zero
        let mut num: Vec<BigInt> = vec![BigInt::zero(); cols];
        num[f] = BigInt::one();
        for (row, &pc) in ech.iter().zip(&pivots).rev() {
            let mut acc = BigInt::zero();
            for k in (pc + 1)..cols {
                if !row[k].is_zero() {
                    acc += &row[k] * &num[k];
                }
            }
            // scale everything by the pivot so v_pc = -acc / pivot stays integral
            let piv = &row[pc];
            for v in num.iter_mut() {
                *v *= piv;
            }
            num[pc] = -acc;
        }
        basis.push(normalize(num));
    }
    basis
}

fn normalize(mut v: Vec<BigInt>) -> Vec<BigInt> {
    let g = v.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if !g.is_zero() && !g.is_one() {
        for x in v.iter_mut() {
            *x /= &g;
        }
    }
    if let Some(first) = v.iter().find(|x| !x.is_zero()) {
        if first.is_negative() {
            for x in v.iter_mut() {
                *x = -&*x;
            }
        }
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter()
            .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
            .collect()
    }

    #[test]
    fn rank_small() {
        assert_eq!(rank_i64(&[vec![1, 2], vec![2, 4]], 2), 1);
        assert_eq!(rank_i64(&[vec![0, 0], vec![0, 0]], 2), 0);
        assert_eq!(
            rank_i64(&[vec![1, 0, 1], vec![0, 1, 1], vec![1, 1, 0]], 3),
            3
        );
        assert_eq!(rank_i64(&[], 4), 0);
    }

    #[test]
    fn kernel_annihilated() {
        let m = big(&[&[2, 4, -2, 6], &[1, 3, 5, 7], &[3, 7, 3, 13]]);
        let ker = kernel_basis(&m, 4);
        assert_eq!(ker.len(), 4 - rank(&m, 4));
        for v in &ker {
            for row in &m {
                let dot: BigInt = row.iter().zip(v).map(|(a, b)| a * b).sum();
                assert!(dot.is_zero());
            }
        }
    }

    #[test]
    fn kernel_of_zero_matrix_is_everything() {
        let ker = kernel_basis(&big(&[&[0, 0, 0]]), 3);
        assert_eq!(ker.len(), 3);
    }
}
