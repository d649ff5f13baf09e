//! Independent oracles shared by the integration tests.

#![allow(dead_code)]

use num_integer::Integer;
use twistverify::words::{Letter, Word};

/// Rank of an integer matrix by fraction-free elimination over `i128`.
pub fn rank(mut m: Vec<Vec<i128>>) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(r, p);
        for i in (r + 1)..rows {
            let (a, b) = (m[r][c], m[i][c]);
            if b == 0 {
                continue;
            }
            let pivot = m[r].clone();
            for (x, p) in m[i].iter_mut().zip(&pivot) {
                *x = a * *x - b * p;
            }
            let g = m[i].iter().fold(0i128, |g, &x| g.gcd(&x));
            if g > 1 {
                m[i].iter_mut().for_each(|x| *x /= g);
            }
        }
        r += 1;
    }
    r
}

/// `h^0(O(D))` on the cycle, with the marked point of component `i` at
/// `z = 2`. Sections with a pole of order `≤ a` there are spanned by
/// `(z / (z - 2))^k`, `0 ≤ k ≤ a`, worth `[k = 0]` at `0` and `1` at `∞`.
/// Node `r` identifies `∞` on component `r` with `0` on component `r + 1`.
pub fn h0(d: &[i64]) -> u64 {
    let n = d.len();
    let mut offset = vec![0usize; n + 1];
    for i in 0..n {
        offset[i + 1] = offset[i] + (d[i] + 1).max(0) as usize;
    }
    let unknowns = offset[n];
    if unknowns == 0 {
        return 0;
    }
    let mut rows = Vec::new();
    for r in 0..n {
        let next = (r + 1) % n;
        let mut row = vec![0i128; unknowns];
        row[offset[r]..offset[r + 1]]
            .iter_mut()
            .for_each(|x| *x += 1);
        if offset[next + 1] > offset[next] {
            row[offset[next]] -= 1;
        }
        rows.push(row);
    }
    (unknowns - rank(rows)) as u64
}

/// `h^1 = h^0 - deg` on a curve of arithmetic genus one.
pub fn h1(d: &[i64]) -> u64 {
    let deg: i64 = d.iter().sum();
    (h0(d) as i64 - deg) as u64
}

/// Strict or non-strict cyclic order, read off positions mod `n`.
pub fn cyclic_order(i: usize, j: usize, k: usize, n: usize, strict: bool) -> bool {
    let pos = |x: usize| (x + n - i) % n;
    if strict {
        i != j && j != k && i != k && pos(j) < pos(k)
    } else {
        pos(j) <= pos(k)
    }
}

/// All letters over `n` points, optionally with `t`.
pub fn alphabet(n: usize, central: bool) -> Vec<Letter> {
    let mut out = vec![Letter::alpha(), Letter::alpha().inv()];
    for i in 1..=n {
        out.push(Letter::beta(i));
        out.push(Letter::beta(i).inv());
    }
    if central {
        out.push(Letter::central());
        out.push(Letter::central().inv());
    }
    out
}

/// Naive stack reduction, independent of `Word::free_reduce`.
pub fn reduce(w: &Word) -> Vec<Letter> {
    let mut stack: Vec<Letter> = Vec::new();
    for &l in w.letters() {
        if stack.last().is_some_and(|&top| top == l.inv()) {
            stack.pop();
        } else {
            stack.push(l);
        }
    }
    stack
}
