//! Proof traces and an independent replay checker.
//!
//! A trace acts on the two-sided claim `L(X) ≅ R(Y)`, starting from
//! `L = lhs`, `R = rhs`, `X = Y = object`. Evaluations consume the rightmost
//! letter of one side; transfers move the leftmost letter of one side, inverted,
//! to the front of the other.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::search::{Acceptance, Goal};
use crate::ktheory::evaluate_word_matrix;
use crate::sheaf::{apply_generator, DObject, ObjectKind};
use crate::words::{Letter, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    Lhs,
    Rhs,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "step", rename_all = "snake_case")]
pub enum Step {
    Evaluate {
        side: Side,
        letter: Letter,
        before: DObject,
        after: DObject,
    },
    BraidRewrite {
        side: Side,
        position: usize,
        from: Word,
        to: Word,
    },
    Cancel {
        side: Side,
        position: usize,
    },
    Transfer {
        from: Side,
        letter: Letter,
    },
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ProofTrace {
    pub steps: Vec<Step>,
}

impl ProofTrace {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn rewrites(&self) -> impl Iterator<Item = (&Word, &Word)> {
        self.steps.iter().filter_map(|s| match s {
            Step::BraidRewrite { from, to, .. } => Some((from, to)),
            _ => None,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TraceError {
    #[error("step {index}: {reason}")]
    BadStep { index: usize, reason: String },
    #[error("trace ends with letters left: lhs `{lhs}`, rhs `{rhs}`")]
    Unfinished { lhs: Word, rhs: Word },
    #[error("trace ends with {lhs} and {rhs}, which do not match")]
    Mismatch { lhs: DObject, rhs: DObject },
}

/// Whether `u → v` is licensed: `u v⁻¹` must be a rotation of a braid or
/// β-commutation relator word, or of its inverse.
pub fn rewrite_is_licensed(from: &Word, to: &Word, n: usize) -> bool {
    let cand: Vec<Letter> = from.0.iter().copied().chain(to.invert().0).collect();
    let a = Letter::alpha();
    let mut targets: Vec<Vec<Letter>> = Vec::new();
    for i in 1..=n {
        let b = Letter::beta(i);
        targets.push(vec![a, b, a, b.inv(), a.inv(), b.inv()]);
        for j in 1..=n {
            if j != i {
                let c = Letter::beta(j);
                targets.push(vec![b, c, b.inv(), c.inv()]);
            }
        }
    }
    targets.iter().any(|t| {
        let inv: Vec<Letter> = t.iter().rev().map(|l| l.inv()).collect();
        [t, &inv].iter().any(|t| {
            t.len() == cand.len()
                && (0..t.len()).any(|r| t[r..].iter().chain(&t[..r]).eq(cand.iter()))
        })
    })
}

fn objects_match(lhs: &DObject, rhs: &DObject, acceptance: Acceptance, n: usize) -> bool {
    if lhs.shift != rhs.shift && !acceptance.shift {
        return false;
    }
    if lhs.kind == rhs.kind {
        return true;
    }
    // the only admissible involution swaps the two marked points of X_2
    let swapped = match &rhs.kind {
        ObjectKind::Skyscraper(i) => ObjectKind::Skyscraper(if *i == 1 { 2 } else { 1 }),
        ObjectKind::LineBundle(d) => {
            ObjectKind::LineBundle(crate::sheaf::Divisor(d.0.iter().rev().copied().collect()))
        }
    };
    acceptance.involution && n == 2 && swapped == lhs.kind
}

/// Replays `trace` against `goal` from scratch and returns the final
/// `(lhs, rhs)` objects if every step is legal and the goal closes.
pub fn check_trace(
    goal: &Goal,
    trace: &ProofTrace,
    acceptance: Acceptance,
    n: usize,
) -> Result<(DObject, DObject), TraceError> {
    let mut words = [goal.lhs.0.clone(), goal.rhs.0.clone()];
    let mut objs = [goal.object.clone(), goal.object.clone()];
    let idx = |s: Side| match s {
        Side::Lhs => 0,
        Side::Rhs => 1,
    };
    for (index, step) in trace.steps.iter().enumerate() {
        let bad = |reason: String| TraceError::BadStep { index, reason };
        match step {
            Step::Evaluate {
                side,
                letter,
                before,
                after,
            } => {
                let k = idx(*side);
                if words[k].last() != Some(letter) {
                    return Err(bad(format!("`{letter}` is not the last letter")));
                }
                if &objs[k] != before {
                    return Err(bad(format!("expected input {}, found {before}", objs[k])));
                }
                let got = apply_generator(*letter, before, n).map_err(|e| bad(e.to_string()))?;
                if &got != after {
                    return Err(bad(format!(
                        "`{letter}` sends {before} to {got}, not {after}"
                    )));
                }
                words[k].pop();
                objs[k] = got;
            }
            Step::Cancel { side, position } => {
                let w = &mut words[idx(*side)];
                let p = *position;
                if p + 1 >= w.len() || !w[p].is_inverse_of(w[p + 1]) {
                    return Err(bad(format!("no inverse pair at {p}")));
                }
                w.drain(p..p + 2);
            }
            Step::BraidRewrite {
                side,
                position,
                from,
                to,
            } => {
                let w = &mut words[idx(*side)];
                let p = *position;
                if !w.get(p..).is_some_and(|rest| rest.starts_with(&from.0)) {
                    return Err(bad(format!("`{from}` does not occur at {p}")));
                }
                if !rewrite_is_licensed(from, to, n) {
                    return Err(bad(format!("`{from}` -> `{to}` is not a relator rewrite")));
                }
                if evaluate_word_matrix(from, n) != evaluate_word_matrix(to, n) {
                    return Err(bad(format!(
                        "`{from}` -> `{to}` changes the K-theory action"
                    )));
                }
                w.splice(p..p + from.len(), to.0.iter().copied());
            }
            Step::Transfer { from, letter } => {
                let (k, o) = (idx(*from), 1 - idx(*from));
                if words[k].first() != Some(letter) {
                    return Err(bad(format!("`{letter}` is not the first letter")));
                }
                words[k].remove(0);
                words[o].insert(0, letter.inv());
            }
        }
    }
    if !words[0].is_empty() || !words[1].is_empty() {
        return Err(TraceError::Unfinished {
            lhs: Word(words[0].clone()),
            rhs: Word(words[1].clone()),
        });
    }
    let [lhs, rhs] = objs;
    if !objects_match(&lhs, &rhs, acceptance, n) {
        return Err(TraceError::Mismatch { lhs, rhs });
    }
    Ok((lhs, rhs))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn licensed_rewrites() {
        let w = |s: &str| s.parse::<Word>().unwrap();
        assert!(rewrite_is_licensed(&w("a' b1' a"), &w("b1 a' b1'"), 3));
        assert!(rewrite_is_licensed(&w("b1 b3"), &w("b3 b1"), 3));
        assert!(rewrite_is_licensed(&w("a b1 a"), &w("b1 a b1"), 1));
        assert!(!rewrite_is_licensed(&w("b1 b2"), &w("b2 b1"), 1));
        assert!(!rewrite_is_licensed(&w("a b1"), &w("b1 a"), 3));
    }

    #[test]
    fn replay_plain_evaluation() {
        let goal = Goal {
            lhs: "b1 b1'".parse().unwrap(),
            rhs: Word::empty(),
            object: DObject::structure_sheaf(2),
        };
        let trace = ProofTrace {
            steps: vec![Step::Cancel {
                side: Side::Lhs,
                position: 0,
            }],
        };
        assert!(check_trace(&goal, &trace, Acceptance::EXACT, 2).is_ok());
        let bad = ProofTrace {
            steps: vec![Step::Cancel {
                side: Side::Rhs,
                position: 0,
            }],
        };
        assert!(check_trace(&goal, &bad, Acceptance::EXACT, 2).is_err());
    }
}
