//! Bounded proof search for goals `lhs(X) ≅ rhs(X)` in the sheaf calculus.
//!
//! Internally a goal is kept in the one-word form `W(X) ≅ Y` with
//! `W = rhs⁻¹ · lhs`: evaluating the rightmost letter of `W` acts on `X`
//! (the left-hand side), consuming the leftmost letter `ℓ` applies `ℓ⁻¹` to
//! `Y` (the right-hand side). Moving letters across the two sides is a
//! transfer and does not change `W`, so states that differ only by transfers
//! are identified. The search is best-first on the number of rewrites used,
//! then on the number of letters left, with deterministic move order.

use std::cmp::Reverse;
use std::collections::BinaryHeap;
use std::hash::BuildHasherDefault;

use indexmap::IndexSet;
use rustc_hash::FxHasher;

use serde::{Deserialize, Serialize};

use super::rewrite::RuleSet;
use super::trace::{ProofTrace, Side, Step};
use crate::sheaf::{apply_generator, evaluate_chain, DObject, ObjectKind};
use crate::words::{Generator, Letter, Word};

pub const DEFAULT_BUDGET: usize = 100_000;

/// The claim `lhs(object) ≅ rhs(object)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Goal {
    pub lhs: Word,
    pub rhs: Word,
    pub object: DObject,
}

/// What counts as "the same object" once both words are used up.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Acceptance {
    /// Accept a difference in shift, recorded as the central defect.
    pub shift: bool,
    /// Accept the swap `x_1 ↔ x_2`; only ever fires for `n = 2`.
    pub involution: bool,
}

impl Acceptance {
    pub const EXACT: Acceptance = Acceptance {
        shift: false,
        involution: false,
    };
    pub const UP_TO_SHIFT: Acceptance = Acceptance {
        shift: true,
        involution: false,
    };
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchConfig {
    pub budget: usize,
    /// Rewrites are only tried within this many letters of either end of
    /// the word; `None` tries every position.
    pub window: Option<usize>,
    /// Evaluate and cancel eagerly before branching on rewrites.
    pub greedy: bool,
    pub max_rule_to: usize,
    pub min_rule_from: usize,
    /// Priority is `letters left + rewrite_weight · rewrites used`.
    pub rewrite_weight: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            budget: DEFAULT_BUDGET,
            window: Some(8),
            greedy: false,
            max_rule_to: 4,
            min_rule_from: 2,
            rewrite_weight: 1,
        }
    }
}

/// How the final objects relate when the search closes a goal.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Closing {
    pub lhs_object: DObject,
    pub rhs_object: DObject,
    /// `m` with `lhs = rhs · t^m` on the goal object.
    pub shift: i64,
    pub involution: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchOutcome {
    Proved {
        trace: ProofTrace,
        closing: Closing,
        states_expanded: usize,
    },
    /// Both words used up and the objects differ: a genuine counterexample.
    Refuted {
        trace: ProofTrace,
        lhs_object: DObject,
        rhs_object: DObject,
        states_expanded: usize,
    },
    Exhausted {
        states_expanded: usize,
    },
}

impl SearchOutcome {
    pub fn states_expanded(&self) -> usize {
        match self {
            SearchOutcome::Proved {
                states_expanded, ..
            }
            | SearchOutcome::Refuted {
                states_expanded, ..
            }
            | SearchOutcome::Exhausted { states_expanded } => *states_expanded,
        }
    }
}

/// Letters packed as `±(g + 1)` with `g = 0` for `t`, `1` for `α` and
/// `i + 1` for `β_i`; inversion is negation.
type Code = i8;

fn encode(l: Letter) -> Code {
    let g = match l.generator {
        Generator::Central => 1,
        Generator::Alpha => 2,
        Generator::Beta(i) => i as i8 + 2,
    };
    if l.inverse {
        -g
    } else {
        g
    }
}

fn decode(c: Code) -> Letter {
    let generator = match c.abs() {
        1 => Generator::Central,
        2 => Generator::Alpha,
        g => Generator::Beta((g - 2) as usize),
    };
    Letter {
        generator,
        inverse: c < 0,
    }
}

fn decode_all(cs: &[Code]) -> Vec<Letter> {
    cs.iter().map(|&c| decode(c)).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
struct State {
    /// right-hand object
    y: DObject,
    word: Box<[Code]>,
    /// left-hand object
    x: DObject,
}

#[derive(Debug, Clone, Copy)]
enum Move {
    EvalRight,
    EvalLeft,
    Cancel(u16),
    Rewrite { pos: u16, rule: u32 },
}

struct CodedRule {
    from: Box<[Code]>,
    to: Box<[Code]>,
}

/// The point swap `x_1 ↔ x_2` on `X_2`.
pub fn swap_points(obj: &DObject) -> DObject {
    let kind = match &obj.kind {
        ObjectKind::Skyscraper(i) => ObjectKind::Skyscraper(3 - i),
        ObjectKind::LineBundle(d) => {
            let mut d = d.clone();
            d.0.reverse();
            ObjectKind::LineBundle(d)
        }
    };
    DObject {
        kind,
        shift: obj.shift,
    }
}

/// Whether `lhs` and `rhs` close the goal under `acceptance`, preferring an
/// exact match, then a pure shift, then the involution.
pub fn close(lhs: &DObject, rhs: &DObject, acceptance: Acceptance, n: usize) -> Option<Closing> {
    let shift = lhs.shift - rhs.shift;
    let closing = |involution| Closing {
        lhs_object: lhs.clone(),
        rhs_object: rhs.clone(),
        shift,
        involution,
    };
    let shift_ok = shift == 0 || acceptance.shift;
    if lhs.kind == rhs.kind && shift_ok {
        return Some(closing(false));
    }
    if acceptance.involution && n == 2 && swap_points(rhs).kind == lhs.kind && shift_ok {
        return Some(closing(true));
    }
    None
}

pub struct Searcher {
    n: usize,
    rules: Vec<CodedRule>,
    /// rule ids keyed by `first letter code + OFFSET`
    by_first: Vec<Vec<u32>>,
    config: SearchConfig,
}

const OFFSET: i8 = 64;

type StateSet = IndexSet<State, BuildHasherDefault<FxHasher>>;

impl Searcher {
    pub fn new(n: usize, config: SearchConfig) -> Self {
        let set = RuleSet::new(n, config.min_rule_from, config.max_rule_to);
        let mut rules = Vec::new();
        let mut by_first = vec![Vec::new(); 2 * OFFSET as usize];
        for rule in set.rules() {
            let from: Box<[Code]> = rule.from.iter().map(|&l| encode(l)).collect();
            let to: Box<[Code]> = rule.to.iter().map(|&l| encode(l)).collect();
            by_first[(from[0] + OFFSET) as usize].push(rules.len() as u32);
            rules.push(CodedRule { from, to });
        }
        Searcher {
            n,
            rules,
            by_first,
            config,
        }
    }

    pub fn config(&self) -> SearchConfig {
        self.config
    }

    pub fn search(&self, goal: &Goal, acceptance: Acceptance) -> SearchOutcome {
        self.search_with(goal, acceptance, true)
    }

    /// As [`Searcher::search`]; with `rewrites = false` only evaluation,
    /// cancellation and transfer are used.
    pub fn search_with(
        &self,
        goal: &Goal,
        acceptance: Acceptance,
        allow_rewrites: bool,
    ) -> SearchOutcome {
        if let Some(done) = self.direct(goal, acceptance) {
            return done;
        }
        let word: Box<[Code]> = goal
            .rhs
            .invert()
            .concat(&goal.lhs)
            .0
            .into_iter()
            .map(encode)
            .collect();
        let start = State {
            y: goal.object.clone(),
            word,
            x: goal.object.clone(),
        };
        let mut states = StateSet::default();
        let start_len = start.word.len();
        states.insert(start);
        // per state: parent link and rewrites used
        let mut parents: Vec<Option<(u32, Move)>> = vec![None];
        let mut rewrites: Vec<u32> = vec![0];
        let mut queue: BinaryHeap<Reverse<(usize, usize, u32)>> = BinaryHeap::new();
        queue.push(Reverse((start_len, start_len, 0)));
        let mut expanded = 0;

        while let Some(Reverse((_, _, id))) = queue.pop() {
            if expanded >= self.config.budget {
                break;
            }
            expanded += 1;
            let state = states[id as usize].clone();
            if state.word.is_empty() {
                let trace = self.build_trace(goal, &states, &parents, id);
                return match close(&state.x, &state.y, acceptance, self.n) {
                    Some(closing) => SearchOutcome::Proved {
                        trace,
                        closing,
                        states_expanded: expanded,
                    },
                    None => SearchOutcome::Refuted {
                        trace,
                        lhs_object: state.x,
                        rhs_object: state.y,
                        states_expanded: expanded,
                    },
                };
            }
            for (mv, next) in self.successors(&state, allow_rewrites) {
                let len = next.word.len();
                let (nid, fresh) = states.insert_full(next);
                if !fresh {
                    continue;
                }
                let rw = rewrites[id as usize] + u32::from(matches!(mv, Move::Rewrite { .. }));
                parents.push(Some((id, mv)));
                rewrites.push(rw);
                let key = len + self.config.rewrite_weight * rw as usize;
                queue.push(Reverse((key, len, nid as u32)));
            }
        }
        SearchOutcome::Exhausted {
            states_expanded: expanded,
        }
    }

    fn successors(&self, s: &State, rewrites: bool) -> Vec<(Move, State)> {
        let mut out = Vec::new();
        let w = &s.word;
        if let Some(&last) = w.last() {
            if let Ok(x) = apply_generator(decode(last), &s.x, self.n) {
                out.push((
                    Move::EvalRight,
                    State {
                        y: s.y.clone(),
                        word: w[..w.len() - 1].into(),
                        x,
                    },
                ));
            }
        }
        if let Some(&first) = w.first() {
            if let Ok(y) = apply_generator(decode(-first), &s.y, self.n) {
                out.push((
                    Move::EvalLeft,
                    State {
                        y,
                        word: w[1..].into(),
                        x: s.x.clone(),
                    },
                ));
            }
        }
        for p in 0..w.len().saturating_sub(1) {
            if w[p] == -w[p + 1] {
                let word: Box<[Code]> = w[..p].iter().chain(&w[p + 2..]).copied().collect();
                out.push((
                    Move::Cancel(p as u16),
                    State {
                        y: s.y.clone(),
                        word,
                        x: s.x.clone(),
                    },
                ));
            }
        }
        if !rewrites {
            return out;
        }
        if self.config.greedy && !out.is_empty() {
            // forced move: take the first deterministic reduction only
            out.truncate(1);
            return out;
        }
        let len = w.len();
        for p in 0..len {
            for &rid in &self.by_first[(w[p] + OFFSET) as usize] {
                let rule = &self.rules[rid as usize];
                let end = p + rule.from.len();
                if end > len || w[p..end] != *rule.from {
                    continue;
                }
                if let Some(k) = self.config.window {
                    if p >= k && end + k <= len {
                        continue;
                    }
                }
                let word: Box<[Code]> = w[..p]
                    .iter()
                    .chain(rule.to.iter())
                    .chain(&w[end..])
                    .copied()
                    .collect();
                out.push((
                    Move::Rewrite {
                        pos: p as u16,
                        rule: rid,
                    },
                    State {
                        y: s.y.clone(),
                        word,
                        x: s.x.clone(),
                    },
                ));
            }
        }
        out
    }

    /// Evaluates both sides letter by letter; `None` when either gets stuck.
    fn direct(&self, goal: &Goal, acceptance: Acceptance) -> Option<SearchOutcome> {
        let mut steps = Vec::new();
        let mut ends = Vec::new();
        for (side, word) in [(Side::Lhs, &goal.lhs), (Side::Rhs, &goal.rhs)] {
            let chain = evaluate_chain(word, &goal.object, self.n).ok()?;
            for (k, letter) in word.letters().iter().rev().enumerate() {
                steps.push(Step::Evaluate {
                    side,
                    letter: *letter,
                    before: chain[k].clone(),
                    after: chain[k + 1].clone(),
                });
            }
            ends.push(chain.last().cloned().expect("chain starts non-empty"));
        }
        let trace = ProofTrace { steps };
        let (x, y) = (ends[0].clone(), ends[1].clone());
        Some(match close(&x, &y, acceptance, self.n) {
            Some(closing) => SearchOutcome::Proved {
                trace,
                closing,
                states_expanded: 0,
            },
            None => SearchOutcome::Refuted {
                trace,
                lhs_object: x,
                rhs_object: y,
                states_expanded: 0,
            },
        })
    }

    /// Replays the canonical path as two-sided steps, inserting transfers so
    /// every step acts on a single side.
    fn build_trace(
        &self,
        goal: &Goal,
        states: &StateSet,
        parents: &[Option<(u32, Move)>],
        last: u32,
    ) -> ProofTrace {
        let mut path = Vec::new();
        let mut cur = last;
        while let Some((parent, mv)) = parents[cur as usize] {
            path.push((mv, parent));
            cur = parent;
        }
        path.reverse();

        let mut steps = Vec::new();
        // cut = number of leading letters of W belonging to rhs⁻¹
        let mut cut = goal.rhs.len();
        for (mv, parent) in path {
            let state = &states[parent as usize];
            let w = decode_all(&state.word);
            match mv {
                Move::EvalRight => {
                    if cut == w.len() {
                        cut = transfer_to(&mut steps, &w, cut, w.len() - 1);
                    }
                    let letter = w[w.len() - 1];
                    let after = apply_generator(letter, &state.x, self.n)
                        .expect("search only records applicable evaluations");
                    steps.push(Step::Evaluate {
                        side: Side::Lhs,
                        letter,
                        before: state.x.clone(),
                        after,
                    });
                }
                Move::EvalLeft => {
                    if cut == 0 {
                        cut = transfer_to(&mut steps, &w, cut, 1);
                    }
                    let letter = w[0].inv();
                    let after = apply_generator(letter, &state.y, self.n)
                        .expect("search only records applicable evaluations");
                    steps.push(Step::Evaluate {
                        side: Side::Rhs,
                        letter,
                        before: state.y.clone(),
                        after,
                    });
                    cut -= 1;
                }
                Move::Cancel(p) => {
                    let p = p as usize;
                    if p < cut && cut < p + 2 {
                        cut = transfer_to(&mut steps, &w, cut, p);
                    }
                    if p >= cut {
                        steps.push(Step::Cancel {
                            side: Side::Lhs,
                            position: p - cut,
                        });
                    } else {
                        steps.push(Step::Cancel {
                            side: Side::Rhs,
                            position: cut - p - 2,
                        });
                        cut -= 2;
                    }
                }
                Move::Rewrite { pos, rule } => {
                    let pos = pos as usize;
                    let rule = &self.rules[rule as usize];
                    let from = Word(decode_all(&rule.from));
                    let to = Word(decode_all(&rule.to));
                    let end = pos + from.len();
                    if pos < cut && cut < end {
                        cut = transfer_to(&mut steps, &w, cut, pos);
                    }
                    if pos >= cut {
                        steps.push(Step::BraidRewrite {
                            side: Side::Lhs,
                            position: pos - cut,
                            from,
                            to,
                        });
                    } else {
                        cut = cut + to.len() - from.len();
                        steps.push(Step::BraidRewrite {
                            side: Side::Rhs,
                            position: cut - pos - to.len(),
                            from: from.invert(),
                            to: to.invert(),
                        });
                    }
                }
            }
        }
        ProofTrace { steps }
    }
}

/// Moves the cut to `target`, emitting one transfer per letter; returns the
/// new cut.
fn transfer_to(steps: &mut Vec<Step>, w: &[Letter], mut cut: usize, target: usize) -> usize {
    while cut > target {
        // leftmost rhs letter is the inverse of W[cut - 1]
        steps.push(Step::Transfer {
            from: Side::Rhs,
            letter: w[cut - 1].inv(),
        });
        cut -= 1;
    }
    while cut < target {
        steps.push(Step::Transfer {
            from: Side::Lhs,
            letter: w[cut],
        });
        cut += 1;
    }
    cut
}
