//! Substring rewrites licensed by the braid and β-commutation relators.
//!
//! A rewrite `u → v` is allowed when `u · v⁻¹` is a cyclic rotation of a
//! braid relator word `a b_i a b_i' a' b_i'`, a commutation relator word
//! `b_i b_j b_i' b_j'`, or the inverse of either.

use std::collections::HashMap;

use crate::words::{Letter, Word};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RewriteRule {
    pub from: Vec<Letter>,
    pub to: Vec<Letter>,
}

/// Relator words generating the rewrite system for `n` punctures.
pub fn base_relator_words(n: usize) -> Vec<Word> {
    let a = Letter::alpha();
    let mut out = Vec::new();
    for i in 1..=n {
        let b = Letter::beta(i);
        out.push(Word(vec![a, b, a, b.inv(), a.inv(), b.inv()]));
    }
    for i in 1..=n {
        for j in (i + 1)..=n {
            let (bi, bj) = (Letter::beta(i), Letter::beta(j));
            out.push(Word(vec![bi, bj, bi.inv(), bj.inv()]));
        }
    }
    out
}

/// All rules `u → v` with `min_from ≤ |u|` and `|v| ≤ max_to`, indexed by the
/// first letter of `u`.
#[derive(Debug, Clone)]
pub struct RuleSet {
    by_first: HashMap<Letter, Vec<RewriteRule>>,
}

impl RuleSet {
    pub fn new(n: usize, min_from: usize, max_to: usize) -> Self {
        let mut rules: Vec<RewriteRule> = Vec::new();
        for base in base_relator_words(n) {
            for w in [base.clone(), base.invert()] {
                let len = w.len();
                for r in 0..len {
                    let rot = w.rotate(r);
                    for split in min_from.max(1)..=len {
                        let from = rot.0[..split].to_vec();
                        let to = Word(rot.0[split..].to_vec()).invert().0;
                        if to.len() > max_to {
                            continue;
                        }
                        let rule = RewriteRule { from, to };
                        if !rules.contains(&rule) {
                            rules.push(rule);
                        }
                    }
                }
            }
        }
        let mut by_first: HashMap<Letter, Vec<RewriteRule>> = HashMap::new();
        for rule in rules {
            by_first.entry(rule.from[0]).or_default().push(rule);
        }
        RuleSet { by_first }
    }

    /// Every rule, grouped by first letter in a fixed order.
    pub fn rules(&self) -> Vec<&RewriteRule> {
        let mut keys: Vec<&Letter> = self.by_first.keys().collect();
        keys.sort();
        keys.into_iter().flat_map(|k| &self.by_first[k]).collect()
    }

    /// Rules whose left side matches `letters` at `pos`.
    pub fn matches_at<'a>(
        &'a self,
        letters: &'a [Letter],
        pos: usize,
    ) -> impl Iterator<Item = &'a RewriteRule> + 'a {
        self.by_first
            .get(&letters[pos])
            .into_iter()
            .flatten()
            .filter(move |rule| letters[pos..].starts_with(&rule.from))
    }
}
