//! Mechanical verification of relators on the generating objects.
//!
//! A relator `lhs = rhs` is checked in the sheaf calculus by proving
//! `lhs(X) ≅ rhs(X)` for `X ∈ {O, k(x_1), …, k(x_n)}`, and in K-theory by
//! comparing integer matrices.

pub mod report;
pub mod rewrite;
pub mod search;
pub mod trace;

use rayon::prelude::*;
use thiserror::Error;

pub use report::{
    suite_verdict, ObjectOutcome, ReportRecord, Representation, Status, SuiteVerdict,
    VerificationReport,
};
pub use search::{Acceptance, Goal, SearchConfig, SearchOutcome, Searcher, DEFAULT_BUDGET};
pub use trace::{check_trace, rewrite_is_licensed, ProofTrace, Side, Step, TraceError};

use crate::ktheory::{evaluate_word_matrix, verify_relator_matrix, MatrixOutcome};
use crate::sheaf::{DObject, ObjectKind};
use crate::words::{
    based_a_product, cyclic_triples, g_relator_based_at, relators, star_relator, Family, Generator,
    PresentationSpec, Relator, Variant, Word, WordError,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SuiteError {
    #[error("the G2 family only exists for n = 2 (got n = {0})")]
    G2NeedsTwo(usize),
    #[error("commutativity relators need n >= 3 (got n = {0})")]
    CommutativityNeedsThree(usize),
    #[error("no families selected")]
    NoFamilies,
    #[error(transparent)]
    Word(#[from] WordError),
}

/// Families that make sense for `n`, in suite order.
pub fn applicable_families(n: usize) -> Vec<Family> {
    Family::ALL
        .into_iter()
        .filter(|f| match f {
            Family::G2 => n == 2,
            Family::Commutativity => n >= 3,
            Family::Commutation => n >= 2,
            _ => true,
        })
        .collect()
}

fn check_families(n: usize, families: &[Family]) -> Result<(), SuiteError> {
    if families.is_empty() {
        return Err(SuiteError::NoFamilies);
    }
    if families.contains(&Family::G2) && n != 2 {
        return Err(SuiteError::G2NeedsTwo(n));
    }
    if families.contains(&Family::Commutativity) && n < 3 {
        return Err(SuiteError::CommutativityNeedsThree(n));
    }
    Ok(())
}

/// The relators of the requested families, in a fixed order: the extended
/// presentation first, then the `n = 2` alternative, stars and the relators
/// based at each point.
pub fn suite_relators(n: usize, families: &[Family]) -> Result<Vec<Relator>, SuiteError> {
    check_families(n, families)?;
    let mut out: Vec<Relator> = relators(PresentationSpec::new(n, Variant::Extended)?)?
        .into_iter()
        .filter(|r| families.contains(&r.family))
        .collect();
    if families.contains(&Family::G2) {
        out.extend(
            relators(PresentationSpec::new(n, Variant::ExtendedTwoAlt)?)?
                .into_iter()
                .filter(|r| r.family == Family::G2),
        );
    }
    if families.contains(&Family::Star) {
        for (i, j, k) in cyclic_triples(n) {
            out.push(star_relator(i, j, k, n)?);
        }
    }
    if families.contains(&Family::LemmaG) {
        for i in 1..=n {
            out.push(g_relator_based_at(i, n)?);
        }
    }
    Ok(out)
}

fn has_central(w: &Word) -> bool {
    w.letters()
        .iter()
        .any(|l| l.generator == Generator::Central)
}

/// Whether a relator only holds up to a power of `t` in the extended group.
pub fn needs_central_acceptance(rel: &Relator) -> bool {
    match rel.family {
        Family::Star => true,
        Family::G | Family::G2 | Family::LemmaG => !has_central(&rel.lhs) && !has_central(&rel.rhs),
        _ => false,
    }
}

fn is_degenerate_star(rel: &Relator) -> bool {
    // (a b_i b_i b_i)^3: every β letter in the first block is the same
    rel.family == Family::Star && rel.lhs.letters()[1..4].windows(2).all(|p| p[0] == p[1])
}

/// The relator actually searched on `obj`. On `k(x_k)` the G-type relators
/// are traded for the same relation based at `k`, which is an identity of
/// the group with boundary; a degenerate star `(a b_i^3)^3` is traded for
/// `(a b_k^3)^3` for the same reason.
pub fn relator_for_object(rel: &Relator, obj: &DObject, n: usize) -> Result<Relator, WordError> {
    let ObjectKind::Skyscraper(k) = obj.kind else {
        return Ok(rel.clone());
    };
    match rel.family {
        Family::G | Family::LemmaG if has_central(&rel.rhs) => g_relator_based_at(k, n),
        Family::G | Family::LemmaG => {
            let based = g_relator_based_at(k, n)?;
            Ok(Relator::new(
                format!("G@{k}"),
                rel.family,
                based.lhs,
                based_a_product(k, n)?,
            ))
        }
        Family::Star if is_degenerate_star(rel) => star_relator(k, k, k, n),
        _ => Ok(rel.clone()),
    }
}

/// Braid and commutation relators license the rewrite moves, so they are
/// checked by evaluation alone.
fn uses_rewrites(rel: &Relator) -> bool {
    !matches!(rel.family, Family::Braid | Family::Commutation)
}

/// Acceptance used when searching `rel`: shifts for relators that only hold up
/// to `t^m`, the point swap for `n <= 2`.
pub fn acceptance_for(rel: &Relator, n: usize) -> Acceptance {
    Acceptance {
        shift: needs_central_acceptance(rel),
        involution: n <= 2,
    }
}

/// Checks `(-1)^m` against the K-theory matrices of a relator.
pub fn central_defect_consistent(rel: &Relator, m: i64, n: usize) -> bool {
    let lhs = evaluate_word_matrix(&rel.lhs, n);
    let rhs = evaluate_word_matrix(&rel.rhs, n);
    if m.rem_euclid(2) == 0 {
        lhs == rhs
    } else {
        lhs == rhs.neg()
    }
}

fn sheaf_outcome(rel: &Relator, obj: &DObject, n: usize, searcher: &Searcher) -> ObjectOutcome {
    let searched = relator_for_object(rel, obj, n).expect("indices come from a valid relator");
    let acceptance = acceptance_for(rel, n);
    let goal = Goal {
        lhs: searched.lhs.clone(),
        rhs: searched.rhs.clone(),
        object: obj.clone(),
    };
    let searched_relator = (searched.name != rel.name).then(|| searched.name.clone());
    let blank = |status, trace, states_expanded| ObjectOutcome {
        generator_object: Some(obj.clone()),
        searched_relator: searched_relator.clone(),
        status,
        central_defect_m: None,
        involution: None,
        final_objects: None,
        trace,
        states_expanded,
    };
    match searcher.search_with(&goal, acceptance, uses_rewrites(rel)) {
        SearchOutcome::Proved {
            trace,
            closing,
            states_expanded,
        } => {
            let status = if closing.involution {
                Status::VerifiedUpToInvolution
            } else if closing.shift != 0 {
                Status::VerifiedUpToCentral
            } else {
                Status::Verified
            };
            ObjectOutcome {
                central_defect_m: acceptance.shift.then_some(closing.shift),
                involution: closing.involution.then(|| "x1<->x2".to_string()),
                final_objects: Some((closing.lhs_object, closing.rhs_object)),
                ..blank(status, trace, states_expanded)
            }
        }
        SearchOutcome::Refuted {
            trace,
            lhs_object,
            rhs_object,
            states_expanded,
        } => ObjectOutcome {
            final_objects: Some((lhs_object, rhs_object)),
            ..blank(Status::Mismatch, trace, states_expanded)
        },
        SearchOutcome::Exhausted { states_expanded } => {
            blank(Status::Exhausted, ProofTrace::default(), states_expanded)
        }
    }
}

/// A central defect must be the same on every generator; outcomes that
/// disagree with the one on `O` are counterexamples.
fn enforce_uniform_defect(outcomes: &mut [ObjectOutcome]) {
    let reference = outcomes
        .iter()
        .find(|o| o.status.is_verified())
        .and_then(|o| o.central_defect_m);
    let Some(m) = reference else {
        return;
    };
    for o in outcomes.iter_mut() {
        if o.status.is_verified() && o.central_defect_m.is_some_and(|x| x != m) {
            o.status = Status::Mismatch;
        }
    }
}

fn ktheory_report(rel: &Relator, n: usize) -> VerificationReport {
    let report = verify_relator_matrix(rel, n);
    let (status, m) = match report.outcome {
        MatrixOutcome::Equal => (Status::Verified, None),
        MatrixOutcome::NegatedCentral => (Status::VerifiedUpToCentral, Some(1)),
        MatrixOutcome::Unequal => (Status::Mismatch, None),
    };
    VerificationReport {
        relator: rel.name.clone(),
        n,
        representation: Representation::Ktheory,
        outcomes: vec![ObjectOutcome {
            generator_object: None,
            searched_relator: None,
            status,
            central_defect_m: m,
            involution: None,
            final_objects: None,
            trace: ProofTrace::default(),
            states_expanded: 0,
        }],
    }
}

fn sheaf_report(rel: &Relator, n: usize, outcomes: Vec<ObjectOutcome>) -> VerificationReport {
    let mut outcomes = outcomes;
    if needs_central_acceptance(rel) {
        enforce_uniform_defect(&mut outcomes);
    }
    VerificationReport {
        relator: rel.name.clone(),
        n,
        representation: Representation::Sheaf,
        outcomes,
    }
}

pub fn verify_on_generators(
    rel: &Relator,
    n: usize,
    representation: Representation,
    config: SearchConfig,
) -> VerificationReport {
    match representation {
        Representation::Ktheory => ktheory_report(rel, n),
        Representation::Sheaf => {
            let searcher = Searcher::new(n, config);
            let outcomes = DObject::generators(n)
                .iter()
                .map(|obj| sheaf_outcome(rel, obj, n, &searcher))
                .collect();
            sheaf_report(rel, n, outcomes)
        }
    }
}

/// Runs every requested family in every requested representation. Goals run
/// in parallel; the report order only depends on the inputs.
pub fn verify_relation_suite(
    n: usize,
    families: &[Family],
    representations: &[Representation],
    config: SearchConfig,
) -> Result<Vec<VerificationReport>, SuiteError> {
    let rels = suite_relators(n, families)?;
    let mut reports = Vec::new();
    for &rep in representations {
        match rep {
            Representation::Ktheory => reports.extend(rels.iter().map(|r| ktheory_report(r, n))),
            Representation::Sheaf => {
                let searcher = Searcher::new(n, config);
                let objects = DObject::generators(n);
                let jobs: Vec<(usize, &DObject)> = (0..rels.len())
                    .flat_map(|r| objects.iter().map(move |o| (r, o)))
                    .collect();
                let results: Vec<ObjectOutcome> = jobs
                    .par_iter()
                    .map(|&(r, obj)| sheaf_outcome(&rels[r], obj, n, &searcher))
                    .collect();
                let mut results = results.into_iter();
                for rel in &rels {
                    let outcomes = results.by_ref().take(objects.len()).collect();
                    reports.push(sheaf_report(rel, n, outcomes));
                }
            }
        }
    }
    Ok(reports)
}
