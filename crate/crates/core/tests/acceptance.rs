//! Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
//! criterion fails.

mod common;

use std::time::Instant;

use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use twistverify::ktheory::{
    evaluate_word_matrix, radical_basis, twist_matrix, verify_relator_matrix, LatticeMap,
    MatrixOutcome,
};
use twistverify::sheaf::{cohomology, evaluate_chain, DObject, Divisor};
use twistverify::verifier::rewrite::RuleSet;
use twistverify::verifier::{
    acceptance_for, applicable_families, central_defect_consistent, check_trace,
    relator_for_object, suite_relators, verify_relation_suite, Goal, Representation, SearchConfig,
    SearchOutcome, Searcher, Status, Step, VerificationReport,
};
use twistverify::words::{
    a_word, relators, strict_cyclic_triples, Family, Letter, PresentationSpec, Relator, Variant,
    Word,
};

struct Verdict {
    pass: bool,
    detail: String,
}

impl Verdict {
    fn new(pass: bool, detail: impl Into<String>) -> Self {
        Verdict {
            pass,
            detail: detail.into(),
        }
    }
}

/// Reports emitted by criterion 3, kept for criteria 5 and 7.
struct SheafRun {
    n: usize,
    relators: Vec<Relator>,
    reports: Vec<VerificationReport>,
}

fn w(s: &str) -> Word {
    s.parse().expect("literal word")
}

fn o(s: &str) -> DObject {
    s.parse().expect("literal object")
}

fn criterion_1() -> Verdict {
    let start = Instant::now();
    let mut checked = 0;
    let mut failures = Vec::new();
    for n in 1..=8 {
        let mut rels = relators(PresentationSpec::new(n, Variant::Extended).unwrap()).unwrap();
        if n == 2 {
            rels.extend(
                relators(PresentationSpec::new(2, Variant::ExtendedTwoAlt).unwrap()).unwrap(),
            );
        }
        if twist_matrix(Letter::central(), n) != LatticeMap::identity(n).neg() {
            failures.push(format!("t is not -I at n = {n}"));
        }
        for rel in &rels {
            checked += 1;
            if verify_relator_matrix(rel, n).outcome != MatrixOutcome::Equal {
                failures.push(format!("{} at n = {n}", rel.name));
            }
        }
    }
    let secs = start.elapsed().as_secs_f64();
    Verdict::new(
        failures.is_empty(),
        format!("{checked} relators, n = 1..8, {secs:.2}s; failures: {failures:?}"),
    )
}

/// Checks a chain at the letter counts where the displayed computation
/// names an intermediate object.
fn chain_hits(
    word: &Word,
    start: &DObject,
    n: usize,
    marks: &[(usize, DObject)],
) -> Result<(), String> {
    let chain = evaluate_chain(word, start, n).map_err(|st| {
        format!(
            "{word} on {start}: stuck at {} with `{}`",
            st.object, st.remaining
        )
    })?;
    for (k, want) in marks {
        if &chain[*k] != want {
            return Err(format!(
                "{word} on {start}: after {k} letters got {}, expected {want}",
                chain[*k]
            ));
        }
    }
    Ok(())
}

fn criterion_2() -> Verdict {
    let mut failures = Vec::new();
    let mut ok = 0;
    let six = w("a b1").pow(6);
    let mut record = |r: Result<(), String>| match r {
        Ok(()) => ok += 1,
        Err(e) => failures.push(e),
    };
    record(chain_hits(
        &six,
        &o("O([0])"),
        1,
        &[
            (4, o("O([-1])[1]")),
            (8, o("k(1)[1]")),
            (12, o("O([0])[2]")),
        ],
    ));
    record(chain_hits(
        &six,
        &o("k(1)"),
        1,
        &[
            (4, o("O([0])[1]")),
            (8, o("O([-1])[2]")),
            (12, o("k(1)[2]")),
        ],
    ));
    for n in 2..=8 {
        let zero = DObject::structure_sheaf(n);
        for i in 1..n {
            let j = n;
            let (i1, j1) = (i % n + 1, j % n + 1);
            let d = Divisor::zero(n).add_point(i, 1).add_point(i1, -1);
            record(chain_hits(
                &a_word(i, j, n).unwrap(),
                &zero,
                n,
                &[
                    (3, DObject::line_bundle(d)),
                    (6, zero.clone()),
                    (8, DObject::skyscraper(j1).shifted(-1)),
                    (12, zero.clone()),
                ],
            ));
        }
    }
    let sq = w("b1 a b2").pow(2);
    record(chain_hits(
        &sq,
        &o("k(1)"),
        2,
        &[(3, o("O([0,0])[1]")), (6, o("k(2)[1]"))],
    ));
    record(chain_hits(&sq, &o("k(2)"), 2, &[(6, o("k(1)[1]"))]));
    record(chain_hits(&sq, &o("O([0,0])"), 2, &[(6, o("O([0,0])[1]"))]));
    Verdict::new(
        failures.is_empty(),
        format!("{ok} chains reproduced; failures: {failures:?}"),
    )
}

/// Whether `o` is an acceptable verified outcome for `rel` at `n`.
fn acceptable(rel: &Relator, n: usize, status: Status, m: Option<i64>) -> bool {
    match status {
        Status::Verified => true,
        Status::VerifiedUpToCentral => {
            matches!(rel.family, Family::Star | Family::LemmaG) && m == Some(2)
        }
        Status::VerifiedUpToInvolution => n <= 2,
        Status::Exhausted | Status::Mismatch => false,
    }
}

fn criterion_3(runs: &mut Vec<SheafRun>) -> Verdict {
    let start = Instant::now();
    let mut lines = Vec::new();
    let mut pass = true;
    for n in 1..=6 {
        let fams = applicable_families(n);
        let rels = suite_relators(n, &fams).unwrap();
        let reports =
            verify_relation_suite(n, &fams, &[Representation::Sheaf], SearchConfig::default())
                .unwrap();
        let mut goals = 0;
        let mut bad: Vec<String> = Vec::new();
        for report in &reports {
            let rel = rels.iter().find(|r| r.name == report.relator).unwrap();
            for out in &report.outcomes {
                goals += 1;
                if !acceptable(rel, n, out.status, out.central_defect_m) {
                    let obj = out.generator_object.as_ref().unwrap();
                    bad.push(format!("{} on {obj}: {}", rel.name, out.status));
                }
            }
        }
        runs.push(SheafRun {
            n,
            relators: rels,
            reports,
        });
        if bad.is_empty() {
            lines.push(format!("n={n}: {goals} goals verified"));
        } else {
            pass = false;
            let shown: Vec<&String> = bad.iter().take(6).collect();
            lines.push(format!(
                "n={n}: {} of {goals} goals not verified, e.g. {shown:?}",
                bad.len()
            ));
            if n < 6 {
                lines.push(format!("n={}..6 not run", n + 1));
            }
            break;
        }
    }
    let secs = start.elapsed().as_secs_f64();
    Verdict::new(pass, format!("{}; {secs:.1}s", lines.join("; ")))
}

fn criterion_4() -> Verdict {
    // sub-check name -> (checks, counterexamples)
    let mut tally: Vec<(&str, usize, Vec<String>)> = [
        "riemann-roch",
        "serre duality",
        "independent oracle",
        "h(O) = (1,1)",
        "deg >= 1 gives (deg,0)",
        "triple vanishing",
        "x_i - x_j vanishing",
    ]
    .into_iter()
    .map(|name| (name, 0, Vec::new()))
    .collect();
    let mut check = |slot: usize, ok: bool, what: String| {
        tally[slot].1 += 1;
        if !ok {
            tally[slot].2.push(what);
        }
    };
    for n in 1..=5 {
        let total = 5usize.pow(n as u32);
        for code in 0..total {
            let d: Vec<i64> = (0..n)
                .map(|p| (code / 5usize.pow(p as u32) % 5) as i64 - 2)
                .collect();
            let div = Divisor(d.clone());
            let dims = cohomology(&div).unwrap();
            let dual = cohomology(&div.neg()).unwrap();
            let deg = div.degree();
            let shown = format!("{div}: h0 = {}, h1 = {}", dims.h0, dims.h1);
            check(0, dims.h0 as i64 - dims.h1 as i64 == deg, shown.clone());
            check(1, dims.h1 == dual.h0, shown.clone());
            check(
                2,
                dims.h0 == common::h0(&d) && dims.h1 == common::h1(&d),
                shown.clone(),
            );
            if d.iter().all(|&a| a == 0) {
                check(3, dims.h0 == 1 && dims.h1 == 1, shown.clone());
            }
            if deg >= 1 {
                check(4, dims.h0 == deg as u64 && dims.h1 == 0, shown);
            }
        }
    }
    for n in 3..=6 {
        for (i, j, k) in strict_cyclic_triples(n) {
            let d = Divisor::zero(n)
                .add_point(i, -1)
                .add_point(j, 1)
                .add_point(k, -1)
                .add_point(k % n + 1, 1);
            check(
                5,
                cohomology(&d).unwrap().vanishes(),
                format!("({i},{j},{k}) at n = {n}"),
            );
        }
    }
    for n in 2..=6 {
        for i in 1..=n {
            for j in (1..=n).filter(|&j| j != i) {
                let d = Divisor::zero(n).add_point(i, 1).add_point(j, -1);
                check(
                    6,
                    cohomology(&d).unwrap().vanishes(),
                    format!("x{i} - x{j} at n = {n}"),
                );
            }
        }
    }
    let pass = tally.iter().all(|t| t.2.is_empty());
    let parts: Vec<String> = tally
        .iter()
        .map(|(name, count, bad)| {
            if bad.is_empty() {
                format!("{name} {count}/{count}")
            } else {
                let shown: Vec<&String> = bad.iter().take(3).collect();
                format!("{name} {}/{count}, e.g. {shown:?}", count - bad.len())
            }
        })
        .collect();
    Verdict::new(pass, parts.join("; "))
}

fn criterion_5(runs: &[SheafRun]) -> Verdict {
    let mut rewrites = 0;
    let mut defects = 0;
    let mut violations = Vec::new();
    for run in runs {
        for report in &run.reports {
            let rel = run
                .relators
                .iter()
                .find(|r| r.name == report.relator)
                .unwrap();
            for out in &report.outcomes {
                for step in &out.trace.steps {
                    if let Step::BraidRewrite { from, to, .. } = step {
                        rewrites += 1;
                        if evaluate_word_matrix(from, run.n) != evaluate_word_matrix(to, run.n) {
                            violations.push(format!("{from} -> {to} at n = {}", run.n));
                        }
                    }
                }
                if let (true, Some(m)) = (out.status.is_verified(), out.central_defect_m) {
                    defects += 1;
                    let lhs = evaluate_word_matrix(&rel.lhs, run.n);
                    let rhs = evaluate_word_matrix(&rel.rhs, run.n);
                    let sign = if m.rem_euclid(2) == 0 { rhs } else { rhs.neg() };
                    if lhs != sign || !central_defect_consistent(rel, m, run.n) {
                        violations.push(format!("{} with t^{m} at n = {}", rel.name, run.n));
                    }
                }
            }
        }
    }
    let ns: Vec<usize> = runs.iter().map(|r| r.n).collect();
    Verdict::new(
        violations.is_empty() && !runs.is_empty(),
        format!("{rewrites} rewrite steps, {defects} central defects over n = {ns:?}; violations: {violations:?}"),
    )
}

fn random_word(rng: &mut ChaCha8Rng, n: usize, max_len: usize) -> Word {
    let letters = common::alphabet(n, true);
    let len = rng.gen_range(0..=max_len);
    Word(
        (0..len)
            .map(|_| letters[rng.gen_range(0..letters.len())])
            .collect(),
    )
}

/// Applies one randomly chosen licensed rewrite, if any rule matches.
fn perturb(rng: &mut ChaCha8Rng, word: &Word, rules: &RuleSet) -> Word {
    let mut options = Vec::new();
    for p in 0..word.len() {
        for rule in rules.matches_at(&word.0, p) {
            options.push((p, rule));
        }
    }
    if options.is_empty() {
        return word.clone();
    }
    let (p, rule) = options[rng.gen_range(0..options.len())];
    let mut out = word.0[..p].to_vec();
    out.extend(&rule.to);
    out.extend(&word.0[p + rule.from.len()..]);
    Word(out)
}

fn criterion_7(runs: &[SheafRun]) -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(0x7e57);
    let mut failures = Vec::new();
    for _ in 0..1000 {
        let n = rng.gen_range(1..=8);
        let word = random_word(&mut rng, n, 50);
        if !word.concat(&word.invert()).free_reduce().is_empty() {
            failures.push(format!("w w' does not reduce: {word}"));
        }
        let once = word.free_reduce();
        if once.free_reduce() != once || once.0 != common::reduce(&word) {
            failures.push(format!("free_reduce not idempotent on {word}"));
        }
    }

    // every trace from the sheaf suite replays, and truncating it breaks it
    let mut replayed = 0;
    for run in runs {
        for report in &run.reports {
            let rel = run
                .relators
                .iter()
                .find(|r| r.name == report.relator)
                .unwrap();
            for out in report.outcomes.iter().filter(|o| o.status.is_verified()) {
                let obj = out.generator_object.clone().unwrap();
                let searched = relator_for_object(rel, &obj, run.n).unwrap();
                let goal = Goal {
                    lhs: searched.lhs,
                    rhs: searched.rhs,
                    object: obj,
                };
                let acc = acceptance_for(rel, run.n);
                replayed += 1;
                if let Err(e) = check_trace(&goal, &out.trace, acc, run.n) {
                    failures.push(format!("{} trace rejected: {e}", rel.name));
                }
                let mut cut = out.trace.clone();
                if cut.steps.pop().is_some() && check_trace(&goal, &cut, acc, run.n).is_ok() {
                    failures.push(format!("{} truncated trace accepted", rel.name));
                }
            }
        }
    }

    // random claims `w = w'` with `w'` one licensed rewrite away
    let mut proved = 0;
    for _ in 0..300 {
        let n = rng.gen_range(1..=4);
        let lhs = random_word(&mut rng, n, 10);
        let rules = RuleSet::new(n, 1, 6);
        let rhs = perturb(&mut rng, &lhs, &rules);
        let objects = DObject::generators(n);
        let object = objects[rng.gen_range(0..objects.len())].clone();
        let goal = Goal { lhs, rhs, object };
        let searcher = Searcher::new(
            n,
            SearchConfig {
                budget: 2_000,
                ..SearchConfig::default()
            },
        );
        let acc = twistverify::verifier::Acceptance::EXACT;
        match searcher.search(&goal, acc) {
            SearchOutcome::Proved { trace, .. } => {
                proved += 1;
                if let Err(e) = check_trace(&goal, &trace, acc, n) {
                    failures.push(format!(
                        "{} = {} on {}: {e}",
                        goal.lhs, goal.rhs, goal.object
                    ));
                }
            }
            SearchOutcome::Refuted { .. } => {
                failures.push(format!("sound claim refuted: {} = {}", goal.lhs, goal.rhs));
            }
            SearchOutcome::Exhausted { .. } => {}
        }
    }
    Verdict::new(
        failures.is_empty(),
        format!(
            "1000 random words; {replayed} suite traces and {proved} random-claim traces replayed; failures: {:?}",
            failures.iter().take(5).collect::<Vec<_>>()
        ),
    )
}

fn criterion_6() -> Verdict {
    let mut failures = Vec::new();
    for n in 1..=8 {
        // χ(e_a, e_b) = r_a d_b - r_b d_a with e_0 the rank coordinate
        let gram = |a: usize, b: usize| -> i128 {
            let r = |x: usize| i128::from(x == 0);
            let d = |x: usize| i128::from(x != 0);
            r(a) * d(b) - r(b) * d(a)
        };
        let mut letters = common::alphabet(n, true);
        letters.retain(|l| !l.inverse || l.generator != twistverify::words::Generator::Central);
        for l in letters {
            let m = twist_matrix(l, n);
            let e = |r: usize, c: usize| -> i128 { m.entries[r][c].to_i128().unwrap() };
            for a in 0..=n {
                for b in 0..=n {
                    let mut v = 0;
                    for p in 0..=n {
                        for q in 0..=n {
                            v += e(p, a) * gram(p, q) * e(q, b);
                        }
                    }
                    if v != gram(a, b) {
                        failures.push(format!("{l} at n = {n}, entry ({a},{b})"));
                    }
                }
            }
        }
        let basis = radical_basis(n);
        let rows: Vec<Vec<i128>> = basis
            .iter()
            .map(|v| v.0.iter().map(|x| x.to_i128().unwrap()).collect())
            .collect();
        let want = n.saturating_sub(1);
        if basis.len() != want || common::rank(rows.clone()) != want {
            failures.push(format!("radical rank {} at n = {n}", basis.len()));
        }
        for v in &rows {
            for b in 0..=n {
                let s: i128 = (0..=n).map(|a| v[a] * gram(a, b)).sum();
                if s != 0 {
                    failures.push(format!("radical vector {v:?} pairs with e_{b} at n = {n}"));
                }
            }
        }
    }
    Verdict::new(
        failures.is_empty(),
        format!("n = 1..8; failures: {failures:?}"),
    )
}

fn main() {
    let mut runs = Vec::new();
    let names = [
        "K-theory suite",
        "sheaf golden chains",
        "full sheaf verification",
        "cohomology oracle",
        "cross-representation consistency",
        "transvection and form properties",
        "word-engine properties",
    ];
    let verdicts = [
        criterion_1(),
        criterion_2(),
        criterion_3(&mut runs),
        criterion_4(),
        criterion_5(&runs),
        criterion_6(),
        criterion_7(&runs),
    ];
    let mut all = true;
    for (k, (name, v)) in names.iter().zip(&verdicts).enumerate() {
        let tag = if v.pass { "PASS" } else { "FAIL" };
        println!("criterion {} ({name}): {tag}: {}", k + 1, v.detail);
        all &= v.pass;
    }
    if !all {
        std::process::exit(1);
    }
}
