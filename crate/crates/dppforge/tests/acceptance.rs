//! Acceptance suite: one PASS/FAIL line per criterion, with pinned time limits.
//!
//! Run with `cargo test --test acceptance -- --nocapture` to see the lines.

mod common;

use common::*;
use dppforge::algebra::{check_identities, poisson_as_dpp, Role};
use dppforge::catalog::{self, parse_terms, CatalogEntry};
use dppforge::coalgebra::{check_bialgebra, BialgebraCandidate};
use dppforge::constructions::{check_o_operator, rtilde, OOperatorCandidate};
use dppforge::graded::{
    box_labels, check_completed_coalgebra, check_lift_truncated, completed_tensor_bialgebra, lift_r_truncated, tensor_coproduct, GradedParams,
    LvfLabel, Mode, NuRule, PbLabel,
};
use dppforge::linalg::{sharp, Tensor2};
use dppforge::rational::{q, Rational};
use dppforge::rep::{coregular_rep, semidirect_product, CoregularVariant};
use dppforge::rota_baxter::{check_quadratic_rb, factorizable_to_qrb, qrb_to_rmatrix};
use dppforge::ybe::{classify, invariance, leibniz_residual, perm_residual, LybeSign, DEFAULT_LYBE_SIGN};
use dppforge::ForgeError;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::{BTreeMap, BTreeSet};
use std::time::{Duration, Instant};

const ORACLE_TABLES: &str = include_str!("../../../docs/oracle_tables.txt");
const SIGN_TRANSCRIPT: &str = include_str!("../../../docs/lybe_sign_oracle.txt");

const TRIALS: usize = 100;
const SEED: u64 = 0x5eed_d0b1e;

struct Outcome {
    pass: bool,
    detail: String,
}

impl Outcome {
    fn new(pass: bool, detail: impl Into<String>) -> Self {
        Outcome { pass, detail: detail.into() }
    }
}

struct Line {
    id: u32,
    limit: Duration,
    elapsed: Duration,
    outcome: Outcome,
}

impl Line {
    fn passed(&self) -> bool {
        self.outcome.pass && self.elapsed < self.limit
    }

    fn print(&self) {
        let verdict = if self.passed() { "PASS" } else { "FAIL" };
        println!(
            "criterion {}  {verdict}  {:.3} s (limit {} s)  {}",
            self.id,
            self.elapsed.as_secs_f64(),
            self.limit.as_secs(),
            self.outcome.detail
        );
    }
}

fn run(id: u32, limit_secs: u64, f: impl FnOnce() -> Outcome) -> Line {
    let start = Instant::now();
    let outcome = f();
    Line { id, limit: Duration::from_secs(limit_secs), elapsed: start.elapsed(), outcome }
}

/// `item → value` lines of one entry in the frozen oracle transcript.
fn oracle_values(entry: &str) -> BTreeMap<String, String> {
    ORACLE_TABLES
        .lines()
        .filter_map(|l| l.strip_prefix(entry)?.strip_prefix(' '))
        .filter_map(|l| l.split_once(" = "))
        .map(|(i, v)| (i.to_string(), v.to_string()))
        .collect()
}

/// Items whose printed value differs from the computed one; each must carry a note.
fn diff_items(entry: &CatalogEntry) -> (BTreeSet<String>, bool) {
    let diffs = entry.compare().unwrap();
    let documented = diffs.iter().filter(|d| !d.matches).all(|d| d.note.is_some());
    (diffs.iter().filter(|d| !d.matches).map(|d| d.item.clone()).collect(), documented)
}

fn set(items: &[&str]) -> BTreeSet<String> {
    items.iter().map(|s| s.to_string()).collect()
}

fn criterion_1() -> Outcome {
    let rep = check_identities(&catalog::a2());
    Outcome::new(rep.passed(), format!("A2 passes all {} DPP identity families exactly", rep.results.len()))
}

fn criterion_2() -> Outcome {
    let d = catalog::double_a2();
    let perm = perm_residual(&d.algebra, &d.rtilde).unwrap();
    let leib = leibniz_residual(&d.algebra, &d.rtilde, DEFAULT_LYBE_SIGN).unwrap();
    let skew = Tensor2 { left: d.rtilde.left.clone(), right: d.rtilde.right.clone(), data: d.rtilde.data.sub(&d.rtilde.data.transpose()) };
    let inv = invariance(&d.algebra, &skew).unwrap().passed();
    let bia = check_bialgebra(&BialgebraCandidate::new(d.algebra.clone(), d.coproducts.clone()).unwrap()).unwrap();
    let dpbi = (1..=7).all(|k| bia.results.iter().any(|r| r.id == format!("dpbi.{k}") && r.passed()));
    let c = classify(&d.algebra, &d.rtilde, DEFAULT_LYBE_SIGN).unwrap();
    let entry = catalog::entry("DOUBLE_A2").unwrap();
    let i_items: Vec<String> = ["e1*", "e2*", "f1*", "f2*"].iter().map(|x| format!("𝓘({x})")).collect();
    let diffs = entry.compare().unwrap();
    let i_rows: Vec<_> = diffs.iter().filter(|d| i_items.contains(&d.item)).collect();
    let i_ok = i_rows.len() == 4 && i_rows.iter().all(|d| d.matches || d.note.is_some());
    let oracle = oracle_values("DOUBLE_A2");
    let oracle_ok = ["e1*", "e2*", "f1*", "f2*"].iter().all(|x| {
        let want = parse_terms(&oracle[&format!("𝓘[r̃]({x})")]).unwrap();
        parse_terms(&entry.evaluate(&format!("𝓘({x})")).unwrap()).unwrap() == want
    });
    let undocumented: Vec<_> = i_rows.iter().filter(|d| !d.matches).map(|d| d.item.as_str()).collect();
    let pass = perm.is_zero() && leib.is_zero() && inv && bia.passed() && dpbi && !c.det_i.is_zero() && i_ok && oracle_ok;
    Outcome::new(
        pass,
        format!(
            "DOUBLE_A2: r̃ residuals zero (sign {}), r̃−τ(r̃) invariant, dpbi.1–7 pass, det 𝓘 = {}, 𝓘 table matches oracle; documented diffs {:?}",
            DEFAULT_LYBE_SIGN.value(),
            c.det_i,
            undocumented
        ),
    )
}

fn round_trip(alg: &dppforge::algebra::StructureAlgebra, r: &Tensor2, weight: i64) -> Result<bool, ForgeError> {
    let qrb = factorizable_to_qrb(alg, r, &q(weight), DEFAULT_LYBE_SIGN)?;
    Ok(check_quadratic_rb(&qrb).passed() && qrb_to_rmatrix(&qrb)? == *r)
}

/// The PB6 part is unattainable: r̂ is symmetric, so 𝓘 = r♯ − τ(r)♯ vanishes.
/// The line reports FAIL; the test asserts that the failure is exactly this one.
fn criterion_3() -> (Outcome, bool) {
    let d = catalog::double_a2();
    let a2_ok = round_trip(&d.algebra, &d.rtilde, -1).unwrap_or(false);
    let pb = catalog::pb6().algebra;
    let pb6 = round_trip(&pb, &catalog::pb6_rhat(), 1);
    let pb6_singular = matches!(pb6, Err(ForgeError::Singular(_)));
    let dp = catalog::double_pb6();
    let substitute_ok = round_trip(&dp.algebra, &dp.rtilde, 1).unwrap_or(false);
    let pb6_text = match &pb6 {
        Ok(ok) => format!("round trip {ok}"),
        Err(e) => format!("unattainable ({e}; r̂ is symmetric so 𝓘 = 0)"),
    };
    let outcome = Outcome::new(
        a2_ok && matches!(pb6, Ok(true)),
        format!("qrb round trip: DOUBLE_A2 λ=−1 exact = {a2_ok}; PB6 λ=1 {pb6_text}; substitute DOUBLE_PB6 λ=1 exact = {substitute_ok}"),
    );
    (outcome, a2_ok && pb6_singular && substitute_ok)
}

fn criterion_4() -> Outcome {
    let entry = catalog::entry("PB6").unwrap();
    let (diffs, documented) = diff_items(&entry);
    let typos = set(&["ϑ(e1⊗x1)", "(e1⊗x1)∘(e1⊗x1)", "(e1⊗x1)∘(e1⊗x2)"]);
    let oracle = oracle_values("PB6");
    let typo_oracle_ok = ["ϑ(e1⊗x1)", "(e1⊗x1)∘(e1⊗x1)", "(e1⊗x1)∘(e1⊗x2)"]
        .iter()
        .all(|i| parse_terms(&entry.evaluate(i).unwrap()).unwrap() == parse_terms(&oracle[*i]).unwrap());
    let printed_matches = entry.compare().unwrap().iter().filter(|d| !typos.contains(&d.item)).all(|d| d.matches);
    let rhat_printed = entry.compare().unwrap().iter().filter(|d| d.item.starts_with("r̂♯(")).filter(|d| d.matches).count();
    let alg = catalog::pb6().algebra;
    let rhat = catalog::pb6_rhat();
    let c = classify(&alg, &rhat, DEFAULT_LYBE_SIGN).unwrap();
    let o = OOperatorCandidate::Dpp { rep: coregular_rep(&alg, CoregularVariant::Signed), t: sharp(&rhat).unwrap().matrix };
    let o_ok = check_o_operator(&alg, &o).unwrap().passed();
    let b2_ok = catalog::entry("B2").unwrap().compare().unwrap().iter().all(|d| d.matches);
    let pass = diffs == typos && documented && typo_oracle_ok && printed_matches && rhat_printed == 4 && c.symmetric && c.solves_dpybe && o_ok && b2_ok;
    Outcome::new(
        pass,
        format!(
            "PB6: printed ϑ, ∗-lines, r̂, κ♯ and {rhat_printed}/4 r̂♯ entries match; typo diffs {:?} equal oracle values; r̂ symmetric = {}, solves DPYBE = {}, signed O-operator = {o_ok}",
            diffs, c.symmetric, c.solves_dpybe
        ),
    )
}

type Windowed = BTreeMap<(PbLabel, PbLabel), Rational>;

fn lbl(i1: i64, i2: i64, s: u8) -> LvfLabel {
    LvfLabel::new(i1, i2, s)
}

/// The displayed `ϑ(x1^m x2^n ∂_s e1)`, restricted to legs in the box `|i| ≤ b`.
fn theta_display(m: i64, n: i64, s: u8, b: i64) -> Windowed {
    let (e2, e3) = (1usize, 2usize);
    let mut out = Windowed::new();
    for i1 in -b..=b {
        for i2 in -b..=b {
            let rows = [
                ((e2, lbl(i1, i2, 1)), (e3, lbl(m - i1, n - i2 + 1, s)), 1),
                ((e2, lbl(i1, i2, 2)), (e3, lbl(m - i1 + 1, n - i2, s)), -1),
                ((e3, lbl(i1, i2, 2)), (e2, lbl(m - i1 + 1, n - i2, s)), 1),
                ((e3, lbl(i1, i2, 1)), (e2, lbl(m - i1, n - i2 + 1, s)), -1),
            ];
            for (a, c, v) in rows {
                if a.1.in_box(b) && c.1.in_box(b) {
                    *out.entry((a, c)).or_default() += &q(v);
                }
            }
        }
    }
    out.retain(|_, v| !v.is_zero());
    out
}

/// The displayed `r̂`, restricted to the window `|i| ≤ w`.
fn rhat_display(w: i64) -> Windowed {
    let (e2, e3) = (1usize, 2usize);
    let mut out = Windowed::new();
    for i1 in -w..=w {
        for i2 in -w..=w {
            let rows = [
                ((e2, lbl(i1, i2, 1)), (e3, lbl(-i1, -i2, 2)), 1),
                ((e3, lbl(i1, i2, 1)), (e2, lbl(-i1, -i2, 2)), -1),
                ((e2, lbl(i1, i2, 2)), (e3, lbl(-i1, -i2, 1)), -1),
                ((e3, lbl(i1, i2, 2)), (e2, lbl(-i1, -i2, 1)), 1),
            ];
            for (a, c, v) in rows {
                *out.entry((a, c)).or_default() += &q(v);
            }
        }
    }
    out.retain(|_, v| !v.is_zero());
    out
}

fn criterion_5() -> Outcome {
    let pb = catalog::p3_bialgebra();
    let pairing = GradedParams { box_m: 2, window: 6, mode: Mode::Pairing };
    let strong = GradedParams { mode: Mode::Strong, ..pairing };
    let coalg = check_completed_coalgebra(&pairing, NuRule::default()).unwrap();
    let bia = completed_tensor_bialgebra(&pb, &pairing).unwrap();
    let mut theta_ok = true;
    let mut compared = 0;
    for b in box_labels(2) {
        for p in 0..3 {
            let theta = tensor_coproduct(&pb, Role::Star, p, b, &strong).unwrap();
            let nu = tensor_coproduct(&pb, Role::Circ, p, b, &strong).unwrap();
            let want = if p == 0 { theta_display(b.i1, b.i2, b.s, 2) } else { Windowed::new() };
            theta_ok &= theta.terms == want && nu.terms.is_empty();
            compared += 1;
        }
    }
    let rhat = lift_r_truncated(&catalog::p3_r(), &strong).unwrap();
    let rhat_ok = rhat.terms == rhat_display(strong.window);
    let lift = check_lift_truncated(&pb, &rhat, &strong, DEFAULT_LYBE_SIGN).unwrap();
    let pass = coalg.passed() && bia.report.passed() && theta_ok && rhat_ok && lift.passed();
    Outcome::new(
        pass,
        format!(
            "P3⊗LVF, M=2, N=6: completed perm coalgebra {} and {} bialgebra identities pass in pairing mode; strong-mode ϑ/ν match the closed form on {compared} in-box generators; windowed r̂ matches the display ({} terms) and solves in-box",
            coalg.results.len(),
            bia.report.results.len(),
            rhat.terms.len()
        ),
    )
}

fn criterion_6() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let bump = |rng: &mut ChaCha8Rng| -> Option<(usize, usize, usize, usize, i64)> {
        rng.gen_bool(0.5).then(|| (rng.gen_range(0..4), rng.gen_range(0..8), rng.gen_range(0..8), rng.gen_range(0..8), if rng.gen_bool(0.5) { 1 } else { -1 }))
    };
    let vals = |rng: &mut ChaCha8Rng, k: usize, lo: i64, hi: i64| -> Vec<i64> { (0..k).map(|_| rng.gen_range(lo..=hi)).collect() };
    let mut failures = Vec::new();
    let mut flips = 0;
    let mut flip_total = 0;
    let mut tally = |name: &str, t: Trial, bumped: bool, failures: &mut Vec<String>| {
        if !t.agrees() {
            failures.push(name.to_string());
        }
        if bumped {
            flip_total += 1;
            if !t.lhs {
                flips += 1;
            }
        }
    };
    for _ in 0..TRIALS {
        let b = bump(&mut rng);
        let t = rep_trial(rng.gen_range(0..3), rng.gen_range(0..3), b);
        tally("rep", t, b.is_some(), &mut failures);
    }
    for _ in 0..TRIALS {
        let b = bump(&mut rng).map(|(r, m, i, j, v)| (r % 2, m, i, j, v));
        let t = coalgebra_trial(rng.gen_range(0..3), b);
        tally("coalgebra", t, b.is_some(), &mut failures);
    }
    let mut solved = 0;
    for k in 0..TRIALS {
        let t = if k % 2 == 0 {
            let v = vals(&mut rng, 10, -1, 1);
            symmetric_o_trial(rng.gen_range(0..3), &v)
        } else {
            skew_o_trial(&vals(&mut rng, 3, -2, 2))
        };
        solved += t.rhs as usize;
        tally("o-operator", t, false, &mut failures);
    }
    let mut lifts_ok = 0;
    let mut lifted_solutions = 0;
    for _ in 0..TRIALS {
        let t = lift_trial(rng.gen_range(-2..=2), &vals(&mut rng, 9, -1, 1), rng.gen_bool(0.5));
        lifts_ok += t.holds() as usize;
        lifted_solutions += t.solves.1 as usize;
    }
    let pass = failures.is_empty() && lifts_ok == TRIALS && flips > 0;
    Outcome::new(
        pass,
        format!(
            "4×{TRIALS} seeded trials: rep⇔semidirect, coalgebra⇔dual, YBE⇔O-operator ({solved} solutions), lift {lifts_ok}/{TRIALS} ({lifted_solutions} solutions); {flips}/{flip_total} corruptions flipped the verdict, all with witnesses; disagreements {failures:?}"
        ),
    )
}

fn criterion_7() -> Outcome {
    let winners: BTreeSet<&str> = SIGN_TRANSCRIPT
        .lines()
        .filter(|l| l.ends_with("both=True"))
        .filter_map(|l| l.split_whitespace().find_map(|w| w.strip_prefix("sign=")))
        .collect();
    let chosen = SIGN_TRANSCRIPT.lines().find_map(|l| l.strip_prefix("chosen sign: ")).unwrap_or("");
    let mut recomputed: BTreeMap<&str, bool> = BTreeMap::new();
    let mut rows_agree = true;
    for (name, alg) in [("A2", catalog::a2()), ("P3", poisson_as_dpp(&catalog::p3()).unwrap())] {
        for (vname, variant) in [("standard", CoregularVariant::Standard), ("signed", CoregularVariant::Signed)] {
            let d = semidirect_product(&alg, &coregular_rep(&alg, variant)).unwrap();
            let r = rtilde(&d.space, alg.dim());
            let perm = perm_residual(&d, &r).unwrap().is_zero();
            for (sname, sign) in [("plus", LybeSign::Plus), ("minus", LybeSign::Minus)] {
                let solves = perm && leibniz_residual(&d, &r, sign).unwrap().is_zero();
                *recomputed.entry(sname).or_insert(true) &= solves;
                let prefix = format!("{name:3} variant={vname:8} sign={sname:5}");
                let row = SIGN_TRANSCRIPT.lines().find(|l| l.starts_with(&prefix));
                rows_agree &= row.is_some_and(|l| l.ends_with(&format!("solves={}", if solves { "True" } else { "False" })));
            }
        }
    }
    let rust_winners: BTreeSet<&str> = recomputed.iter().filter(|(_, &ok)| ok).map(|(&s, _)| s).collect();
    let default = match DEFAULT_LYBE_SIGN {
        LybeSign::Plus => "plus",
        LybeSign::Minus => "minus",
    };
    let pass = winners.len() == 1 && winners.contains(default) && chosen == default && rust_winners == winners && rows_agree;
    Outcome::new(
        pass,
        format!("oracle transcript: signs solving on both doubles {winners:?}, chosen {chosen:?}; recomputed {rust_winners:?}; shipped default {default}"),
    )
}

#[test]
fn acceptance() {
    let (c3, c3_expected) = {
        let start = Instant::now();
        let (o, ok) = criterion_3();
        (Line { id: 3, limit: Duration::from_secs(1), elapsed: start.elapsed(), outcome: o }, ok)
    };
    let lines = vec![
        run(1, 1, criterion_1),
        run(2, 1, criterion_2),
        c3,
        run(4, 5, criterion_4),
        run(5, 60, criterion_5),
        run(6, 120, criterion_6),
        run(7, 5, criterion_7),
    ];
    for l in &lines {
        l.print();
    }
    let unexpected: Vec<u32> = lines.iter().filter(|l| !l.passed() && l.id != 3).map(|l| l.id).collect();
    assert!(unexpected.is_empty(), "failing criteria: {unexpected:?}");
    // Criterion 3 fails only through its PB6 part, for the recorded reason, and the rest of it holds.
    let c3 = &lines[2];
    assert!(!c3.outcome.pass && c3_expected && c3.elapsed < c3.limit, "criterion 3 changed: {}", c3.outcome.detail);
}
