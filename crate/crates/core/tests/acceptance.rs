//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each,
//! and exits non-zero if any fails.

mod common;

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use common::{apply_random_axiom, corpus, p, rng, sym};
use frx_core::automaton::{check_well_behaved, contains, explore, StateExplosion};
use frx_core::decompose::{conc_part, is_empty, nullable, seq_part};
use frx_core::derivative::{deriv, deriv_canonical, matches};
use frx_core::gen::{generate, GenConfig};
use frx_core::oracle::{
    all_words, continuation_samples, lang, left_quotient, member, regular_lang, sampled_containment,
    sampled_equivalence, trace_lang, Word,
};
use frx_core::similarity::normalize;
use frx_core::syntax::{Behavior, Symbol};

struct Outcome {
    ok: bool,
    detail: String,
}

impl Outcome {
    fn check(ok: bool, detail: impl Into<String>) -> Self {
        Outcome { ok, detail: detail.into() }
    }
}

fn within(elapsed: Duration, limit_secs: u64) -> bool {
    elapsed < Duration::from_secs(limit_secs)
}

fn symbols(names: &[&str]) -> Vec<Symbol> {
    names.iter().map(|n| sym(n)).collect()
}

/// Fork-free expressions: trace semantics equals the classical semantics.
fn ac1_fork_free_coincidence() -> Outcome {
    let t = Instant::now();
    let cfg = GenConfig::new(20, 3).fork_free();
    let exprs = corpus(101, 500, &cfg);
    let mismatches = exprs
        .iter()
        .filter(|r| lang(r, 5) != regular_lang(r, 5).expect("fork-free"))
        .count();
    let dt = t.elapsed();
    Outcome::check(
        mismatches == 0 && within(dt, 30),
        format!("500 exprs, {mismatches} mismatches, {dt:.2?} (limit 30s)"),
    )
}

fn derivative_corpus() -> Vec<Behavior> {
    corpus(202, 500, &GenConfig::new(15, 3))
}

/// `L(∂x r) = x \ L(r)` at bounds 4 / 5.
fn ac2_left_quotient(exprs: &[Behavior]) -> Outcome {
    let t = Instant::now();
    let sigma = symbols(&["x", "y", "z"]);
    let mut mismatches = 0;
    for r in exprs {
        let full = lang(r, 5);
        for x in &sigma {
            if lang(&deriv(r, x), 4) != left_quotient(x, &full) {
                mismatches += 1;
            }
        }
    }
    let dt = t.elapsed();
    Outcome::check(
        mismatches == 0 && within(dt, 60),
        format!("500 exprs x 3 symbols, {mismatches} mismatches, {dt:.2?} (limit 60s)"),
    )
}

/// `L(r) = (ε if nullable) ∪ ⋃ x·L(∂x r)` at bound 4.
fn ac3_representation(exprs: &[Behavior]) -> Outcome {
    let sigma = symbols(&["x", "y", "z"]);
    let mismatches = exprs
        .iter()
        .filter(|r| {
            let mut words = BTreeSet::new();
            if nullable(r) {
                words.insert(Word::epsilon());
            }
            for x in &sigma {
                words.extend(lang(&deriv(r, x), 3).iter().map(|w| w.prepend(x)));
            }
            lang(r, 4).into_words() != words
        })
        .count();
    Outcome::check(mismatches == 0, format!("500 exprs, {mismatches} mismatches"))
}

/// Shuffle closure of {xy, yx} is the equal-count language.
fn ac4_equal_counts() -> Outcome {
    let (x, y) = (sym("x"), sym("y"));
    let expected: BTreeSet<Word> = all_words(&[x.clone(), y.clone()], 6)
        .into_iter()
        .filter(|w| w.count(&x) == w.count(&y))
        .collect();
    let per_length: Vec<usize> = (0..=6).step_by(2).map(|n| expected.iter().filter(|w| w.len() == n).count()).collect();
    let got = lang(&p("F(x.y + y.x)*"), 6).into_words();
    Outcome::check(
        got == expected && expected.len() == 29 && per_length == [1, 2, 6, 20],
        format!("{} words, by length {:?}, oracle {} words", got.len(), per_length, expected.len()),
    )
}

/// `r ≃ ⌈r⌉ + ⌊r⌋` and `⌈⌈r⌉⌉ = ⌈r⌉`.
fn ac5_decomposition() -> Outcome {
    let exprs = corpus(505, 500, &GenConfig::new(15, 3));
    let mut lang_mismatch = 0;
    let mut idem_mismatch = 0;
    for r in &exprs {
        let c = conc_part(r);
        if lang(r, 4) != lang(&Behavior::alt(c.clone(), seq_part(r)), 4) {
            lang_mismatch += 1;
        }
        if conc_part(&c) != c {
            idem_mismatch += 1;
        }
    }
    Outcome::check(
        lang_mismatch == 0 && idem_mismatch == 0,
        format!("500 exprs, {lang_mismatch} language mismatches, {idem_mismatch} idempotence failures"),
    )
}

/// Idempotent-semiring identities, star unfolding, and star induction.
fn ac6_kleene_algebra() -> Outcome {
    let n = 4;
    let cfg = GenConfig::new(8, 2);
    let mut g = rng(606);
    let (e, z) = (Behavior::eps(), Behavior::empty());
    let mut failures = Vec::new();
    let mut premises = 0;
    for i in 0..150 {
        let r = generate(&mut g, &cfg);
        let s = generate(&mut g, &cfg);
        let t = generate(&mut g, &cfg);
        let (alt, seq, star) = (Behavior::alt, Behavior::seq, Behavior::star);
        let laws: Vec<(&str, Behavior, Behavior)> = vec![
            ("assoc+", alt(r.clone(), alt(s.clone(), t.clone())), alt(alt(r.clone(), s.clone()), t.clone())),
            ("comm+", alt(r.clone(), s.clone()), alt(s.clone(), r.clone())),
            ("idem+", alt(r.clone(), r.clone()), r.clone()),
            ("unit+", alt(r.clone(), z.clone()), r.clone()),
            ("assoc.", seq(r.clone(), seq(s.clone(), t.clone())), seq(seq(r.clone(), s.clone()), t.clone())),
            ("unit.l", seq(e.clone(), r.clone()), r.clone()),
            ("unit.r", seq(r.clone(), e.clone()), r.clone()),
            ("zero.l", seq(z.clone(), r.clone()), z.clone()),
            ("zero.r", seq(r.clone(), z.clone()), z.clone()),
            (
                "distrib.l",
                seq(r.clone(), alt(s.clone(), t.clone())),
                alt(seq(r.clone(), s.clone()), seq(r.clone(), t.clone())),
            ),
            (
                "distrib.r",
                seq(alt(r.clone(), s.clone()), t.clone()),
                alt(seq(r.clone(), t.clone()), seq(s.clone(), t.clone())),
            ),
        ];
        for (name, a, b) in laws {
            if !sampled_equivalence(&a, &b, n) {
                failures.push(format!("{name} #{i}"));
            }
        }
        let unfold_l = alt(e.clone(), seq(r.clone(), star(r.clone())));
        let unfold_r = alt(e.clone(), seq(star(r.clone()), r.clone()));
        if !sampled_containment(&unfold_l, &star(r.clone()), n) {
            failures.push(format!("1 + r.r* <= r* #{i}"));
        }
        if !sampled_containment(&unfold_r, &star(r.clone()), n) {
            failures.push(format!("1 + r*.r <= r* #{i}"));
        }
    }

    // Star induction, checked per continuation: whenever the premise holds
    // for a sampled continuation the conclusion must hold for it too.
    let mut triples: Vec<(Behavior, Behavior)> = [
        ("x", "x*"),
        ("F(x)", "F(x)*"),
        ("x + y", "(x + y)*.y"),
        ("F(x.y)", "F(x.y)*.y*"),
        ("x.F(y)", "(x.F(y))*"),
        ("F(x)", "F(x).F(x)*"),
        ("y", "x*"),
    ]
    .iter()
    .map(|(a, b)| (p(a), p(b)))
    .collect();
    for _ in 0..60 {
        let r = generate(&mut g, &cfg);
        let t = generate(&mut g, &cfg);
        triples.push((r.clone(), Behavior::seq(Behavior::star(r.clone()), t.clone())));
        triples.push((r.clone(), Behavior::seq(t, Behavior::star(r))));
    }
    for (i, (r, s)) in triples.iter().enumerate() {
        for k in continuation_samples(r, s, n) {
            let rs = trace_lang(&Behavior::seq(r.clone(), s.clone()), &k, n);
            let sr = trace_lang(&Behavior::seq(s.clone(), r.clone()), &k, n);
            let sl = trace_lang(s, &k, n);
            if rs.is_subset(&sl) {
                premises += 1;
                let concl = trace_lang(&Behavior::seq(Behavior::star(r.clone()), s.clone()), &k, n);
                if !concl.is_subset(&sl) {
                    failures.push(format!("r.s <= s => r*.s <= s, triple {i}"));
                }
            }
            if sr.is_subset(&sl) {
                premises += 1;
                let concl = trace_lang(&Behavior::seq(s.clone(), Behavior::star(r.clone())), &k, n);
                if !concl.is_subset(&sl) {
                    failures.push(format!("s.r <= s => s.r* <= s, triple {i}"));
                }
            }
        }
    }
    Outcome::check(
        failures.is_empty() && premises > 0,
        format!(
            "150 triples x 13 laws, {} induction premises held, failures: {:?}",
            premises,
            failures.iter().take(5).collect::<Vec<_>>()
        ),
    )
}

/// Derivative matcher agrees with enumeration on every word up to length 5.
fn ac7_matcher() -> Outcome {
    let exprs = corpus(707, 200, &GenConfig::new(15, 2));
    let words = all_words(&symbols(&["x", "y"]), 5);
    let mut disagreements = 0;
    for r in &exprs {
        for w in &words {
            if matches(r, w) != member(r, w) {
                disagreements += 1;
            }
        }
    }
    Outcome::check(
        disagreements == 0,
        format!("200 exprs x {} words, {disagreements} disagreements", words.len()),
    )
}

/// Certified expressions have finite derivative automata.
fn ac8_finiteness() -> Outcome {
    let t = Instant::now();
    let cfg = GenConfig::new(30, 3);
    let mut g = rng(808);
    let mut sizes = Vec::new();
    let mut failures = Vec::new();
    let mut drawn = 0;
    while sizes.len() < 200 {
        let r = generate(&mut g, &cfg);
        drawn += 1;
        if !check_well_behaved(&r).is_certified() {
            continue;
        }
        match explore(&r, 5_000) {
            Ok(d) => sizes.push(d.len()),
            Err(StateExplosion { .. }) => {
                failures.push(r.render());
                sizes.push(usize::MAX);
            }
        }
    }
    let dt = t.elapsed();
    sizes.sort_unstable();
    let median = sizes[sizes.len() / 2];
    let max = sizes.last().copied().unwrap_or(0);
    Outcome::check(
        failures.is_empty() && median <= 50 && within(dt, 120),
        format!(
            "200 certified (of {drawn} drawn), median {median} states (limit 50), max {max}, {dt:.2?} (limit 120s), exploded: {:?}",
            failures
        ),
    )
}

/// Forks under star: unbounded dissimilar descendants.
fn ac9_blowup() -> Outcome {
    let mut details = Vec::new();
    let mut ok = true;
    for text in ["F(x.y)*", "(x.F(y))*", "(x1.x2.F(y))*"] {
        match explore(&p(text), 200) {
            Ok(d) => {
                ok = false;
                details.push(format!("{text}: finished with {} states", d.len()));
            }
            Err(e) => details.push(format!("{text}: > {} states", e.limit)),
        }
    }
    // After x^k the state holds k pending F(y) threads: it is a state of the
    // automaton, carries k copies of F(y), and denotes F(y)^k . F(x.y)*.
    let r = p("F(x.y)*");
    let states: BTreeSet<Behavior> = explore(&r, 200)
        .err()
        .map(|e| e.states.iter().map(|s| s.as_behavior().clone()).collect())
        .unwrap_or_default();
    let fy = p("F(y)");
    let mut state = normalize(&r);
    for k in 1..=5 {
        state = deriv_canonical(&state, &sym("x"));
        let want = p(&format!("{}F(x.y)*", "F(y).".repeat(k)));
        let threads = state.as_behavior().subterms().iter().filter(|t| **t == fy).count();
        let bound = 2 * k + 2;
        if !states.contains(state.as_behavior()) {
            ok = false;
            details.push(format!("x^{k}: {state} not among explored states"));
        } else if threads != k || lang(state.as_behavior(), bound) != lang(&want, bound) {
            ok = false;
            details.push(format!("x^{k}: {state} is not F(y)^{k}.F(x.y)*"));
        }
    }
    details.push("x^1..x^5 reach F(y)^k.F(x.y)* as languages, bound 2k+2".into());
    Outcome::check(ok, details.join("; "))
}

/// Normalization: idempotent, invariant under single axiom steps;
/// nullable and isEmpty agree with enumeration.
fn ac10_normalization() -> Outcome {
    // Size <= 12 keeps at most 6 symbol occurrences, so a nonempty language
    // always has a word of length <= 6 and the emptiness converse is exact.
    let exprs = corpus(1010, 1000, &GenConfig::new(12, 2));
    let mut g = rng(1011);
    let (mut not_idem, mut axiom_changed, mut null_bad, mut empty_bad) = (0, 0, 0, 0);
    for r in &exprs {
        let c = normalize(r);
        if normalize(c.as_behavior()) != c {
            not_idem += 1;
        }
        let r2 = apply_random_axiom(&mut g, r);
        if normalize(&r2) != c {
            axiom_changed += 1;
        }
        if nullable(r) != member(r, &Word::epsilon()) {
            null_bad += 1;
        }
        if is_empty(r) != lang(r, 6).is_empty() {
            empty_bad += 1;
        }
    }
    Outcome::check(
        not_idem + axiom_changed + null_bad + empty_bad == 0,
        format!(
            "1000 exprs: {not_idem} not idempotent, {axiom_changed} changed by an axiom, {null_bad} nullable, {empty_bad} isEmpty disagreements"
        ),
    )
}

/// Containment verdicts are backed by witnesses or by bounded inclusion.
fn ac11_containment() -> Outcome {
    let cfg = GenConfig::new(10, 2);
    let mut g = rng(1111);
    let mut certified = Vec::new();
    while certified.len() < 120 {
        let r = generate(&mut g, &cfg);
        if check_well_behaved(&r).is_certified() {
            certified.push(r);
        }
    }
    let mut pairs = Vec::new();
    for pair in certified.chunks(2) {
        let (r, s) = (pair[0].clone(), pair[1].clone());
        pairs.push((r.clone(), s.clone()));
        pairs.push((r.clone(), Behavior::alt(s.clone(), r.clone())));
        pairs.push((r.clone(), p("(x + y)*")));
        pairs.push((Behavior::seq(r.clone(), s.clone()), Behavior::seq(r, Behavior::alt(s.clone(), p("x")))));
    }
    let (mut held, mut refuted, mut bad) = (0, 0, Vec::new());
    for (r, s) in &pairs {
        match contains(r, s, 10_000) {
            Ok(v) => match v.witness() {
                None => {
                    held += 1;
                    if !lang(r, 5).is_subset(&lang(s, 5)) {
                        bad.push(format!("{r} <= {s}: inclusion fails at bound 5"));
                    }
                }
                Some(w) => {
                    refuted += 1;
                    if !(matches(r, w) && !matches(s, w)) {
                        bad.push(format!("{r} <= {s}: bogus witness {w}"));
                    }
                }
            },
            Err(e) => bad.push(format!("{r} <= {s}: {e}")),
        }
    }
    Outcome::check(
        bad.is_empty() && held > 0 && refuted > 0,
        format!("{} pairs, {held} contained, {refuted} refuted, problems: {:?}", pairs.len(), bad.iter().take(3).collect::<Vec<_>>()),
    )
}

type Criterion<'a> = Box<dyn Fn() -> Outcome + 'a>;

fn main() {
    let derivative_exprs = derivative_corpus();
    let criteria: Vec<(&str, Criterion)> = vec![
        ("AC-1  fork-free coincidence", Box::new(ac1_fork_free_coincidence)),
        ("AC-2  left quotient", Box::new(|| ac2_left_quotient(&derivative_exprs))),
        ("AC-3  representation", Box::new(|| ac3_representation(&derivative_exprs))),
        ("AC-4  equal-count shuffle closure", Box::new(ac4_equal_counts)),
        ("AC-5  decomposition", Box::new(ac5_decomposition)),
        ("AC-6  Kleene algebra", Box::new(ac6_kleene_algebra)),
        ("AC-7  matcher vs oracle", Box::new(ac7_matcher)),
        ("AC-8  finiteness when certified", Box::new(ac8_finiteness)),
        ("AC-9  blowup witnesses", Box::new(ac9_blowup)),
        ("AC-10 normalization", Box::new(ac10_normalization)),
        ("AC-11 containment", Box::new(ac11_containment)),
    ];
    let mut failed = 0;
    for (name, run) in &criteria {
        let t = Instant::now();
        let out = run();
        let tag = if out.ok { "PASS" } else { "FAIL" };
        println!("[{tag}] {name}: {} [{:.2?}]", out.detail, t.elapsed());
        if !out.ok {
            failed += 1;
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
