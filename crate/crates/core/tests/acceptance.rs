//! Acceptance suite. Each criterion prints one `PASS`/`FAIL` line; the test
//! fails if any criterion does.
//!
//! Run with `cargo test -p vbraid --test acceptance -- --nocapture` to see the
//! report.

use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::Rng;

use vbraid::gauss::{canonical_form, word_to_gauss, BraidGaussDiagram};
use vbraid::moves::{
    apply_omega, enumerate_omega2_deletions, enumerate_omega2_insertions, enumerate_omega3, rules, MoveTrace,
    OmegaMoveSite, RelationFamily, Rule,
};
use vbraid::pure::{verify_pv_presentation, PvRelation};
use vbraid::sample::{random_diagram, random_letter, random_rewrite, random_word, rng};
use vbraid::search::{inequivalence_certificate, r_equivalent_bounded, Budget, Verdict};
use vbraid::selftest::roundtrip_suite;
use vbraid::surface::{build_ribbon_graph, canonical_genus, RibbonGraph};
use vbraid::{BraidWord, Letter};

struct Outcome {
    ok: bool,
    detail: String,
}

fn outcome(ok: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        ok,
        detail: detail.into(),
    }
}

type Criterion = (&'static str, fn() -> Outcome);

fn vm_rules(n: usize) -> Vec<Rule> {
    rules(n).into_iter().filter(|r| !r.family.is_reidemeister()).collect()
}

fn roundtrip() -> Outcome {
    let start = Instant::now();
    let report = roundtrip_suite(1000, 0x5eed, 6, 20);
    let elapsed = start.elapsed();
    outcome(
        report.all_passed() && elapsed < Duration::from_secs(10),
        format!("{}/{} round trips in {:.2?}", report.passed, report.trials, elapsed),
    )
}

fn vm_mutations() -> Outcome {
    let mut rng = rng(2);
    let mut checked = 0usize;
    let mut broken = 0usize;
    for _ in 0..500 {
        let n = rng.gen_range(2..=5);
        let len = rng.gen_range(0..=25);
        let w = random_word(&mut rng, n, len, true);
        let expected = canonical_form(&word_to_gauss(&w));
        let family = vm_rules(n);
        let mut cur = w;
        for _ in 0..20 {
            cur = match random_rewrite(&mut rng, &cur, &family) {
                Some(next) => next,
                // no vm rule matches: grow the word by a vm-trivial τ_i τ_i
                None => {
                    let t = Letter::tau(rng.gen_range(1..n));
                    let at = rng.gen_range(0..=cur.len());
                    let mut letters = cur.letters().to_vec();
                    letters.splice(at..at, [t, t]);
                    BraidWord::new(n, letters).unwrap()
                }
            };
            checked += 1;
            if canonical_form(&word_to_gauss(&cur)) != expected {
                broken += 1;
            }
        }
    }
    outcome(
        broken == 0 && checked == 10_000,
        format!("{} mutations, {} changed the canonical form", checked, broken),
    )
}

fn r3_correspondence() -> Outcome {
    let mut rng = rng(3);
    let all = rules(5);
    let mut good = 0;
    let mut trials = 0;
    while trials < 200 {
        let n = rng.gen_range(3..=5);
        let i = rng.gen_range(1..n - 1);
        let e = *[1i8, -1].choose(&mut rng).unwrap();
        let s = Letter::sigma_pow;
        let site = [s(i, e), s(i + 1, e), s(i, e)];
        let prefix_len = rng.gen_range(0..=8);
        let suffix_len = rng.gen_range(0..=8);
        let mut letters: Vec<Letter> = (0..prefix_len).map(|_| random_letter(&mut rng, n, true)).collect();
        let at = letters.len();
        letters.extend(site);
        letters.extend((0..suffix_len).map(|_| random_letter(&mut rng, n, true)));
        let w = BraidWord::new(n, letters).unwrap();
        let rule = all
            .iter()
            .find(|r| r.family == RelationFamily::SigmaBraid && r.lhs == site)
            .expect("braid relation instance");
        trials += 1;

        let after = vbraid::rewrite_word(&w, rule, at).unwrap();
        let before = canonical_form(&word_to_gauss(&w));
        let target = canonical_form(&word_to_gauss(&after));
        let one_step = before != target
            && enumerate_omega3(&before)
                .iter()
                .any(|site| apply_omega(&before, site).is_ok_and(|g| canonical_form(&g) == target));
        if one_step {
            good += 1;
        }
    }
    outcome(
        good == trials,
        format!("{good}/{trials} R3 rewrites are a single Ω3 move"),
    )
}

fn pv_presentation() -> Outcome {
    let start = Instant::now();
    let mut ok = true;
    let mut parts = Vec::new();
    for n in 2..=4 {
        let report = verify_pv_presentation(n, 1);
        let single_moves = report.instances.iter().all(|inst| match inst.relation {
            PvRelation::Triangle => inst
                .trace
                .as_ref()
                .is_some_and(|t| t.len() == 1 && matches!(t.steps[0], OmegaMoveSite::Omega3 { .. })),
            PvRelation::Commutation => inst.trace.as_ref().is_some_and(MoveTrace::is_empty),
        });
        ok &= report.all_passed() && single_moves;
        parts.push(format!(
            "n={n}: {} triangle, {} commutation",
            report.count(PvRelation::Triangle),
            report.count(PvRelation::Commutation)
        ));
    }
    let elapsed = start.elapsed();
    outcome(
        ok && elapsed < Duration::from_secs(1),
        format!("{} in {:.2?}", parts.join("; "), elapsed),
    )
}

/// Every word of length ≤ `max_len` over σ_i^{±1}, i < n.
fn classical_words(n: usize, max_len: usize) -> Vec<BraidWord> {
    let alphabet: Vec<Letter> = (1..n).flat_map(|i| [Letter::sigma(i), Letter::sigma_inv(i)]).collect();
    let mut layer = vec![Vec::new()];
    let mut out = vec![BraidWord::identity(n)];
    for _ in 0..max_len {
        layer = layer
            .iter()
            .flat_map(|w: &Vec<Letter>| {
                alphabet.iter().map(move |&l| {
                    let mut next = w.clone();
                    next.push(l);
                    next
                })
            })
            .collect();
        out.extend(layer.iter().map(|l| BraidWord::new(n, l.clone()).unwrap()));
    }
    out
}

fn genus_golden() -> Outcome {
    let word = |t: &str, n| BraidWord::parse(t, n).unwrap();
    let mut failures = Vec::new();
    for (text, n, expected) in [("s1 t1", 2, 0), ("t1 s1 t1 s1", 2, 0), ("s1 t2 s1", 3, 1)] {
        let got = canonical_genus(&word(text, n));
        if got != expected {
            failures.push(format!("{text}: {got} != {expected}"));
        }
    }
    let mut classical = 0;
    for n in 1..=3 {
        for w in classical_words(n, 6) {
            classical += 1;
            if canonical_genus(&w) != 0 {
                failures.push(format!("classical {}", w.to_text()));
            }
        }
    }
    outcome(
        failures.is_empty(),
        format!(
            "3 golden words, {classical} classical words; failures: {:?}",
            failures.iter().take(3).collect::<Vec<_>>()
        ),
    )
}

fn genus_invariance() -> Outcome {
    let mut rng = rng(6);
    let mut changed = 0;
    for _ in 0..500 {
        let n = rng.gen_range(2..=5);
        let len = rng.gen_range(0..=20);
        let w = random_word(&mut rng, n, len, true);
        let expected = canonical_genus(&w);
        let family = vm_rules(n);
        let mut cur = w;
        for _ in 0..rng.gen_range(1..=10) {
            if let Some(next) = random_rewrite(&mut rng, &cur, &family) {
                cur = next;
            }
        }
        if canonical_genus(&cur) != expected {
            changed += 1;
        }
    }
    outcome(changed == 0, format!("500 trials, {changed} genus changes"))
}

fn random_site<R: Rng>(rng: &mut R, g: &BraidGaussDiagram) -> Option<OmegaMoveSite> {
    let mut sites = enumerate_omega2_deletions(g);
    sites.extend(enumerate_omega3(g));
    if g.arrows().len() < 14 {
        sites.extend(enumerate_omega2_insertions(g));
    }
    sites.choose(rng).cloned()
}

fn search_soundness() -> Outcome {
    let mut rng = rng(7);
    let mut notes = Vec::new();
    let mut ok = true;

    // invariants behind every certificate
    let mut applied = 0;
    let mut broken = 0;
    while applied < 1000 {
        let n = rng.gen_range(2..=5);
        let len = rng.gen_range(0..=8);
        let g = if rng.gen_bool(0.5) {
            random_diagram(&mut rng, n, len)
        } else {
            // pure diagrams exercise the pair-writhe invariant
            let w = random_word(&mut rng, n, len, true);
            word_to_gauss(&w.concat(&random_word(&mut rng, n, len, true).invert()).unwrap())
        };
        let Some(site) = random_site(&mut rng, &g) else {
            continue;
        };
        let h = apply_omega(&g, &site).unwrap();
        applied += 1;
        if inequivalence_certificate(&g, &h).is_some() {
            broken += 1;
        }
    }
    ok &= broken == 0;
    notes.push(format!("{applied} moves, {broken} broke an invariant"));

    // every Equivalent trace replays
    let budget = Budget::with_nodes(2000);
    let mut equivalent = 0;
    let mut bad_replays = 0;
    for _ in 0..60 {
        let n = rng.gen_range(2..=4);
        let len = rng.gen_range(0..=6);
        let w = random_word(&mut rng, n, len, true);
        let mut other = w.clone();
        for _ in 0..rng.gen_range(1..=3) {
            if let Some(next) = random_rewrite(&mut rng, &other, &rules(n)) {
                other = next;
            }
        }
        if let Verdict::Equivalent(trace) = r_equivalent_bounded(&w, &other, &budget).unwrap() {
            equivalent += 1;
            let replayed = trace.replay(&word_to_gauss(&w));
            if replayed.ok() != Some(canonical_form(&word_to_gauss(&other))) {
                bad_replays += 1;
            }
        }
    }
    ok &= bad_replays == 0 && equivalent > 0;
    notes.push(format!("{equivalent} equivalent verdicts, {bad_replays} bad replays"));

    let a = BraidWord::parse("s1 s2 s1", 3).unwrap();
    let b = BraidWord::parse("s2 s1 s2", 3).unwrap();
    let braid = match r_equivalent_bounded(&a, &b, &Budget::default()).unwrap() {
        Verdict::Equivalent(trace) => trace.len(),
        _ => usize::MAX,
    };
    ok &= braid == 1;
    notes.push(format!("braid relation trace length {braid}"));
    outcome(ok, notes.join("; "))
}

fn golden(name: &str) -> String {
    std::fs::read_to_string(format!("{}/tests/golden/{name}", env!("CARGO_MANIFEST_DIR"))).unwrap()
}

fn serialization() -> Outcome {
    let mut mismatches = Vec::new();
    let mut check = |name: &str, got: String, expected: &str| {
        if got != expected {
            mismatches.push(name.to_string());
        }
    };

    let word_text = golden("word.txt");
    let w = BraidWord::parse(word_text.trim_end(), 4).unwrap();
    check("word.txt", format!("{}\n", w.to_text()), &word_text);
    let word_json = golden("word.json");
    check("word.json", format!("{}\n", w.to_json()), &word_json);
    check(
        "word.json parse",
        BraidWord::from_json(&word_json).unwrap().to_text(),
        w.to_text().as_str(),
    );

    let gauss_text = golden("gauss.txt");
    let g = BraidGaussDiagram::parse_text(gauss_text.trim_end()).unwrap();
    check("gauss.txt", format!("{}\n", g.to_text()), &gauss_text);
    check(
        "gauss from word",
        format!("{}\n", word_to_gauss(&w).to_text()),
        &gauss_text,
    );
    let gauss_json = golden("gauss.json");
    check("gauss.json", format!("{}\n", g.to_json()), &gauss_json);
    check(
        "gauss.json parse",
        BraidGaussDiagram::from_json(&gauss_json).unwrap().to_text(),
        &g.to_text(),
    );
    check(
        "canonical.txt",
        format!("{}\n", canonical_form(&g).to_text()),
        &golden("canonical.txt"),
    );

    let ribbon = golden("ribbon.txt");
    let rg = build_ribbon_graph(&BraidWord::parse("s1 t1", 2).unwrap());
    check("ribbon.txt", rg.to_text(), &ribbon);
    check(
        "ribbon.txt parse",
        RibbonGraph::parse_text(&ribbon).unwrap().to_text(),
        &ribbon,
    );

    let trace_json = golden("trace.json");
    let trace = MoveTrace::from_json(&trace_json).unwrap();
    check("trace.json", format!("{}\n", trace.to_json()), &trace_json);
    let from = word_to_gauss(&BraidWord::parse("s1 s2 s1 s2'", 3).unwrap());
    let to = canonical_form(&word_to_gauss(&BraidWord::parse("s2 s1", 3).unwrap()));
    check("trace replay", trace.replay(&from).unwrap().to_text(), &to.to_text());

    outcome(mismatches.is_empty(), format!("mismatches: {mismatches:?}"))
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 8] = [
        ("roundtrip", roundtrip),
        ("vm-invariance", vm_mutations),
        ("r3-single-omega3", r3_correspondence),
        ("pv-presentation", pv_presentation),
        ("genus-golden", genus_golden),
        ("genus-vm-invariance", genus_invariance),
        ("search-soundness", search_soundness),
        ("serialization", serialization),
    ];
    let mut failed = Vec::new();
    for (k, (name, run)) in criteria.iter().enumerate() {
        let result = run();
        println!(
            "[{}] criterion {} {name}: {}",
            if result.ok { "PASS" } else { "FAIL" },
            k + 1,
            result.detail
        );
        if !result.ok {
            failed.push(*name);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
