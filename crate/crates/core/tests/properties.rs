use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use vbraid::gauss::{canonical_form, word_to_gauss, BraidGaussDiagram};
use vbraid::moves::{
    applicable_rewrites, apply_omega, enumerate_omega2_deletions, enumerate_omega2_insertions, enumerate_omega3,
    rewrite_word, rules, OmegaMoveSite,
};
use vbraid::pure::is_pure;
use vbraid::realize::{realize, tau_word_for};
use vbraid::sample::random_diagram;
use vbraid::search::{connect_within, min_genus_bounded, r_equivalent_bounded, Budget, Verdict};
use vbraid::surface::{build_ribbon_graph, canonical_genus, summarize};
use vbraid::{BraidWord, Letter, Permutation};

fn letter(n: usize, allow_tau: bool) -> impl Strategy<Value = Letter> {
    let kinds = if allow_tau { 3 } else { 2 };
    (1..n, 0..kinds).prop_map(|(i, k)| match k {
        0 => Letter::sigma(i),
        1 => Letter::sigma_inv(i),
        _ => Letter::tau(i),
    })
}

fn word_on(n: usize, max_len: usize, allow_tau: bool) -> impl Strategy<Value = BraidWord> {
    prop::collection::vec(letter(n, allow_tau), 0..=max_len).prop_map(move |l| BraidWord::new(n, l).unwrap())
}

fn word(max_n: usize, max_len: usize) -> impl Strategy<Value = BraidWord> {
    (2..=max_n).prop_flat_map(move |n| word_on(n, max_len, true))
}

fn word_pair(max_n: usize, max_len: usize) -> impl Strategy<Value = (BraidWord, BraidWord)> {
    (2..=max_n).prop_flat_map(move |n| (word_on(n, max_len, true), word_on(n, max_len, true)))
}

fn diagram(max_n: usize, max_arrows: usize) -> impl Strategy<Value = BraidGaussDiagram> {
    (2..=max_n).prop_flat_map(move |n| diagrams_on(n, max_arrows))
}

fn diagrams_on(n: usize, max_arrows: usize) -> impl Strategy<Value = BraidGaussDiagram> {
    (0..=max_arrows, any::<u64>()).prop_map(move |(a, seed)| random_diagram(&mut ChaCha8Rng::seed_from_u64(seed), n, a))
}

fn gauss(w: &BraidWord) -> vbraid::CanonicalGauss {
    canonical_form(&word_to_gauss(w))
}

fn all_sites(g: &BraidGaussDiagram) -> Vec<OmegaMoveSite> {
    let mut sites = enumerate_omega2_deletions(g);
    sites.extend(enumerate_omega3(g));
    sites.extend(enumerate_omega2_insertions(g));
    sites
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn word_text_round_trip(w in word(6, 20)) {
        prop_assert_eq!(BraidWord::parse(&w.to_text(), w.n()).unwrap(), w.clone());
        prop_assert_eq!(BraidWord::from_json(&w.to_json()).unwrap(), w);
    }

    #[test]
    fn permutation_is_a_homomorphism((a, b) in word_pair(6, 12)) {
        let ab = a.concat(&b).unwrap();
        prop_assert_eq!(ab.permutation(), a.permutation().then(&b.permutation()));
    }

    #[test]
    fn invert_inverts_permutation(w in word(6, 15)) {
        prop_assert_eq!(w.invert().permutation(), w.permutation().inverse());
        prop_assert!(w.concat(&w.invert()).unwrap().permutation().is_identity());
    }

    #[test]
    fn tau_letters_are_involutions(w in word(5, 10)) {
        let taus: Vec<Letter> = w.letters().iter().filter(|l| !l.is_sigma()).copied().collect();
        let tw = BraidWord::new(w.n(), taus).unwrap();
        let inv = tw.invert();
        prop_assert!(inv.letters().iter().all(|l| !l.is_sigma()));
        let rev: Vec<Letter> = tw.letters().iter().rev().copied().collect();
        prop_assert_eq!(inv.letters(), &rev[..]);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn canonical_form_is_idempotent(g in diagram(6, 20)) {
        let c = canonical_form(&g);
        prop_assert_eq!(canonical_form(&c), c.clone());
        prop_assert_eq!(c.perm(), g.perm());
        prop_assert_eq!(c.writhe(), g.writhe());
    }

    #[test]
    fn canonical_ignores_independent_swaps(g in diagram(6, 15), swaps in prop::collection::vec(any::<prop::sample::Index>(), 0..30)) {
        let mut arrows = g.arrows().to_vec();
        for ix in swaps {
            if arrows.len() < 2 {
                break;
            }
            let i = ix.index(arrows.len() - 1);
            if !arrows[i].depends_on(&arrows[i + 1]) {
                arrows.swap(i, i + 1);
            }
        }
        let shuffled = BraidGaussDiagram::new(g.n(), arrows, g.perm().clone()).unwrap();
        prop_assert_eq!(canonical_form(&shuffled), canonical_form(&g));
    }

    #[test]
    fn gauss_is_a_homomorphism((a, b) in word_pair(5, 12)) {
        let composed = word_to_gauss(&a).compose(&word_to_gauss(&b)).unwrap();
        prop_assert_eq!(gauss(&a.concat(&b).unwrap()), canonical_form(&composed));
    }

    #[test]
    fn diagram_group_axioms((g, h, k) in (2usize..=5).prop_flat_map(|n| (diagrams_on(n, 8), diagrams_on(n, 8), diagrams_on(n, 8)))) {
        let e = BraidGaussDiagram::identity(g.n());
        prop_assert_eq!(canonical_form(&g.compose(&e).unwrap()), canonical_form(&g));
        prop_assert_eq!(canonical_form(&e.compose(&g).unwrap()), canonical_form(&g));
        let left = g.compose(&h).unwrap().compose(&k).unwrap();
        let right = g.compose(&h.compose(&k).unwrap()).unwrap();
        prop_assert_eq!(canonical_form(&left), canonical_form(&right));
        prop_assert_eq!(canonical_form(&g.inverse().inverse()), canonical_form(&g));
    }

    #[test]
    fn inverse_cancels_by_middle_deletions(g in diagram(5, 8)) {
        let mut cur = g.compose(&g.inverse()).unwrap();
        prop_assert!(cur.perm().is_identity());
        // the two arrows meeting in the middle always form an Ω2 pair
        while !cur.arrows().is_empty() {
            let mid = cur.arrows().len() / 2;
            cur = apply_omega(&cur, &OmegaMoveSite::Omega2Delete { first: mid - 1, second: mid }).unwrap();
        }
        prop_assert_eq!(canonical_form(&cur), canonical_form(&BraidGaussDiagram::identity(g.n())));
    }

    #[test]
    fn realize_round_trip(g in diagram(6, 20)) {
        let w = realize(&g);
        prop_assert_eq!(w.sigma_count(), g.arrows().len());
        prop_assert_eq!(w.permutation(), g.perm().clone());
        prop_assert_eq!(gauss(&w), canonical_form(&g));
    }

    #[test]
    fn tau_words_realize_permutations(images in (1usize..=6).prop_flat_map(|n| Just((1..=n).collect::<Vec<_>>()).prop_shuffle())) {
        let p = Permutation::from_images(images).unwrap();
        let w = tau_word_for(&p);
        prop_assert_eq!(w.sigma_count(), 0);
        prop_assert_eq!(w.permutation(), p);
    }

    #[test]
    fn omega_moves_preserve_invariants(g in diagram(5, 8), pick in any::<prop::sample::Index>()) {
        let sites = all_sites(&g);
        prop_assume!(!sites.is_empty());
        let site = &sites[pick.index(sites.len())];
        let h = apply_omega(&g, site).unwrap();
        prop_assert_eq!(h.perm(), g.perm());
        prop_assert_eq!(h.writhe(), g.writhe());
        let delta = h.arrows().len() as i64 - g.arrows().len() as i64;
        match site {
            OmegaMoveSite::Omega2Delete { .. } => prop_assert_eq!(delta, -2),
            OmegaMoveSite::Omega2Insert { .. } => prop_assert_eq!(delta, 2),
            OmegaMoveSite::Omega3 { .. } => prop_assert_eq!(delta, 0),
        }
        if g.perm().is_identity() {
            for i in 1..=g.n() {
                for j in i + 1..=g.n() {
                    prop_assert_eq!(h.pair_writhe(i, j), g.pair_writhe(i, j));
                }
            }
        }
    }

    #[test]
    fn omega2_insertions_are_undone_by_a_deletion(g in diagram(4, 6), pick in any::<prop::sample::Index>()) {
        let inserts = enumerate_omega2_insertions(&g);
        prop_assume!(!inserts.is_empty());
        let h = apply_omega(&g, &inserts[pick.index(inserts.len())]).unwrap();
        let target = canonical_form(&g);
        let back = enumerate_omega2_deletions(&h)
            .iter()
            .any(|s| apply_omega(&h, s).is_ok_and(|x| canonical_form(&x) == target));
        prop_assert!(back);
    }

    #[test]
    fn vm_rewrites_keep_canonical_form(w in word(5, 15), pick in any::<prop::sample::Index>()) {
        let vm: Vec<_> = rules(w.n()).into_iter().filter(|r| !r.family.is_reidemeister()).collect();
        let sites = applicable_rewrites(&w, &vm);
        prop_assume!(!sites.is_empty());
        let (rule, at) = sites[pick.index(sites.len())];
        let next = rewrite_word(&w, &vm[rule], at).unwrap();
        prop_assert_eq!(gauss(&next), gauss(&w));
        prop_assert_eq!(canonical_genus(&next), canonical_genus(&w));
    }

    #[test]
    fn reidemeister_rewrites_are_one_omega_move(w in word(4, 10), pick in any::<prop::sample::Index>()) {
        let r: Vec<_> = rules(w.n()).into_iter().filter(|r| r.family.is_reidemeister()).collect();
        let sites = applicable_rewrites(&w, &r);
        prop_assume!(!sites.is_empty());
        let (rule, at) = sites[pick.index(sites.len())];
        let next = rewrite_word(&w, &r[rule], at).unwrap();
        let (a, b) = (gauss(&w), gauss(&next));
        prop_assert!(a != b);
        let trace = connect_within(&a, &b, 1, 0);
        prop_assert_eq!(trace.map(|t| t.len()), Some(1));
    }

    #[test]
    fn genus_is_well_defined(w in word(4, 12)) {
        let s = summarize(&build_ribbon_graph(&w)).unwrap();
        let twice = 2 - s.euler() - s.boundary_count as i64;
        prop_assert!(twice >= 0 && twice % 2 == 0);
        prop_assert_eq!(s.genus as i64, twice / 2);
        prop_assert_eq!(s.genus, canonical_genus(&w));
    }

    #[test]
    fn classical_words_are_planar(w in (2usize..=5).prop_flat_map(|n| word_on(n, 12, false))) {
        prop_assert_eq!(canonical_genus(&w), 0);
    }

    #[test]
    fn concatenation_with_inverse_is_pure(w in word(6, 15)) {
        prop_assert!(is_pure(&w.concat(&w.invert()).unwrap()));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn search_verdicts_are_sound_and_deterministic((a, b) in word_pair(3, 4)) {
        let budget = Budget::with_nodes(300);
        let first = r_equivalent_bounded(&a, &b, &budget).unwrap();
        prop_assert_eq!(&r_equivalent_bounded(&a, &b, &budget).unwrap(), &first);
        if let Verdict::Equivalent(trace) = &first {
            prop_assert_eq!(trace.replay(&word_to_gauss(&a)).unwrap(), gauss(&b));
        }
    }

    #[test]
    fn min_genus_is_monotone_in_budget(w in (3usize..=4).prop_flat_map(|n| word_on(n, 6, true))) {
        let small = min_genus_bounded(&w, &Budget::with_nodes(5));
        let large = min_genus_bounded(&w, &Budget::with_nodes(200));
        prop_assert!(large.genus <= small.genus);
        prop_assert!(small.genus <= canonical_genus(&w));
        prop_assert_eq!(canonical_genus(&large.witness), large.genus);
        prop_assert!(r_equivalent_bounded(&w, &large.witness, &Budget::with_nodes(0))
            .is_ok_and(|v| !matches!(v, Verdict::Inequivalent(_))));
    }
}
