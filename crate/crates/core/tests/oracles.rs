//! Cross-checks of the persistence, entropy, classification and logic
//! machinery against the independent oracles in `common`.

mod common;

use common::{
    betti_by_rank, component_count, random_formula, random_graph, random_word, trace_of_word,
    verdicts_by_table, RegexClassifier,
};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;

use topomon::entropy::{entropy_series, persistent_entropy, Pet};
use topomon::filtration::{build_clique_filtration, Filtration, Simplex, WeightOrder};
use topomon::ltl::{evaluate, Formula, Verdict};
use topomon::monitor::classify_trace;
use topomon::pea::idiotypic_pea;
use topomon::pelts::{execute, step, PeltsState, RuleKind};
use topomon::persistence::{compute_persistence, Barcode, Interval};

#[test]
fn betti_numbers_match_rank_oracle_on_random_graphs() {
    let mut rng = ChaCha12Rng::seed_from_u64(7);
    for case in 0..60 {
        let g = random_graph(&mut rng, 10, 0.45, case % 3 == 0);
        let f = build_clique_filtration(&g, 1, WeightOrder::DescendingRank).unwrap();
        let b = compute_persistence(&f, 1).unwrap();
        let mut values: Vec<f64> = f.simplices().iter().map(|s| s.filter_value()).collect();
        values.push(f.t_max() + 1.0);
        values.dedup_by(|a, b| a == b);
        for &t in &values {
            for dim in 0..=1 {
                assert_eq!(
                    b.betti_at(dim, t),
                    betti_by_rank(&f, dim, t),
                    "case {case}, dim {dim}, t {t}"
                );
            }
        }
    }
}

#[test]
fn infinite_component_bars_match_union_find() {
    let mut rng = ChaCha12Rng::seed_from_u64(11);
    for _ in 0..60 {
        let g = random_graph(&mut rng, 12, 0.3, false);
        let f = build_clique_filtration(&g, 1, WeightOrder::DescendingRank).unwrap();
        let b = compute_persistence(&f, 1).unwrap();
        let infinite_dim0 = b
            .intervals
            .iter()
            .filter(|i| i.dim == 0 && i.is_infinite())
            .count();
        assert_eq!(infinite_dim0, component_count(&g));
    }
}

#[test]
fn euler_characteristic_at_t_max() {
    let mut rng = ChaCha12Rng::seed_from_u64(13);
    for _ in 0..40 {
        let g = random_graph(&mut rng, 10, 0.5, false);
        let f = build_clique_filtration(&g, 1, WeightOrder::DescendingRank).unwrap();
        let b = compute_persistence(&f, 1).unwrap();
        let t = f.t_max();
        // the complex has simplices up to dim 2, so chi needs beta_2 as well
        let b2 = compute_persistence(&f, 2).unwrap();
        let chi_homology = b.betti_at(0, t) as i64 - b.betti_at(1, t) as i64
            + b2.betti_at(2, t) as i64;
        let mut counts = [0i64; 3];
        for s in f.simplices() {
            counts[s.dim()] += 1;
        }
        let chi_simplices = counts[0] - counts[1] + counts[2];
        assert_eq!(chi_homology, chi_simplices);
    }
}

#[test]
fn pairing_is_independent_of_admissible_order() {
    let mut rng = ChaCha12Rng::seed_from_u64(17);
    for _ in 0..40 {
        let g = random_graph(&mut rng, 9, 0.5, true);
        let f = build_clique_filtration(&g, 1, WeightOrder::DescendingRank).unwrap();
        let base = interval_multiset(&compute_persistence(&f, 1).unwrap());

        // shuffle within (filter value, dimension) blocks: faces still
        // precede cofaces, so the order stays admissible
        use rand::seq::SliceRandom;
        let mut simplices: Vec<Simplex> = f.simplices().to_vec();
        let mut i = 0;
        while i < simplices.len() {
            let key = |s: &Simplex| (s.filter_value(), s.dim());
            let j = (i..simplices.len())
                .take_while(|&j| key(&simplices[j]) == key(&simplices[i]))
                .last()
                .unwrap()
                + 1;
            simplices[i..j].shuffle(&mut rng);
            i = j;
        }
        let reordered = Filtration::from_simplices(simplices).unwrap();
        let shuffled = interval_multiset(&compute_persistence(&reordered, 1).unwrap());
        assert_eq!(base, shuffled);
    }
}

fn interval_multiset(b: &Barcode) -> Vec<(usize, String, String)> {
    let mut v: Vec<(usize, String, String)> = b
        .intervals
        .iter()
        .map(|i| {
            (
                i.dim,
                format!("{:.9}", i.birth),
                i.death.map_or("inf".to_string(), |d| format!("{d:.9}")),
            )
        })
        .collect();
    v.sort();
    v
}

#[test]
fn classification_agrees_with_regex_oracle() {
    let oracle = RegexClassifier::new();
    let mut rng = ChaCha12Rng::seed_from_u64(23);
    for _ in 0..5000 {
        let word = random_word(&mut rng, 40);
        let got = classify_trace(&trace_of_word(&word));
        let want = oracle.classify(&word);
        assert_eq!(got, want, "word {word:?}");
    }
}

proptest! {
    #[test]
    fn classification_partitions_vmw_strings(word in "[VMW]{0,40}") {
        let oracle = RegexClassifier::new();
        // at most one pattern matches (asserted inside), and the classifier
        // agrees with the matching pattern or reports OTHER
        prop_assert_eq!(classify_trace(&trace_of_word(&word)), oracle.classify(&word));
    }

    #[test]
    fn entropy_is_scale_and_permutation_invariant(
        lengths in proptest::collection::vec(0.01f64..100.0, 1..20),
        scale in 0.01f64..50.0,
        seed in any::<u64>(),
    ) {
        let barcode = |ls: &[f64], k: f64| Barcode {
            intervals: ls.iter().map(|&l| Interval::finite(0, 0.0, l * k)).collect(),
            t_max: 0.0,
        };
        let h = persistent_entropy(&barcode(&lengths, 1.0)).unwrap();
        let h_scaled = persistent_entropy(&barcode(&lengths, scale)).unwrap();
        prop_assert!((h - h_scaled).abs() < 1e-9);

        use rand::seq::SliceRandom;
        let mut rng = ChaCha12Rng::seed_from_u64(seed);
        let mut shuffled = lengths.clone();
        shuffled.shuffle(&mut rng);
        let h_shuffled = persistent_entropy(&barcode(&shuffled, 1.0)).unwrap();
        prop_assert!((h - h_shuffled).abs() < 1e-12);

        // 0 <= H <= ln n, with equality iff all lengths equal
        let n = lengths.len() as f64;
        prop_assert!(h >= 0.0 && h <= n.ln() + 1e-12);
    }

    #[test]
    fn lengthening_one_bar_tracks_direct_recomputation(
        lengths in proptest::collection::vec(0.5f64..10.0, 2..10),
        which in any::<prop::sample::Index>(),
        extra in 0.1f64..5.0,
    ) {
        let idx = which.index(lengths.len());
        let mut longer = lengths.clone();
        longer[idx] += extra;
        let direct = |ls: &[f64]| {
            let total: f64 = ls.iter().sum();
            -ls.iter().map(|l| (l / total) * (l / total).ln()).sum::<f64>()
        };
        let barcode = |ls: &[f64]| Barcode {
            intervals: ls.iter().map(|&l| Interval::finite(0, 0.0, l)).collect(),
            t_max: 0.0,
        };
        let h = persistent_entropy(&barcode(&longer)).unwrap();
        prop_assert!((h - direct(&longer)).abs() < 1e-12);
    }
}

#[test]
fn ltl_duality_and_table_oracle() {
    let mut rng = ChaCha12Rng::seed_from_u64(29);
    let atoms = ["virgin", "memory", "w"];
    for _ in 0..1000 {
        let f = random_formula(&mut rng, &atoms, 4, 20);
        let word = random_word(&mut rng, 30);
        if word.is_empty() {
            continue;
        }
        let trace = trace_of_word(&word);
        let table = verdicts_by_table(&f, &trace);
        for i in 0..trace.len() {
            assert_eq!(evaluate(&f, &trace, i), table[i], "formula {f}, word {word}, pos {i}");
        }

        // G<=k f == not (F<=k not f), in three-valued logic
        if let Formula::Always { bound, inner } = &f {
            let dual = Formula::Not(Box::new(Formula::Eventually {
                bound: *bound,
                inner: Box::new(Formula::Not(inner.clone())),
            }));
            for i in 0..trace.len() {
                assert_eq!(evaluate(&f, &trace, i), evaluate(&dual, &trace, i));
            }
        }
    }
}

#[test]
fn monotone_refinement_of_decided_verdicts() {
    // a verdict decided within a fully visible window never changes when
    // the trace is extended
    let mut rng = ChaCha12Rng::seed_from_u64(31);
    let atoms = ["virgin", "memory", "w"];
    for _ in 0..500 {
        let f = random_formula(&mut rng, &atoms, 3, 8);
        let long_word = random_word(&mut rng, 30);
        if long_word.len() < 12 {
            continue;
        }
        let prefix = trace_of_word(&long_word[..10]);
        let full = trace_of_word(&long_word);
        let early = evaluate(&f, &prefix, 0);
        if early != Verdict::Unknown {
            assert_eq!(early, evaluate(&f, &full, 0), "formula {f}, word {long_word}");
        }
    }
}

#[test]
fn pelts_rules_are_mutually_exclusive_on_grid() {
    let pea = idiotypic_pea::<f64>(0.9, true);
    for state in ["virgin", "memory"] {
        for steady in [true, false] {
            for hi in 0..50 {
                for di in 0..50 {
                    let h = hi as f64 * 3.5 / 49.0;
                    let hdot = -2.0 + di as f64 * 4.0 / 49.0;
                    // craft the previous state so the step sees (h, hdot)
                    let q = PeltsState {
                        t: 1,
                        rho: state.to_string(),
                        steady,
                        h: h - hdot,
                    };
                    let out = step(&q, (2, h), &pea).unwrap();
                    let kinds: std::collections::BTreeSet<_> =
                        out.iter().map(|(k, _, _)| format!("{k:?}")).collect();
                    assert_eq!(kinds.len(), 1, "mixed rule families at ({h}, {hdot})");
                    let kind = out[0].0;
                    // independent guard evaluation
                    let cond = pea.condition(state).unwrap();
                    let expected = if steady {
                        if cond.eval(h, hdot) {
                            RuleKind::Steady
                        } else {
                            RuleKind::StartT
                        }
                    } else {
                        let any_successor = pea
                            .outgoing(state)
                            .any(|t| pea.condition(&t.to).unwrap().eval(h, hdot));
                        if any_successor {
                            RuleKind::StopT
                        } else {
                            RuleKind::ContT
                        }
                    };
                    assert_eq!(kind, expected, "state {state}, steady {steady}, ({h}, {hdot})");
                }
            }
        }
    }
}

proptest! {
    #[test]
    fn execution_roundtrip_recovers_pet(values in proptest::collection::vec(0.0f64..4.0, 1..40)) {
        let pea = idiotypic_pea::<f64>(0.9, true);
        let pet = Pet::from_observations(
            values.iter().enumerate().map(|(i, &h)| ((i + 1) as u64, h)).collect(),
        ).unwrap();
        let e = execute(&pea, &pet).unwrap();
        prop_assert_eq!(e.pet(), pet);

        // timestamps strictly increase and labels mark exactly the steps
        // that re-enter a steady state
        for w in e.states.windows(2) {
            prop_assert!(w[0].t < w[1].t);
        }
        for (i, label) in e.labels.iter().enumerate() {
            let flips = !e.states[i].steady && e.states[i + 1].steady;
            prop_assert_eq!(label.name.is_some(), flips);
        }
    }
}

#[test]
fn entropy_series_of_identical_barcodes_is_constant() {
    let b = Barcode {
        intervals: vec![
            Interval::finite(0, 0.0, 2.0),
            Interval::finite(0, 0.0, 1.0),
            Interval::finite(1, 1.0, 2.0),
        ],
        t_max: 1.0,
    };
    let pet = entropy_series(vec![(1, b.clone()), (2, b.clone()), (5, b)]).unwrap();
    let h0 = pet.observations()[0].1;
    assert!(pet.observations().iter().all(|&(_, h)| h == h0));
}
