//! Acceptance suite: one test per release criterion, each printing a
//! `[PASS]` line (run with `--nocapture` to see them). Expected values come
//! from independent oracles frozen here (exhaustive recursion for edit
//! distances, hand-enumerated variant sets) or from bounds that hold by
//! definition.

use std::collections::BTreeSet;
use std::sync::Arc;
use std::time::Instant;

use rand::prelude::*;

use singlex::adapt::{adapt_lexicon, AdaptationConfig, VariantMode};
use singlex::align::{align, EditCounts, EditOp};
use singlex::confusion::{
    category_matrix, confidence_table, PhonemeStats, EPSILON_INDEX, MATRIX_SIZE,
};
use singlex::lexicon::{Lexicon, VariantOrigin};
use singlex::phoneset::{PhoneSet, Phoneme, PhonemeCategory, PhonemeKind};
use singlex::score::{word_error_report, ErrorReport, Utterance};

/// Independent edit-distance oracle: exhaustive recursion, no DP table.
fn edit_distance_recursive<T: Eq>(a: &[T], b: &[T]) -> usize {
    if a.is_empty() {
        return b.len();
    }
    if b.is_empty() {
        return a.len();
    }
    let cost = usize::from(a[0] != b[0]);
    (edit_distance_recursive(&a[1..], &b[1..]) + cost)
        .min(edit_distance_recursive(&a[1..], b) + 1)
        .min(edit_distance_recursive(a, &b[1..]) + 1)
}

#[test]
fn acceptance_01_alignment_matches_exhaustive_recursion() {
    let mut rng = StdRng::seed_from_u64(0xA11C);
    let mut mismatches = 0;
    for _ in 0..1000 {
        let a: Vec<u8> = (0..rng.gen_range(0..=8)).map(|_| rng.gen_range(0..4)).collect();
        let b: Vec<u8> = (0..rng.gen_range(0..=8)).map(|_| rng.gen_range(0..4)).collect();
        let path = align(&a, &b);
        if path.counts().distance() != edit_distance_recursive(&a, &b) {
            mismatches += 1;
        }
    }
    assert_eq!(mismatches, 0);
    println!("[PASS] alignment S+I+D equals exhaustive recursion on 1000 random pairs");
}

#[test]
fn acceptance_02_worked_alignment_example() {
    let ps = PhoneSet::cmu();
    let hyp = ps.sequence("EH N AY").unwrap();
    let reference = ps.sequence("AE N D AY").unwrap();
    let path = align(&hyp, &reference);
    assert_eq!(path.distance(), 2);
    let p = |s: &str| ps.phoneme(s).unwrap();
    assert_eq!(
        path.ops(),
        &[
            EditOp::Substitute {
                reference: p("AE"),
                hypothesis: p("EH"),
            },
            EditOp::Match(p("N")),
            EditOp::Delete { reference: p("D") },
            EditOp::Match(p("AY")),
        ]
    );
    println!("[PASS] EH N AY vs AE N D AY aligns as S(AE->EH) C(N) D(D) C(AY), distance 2");
}

#[test]
fn acceptance_03_confidence_bounds_and_anchors() {
    let ps = PhoneSet::cmu();
    let q = ps.phoneme("S").unwrap();

    let with_counts = |counts: EditCounts| {
        let mut stats = PhonemeStats::new();
        let filler = ps.phoneme("AH").unwrap();
        // Drive the counters through real alignment paths.
        for _ in 0..counts.matches {
            stats.accumulate(&align(
                std::slice::from_ref(&q),
                std::slice::from_ref(&q),
            ));
        }
        for _ in 0..counts.substitutions {
            stats.accumulate(&align(
                std::slice::from_ref(&filler),
                std::slice::from_ref(&q),
            ));
        }
        for _ in 0..counts.insertions {
            stats.accumulate(&align(std::slice::from_ref(&q), &[]));
        }
        for _ in 0..counts.deletions {
            stats.accumulate(&align(&[], std::slice::from_ref(&q)));
        }
        stats
    };

    let all_match = with_counts(EditCounts {
        matches: 10,
        ..Default::default()
    });
    assert_eq!(all_match.confidence(&q), Some(1.0));

    let no_match = with_counts(EditCounts {
        substitutions: 5,
        insertions: 3,
        deletions: 2,
        ..Default::default()
    });
    assert_eq!(no_match.confidence(&q), Some(-1.0));

    let balanced = with_counts(EditCounts {
        matches: 3,
        substitutions: 1,
        insertions: 1,
        deletions: 1,
    });
    assert_eq!(balanced.confidence(&q), Some(0.0));

    // Never-observed phonemes have no defined confidence and no rank.
    let zh = ps.phoneme("ZH").unwrap();
    assert_eq!(balanced.confidence(&zh), None);
    let table = confidence_table(&balanced, &ps, 3).unwrap();
    let zh_row = table.iter().find(|r| r.phoneme == zh).unwrap();
    assert_eq!(zh_row.confidence, None);
    assert_eq!(zh_row.rank, None);

    let mut rng = StdRng::seed_from_u64(0xC0DE);
    for _ in 0..1000 {
        let stats = with_counts(EditCounts {
            matches: rng.gen_range(0..6),
            substitutions: rng.gen_range(0..6),
            insertions: rng.gen_range(0..6),
            deletions: rng.gen_range(0..6),
        });
        if let Some(c) = stats.confidence(&q) {
            assert!((-1.0..=1.0).contains(&c), "confidence {c} out of bounds");
        }
    }
    println!("[PASS] confidence anchors 1.0 / -1.0 / 0.0 / undefined hold; bounds hold on 1000 random stats");
}

#[test]
fn acceptance_04_vowel_extension_matches_listed_variants() {
    let ps = Arc::new(PhoneSet::cmu());
    let lex = Lexicon::parse("OCEANS  OW SH AH N Z\n", ps.clone()).unwrap();
    let cfg = AdaptationConfig::standard(ps).unwrap();
    let variants: BTreeSet<String> =
        singlex::adapt::extend_vowels(lex.get("OCEANS").unwrap(), &cfg)
            .iter()
            .map(|p| p.to_text())
            .collect();
    let expected: BTreeSet<String> = ["OW OW SH AH N Z", "OW SH AH AH N Z"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    assert_eq!(variants, expected);
    println!("[PASS] OCEANS extends to exactly OW OW SH AH N Z and OW SH AH AH N Z");
}

#[test]
fn acceptance_05_consonant_drop_rule_over_random_lexicon() {
    let ps = Arc::new(PhoneSet::cmu());
    let phones: Vec<Phoneme> = ps.iter().map(|(p, _)| p.clone()).collect();
    let finals: Vec<Phoneme> = ps.sequence("D T DH Z").unwrap();
    let final_set: BTreeSet<Phoneme> = finals.iter().cloned().collect();

    let mut rng = StdRng::seed_from_u64(0x1E81);
    let mut lex = Lexicon::new(ps.clone());
    for i in 0..1000 {
        let len = rng.gen_range(1..=6);
        let mut pron: Vec<Phoneme> = (0..len)
            .map(|_| phones[rng.gen_range(0..phones.len())].clone())
            .collect();
        // Half the words are forced to end in a drop-final consonant so the
        // rule is exercised heavily, including on single-phoneme prons.
        if i % 2 == 0 {
            let last = finals[rng.gen_range(0..finals.len())].clone();
            *pron.last_mut().unwrap() = last;
        }
        lex.insert(&format!("W{i:04}"), pron).unwrap();
    }

    let cfg = AdaptationConfig::new(
        ps.clone(),
        final_set.clone(),
        2,
        VariantMode::ConsonantDrop,
    )
    .unwrap();
    let l1 = adapt_lexicon(&lex, &cfg);

    assert_eq!(l1.len(), lex.len());
    for entry in lex.entries() {
        let base = &entry.prons()[0];
        let adapted = l1.get(entry.word()).unwrap();
        let eligible =
            base.len() >= 2 && final_set.contains(base.phones().last().unwrap());
        // Originals are intact, in order, first.
        assert_eq!(&adapted.prons()[..entry.prons().len()], entry.prons());
        if eligible {
            assert_eq!(
                adapted.prons().len(),
                entry.prons().len() + 1,
                "word {}",
                entry.word()
            );
            let variant = adapted.prons().last().unwrap();
            assert_eq!(variant.origin(), VariantOrigin::ConsonantDrop);
            assert_eq!(variant.phones(), &base.phones()[..base.len() - 1]);
        } else {
            assert_eq!(adapted.prons().len(), entry.prons().len(), "word {}", entry.word());
        }
    }

    // Idempotence: adapting the adapted lexicon changes nothing.
    let l1_again = adapt_lexicon(&l1, &cfg);
    assert_eq!(l1_again.to_cmu_text(true), l1.to_cmu_text(true));
    println!("[PASS] L1 rule adds exactly one prefix variant per eligible pron over a 1000-word lexicon; superset and idempotence hold");
}

#[test]
fn acceptance_06_combined_mode_composition() {
    let ps = Arc::new(PhoneSet::cmu());
    let lex = Lexicon::parse("AND  AE N D\n", ps.clone()).unwrap();
    let cfg = AdaptationConfig::standard(ps).unwrap();
    let adapted = adapt_lexicon(&lex, &cfg);
    let got: BTreeSet<String> = adapted
        .get("AND")
        .unwrap()
        .prons()
        .iter()
        .map(|p| p.to_text())
        .collect();
    let expected: BTreeSet<String> = ["AE N D", "AE N", "AE AE N D", "AE AE N"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    assert_eq!(got, expected);
    println!("[PASS] combined mode on AND yields exactly the four expected pronunciations");
}

#[test]
fn acceptance_07_category_matrix_normalization() {
    let ps = PhoneSet::cmu();
    let phones: Vec<Phoneme> = ps.iter().map(|(p, _)| p.clone()).collect();

    // Single AE->AH substitution: all mass in (ShortVowel, ShortVowel).
    let mut stats = PhonemeStats::new();
    stats.accumulate(&align(
        &ps.sequence("AH").unwrap(),
        &ps.sequence("AE").unwrap(),
    ));
    let m = category_matrix(&stats, &ps).unwrap();
    let sv = PhonemeCategory::ShortVowel.index();
    for i in 0..MATRIX_SIZE {
        for j in 0..MATRIX_SIZE {
            let want = if (i, j) == (sv, sv) { 1.0 } else { 0.0 };
            assert_eq!(m.get(i, j), want);
        }
    }

    // Random traffic: every non-zero ground-truth row sums to 1.
    let mut rng = StdRng::seed_from_u64(0xCA7);
    let mut stats = PhonemeStats::new();
    for _ in 0..200 {
        let hyp: Vec<Phoneme> = (0..rng.gen_range(0..8))
            .map(|_| phones[rng.gen_range(0..phones.len())].clone())
            .collect();
        let reference: Vec<Phoneme> = (0..rng.gen_range(0..8))
            .map(|_| phones[rng.gen_range(0..phones.len())].clone())
            .collect();
        stats.accumulate(&align(&hyp, &reference));
    }
    let m = category_matrix(&stats, &ps).unwrap();
    for i in 0..MATRIX_SIZE {
        let sum = m.row_sum(i);
        assert!(
            sum == 0.0 || (sum - 1.0).abs() <= 1e-12,
            "row {i} sums to {sum}"
        );
    }
    assert_eq!(m.get(EPSILON_INDEX, EPSILON_INDEX), 0.0);
    println!("[PASS] category matrix rows are unit-sum within 1e-12; single AE->AH lands in (ShortVowel, ShortVowel)");
}

#[test]
fn acceptance_08_scoring_decomposition_and_sharding() {
    let mut rng = StdRng::seed_from_u64(0x5C0);
    let vocab = ["a", "b", "c", "d", "e"];
    for _ in 0..100 {
        let n_utts = rng.gen_range(1..10);
        let mut refs = Vec::new();
        let mut hyps = Vec::new();
        for k in 0..n_utts {
            let pick = |rng: &mut StdRng| -> Vec<String> {
                (0..rng.gen_range(0..7))
                    .map(|_| vocab[rng.gen_range(0..vocab.len())].to_string())
                    .collect()
            };
            refs.push(Utterance {
                id: format!("u{k}"),
                tokens: pick(&mut rng),
            });
            hyps.push(Utterance {
                id: format!("u{k}"),
                tokens: pick(&mut rng),
            });
        }
        let whole = word_error_report(&hyps, &refs).unwrap();

        // Exact decomposition, bit for bit.
        if let Some(er) = whole.error_rate {
            let sum = whole.substitution_rate.unwrap()
                + whole.insertion_rate.unwrap()
                + whole.deletion_rate.unwrap();
            assert_eq!(er, sum);
        }

        // Random sharding leaves pooled counts unchanged.
        let mut order: Vec<usize> = (0..refs.len()).collect();
        order.shuffle(&mut rng);
        let mut counts = EditCounts::default();
        let mut n_ref = 0;
        let shard = rng.gen_range(1..=refs.len());
        for chunk in order.chunks(shard) {
            let h: Vec<_> = chunk.iter().map(|&i| hyps[i].clone()).collect();
            let r: Vec<_> = chunk.iter().map(|&i| refs[i].clone()).collect();
            let part = word_error_report(&h, &r).unwrap();
            counts.merge(part.counts);
            n_ref += part.n_ref;
        }
        assert_eq!(ErrorReport::from_counts(n_ref, counts), whole);
    }

    // Hand-derived toy examples.
    let utt = |id: &str, text: &str| Utterance {
        id: id.to_string(),
        tokens: text.split_whitespace().map(str::to_string).collect(),
    };
    let report = word_error_report(&[utt("u1", "and love you")], &[utt("u1", "and i love you")])
        .unwrap();
    assert_eq!(report.n_ref, 4);
    assert_eq!(report.counts.deletions, 1);
    assert_eq!(report.error_rate, Some(25.0));

    let report =
        word_error_report(&[utt("u1", "a b c")], &[utt("u1", "a b")]).unwrap();
    assert_eq!(report.counts.insertions, 1);
    assert_eq!(report.error_rate, Some(50.0));

    let report = singlex::score::char_error_report(&[utt("u1", "cut")], &[utt("u1", "cat")])
        .unwrap();
    assert_eq!(report.n_ref, 3);
    assert_eq!(report.counts.substitutions, 1);
    assert!((report.error_rate.unwrap() - 100.0 / 3.0).abs() < 1e-9);

    println!("[PASS] rate decomposition is exact and shard-invariant on 100 random corpora; toy WER/CER examples match");
}

#[test]
fn acceptance_09_format_round_trips_and_phone_set_partition() {
    // 10k-entry synthetic dictionary: parse -> serialize -> parse fixpoint.
    let ps = Arc::new(PhoneSet::cmu());
    let phones: Vec<Phoneme> = ps.iter().map(|(p, _)| p.clone()).collect();
    let mut rng = StdRng::seed_from_u64(0xD1C7);
    let mut source = String::new();
    for i in 0..10_000 {
        let word = format!("W{i:05}");
        let n_prons = if i % 10 == 0 { 2 } else { 1 };
        for k in 0..n_prons {
            if k == 0 {
                source.push_str(&word);
            } else {
                source.push_str(&format!("{word}({})", k + 1));
            }
            source.push(' ');
            let len = rng.gen_range(1..=8);
            let pron: Vec<String> = (0..len)
                .map(|_| {
                    let p = &phones[rng.gen_range(0..phones.len())];
                    // Sprinkle stress digits on vowels like a real dictionary.
                    if ps.is_vowel(p).unwrap() && rng.gen_bool(0.5) {
                        format!("{}{}", p, rng.gen_range(0..3))
                    } else {
                        p.to_string()
                    }
                })
                .collect();
            source.push_str(&format!(" {}\n", pron.join(" ")));
        }
    }
    let first = Lexicon::parse(&source, ps.clone()).unwrap();
    assert_eq!(first.len(), 10_000);
    let canonical = first.to_cmu_text(false);
    let second = Lexicon::parse(&canonical, ps.clone()).unwrap();
    assert_eq!(second.to_cmu_text(false), canonical);
    for (a, b) in first.entries().zip(second.entries()) {
        assert_eq!(a, b);
    }

    // Phone set partition: 39 symbols, 8 disjoint categories with the fixed
    // cardinalities.
    assert_eq!(ps.len(), 39);
    let mut counts = std::collections::BTreeMap::new();
    let mut seen = BTreeSet::new();
    for (p, c) in ps.iter() {
        assert!(seen.insert(p.clone()), "duplicate {p}");
        *counts.entry(c).or_insert(0usize) += 1;
        assert_eq!(
            ps.category_of(p).unwrap(),
            c,
            "category lookup disagrees for {p}"
        );
    }
    let expected = [
        (PhonemeCategory::ShortVowel, 5),
        (PhonemeCategory::LongVowel, 5),
        (PhonemeCategory::Diphthong, 5),
        (PhonemeCategory::Plosive, 6),
        (PhonemeCategory::Affricate, 2),
        (PhonemeCategory::Nasal, 3),
        (PhonemeCategory::Fricative, 9),
        (PhonemeCategory::Approximant, 4),
    ];
    for (cat, n) in expected {
        assert_eq!(counts[&cat], n, "category {cat}");
        let kind_want = match cat {
            PhonemeCategory::ShortVowel
            | PhonemeCategory::LongVowel
            | PhonemeCategory::Diphthong => PhonemeKind::Vowel,
            _ => PhonemeKind::Consonant,
        };
        assert_eq!(cat.kind(), kind_want);
    }
    assert_eq!(counts.values().sum::<usize>(), 39);
    println!("[PASS] 10k-entry lexicon round-trips to a fixpoint; phone set partitions 39 symbols as 5/5/5/6/2/3/9/4");
}

#[test]
fn acceptance_10_end_to_end_analyze_smoke() {
    let dir = tempfile::TempDir::new().unwrap();
    // 20 utterances; every AE in the reference is sung (hypothesized) as AH.
    let mut hyp_text = String::new();
    let mut ref_text = String::new();
    for k in 0..20 {
        hyp_text.push_str(&format!("u{k:02} AH N D AH T S AH N\n"));
        ref_text.push_str(&format!("u{k:02} AE N D AE T S AH N\n"));
    }
    let hyp = dir.path().join("hyp.txt");
    let reference = dir.path().join("ref.txt");
    let out = dir.path().join("analysis.csv");
    std::fs::write(&hyp, hyp_text).unwrap();
    std::fs::write(&reference, ref_text).unwrap();

    let started = Instant::now();
    let code = singlex::cli::run([
        "singlex",
        "analyze",
        "--hyp",
        hyp.to_str().unwrap(),
        "--ref",
        reference.to_str().unwrap(),
        "--format",
        "csv",
        "--out",
        out.to_str().unwrap(),
    ]);
    let elapsed = started.elapsed();
    assert_eq!(code, 0);
    assert!(
        elapsed.as_secs_f64() < 1.0,
        "analyze took {elapsed:?}, expected under 1s"
    );

    let csv = std::fs::read_to_string(&out).unwrap();
    let table: Vec<&str> = csv
        .lines()
        .skip(1)
        .take_while(|l| !l.is_empty())
        .collect();
    // AE is the worst-ranked observed phoneme and its confusion set is [AH].
    let observed: Vec<&str> = table
        .iter()
        .filter(|l| !l.contains(",NA,"))
        .copied()
        .collect();
    let last_observed = observed.last().unwrap();
    assert!(
        last_observed.starts_with("AE,-1,"),
        "AE should rank lowest: {last_observed}"
    );
    let fields: Vec<&str> = last_observed.split(',').collect();
    assert_eq!(fields[3], "AH", "confusion set of AE should be [AH]");
    println!(
        "[PASS] end-to-end analyze on 20 planted utterances ranks AE lowest with confusion set [AH] in {elapsed:?}"
    );
}
