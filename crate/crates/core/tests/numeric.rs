mod common;

use common::{constant, idx, li2_half_oracle, word, zeta2_oracle, LN2, PI};
use mzv_core::numeric::{
    bits_for_digits, eval_series_word, eval_series_word_detailed, eval_series_word_with_terms,
    eval_truncated_sum, holder_split, series_terms, TRUNCATED_SUM_DIGITS,
};
use mzv_core::verification::sweep_indices;
use mzv_core::{BigFloat, EvalCache, Evaluator, Index, MzvError, MzvExpr, Rational};

fn close(a: &BigFloat, b: &BigFloat, digits: u32) -> bool {
    (a - b).abs_below_pow10(digits)
}

#[test]
fn log_two_and_dilogarithm_at_one_half() {
    let bits = bits_for_digits(50);
    let g1 = eval_series_word(&word(&[1]), 50).unwrap();
    assert!(close(&g1, &constant(LN2, bits), 50), "{g1:.55}");
    let g01 = eval_series_word(&word(&[0, 1]), 50).unwrap();
    assert!(close(&g01, &li2_half_oracle(bits), 50), "{g01:.55}");
    assert_eq!(g01.to_decimal_string(15), "0.582240526465013");
}

#[test]
fn zeta_two_from_its_split() {
    // ζ(2) = 2·Li₂(1/2) + log²2
    let bits = bits_for_digits(45);
    let mut total = BigFloat::zero(bits);
    for (u, v) in holder_split(&word(&[0, 1])).unwrap() {
        let gu = eval_series_word(&u, 45).unwrap();
        let gv = eval_series_word(&v, 45).unwrap();
        total = &total + &(&gu * &gv);
    }
    assert!(close(&total, &zeta2_oracle(bits), 44));
}

#[test]
fn zeta_two_against_pi() {
    let ev = Evaluator::new();
    for digits in [10, 40, 65] {
        let z2 = ev.eval_index(&idx(&[2]), digits).unwrap();
        assert!(
            close(&z2, &zeta2_oracle(bits_for_digits(digits)), digits),
            "{digits} digits"
        );
    }
    let z2 = ev.eval_index(&idx(&[2]), 20).unwrap();
    assert_eq!(z2.to_decimal_string(20), "1.64493406684822643647");
}

#[test]
fn euler_relation_to_full_precision() {
    let ev = Evaluator::new();
    for digits in [20, 40, 60] {
        let z21 = ev.eval_index(&idx(&[2, 1]), digits).unwrap();
        let z3 = ev.eval_index(&idx(&[3]), digits).unwrap();
        assert!(close(&z21, &z3, digits), "{digits} digits");
    }
}

/// Dual index: reverse the word and exchange its letters.
fn dual(k: &Index) -> Index {
    let w = k.to_word();
    let letters: Vec<u8> = w.letters().iter().rev().map(|&a| 1 - a).collect();
    word(&letters).to_index().unwrap()
}

#[test]
fn duality_to_high_precision() {
    // ζ(k) = ζ(k†) holds for the values but is invisible to the split itself
    let ev = Evaluator::new();
    assert_eq!(dual(&idx(&[2, 1, 1, 1, 1])), idx(&[6]));
    assert_eq!(dual(&idx(&[3, 1])), idx(&[3, 1]));
    for k in sweep_indices(7).into_iter().filter(Index::is_admissible) {
        let d = dual(&k);
        if d < k {
            continue;
        }
        let vk = ev.eval_index(&k, 40).unwrap();
        let vd = ev.eval_index(&d, 40).unwrap();
        assert!(close(&vk, &vd, 40), "{k} vs {d}");
    }
    // ζ(4) = π⁴/90
    let bits = bits_for_digits(40);
    let pi = constant(PI, bits);
    let pi4 = &(&pi * &pi) * &(&pi * &pi);
    assert!(close(
        &ev.eval_index(&idx(&[4]), 40).unwrap(),
        &pi4.div_int(90),
        40
    ));
}

#[test]
fn empty_index_and_expressions() {
    let ev = Evaluator::new();
    assert_eq!(
        ev.eval_index(&Index::empty(), 30).unwrap(),
        BigFloat::one(bits_for_digits(30))
    );
    assert_eq!(
        ev.eval_expr(&MzvExpr::one(), 30).unwrap(),
        BigFloat::one(bits_for_digits(30))
    );
    let half = MzvExpr::zeta(idx(&[2])).scaled(&Rational::new(1.into(), 2.into()));
    let v = ev.eval_expr(&half, 30).unwrap();
    assert!(v.to_decimal_string(14).starts_with("0.82246703342411"));
    let euler = &MzvExpr::zeta(idx(&[2, 1])) - &MzvExpr::zeta(idx(&[3]));
    assert!(ev.eval_expr(&euler, 30).unwrap().abs_below_pow10(30));
}

#[test]
fn divergent_inputs_are_domain_errors() {
    let ev = Evaluator::new();
    assert!(matches!(
        ev.eval_index(&idx(&[1, 2]), 20),
        Err(MzvError::NotAdmissible(_))
    ));
    assert!(matches!(
        eval_truncated_sum(&idx(&[1]), 10),
        Err(MzvError::NotAdmissible(_))
    ));
    assert!(matches!(
        holder_split(&word(&[1, 1])),
        Err(MzvError::NotAdmissible(_))
    ));
    assert!(matches!(
        eval_series_word(&word(&[0]), 20),
        Err(MzvError::DivergentWord(_))
    ));
}

#[test]
fn truncated_sums_approach_known_values() {
    let bits = bits_for_digits(TRUNCATED_SUM_DIGITS);
    assert_eq!(
        eval_truncated_sum(&Index::empty(), 7).unwrap(),
        BigFloat::one(bits)
    );
    let z2 = eval_truncated_sum(&idx(&[2]), 10_000).unwrap();
    // tail of Σ 1/m² beyond N is about 1/N
    let gap = (&zeta2_oracle(bits) - &z2).to_f64();
    assert!(gap > 0.0 && gap < 1.01e-4, "{gap}");
    let z21 = eval_truncated_sum(&idx(&[2, 1]), 10_000).unwrap().to_f64();
    let z3 = Evaluator::new()
        .eval_index(&idx(&[3]), 20)
        .unwrap()
        .to_f64();
    assert!((z21 - z3).abs() < 2e-3, "{z21} vs {z3}");
}

#[test]
fn split_orientation_against_truncated_sums() {
    // the depth-one and depth-two cases converge fast enough for a tight check
    let ev = Evaluator::new();
    for k in sweep_indices(5)
        .into_iter()
        .filter(|k| k.is_admissible() && k.depth() <= 2)
    {
        let exact = ev.eval_index(&k, TRUNCATED_SUM_DIGITS).unwrap();
        let truncated = eval_truncated_sum(&k, 20_000).unwrap();
        let gap = (&exact - &truncated).to_f64();
        assert!(gap > 0.0 && gap < 1e-3, "{k}: {gap}");
    }
}

#[test]
fn zeta_three_split_matches_truncated_sum() {
    let pairs = holder_split(&word(&[0, 0, 1])).unwrap();
    assert_eq!(pairs.len(), 4);
    let z3 = Evaluator::new()
        .eval_index(&idx(&[3]), 20)
        .unwrap()
        .to_f64();
    let truncated = eval_truncated_sum(&idx(&[3]), 10_000).unwrap().to_f64();
    assert!((z3 - truncated).abs() < 1e-4);
}

#[test]
fn doubling_the_terms_changes_nothing() {
    for letters in [
        &[1][..],
        &[0, 1],
        &[0, 1, 1],
        &[1, 0, 1],
        &[0, 0, 1, 0, 1, 1],
    ] {
        let w = word(letters);
        for digits in [20, 40] {
            let detailed = eval_series_word_detailed(&w, digits).unwrap();
            let bits = detailed.value.precision();
            let doubled = eval_series_word_with_terms(&w, bits, 2 * detailed.terms_used).unwrap();
            assert!(
                close(&detailed.value, &doubled, digits),
                "{w} at {digits} digits"
            );
            assert!(detailed.tail_bound.abs_below_pow10(digits));
        }
    }
}

#[test]
fn series_terms_decay_geometrically() {
    for letters in [&[1][..], &[0, 1], &[1, 1, 1], &[0, 1, 0, 1]] {
        let w = word(letters);
        let bits = bits_for_digits(60);
        let terms = series_terms(&w, bits, 200).unwrap();
        // compare terms a few steps apart to smooth out the polylogarithmic factors
        let window: Vec<f64> = terms[w.len() + 40..]
            .iter()
            .map(|t| t.abs().to_f64())
            .collect();
        for pair in window.windows(5) {
            let ratio = pair[4] / pair[0];
            assert!(ratio < 0.75f64.powi(4), "{w}: ratio {ratio}");
        }
    }
}

#[test]
fn cache_hits_equal_fresh_values() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("values.json");
    let indices = [idx(&[2]), idx(&[3, 1]), idx(&[2, 1, 2])];
    let first: Vec<BigFloat> = {
        let ev = Evaluator::with_cache(EvalCache::open(&path).unwrap());
        let values = indices
            .iter()
            .map(|k| ev.eval_index(k, 30).unwrap())
            .collect();
        ev.save().unwrap();
        values
    };
    let reopened = Evaluator::with_cache(EvalCache::open(&path).unwrap());
    assert_eq!(reopened.cache().len(), indices.len());
    let fresh = Evaluator::new();
    for (k, v) in indices.iter().zip(&first) {
        let cached = reopened.eval_index(k, 30).unwrap();
        assert_eq!(&cached, v);
        assert_eq!(cached, fresh.eval_index(k, 30).unwrap());
        assert!(close(&cached, &fresh.eval_index_fresh(k, 30).unwrap(), 30));
    }
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.contains("\"3,1@30\""), "{text}");
}

#[test]
fn corrupt_cache_entries_are_reported() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("values.json");
    std::fs::write(&path, r#"{"2@30": "not a number"}"#).unwrap();
    let ev = Evaluator::with_cache(EvalCache::open(&path).unwrap());
    assert!(matches!(
        ev.eval_index(&idx(&[2]), 30),
        Err(MzvError::CacheValue { .. })
    ));
}

#[test]
fn parallel_evaluation_is_consistent() {
    use rayon::prelude::*;
    let ev = Evaluator::new();
    let indices: Vec<Index> = sweep_indices(6)
        .into_iter()
        .filter(Index::is_admissible)
        .collect();
    let parallel: Vec<BigFloat> = indices
        .par_iter()
        .map(|k| ev.eval_index(k, 30).unwrap())
        .collect();
    let serial = Evaluator::new();
    for (k, v) in indices.iter().zip(parallel) {
        assert_eq!(v, serial.eval_index(k, 30).unwrap(), "{k}");
    }
}
