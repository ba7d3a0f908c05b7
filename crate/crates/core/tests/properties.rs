mod common;

use common::{delannoy, shuffle_oracle, stuffle_oracle};
use mzv_core::algebra::{parse_combination, product_linear};
use mzv_core::index::{index_to_word, word_to_index};
use mzv_core::{
    flatten_products, parse_index, poly_multiply, product, regularize, regularize_linear, Index,
    IndexCombination, MzvExpr, Product, Rational,
};
use proptest::prelude::*;

fn index_strategy(max_depth: usize, max_part: u32) -> impl Strategy<Value = Index> {
    prop::collection::vec(1..=max_part, 0..=max_depth).prop_map(Index::new)
}

fn small_index() -> impl Strategy<Value = Index> {
    index_strategy(3, 3)
}

fn which() -> impl Strategy<Value = Product> {
    prop_oneof![Just(Product::Stuffle), Just(Product::Shuffle)]
}

fn combination() -> impl Strategy<Value = IndexCombination> {
    prop::collection::vec((small_index(), -5i64..=5, 1i64..=4), 0..4).prop_map(|terms| {
        let mut out = IndexCombination::zero();
        for (k, n, d) in terms {
            out.add_term(k, Rational::new(n.into(), d.into()));
        }
        out
    })
}

proptest! {
    #[test]
    fn index_text_round_trips(k in index_strategy(6, 9)) {
        prop_assert_eq!(parse_index(&k.to_string()).unwrap(), k);
    }

    #[test]
    fn word_encoding_round_trips(k in index_strategy(6, 6)) {
        let w = index_to_word(&k);
        prop_assert_eq!(w.len(), k.weight());
        prop_assert_eq!(word_to_index(&w).unwrap(), k);
    }

    #[test]
    fn combination_text_round_trips(a in combination()) {
        prop_assert_eq!(parse_combination(&a.to_string()).unwrap(), a);
    }

    #[test]
    fn products_commute(k in small_index(), l in small_index(), w in which()) {
        prop_assert_eq!(product(&k, &l, w), product(&l, &k, w));
    }

    #[test]
    fn products_associate(k in small_index(), l in small_index(), m in small_index(), w in which()) {
        let left = product_linear(&product(&k, &l, w), &IndexCombination::from_index(m.clone()), w);
        let right = product_linear(&IndexCombination::from_index(k), &product(&l, &m, w), w);
        prop_assert_eq!(left, right);
    }

    #[test]
    fn empty_index_is_the_unit(k in small_index(), w in which()) {
        prop_assert_eq!(product(&k, &Index::empty(), w), IndexCombination::from_index(k));
    }

    #[test]
    fn products_are_graded_and_counted(k in small_index(), l in small_index()) {
        let total = k.weight() + l.weight();
        let st = product(&k, &l, Product::Stuffle);
        prop_assert!(st.iter().all(|(m, _)| m.weight() == total));
        prop_assert_eq!(st.coefficient_sum(), delannoy(k.depth() as u64, l.depth() as u64).into());
        prop_assert_eq!(&st, &stuffle_oracle(&k, &l));
        let sh = product(&k, &l, Product::Shuffle);
        prop_assert!(sh.iter().all(|(m, _)| m.weight() == total));
        prop_assert_eq!(sh, shuffle_oracle(&k, &l));
    }

    #[test]
    fn products_are_bilinear(a in combination(), b in combination(), c in combination(), w in which()) {
        let mut sum = a.clone();
        sum.add_scaled(&b, &Rational::from_integer(1.into()));
        let mut expected = product_linear(&a, &c, w);
        expected.add_scaled(&product_linear(&b, &c, w), &Rational::from_integer(1.into()));
        prop_assert_eq!(product_linear(&sum, &c, w), expected);
    }

    #[test]
    fn regularization_is_a_homomorphism(k in index_strategy(3, 3), l in index_strategy(2, 3)) {
        let st = Product::Stuffle;
        let lhs = poly_multiply(&regularize(&k, st), &regularize(&l, st)).flatten();
        prop_assert_eq!(lhs, regularize_linear(&product(&k, &l, st), st));
    }

    #[test]
    fn admissible_indices_regularize_to_themselves(k in index_strategy(4, 4), w in which()) {
        prop_assume!(k.is_admissible());
        let p = regularize(&k, w);
        prop_assert_eq!(p.degree(), Some(0));
        prop_assert_eq!(p.coefficient(0), MzvExpr::zeta(k));
    }

    #[test]
    fn regularized_polynomials_are_weight_graded(k in index_strategy(4, 3), w in which()) {
        let p = regularize(&k, w);
        for (j, e) in p.iter() {
            let e = flatten_products(e);
            prop_assert_eq!(e.homogeneous_weight(), Some(k.weight() - j as usize), "T^{} of {}", j, k);
        }
    }
}
