//! Property tests for the character ring: ring laws, canonical reduction,
//! series homomorphism, and the order/linkage axioms on weights.

use std::sync::Arc;

use num_bigint::BigInt;
use proptest::prelude::*;

use charcalc::category_o::verma_character;
use charcalc::char_ring::{LaurentPoly, Mono, RationalChar, SeriesWindow};
use charcalc::rat::{ratio, Rat};
use charcalc::root_system::{RootSystem, Weight};

const DEPTH: u32 = 10;

fn a2() -> Arc<RootSystem> {
    RootSystem::parse("A2").unwrap()
}

fn small_rat() -> impl Strategy<Value = Rat> {
    (-3i64..=3, 1i64..=3).prop_map(|(n, d)| ratio(n, d))
}

fn weight(rank: usize) -> impl Strategy<Value = Weight> {
    prop::collection::vec(small_rat(), rank).prop_map(Weight::new)
}

fn integral_weight(rank: usize) -> impl Strategy<Value = Weight> {
    prop::collection::vec(-4i64..=4, rank)
        .prop_map(|cs| Weight::new(cs.into_iter().map(|c| ratio(c, 1)).collect()))
}

fn poly(rank: usize) -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec(
        (prop::collection::vec(0u32..=2, rank), -3i64..=3),
        1..=3,
    )
    .prop_map(move |terms| {
        let mut p = LaurentPoly::zero(rank);
        for (exps, c) in terms {
            p.add_term(Mono(exps), BigInt::from(c));
        }
        p
    })
}

/// A small random character over A2: up to two coset terms, denominator a
/// squarefree subset of the positive roots.
fn small_char() -> impl Strategy<Value = RationalChar> {
    let rs = a2();
    let nroots = rs.posroots().len();
    (
        prop::collection::vec((weight(2), poly(2)), 1..=2),
        prop::collection::vec(prop::bool::ANY, nroots),
    )
        .prop_map(move |(terms, mask)| {
            let denom: Vec<(Vec<i64>, u32)> = rs
                .posroots()
                .iter()
                .zip(&mask)
                .filter(|(_, &keep)| keep)
                .map(|(r, _)| (r.coords().to_vec(), 1))
                .collect();
            RationalChar::new(&rs, terms, denom).unwrap()
        })
}

/// Compare two windows on the weights both representations guarantee.
fn agree_on_common_domain(
    x: &RationalChar,
    wx: &SeriesWindow,
    y: &RationalChar,
    wy: &SeriesWindow,
    depth: u32,
) -> bool {
    let in_dom =
        |w: &Weight| x.series_domain_contains(w, depth) && y.series_domain_contains(w, depth);
    let fx = wx.filtered(in_dom);
    let fy = wy.filtered(in_dom);
    fx == fy
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn reduce_is_idempotent_and_series_preserving(x in small_char()) {
        let red = x.reduce();
        prop_assert_eq!(red.reduce(), red.clone());
        for depth in [0u32, 4, DEPTH] {
            prop_assert_eq!(x.series_expand(depth), red.series_expand(depth));
        }
    }

    #[test]
    fn addition_commutes_and_associates(a in small_char(), b in small_char(), c in small_char()) {
        let ab = a.add(&b).unwrap();
        let ba = b.add(&a).unwrap();
        prop_assert!(ab.equals(&ba).unwrap());
        let left = ab.add(&c).unwrap();
        let right = a.add(&b.add(&c).unwrap()).unwrap();
        prop_assert!(left.equals(&right).unwrap());
    }

    #[test]
    fn multiplication_commutes_and_associates(a in small_char(), b in small_char(), c in small_char()) {
        let ab = a.mul(&b).unwrap();
        let ba = b.mul(&a).unwrap();
        prop_assert!(ab.equals(&ba).unwrap());
        let left = ab.mul(&c).unwrap();
        let right = a.mul(&b.mul(&c).unwrap()).unwrap();
        prop_assert!(left.equals(&right).unwrap());
    }

    #[test]
    fn multiplication_distributes(a in small_char(), b in small_char(), c in small_char()) {
        let lhs = a.mul(&b.add(&c).unwrap()).unwrap();
        let rhs = a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap();
        prop_assert!(lhs.equals(&rhs).unwrap());
    }

    #[test]
    fn series_is_a_ring_homomorphism(a in small_char(), b in small_char()) {
        let rs = a2();
        let _ = &rs;
        let sum = a.add(&b).unwrap();
        let wa = a.series_expand(DEPTH);
        let wb = b.series_expand(DEPTH);
        let wsum = sum.series_expand(DEPTH);
        let mut direct = SeriesWindow::new(DEPTH);
        for (w, c) in wa.iter() {
            direct.add(w.clone(), c.clone());
        }
        for (w, c) in wb.iter() {
            direct.add(w.clone(), c.clone());
        }
        // Addition: both exact where all three windows are guaranteed.
        let in_dom = |w: &Weight| {
            a.series_domain_contains(w, DEPTH)
                && b.series_domain_contains(w, DEPTH)
                && sum.series_domain_contains(w, DEPTH)
        };
        prop_assert_eq!(wsum.filtered(in_dom), direct.filtered(in_dom));

        // Multiplication against window convolution.
        let raw = a.mul_raw(&b).unwrap();
        let prod = raw.reduce();
        let wprod = prod.series_expand(DEPTH);
        let conv = wa.convolve(&wb);
        prop_assert!(agree_on_common_domain(&raw, &conv, &prod, &wprod, DEPTH));
    }

    #[test]
    fn equals_agrees_with_series_equality(a in small_char(), b in small_char()) {
        let eq = a.equals(&b).unwrap();
        let wa = a.series_expand(DEPTH);
        let wb = b.series_expand(DEPTH);
        let windows_agree = agree_on_common_domain(&a, &wa, &b, &wb, DEPTH);
        prop_assert_eq!(eq, windows_agree);
    }

    #[test]
    fn division_round_trips(f in poly(2), idx in 0usize..3) {
        let rs = a2();
        let beta: Vec<u32> = rs.posroots()[idx].coords().iter().map(|&c| c as u32).collect();
        let multiple = f.mul(&LaurentPoly::binomial(2, &beta));
        let q = multiple.div_binomial(&beta);
        prop_assert_eq!(q, Some(f.clone()));
        if let Some(g) = f.div_binomial(&beta) {
            prop_assert_eq!(g.mul(&LaurentPoly::binomial(2, &beta)), f);
        }
    }

    #[test]
    fn verma_multiplication_cancels(a in small_char(), b in small_char()) {
        let rs = a2();
        let v = verma_character(&rs, &rs.zero_weight());
        let eq_before = a.equals(&b).unwrap();
        let av = a.mul(&v).unwrap();
        let bv = b.mul(&v).unwrap();
        prop_assert_eq!(av.equals(&bv).unwrap(), eq_before);
    }

    #[test]
    fn leq_is_a_partial_order(a in integral_weight(2), b in integral_weight(2), c in integral_weight(2)) {
        let rs = a2();
        prop_assert!(rs.leq(&a, &a));
        if rs.leq(&a, &b) && rs.leq(&b, &a) {
            prop_assert_eq!(&a, &b);
        }
        if rs.leq(&a, &b) && rs.leq(&b, &c) {
            prop_assert!(rs.leq(&a, &c));
        }
    }

    #[test]
    fn reflections_are_involutions(lam in weight(2), idx in 0usize..3) {
        let rs = a2();
        prop_assert_eq!(rs.reflect(idx, &rs.reflect(idx, &lam)), lam);
    }

    #[test]
    fn linkage_is_symmetric_and_transitive_on_orbits(lam in weight(1)) {
        let rs = RootSystem::parse("A1").unwrap();
        let s = charcalc::root_system::WeylElement::simple(&rs, 0);
        let dotted = rs.shifted_action(
            &charcalc::root_system::ExtWeylElement::from_weyl(&rs, s),
            &lam,
        );
        prop_assert!(rs.are_linked(&lam, &dotted).unwrap());
        prop_assert!(rs.are_linked(&dotted, &lam).unwrap());
        // Transitivity through a second orbit point.
        let twisted = Weight::with_torsion(dotted.real().to_vec(), vec![ratio(1, 2)]);
        prop_assert!(rs.are_linked(&lam, &twisted).unwrap());
        prop_assert!(rs.are_linked(&dotted, &twisted).unwrap());
    }
}
