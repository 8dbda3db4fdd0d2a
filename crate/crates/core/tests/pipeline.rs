use std::collections::BTreeSet;

use mwbch::construct::{
    build_support, down_convert, expand, gold_codeword, puncture, CodewordSupport,
};
use mwbch::gflinalg::{complete_to_basis, dual_basis};
use mwbch::solvers::{route, solve, RetryCaps};
use mwbch::verify::{conjugacy_holds, designed_distance, is_member, is_min_weight};
use mwbch::{Elem, Field};

fn field(m: u32) -> Field {
    Field::with_default(m).unwrap()
}

fn routed_support(m: u32, i: u32, s: u32) -> CodewordSupport {
    let f = field(m);
    let sol = solve(&f, route(m, i).unwrap(), 11, RetryCaps::default())
        .unwrap()
        .solution;
    expand(&build_support(&f, &sol, s).unwrap()).unwrap()
}

#[test]
fn every_small_cell_verifies() {
    for m in 4..=12 {
        let f = field(m);
        for i in 2..=4 {
            let Some(method) = route(m, i) else { continue };
            let sol = solve(&f, method, 5, RetryCaps::default()).unwrap().solution;
            for s in 0..=m - 2 * i {
                let cw = expand(&build_support(&f, &sol, s).unwrap()).unwrap();
                let v = is_min_weight(&f, &cw).unwrap();
                assert!(v.is_min_weight, "m={m} i={i} s={s}: {v:?}");
                assert_eq!(v.weight, designed_distance(m, s, i).unwrap());
            }
        }
    }
}

#[test]
fn below_designed_distance_is_rejected() {
    // a word of weight d is never in the code of designed distance d + 2
    let f = field(8);
    let mut cw = routed_support(8, 3, 2);
    cw.claimed_distance += 2;
    let v = is_min_weight(&f, &cw).unwrap();
    assert!(!v.member);
    assert!(v.failing_syndrome.is_some());
}

#[test]
fn single_flips_and_swaps_break_membership() {
    for m in 4..=12 {
        let f = field(m);
        let cw = routed_support(m, 2, m - 4);
        assert_eq!(cw.weight(), 6);
        for z in f.elements() {
            let mut flipped = cw.clone();
            if !flipped.elems.remove(&z) {
                flipped.elems.insert(z);
            }
            assert!(!is_member(&f, &flipped).unwrap(), "m={m} flip {z:?}");
        }
        for &x in &cw.elems {
            for y in f.elements().filter(|y| !cw.elems.contains(y)) {
                let mut swapped = cw.clone();
                swapped.elems.remove(&x);
                swapped.elems.insert(y);
                assert!(
                    !is_member(&f, &swapped).unwrap(),
                    "m={m} swap {x:?} -> {y:?}"
                );
            }
        }
    }
}

#[test]
fn verifier_power_sums_are_conjugate() {
    for m in [5, 8, 10] {
        let f = field(m);
        let cw = routed_support(m, 2, m - 4);
        assert!(conjugacy_holds(&f, &cw, f.order()));
    }
}

#[test]
fn punctured_words_verify() {
    let f = field(10);
    let cw = routed_support(10, 3, 4);
    for &x in cw.elems.iter().take(5) {
        let p = puncture(&cw, x).unwrap();
        let v = is_min_weight(&f, &p).unwrap();
        assert!(v.is_min_weight && v.weight == 27);
    }
}

#[test]
fn gold_up_conversion_verifies() {
    let f = field(8);
    let cw = gold_codeword(&f, 2, 0).unwrap();
    assert_eq!(cw.weight(), 96);
    assert!(is_min_weight(&f, &cw).unwrap().is_min_weight);
    let sub: BTreeSet<Elem> = f.subfield(4).unwrap().elements.into_iter().collect();
    assert!(mwbch::construct::gold_support(&f, 2)
        .unwrap()
        .elems
        .is_subset(&sub));
}

#[test]
fn down_conversion_of_a_larger_word_verifies() {
    let f = field(8);
    let sol = solve(&f, route(8, 3).unwrap(), 0, RetryCaps::default())
        .unwrap()
        .solution;
    let dual = dual_basis(&f, &complete_to_basis(&f, sol.entries()).unwrap());
    let c0 = expand(&build_support(&f, &sol, 0).unwrap()).unwrap();
    let c1 = down_convert(&f, &c0, &dual.elems()[6..7]).unwrap();
    let v = is_min_weight(&f, &c1).unwrap();
    assert!(v.is_min_weight && v.weight == 56);
}
