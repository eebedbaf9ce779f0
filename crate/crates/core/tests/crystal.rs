mod common;

use cactus_core::crystal::{
    bracketing_label, cactus_act, commutor, highest_elements, schuetzenberger, CrystalElem, WeightList,
};
use cactus_core::hives::BracketTree;
use cactus_core::word::{project_to_symmetric, CactusGenerator, CactusWord};
use common::*;
use proptest::prelude::*;

fn weights(max_n: usize, max_l: u32) -> impl Strategy<Value = WeightList> {
    prop::collection::vec(0..=max_l, 1..=max_n).prop_map(WeightList::new)
}

fn elem(max_n: usize, max_l: u32) -> impl Strategy<Value = CrystalElem> {
    weights(max_n, max_l).prop_flat_map(|w| {
        let coords: Vec<_> = w.as_slice().iter().map(|&l| 0..=l).collect();
        (Just(w), coords).prop_map(|(w, c)| CrystalElem::new(w, c).unwrap())
    })
}

fn word(n: usize, max_len: usize) -> impl Strategy<Value = CactusWord> {
    let gens = CactusGenerator::all(n);
    prop::collection::vec(prop::sample::select(gens), 0..=max_len).prop_map(move |g| CactusWord::new(n, g).unwrap())
}

// Number of tuples of a given weight, counted directly.
fn weight_multiplicity(w: &WeightList, nu: i64) -> usize {
    CrystalElem::all(w).iter().filter(|b| b.weight() == nu).count()
}

proptest! {
    #[test]
    fn raising_and_lowering_are_partial_inverses(b in elem(4, 4)) {
        if let Some(up) = b.e_tilde() {
            prop_assert_eq!(up.f_tilde(), Some(b.clone()));
            prop_assert_eq!(up.weight(), b.weight() + 2);
            prop_assert_eq!(up.eps() + 1, b.eps());
        } else {
            prop_assert_eq!(b.eps(), 0);
        }
        if let Some(down) = b.f_tilde() {
            prop_assert_eq!(down.e_tilde(), Some(b.clone()));
            prop_assert_eq!(down.phi() + 1, b.phi());
        } else {
            prop_assert_eq!(b.phi(), 0);
        }
        prop_assert_eq!(b.phi() as i64 - b.eps() as i64, b.weight());
    }

    #[test]
    fn tensor_is_concatenation(a in elem(2, 3), b in elem(2, 3), c in elem(2, 3)) {
        let left = a.tensor(&b).tensor(&c);
        let right = a.tensor(&b.tensor(&c));
        prop_assert_eq!(&left, &right);
        prop_assert_eq!(left.weight(), a.weight() + b.weight() + c.weight());
    }

    #[test]
    fn schuetzenberger_reverses_the_string(b in elem(4, 3)) {
        let x = schuetzenberger(&b);
        prop_assert_eq!(schuetzenberger(&x), b.clone());
        prop_assert_eq!(x.weight(), -b.weight());
        prop_assert_eq!(x.e_tilde().map(|y| schuetzenberger(&y)), b.f_tilde());
    }

    #[test]
    fn commutor_is_a_morphism(b in elem(4, 3), split in 1usize..4) {
        prop_assume!(split < b.len());
        let s = commutor(&b, split).unwrap();
        prop_assert_eq!(s.weight(), b.weight());
        prop_assert_eq!(s.eps(), b.eps());
        prop_assert_eq!(b.e_tilde().map(|y| commutor(&y, split).unwrap()), s.e_tilde());
        prop_assert_eq!(b.f_tilde().map(|y| commutor(&y, split).unwrap()), s.f_tilde());
        let k = b.len() - split;
        let mut swapped = b.weights().as_slice()[split..].to_vec();
        swapped.extend_from_slice(&b.weights().as_slice()[..split]);
        prop_assert_eq!(s.weights().as_slice(), &swapped[..]);
        prop_assert_eq!(commutor(&s, k).unwrap(), b);
    }

    #[test]
    fn word_then_inverse_is_identity(b in elem(4, 2).prop_filter("arity 4", |b| b.len() == 4), w in word(4, 5)) {
        let there = cactus_act(&w, &b).unwrap();
        prop_assert_eq!(there.arrangement.clone(), project_to_symmetric(&w));
        let back = cactus_act(&w.inverse(), &there.elem).unwrap();
        prop_assert_eq!(back.elem, b);
    }

    #[test]
    fn action_commutes_with_raising(b in elem(3, 3).prop_filter("arity 3", |b| b.len() == 3), w in word(3, 4)) {
        let image = cactus_act(&w, &b).unwrap().elem;
        let raised = b.e_tilde().map(|y| cactus_act(&w, &y).unwrap().elem);
        prop_assert_eq!(raised, image.e_tilde());
    }
}

#[test]
fn highest_counts_match_character_oracle() {
    for n in 1..=4 {
        for w in weight_lists(n, 3) {
            for nu in nus(&w) {
                let oracle = weight_multiplicity(&w, nu as i64) - weight_multiplicity(&w, nu as i64 + 2);
                assert_eq!(highest_elements(&w, nu).len(), oracle, "{w} ν={nu}");
            }
        }
    }
}

#[test]
fn labels_of_highest_elements_are_admissible() {
    for w in weight_lists(4, 2) {
        let trees = BracketTree::all_planar(&[1, 2, 3, 4]);
        for nu in nus(&w) {
            for b in highest_elements(&w, nu).elements {
                for t in &trees {
                    let s = bracketing_label(&b, t).unwrap();
                    s.validate().unwrap();
                    assert_eq!(s.nu(), nu);
                }
            }
        }
    }
}

#[test]
fn non_highest_elements_have_no_label() {
    let b = CrystalElem::from_slices(&[1, 1], &[1, 1]).unwrap();
    assert!(bracketing_label(&b, &BracketTree::left_comb(&[1, 2])).is_err());
}
