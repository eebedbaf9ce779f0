mod common;

use cactus_core::crystal::{bracketing_label, cactus_act, highest_elements, WeightList};
use cactus_core::hives::{
    apply_move, apply_moves, associator_psi, cactus_act_labels, cg_interval, move_to_tree, moves_to_shape,
    occurrence_set, BracketTree, Direction, LabelState, Move, VertexSet,
};
use cactus_core::word::{relation_instances, CactusGenerator, CactusWord};
use common::*;
use proptest::prelude::*;

// Middle labels allowed on the (AB)C side, from the two Clebsch–Gordan rules.
fn left_labels(a: u32, b: u32, c: u32, nu: u32) -> Vec<u32> {
    cg_interval(a, b).into_iter().filter(|&m| cg_interval(m, c).contains(&nu)).collect()
}

proptest! {
    #[test]
    fn psi_is_an_order_reversing_bijection(a in 0u32..6, b in 0u32..6, c in 0u32..6, nu in 0u32..12) {
        let left = left_labels(a, b, c, nu);
        let right: Vec<u32> = cg_interval(b, c).into_iter().filter(|&m| cg_interval(a, m).contains(&nu)).collect();
        prop_assert_eq!(left.len(), right.len());
        let images: Vec<u32> = left.iter().map(|&m| associator_psi(m, a, b, c, nu).unwrap()).collect();
        let mut reversed = right.clone();
        reversed.reverse();
        prop_assert_eq!(&images, &reversed);
        for (&m, &p) in left.iter().zip(&images) {
            prop_assert_eq!(associator_psi(p, c, b, a, nu).unwrap(), m);
        }
    }

    #[test]
    fn rotations_undo_each_other(ws in prop::collection::vec(0u32..3, 3..=5), pick in 0usize..64) {
        let w = WeightList::new(ws);
        let n = w.len();
        let tree = BracketTree::left_comb(&(1..=n).collect::<Vec<_>>());
        let nu = nus(&w)[pick % nus(&w).len()];
        for s in occurrence_set(&tree, &w, nu).unwrap() {
            let m = Move::Rotate(tree.leaf_set(), Direction::ToRight);
            let there = apply_move(&s, &m).unwrap();
            there.validate().unwrap();
            let back = apply_move(&there, &Move::Rotate(tree.leaf_set(), Direction::ToLeft)).unwrap();
            prop_assert_eq!(back, s);
        }
    }
}

#[test]
fn occurrence_counts_do_not_depend_on_the_tree() {
    for n in 2..=5 {
        let trees = BracketTree::all_unordered(n);
        assert_eq!(trees.len(), (1..n).map(|k| 2 * k - 1).product::<usize>());
        for w in sorted_weight_lists(n, 2) {
            for nu in nus(&w) {
                let expected = highest_elements(&w, nu).len();
                for t in &trees {
                    assert_eq!(occurrence_set(t, &w, nu).unwrap().len(), expected, "{w} {t} ν={nu}");
                }
            }
        }
    }
}

#[test]
fn transport_is_path_independent() {
    // two routes between the combs of four leaves: the short and long side of the pentagon
    let w = WeightList::new(vec![1, 2, 1, 2]);
    let left = BracketTree::left_comb(&[1, 2, 3, 4]);
    let right = BracketTree::right_comb(&[1, 2, 3, 4]);
    let all = VertexSet::from_ids(&[1, 2, 3, 4]);
    let short = [Move::Rotate(all, Direction::ToRight), Move::Rotate(all, Direction::ToRight)];
    let long = [
        Move::Rotate(VertexSet::from_ids(&[1, 2, 3]), Direction::ToRight),
        Move::Rotate(all, Direction::ToRight),
        Move::Rotate(VertexSet::from_ids(&[2, 3, 4]), Direction::ToRight),
    ];
    for nu in nus(&w) {
        for s in occurrence_set(&left, &w, nu).unwrap() {
            let a = apply_moves(&s, &short).unwrap();
            let b = apply_moves(&s, &long).unwrap();
            assert_eq!(a.tree(), &right);
            assert_eq!(a, b);
            assert_eq!(move_to_tree(&s, &right).unwrap(), a);
        }
    }
}

#[test]
fn moves_to_shape_reaches_every_tree() {
    let order = [1, 2, 3, 4];
    for a in BracketTree::all_planar(&order) {
        for b in BracketTree::all_planar(&order) {
            let moves = moves_to_shape(&a, &b).unwrap();
            let mut t = a.clone();
            for m in &moves {
                t = t.apply_move(m).unwrap();
            }
            assert_eq!(t, b);
        }
    }
}

#[test]
fn label_action_satisfies_the_relations() {
    for n in 2..=4 {
        let relations = relation_instances(n);
        let tree = BracketTree::left_comb(&(1..=n).collect::<Vec<_>>());
        for w in sorted_weight_lists(n, 2) {
            for nu in nus(&w) {
                for s in occurrence_set(&tree, &w, nu).unwrap() {
                    for (lhs, rhs) in &relations {
                        let a = cactus_act_labels(lhs, &s).unwrap();
                        let b = cactus_act_labels(rhs, &s).unwrap();
                        let comb = BracketTree::left_comb(&a.tree().leaves());
                        assert_eq!(
                            move_to_tree(&a, &comb).unwrap(),
                            move_to_tree(&b, &comb).unwrap(),
                            "{lhs} vs {rhs} on {s}"
                        );
                    }
                }
            }
        }
    }
}

#[test]
fn label_action_matches_crystal_action() {
    for w in weight_lists(3, 3) {
        let order = [1, 2, 3];
        for tree in BracketTree::all_planar(&order) {
            for g in CactusGenerator::all(3) {
                let word = CactusWord::single(g);
                for nu in nus(&w) {
                    for b in highest_elements(&w, nu).elements {
                        let s = bracketing_label(&b, &tree).unwrap();
                        let image = cactus_act(&word, &b).unwrap();
                        let target = tree.with_leaves(&image.arrangement.arrange(&tree.leaves()));
                        let via_crystal = bracketing_label(&image.elem, &target).unwrap();
                        let via_hives = move_to_tree(&cactus_act_labels(&word, &s).unwrap(), &target).unwrap();
                        assert_eq!(via_hives, via_crystal, "{word} on {s}");
                    }
                }
            }
        }
    }
}

#[test]
fn label_json_round_trip() {
    let w = WeightList::new(vec![1, 1, 2]);
    let tree = BracketTree::right_comb(&[1, 2, 3]);
    for s in occurrence_set(&tree, &w, 2).unwrap() {
        let js = serde_json::to_string(&s).unwrap();
        assert!(js.contains("\"R\""));
        assert_eq!(serde_json::from_str::<LabelState>(&js).unwrap(), s);
    }
}
