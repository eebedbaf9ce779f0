mod common;

use cactus_core::crystal::WeightList;
use cactus_core::error::Error;
use cactus_core::hives::{BracketTree, Direction, VertexSet};
use cactus_core::transport::{
    curves_csv, edge_transport, move_monodromy, pencil_curves, pencil_track, rp1_loop_moves, Pencil, PencilSettings,
    TransportCache, TransportMode,
};
use cactus_core::verify::{run_relations, run_verification, ExperimentConfig, Mode, SCHEMA};
use cactus_core::word::CactusWord;
use common::*;
use nalgebra::DMatrix;
use proptest::prelude::*;

fn sym(d: usize, entries: &[f64]) -> DMatrix<f64> {
    let m = DMatrix::from_row_slice(d, d, entries);
    (&m + m.transpose()) * 0.5
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    // With equal endpoints the pencil is constant and nothing moves.
    #[test]
    fn constant_pencil_is_identity(entries in prop::collection::vec(-5.0f64..5.0, 9)) {
        let a = sym(3, &entries);
        let p = Pencil::new(a.clone(), a, PencilSettings::default()).unwrap();
        let ev = p.eigenvalues(0.0);
        prop_assume!(ev.windows(2).all(|w| w[1] - w[0] > 1e-3));
        let r = pencil_track(&p).unwrap();
        prop_assert!(r.certified);
        prop_assert_eq!(r.permutation, vec![0, 1, 2]);
        prop_assert_eq!(r.grid, PencilSettings::default().grid);
    }
}

#[test]
fn diagonal_pencil_reports_crossing() {
    let start = DMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![0.0, 1.0]));
    let end = DMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![1.0, 0.0]));
    let p = Pencil::new(start, end, PencilSettings { grid: 16, ..Default::default() }).unwrap();
    let err = pencil_track(&p).unwrap_err();
    assert!(matches!(err, Error::PossibleCrossing { .. }));
}

#[test]
fn asymmetric_matrices_are_rejected() {
    let a = DMatrix::from_row_slice(2, 2, &[0.0, 1.0, 0.0, 0.0]);
    assert!(matches!(Pencil::new(a.clone(), a, PencilSettings::default()), Err(Error::NotSelfAdjoint)));
}

#[test]
fn curves_csv_has_one_row_per_sample() {
    let a = sym(2, &[1.0, 0.5, 0.5, 2.0]);
    let b = sym(2, &[-1.0, 0.0, 0.0, 3.0]);
    let p = Pencil::new(a, b, PencilSettings::default()).unwrap();
    let csv = curves_csv(&pencil_curves(&p, 8));
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "t,λ1,λ2");
    assert_eq!(lines.len(), 10);
}

#[test]
fn numeric_edges_reproduce_psi() {
    let settings = PencilSettings::default();
    for w in weight_lists(4, 2).into_iter().step_by(7) {
        let tree = BracketTree::left_comb(&[1, 2, 3, 4]);
        let v = VertexSet::from_ids(&[1, 2, 3]);
        for nu in nus(&w) {
            let num = edge_transport(&tree, v, Direction::ToRight, &w, nu, TransportMode::Numeric, &settings).unwrap();
            let comb =
                edge_transport(&tree, v, Direction::ToRight, &w, nu, TransportMode::Combinatorial, &settings).unwrap();
            assert!(num.certified());
            assert_eq!(num.map, comb.map, "{w} ν={nu}");
        }
    }
}

#[test]
fn rp1_loop_closes() {
    let w = WeightList::new(vec![2, 2, 2]);
    let tree = BracketTree::left_comb(&[1, 2, 3]);
    let cache = TransportCache::new(PencilSettings::default());
    for mode in [TransportMode::Combinatorial, TransportMode::Numeric] {
        let m = move_monodromy(&rp1_loop_moves(), &tree, &w, 2, mode, &cache).unwrap();
        assert!(m.is_loop());
        assert_eq!(m.permutation(), Some(vec![2, 1, 0]));
    }
}

#[test]
fn report_json_names_claims() {
    let mut cfg = ExperimentConfig::new(WeightList::new(vec![1, 1, 2]));
    cfg.word = Some(CactusWord::from_pairs(3, &[(1, 3)]).unwrap());
    let report = run_verification(&cfg).unwrap();
    assert_eq!(report.exit_code, 0);
    let js: serde_json::Value = serde_json::to_value(&report).unwrap();
    assert_eq!(js["schema"], SCHEMA);
    for inst in js["instances"].as_array().unwrap() {
        for (_, r) in inst["results"].as_object().unwrap() {
            assert!(r["claim"].as_str().unwrap().contains("::"));
        }
    }
    // identical inputs give identical bytes
    let again = serde_json::to_string(&run_verification(&cfg).unwrap()).unwrap();
    assert_eq!(serde_json::to_string(&report).unwrap(), again);
}

#[test]
fn relations_hold_in_every_mode() {
    let mut cfg = ExperimentConfig::new(WeightList::new(vec![1, 2, 1]));
    cfg.mode = Mode::All;
    let r = run_relations(&cfg).unwrap();
    assert_eq!(r.exit_code, 0);
    assert!(r.instances.iter().all(|i| i.agreement && i.holds.values().all(|h| *h)));
}
