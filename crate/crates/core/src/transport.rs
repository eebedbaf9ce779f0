//! Floating-point transport of Casimir eigenvectors along edges of the real
//! moduli space.
//!
//! Along the edge joining two bracketings that differ by a rotation, the
//! pencil `H(t) = (1-t) C_X - t C_Y` has simple spectrum for every
//! `t ∈ [0, 1]`. Eigenvalue curves therefore keep their order, and the
//! `i`-th smallest eigenvalue `c(μ_X)` at `t = 0` ends as the `i`-th smallest
//! `-c(μ_Y)` at `t = 1`. Reading off `μ_Y` realizes the associator.
//!
//! Exact data (bases, Casimirs, Gram forms) comes from [`crate::gaudin`];
//! this module is the only place where floating point appears.

use std::collections::{BTreeMap, HashMap};

use nalgebra::{Cholesky, DMatrix, Dyn, SymmetricEigen};
use rayon::prelude::*;
use serde::Serialize;

use crate::crystal::WeightList;
use crate::error::{Error, Result};
use crate::gaudin::{bracketing_eigenbasis, casimir_apply, spectral_norm, Basis, ExactOperator};
use crate::hives::{apply_move, occurrence_set, BracketTree, Direction, LabelState, Move, RotationSite, VertexSet};
use crate::linalg::{q, q_to_f64, QMatrix, Q};
use crate::word::{project_to_symmetric, CactusWord};

/// Diagonal of the product contravariant form: `Π binom(λ_i, k_i)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GramDiagonal {
    #[serde(serialize_with = "serialize_q")]
    pub entries: Vec<Q>,
}

fn serialize_q<S: serde::Serializer>(v: &[Q], s: S) -> std::result::Result<S::Ok, S::Error> {
    let strings: Vec<String> = v.iter().map(crate::linalg::q_to_pq).collect();
    strings.serialize(s)
}

fn binomial(n: u32, k: u32) -> Q {
    (0..k).fold(q(1), |acc, i| acc * q(n as i64 - i as i64) / q(i as i64 + 1))
}

impl GramDiagonal {
    pub fn for_basis(basis: &Basis) -> Self {
        let w = basis.weights().as_slice();
        let entries =
            basis.tuples().iter().map(|t| w.iter().zip(t).fold(q(1), |acc, (&l, &k)| acc * binomial(l, k))).collect();
        GramDiagonal { entries }
    }

    pub fn matrix(&self) -> QMatrix {
        QMatrix::diagonal(&self.entries)
    }
}

/// `D^{1/2} · op · D^{-1/2}` in floating point, after checking exactly that
/// `op` is self-adjoint for `D`.
pub fn symmetrize(op: &ExactOperator, g: &GramDiagonal) -> Result<DMatrix<f64>> {
    let m = &op.matrix;
    let d = m.rows();
    if !m.is_square() || g.entries.len() != d {
        return Err(Error::ArityMismatch { expected: d, found: g.entries.len() });
    }
    for i in 0..d {
        for j in 0..d {
            if &g.entries[i] * &m[(i, j)] != &m[(j, i)] * &g.entries[j] {
                return Err(Error::NotSelfAdjoint);
            }
        }
    }
    let roots: Vec<f64> = g.entries.iter().map(|x| q_to_f64(x).sqrt()).collect();
    let raw = DMatrix::from_fn(d, d, |i, j| roots[i] * q_to_f64(&m[(i, j)]) / roots[j]);
    Ok((&raw + raw.transpose()) * 0.5)
}

/// Cholesky factor `G = L Lᵀ` of a positive definite Gram matrix, used to
/// turn `G`-self-adjoint matrices into symmetric ones: `Lᵀ R L^{-T}`.
pub struct ContravariantFactor {
    l: DMatrix<f64>,
    l_inv_t: DMatrix<f64>,
}

pub fn contravariant_factor(g: &QMatrix) -> Result<ContravariantFactor> {
    let chol = Cholesky::<f64, Dyn>::new(g.to_f64()).ok_or(Error::NotSelfAdjoint)?;
    let l = chol.l();
    let l_inv_t = l.clone().try_inverse().ok_or(Error::NotSelfAdjoint)?.transpose();
    Ok(ContravariantFactor { l, l_inv_t })
}

impl ContravariantFactor {
    pub fn symmetric(&self, r: &QMatrix) -> DMatrix<f64> {
        let m = self.l.transpose() * r.to_f64() * &self.l_inv_t;
        (&m + m.transpose()) * 0.5
    }
}

/// Grid and tolerance for tracking a pencil.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PencilSettings {
    /// Number of intervals of the initial grid on `[0, 1]`.
    pub grid: usize,
    /// Relative gap threshold.
    pub tol: f64,
    /// Maximal number of grid doublings.
    pub max_refinements: u32,
}

impl Default for PencilSettings {
    fn default() -> Self {
        PencilSettings { grid: 1024, tol: 1e-8, max_refinements: 4 }
    }
}

/// `H(t) = (1-t)·start + t·end`, `t ∈ [0, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct Pencil {
    pub start: DMatrix<f64>,
    pub end: DMatrix<f64>,
    pub settings: PencilSettings,
}

impl Pencil {
    pub fn new(start: DMatrix<f64>, end: DMatrix<f64>, settings: PencilSettings) -> Result<Self> {
        if !start.is_square() || start.shape() != end.shape() {
            return Err(Error::ArityMismatch { expected: start.nrows(), found: end.nrows() });
        }
        let scale = spectral_norm(&start).max(spectral_norm(&end)).max(1.0);
        for m in [&start, &end] {
            if (m - m.transpose()).amax() > 1e-12 * scale {
                return Err(Error::NotSelfAdjoint);
            }
        }
        Ok(Pencil { start, end, settings })
    }

    pub fn dim(&self) -> usize {
        self.start.nrows()
    }

    pub fn at(&self, t: f64) -> DMatrix<f64> {
        &self.start * (1.0 - t) + &self.end * t
    }

    /// Eigenvalues at `t`, ascending.
    pub fn eigenvalues(&self, t: f64) -> Vec<f64> {
        sorted_eigenvalues(self.at(t))
    }
}

fn sorted_eigenvalues(m: DMatrix<f64>) -> Vec<f64> {
    if m.is_empty() {
        return Vec::new();
    }
    let mut ev: Vec<f64> = SymmetricEigen::new(m).eigenvalues.iter().copied().collect();
    ev.sort_by(f64::total_cmp);
    ev
}

/// Result of tracking one pencil.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TransportReport {
    /// `permutation[i] = j`: the curve starting at the `i`-th entry of the
    /// start ordering ends at the `j`-th entry of the end ordering. For a
    /// bare pencil both orderings are by eigenvalue, so this is the
    /// identity; edge transports express it in label order.
    pub permutation: Vec<usize>,
    pub start_eigenvalues: Vec<f64>,
    pub end_eigenvalues: Vec<f64>,
    /// Smallest gap between neighbouring eigenvalues over the samples.
    pub min_gap: Option<f64>,
    /// Gap threshold `tol · max(‖start‖, ‖end‖)`.
    pub threshold: f64,
    /// Number of grid intervals finally used.
    pub grid: usize,
    /// Every grid interval is free of crossings by the Weyl bound.
    pub certified: bool,
}

/// Samples the pencil and certifies that no two eigenvalue curves meet.
///
/// On an interval of width `h` each eigenvalue moves by at most
/// `‖end - start‖·h`, so neighbouring curves cannot meet there when the sum
/// of their gaps at the two ends exceeds `2‖end - start‖·h`. The grid is
/// doubled until every interval passes or the refinement cap is hit.
pub fn pencil_track(p: &Pencil) -> Result<TransportReport> {
    let d = p.dim();
    let s = p.settings;
    let norm = spectral_norm(&p.start).max(spectral_norm(&p.end));
    let threshold = s.tol * norm;
    let lipschitz = spectral_norm(&(&p.end - &p.start));
    let start_eigenvalues = p.eigenvalues(0.0);
    let end_eigenvalues = p.eigenvalues(1.0);
    let permutation: Vec<usize> = (0..d).collect();
    if d <= 1 {
        return Ok(TransportReport {
            permutation,
            start_eigenvalues,
            end_eigenvalues,
            min_gap: None,
            threshold,
            grid: s.grid,
            certified: true,
        });
    }
    let mut grid = s.grid.max(1);
    let mut last = (f64::INFINITY, 0.0);
    for level in 0..=s.max_refinements {
        let samples: Vec<Vec<f64>> = (0..=grid)
            .into_par_iter()
            .map(|k| {
                let ev = p.eigenvalues(k as f64 / grid as f64);
                ev.windows(2).map(|w| w[1] - w[0]).collect()
            })
            .collect();
        let (min_gap, at) = samples
            .iter()
            .enumerate()
            .flat_map(|(k, g)| g.iter().map(move |&x| (x, k as f64 / grid as f64)))
            .fold((f64::INFINITY, 0.0), |a, b| if b.0 < a.0 { b } else { a });
        last = (min_gap, at);
        let h = 1.0 / grid as f64;
        let weyl = samples.windows(2).all(|w| w[0].iter().zip(&w[1]).all(|(a, b)| a + b > 2.0 * lipschitz * h));
        if min_gap > threshold && weyl {
            return Ok(TransportReport {
                permutation,
                start_eigenvalues,
                end_eigenvalues,
                min_gap: Some(min_gap),
                threshold,
                grid,
                certified: true,
            });
        }
        if level < s.max_refinements {
            grid *= 2;
        }
    }
    if last.0 <= threshold {
        return Err(Error::PossibleCrossing { min_gap: last.0, threshold, t: last.1 });
    }
    Ok(TransportReport {
        permutation,
        start_eigenvalues,
        end_eigenvalues,
        min_gap: Some(last.0),
        threshold,
        grid,
        certified: false,
    })
}

/// Eigenvalue curves on a uniform grid of `grid` intervals, for CSV export.
pub fn pencil_curves(p: &Pencil, grid: usize) -> Vec<(f64, Vec<f64>)> {
    let grid = grid.max(1);
    (0..=grid)
        .into_par_iter()
        .map(|k| {
            let t = k as f64 / grid as f64;
            (t, p.eigenvalues(t))
        })
        .collect()
}

/// CSV with header `t,λ1,…,λd`.
pub fn curves_csv(curves: &[(f64, Vec<f64>)]) -> String {
    let d = curves.first().map_or(0, |c| c.1.len());
    let mut out = String::from("t");
    for i in 1..=d {
        out.push_str(&format!(",λ{i}"));
    }
    out.push('\n');
    for (t, ev) in curves {
        out.push_str(&t.to_string());
        for x in ev {
            out.push(',');
            out.push_str(&format!("{x:.12e}"));
        }
        out.push('\n');
    }
    out
}

/// How a rotation acts on labels.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TransportMode {
    /// The associator `ψ`.
    Combinatorial,
    /// Certified tracking of the Casimir pencil.
    Numeric,
}

type LabelMap = Vec<(LabelState, LabelState)>;

/// One pencil of an edge transport, restricted to a block of states that
/// share every label except the middle one.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BlockTransport {
    pub from: Vec<u32>,
    pub to: Vec<u32>,
    pub report: TransportReport,
    #[serde(skip)]
    pub pencil: Option<Pencil>,
}

/// The label bijection across one rotation.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EdgeTransport {
    pub mode: TransportMode,
    pub rotation: Move,
    pub from_tree: BracketTree,
    pub to_tree: BracketTree,
    pub map: Vec<(LabelState, LabelState)>,
    pub blocks: Vec<BlockTransport>,
}

impl EdgeTransport {
    pub fn certified(&self) -> bool {
        self.blocks.iter().all(|b| b.report.certified)
    }

    /// The middle-label map `μ ↦ μ'` on each block, in block order.
    pub fn middle_maps(&self) -> Vec<Vec<(u32, u32)>> {
        self.blocks.iter().map(|b| b.from.iter().copied().zip(b.to.iter().copied()).collect()).collect()
    }
}

fn decode_casimir(c: f64) -> Option<u32> {
    // c = μ(μ+2)/2
    let mu = (-1.0 + (1.0 + 2.0 * c).max(0.0).sqrt()).round();
    if mu < 0.0 {
        return None;
    }
    let back = mu * (mu + 2.0) / 2.0;
    ((back - c).abs() <= 1e-6 * (1.0 + c.abs())).then_some(mu as u32)
}

fn apply_casimir_columns(ids: &[usize], basis: &Basis, w: &QMatrix) -> Result<QMatrix> {
    let cols: Result<Vec<Vec<Q>>> = (0..w.cols())
        .map(|j| {
            let v = basis.to_sparse(&w.column(j));
            let image = casimir_apply(ids, basis.weights(), &v)?;
            basis.to_dense(&image).ok_or(Error::NotInvariant)
        })
        .collect();
    Ok(QMatrix::from_columns(&cols?, w.rows()))
}

/// Transport of labels across the rotation `dir` at `vertex`.
pub fn edge_transport(
    tree: &BracketTree,
    vertex: VertexSet,
    dir: Direction,
    weights: &WeightList,
    nu: u32,
    mode: TransportMode,
    settings: &PencilSettings,
) -> Result<EdgeTransport> {
    let rotation = Move::Rotate(vertex, dir);
    let site = RotationSite::locate(tree, vertex, dir)?;
    let to_tree = tree.apply_move(&rotation)?;
    let states = occurrence_set(tree, weights, nu)?;
    let mut groups: BTreeMap<Vec<(VertexSet, u32)>, Vec<LabelState>> = BTreeMap::new();
    for s in states {
        let key: Vec<(VertexSet, u32)> =
            s.labels().iter().filter(|(v, _)| **v != site.old_middle).map(|(v, m)| (*v, *m)).collect();
        groups.entry(key).or_default().push(s);
    }
    match mode {
        TransportMode::Combinatorial => {
            let mut map = Vec::new();
            let mut blocks = Vec::new();
            for members in groups.values() {
                let mut from = Vec::new();
                let mut to = Vec::new();
                for s in members {
                    let t = apply_move(s, &rotation)?;
                    from.push(s.labels()[&site.old_middle]);
                    to.push(t.labels()[&site.new_middle]);
                    map.push((s.clone(), t));
                }
                let k = from.len();
                blocks.push(BlockTransport {
                    from,
                    to,
                    report: TransportReport {
                        permutation: (0..k).rev().collect(),
                        start_eigenvalues: Vec::new(),
                        end_eigenvalues: Vec::new(),
                        min_gap: None,
                        threshold: 0.0,
                        grid: 0,
                        certified: true,
                    },
                    pencil: None,
                });
            }
            Ok(EdgeTransport { mode, rotation, from_tree: tree.clone(), to_tree, map, blocks })
        }
        TransportMode::Numeric => {
            let eb = bracketing_eigenbasis(tree, weights, nu)?;
            let coords: HashMap<&LabelState, &Vec<Q>> = eb.vectors.iter().map(|v| (&v.state, &v.coords)).collect();
            let gram = GramDiagonal::for_basis(&eb.basis).matrix();
            let old_ids = site.old_middle.ids();
            let new_ids = site.new_middle.ids();
            let results: Vec<Result<(LabelMap, BlockTransport)>> = groups
                .values()
                .collect::<Vec<_>>()
                .par_iter()
                .map(|members| {
                    let cols: Vec<Vec<Q>> = members.iter().map(|s| coords[s].clone()).collect();
                    let w = QMatrix::from_columns(&cols, eb.basis.dim());
                    numeric_block(members, &w, &eb.basis, &gram, &old_ids, &new_ids, &site, &to_tree, settings)
                })
                .collect();
            let mut map = Vec::new();
            let mut blocks = Vec::new();
            for r in results {
                let (m, b) = r?;
                map.extend(m);
                blocks.push(b);
            }
            Ok(EdgeTransport { mode, rotation, from_tree: tree.clone(), to_tree, map, blocks })
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn numeric_block(
    members: &[LabelState],
    w: &QMatrix,
    basis: &Basis,
    gram: &QMatrix,
    old_ids: &[usize],
    new_ids: &[usize],
    site: &RotationSite,
    to_tree: &BracketTree,
    settings: &PencilSettings,
) -> Result<(Vec<(LabelState, LabelState)>, BlockTransport)> {
    let cx = w.solve(&apply_casimir_columns(old_ids, basis, w)?).ok_or(Error::NotInvariant)?;
    let cy = w.solve(&apply_casimir_columns(new_ids, basis, w)?).ok_or(Error::NotInvariant)?;
    let g = &(&w.transpose() * gram) * w;
    for r in [&cx, &cy] {
        if &g * r != &r.transpose() * &g {
            return Err(Error::NotSelfAdjoint);
        }
    }
    let factor = contravariant_factor(&g)?;
    let pencil = Pencil::new(factor.symmetric(&cx), -factor.symmetric(&cy), *settings)?;
    let mut report = pencil_track(&pencil)?;

    let from_labels: Vec<u32> = members.iter().map(|s| s.labels()[&site.old_middle]).collect();
    let start: Vec<u32> = report
        .start_eigenvalues
        .iter()
        .map(|&c| decode_casimir(c).ok_or_else(|| Error::LabelMatch(format!("eigenvalue {c} is not a Casimir value"))))
        .collect::<Result<_>>()?;
    let end: Vec<u32> = report
        .end_eigenvalues
        .iter()
        .map(|&c| decode_casimir(-c).ok_or_else(|| Error::LabelMatch(format!("eigenvalue {c} is not a Casimir value"))))
        .collect::<Result<_>>()?;
    let mut sorted_from = from_labels.clone();
    sorted_from.sort_unstable();
    if start != sorted_from {
        return Err(Error::LabelMatch(format!("start spectrum decodes to {start:?}, labels are {sorted_from:?}")));
    }
    let mut map = Vec::new();
    let mut to_labels = Vec::new();
    for s in members {
        let mu = s.labels()[&site.old_middle];
        let rank = start.iter().position(|&x| x == mu).expect("label in start spectrum");
        let mu_new = end[rank];
        let mut labels = s.labels().clone();
        labels.remove(&site.old_middle);
        labels.insert(site.new_middle, mu_new);
        let t = LabelState::new(s.weights().clone(), to_tree.clone(), labels, s.nu())
            .map_err(|e| Error::LabelMatch(format!("transported label {mu_new} is not admissible: {e}")))?;
        to_labels.push(mu_new);
        map.push((s.clone(), t));
    }
    let mut sorted_to = to_labels.clone();
    sorted_to.sort_unstable();
    report.permutation = to_labels.iter().map(|m| sorted_to.iter().position(|x| x == m).expect("present")).collect();
    if sorted_to.windows(2).any(|p| p[0] == p[1]) {
        return Err(Error::LabelMatch(format!("transported labels {to_labels:?} are not distinct")));
    }
    Ok((map, BlockTransport { from: from_labels, to: to_labels, report, pencil: Some(pencil) }))
}

/// Memoized numeric edge transports, keyed by tree, rotation, weights and
/// top weight.
#[derive(Default)]
pub struct TransportCache {
    settings: PencilSettings,
    entries: std::sync::Mutex<HashMap<EdgeKey, std::sync::Arc<EdgeTransport>>>,
}

type EdgeKey = (BracketTree, Move, WeightList, u32);

impl TransportCache {
    pub fn new(settings: PencilSettings) -> Self {
        TransportCache { settings, entries: Default::default() }
    }

    pub fn settings(&self) -> &PencilSettings {
        &self.settings
    }

    pub fn get(
        &self,
        tree: &BracketTree,
        vertex: VertexSet,
        dir: Direction,
        weights: &WeightList,
        nu: u32,
    ) -> Result<std::sync::Arc<EdgeTransport>> {
        let key = (tree.clone(), Move::Rotate(vertex, dir), weights.clone(), nu);
        if let Some(hit) = self.entries.lock().expect("cache lock").get(&key) {
            return Ok(hit.clone());
        }
        let edge = std::sync::Arc::new(edge_transport(
            tree,
            vertex,
            dir,
            weights,
            nu,
            TransportMode::Numeric,
            &self.settings,
        )?);
        self.entries.lock().expect("cache lock").insert(key, edge.clone());
        Ok(edge)
    }
}

/// Label bijection along a sequence of moves.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Monodromy {
    pub mode: TransportMode,
    pub start_tree: BracketTree,
    pub end_tree: BracketTree,
    pub moves: Vec<Move>,
    /// Pairs `(start state, end state)` in the order of the start
    /// occurrence set.
    pub map: Vec<(LabelState, LabelState)>,
    /// Reports of the numeric pencils that were tracked.
    pub reports: Vec<TransportReport>,
}

impl Monodromy {
    pub fn certified(&self) -> bool {
        self.reports.iter().all(|r| r.certified)
    }

    pub fn is_loop(&self) -> bool {
        self.start_tree == self.end_tree
    }

    /// For a loop, `permutation[i] = j` when the `i`-th state of the
    /// occurrence set is carried to the `j`-th.
    pub fn permutation(&self) -> Option<Vec<usize>> {
        if !self.is_loop() {
            return None;
        }
        let starts: Vec<&LabelState> = self.map.iter().map(|(s, _)| s).collect();
        self.map.iter().map(|(_, t)| starts.iter().position(|s| *s == t)).collect()
    }
}

/// Follows `moves` from `tree`, flips acting trivially on labels and
/// rotations acting by the edge transport of the given mode.
pub fn move_monodromy(
    moves: &[Move],
    tree: &BracketTree,
    weights: &WeightList,
    nu: u32,
    mode: TransportMode,
    cache: &TransportCache,
) -> Result<Monodromy> {
    let starts = occurrence_set(tree, weights, nu)?;
    let mut current = starts.clone();
    let mut cur_tree = tree.clone();
    let mut reports = Vec::new();
    for m in moves {
        match (m, mode) {
            (Move::Rotate(v, dir), TransportMode::Numeric) => {
                let edge = cache.get(&cur_tree, *v, *dir, weights, nu)?;
                let lookup: HashMap<&LabelState, &LabelState> = edge.map.iter().map(|(a, b)| (a, b)).collect();
                current = current
                    .iter()
                    .map(|s| {
                        lookup
                            .get(s)
                            .map(|t| (*t).clone())
                            .ok_or_else(|| Error::LabelMatch(format!("state {s} missing from the transport")))
                    })
                    .collect::<Result<_>>()?;
                reports.extend(edge.blocks.iter().map(|b| b.report.clone()));
            }
            _ => {
                current = current.iter().map(|s| apply_move(s, m)).collect::<Result<_>>()?;
            }
        }
        cur_tree = cur_tree.apply_move(m)?;
    }
    Ok(Monodromy {
        mode,
        start_tree: tree.clone(),
        end_tree: cur_tree,
        moves: moves.to_vec(),
        map: starts.into_iter().zip(current).collect(),
        reports,
    })
}

/// Monodromy of a cactus word: the moves realizing the word, followed by
/// rotations back to the starting shape when the word is pure.
pub fn loop_monodromy(
    word: &CactusWord,
    tree: &BracketTree,
    weights: &WeightList,
    nu: u32,
    mode: TransportMode,
    cache: &TransportCache,
) -> Result<Monodromy> {
    let (mut moves, end) = crate::hives::realize_word(word, tree)?;
    if project_to_symmetric(word).is_identity() {
        moves.extend(crate::hives::moves_to_shape(&end, tree)?);
    }
    move_monodromy(&moves, tree, weights, nu, mode, cache)
}

/// The loop around the real projective line for three factors, starting and
/// ending at `((1 2) 3)`: it crosses the three edges once each.
pub fn rp1_loop_moves() -> Vec<Move> {
    let root = VertexSet::from_ids(&[1, 2, 3]);
    vec![
        Move::Rotate(root, Direction::ToRight),
        Move::Flip(VertexSet::from_ids(&[2, 3])),
        Move::Rotate(root, Direction::ToLeft),
        Move::Flip(VertexSet::from_ids(&[1, 3])),
        Move::Rotate(root, Direction::ToRight),
        Move::Flip(root),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gaudin::{casimir_on_subset, singular_basis};

    fn wl(v: &[u32]) -> WeightList {
        WeightList::new(v.to_vec())
    }

    #[test]
    fn symmetrize_diagonal_is_unchanged() {
        let basis = Basis::slice(&wl(&[2, 1]), 1);
        let op = ExactOperator { basis: basis.clone(), matrix: QMatrix::diagonal(&[q(1), q(5)]) };
        let s = symmetrize(&op, &GramDiagonal::for_basis(&basis)).unwrap();
        assert_eq!(s, DMatrix::from_row_slice(2, 2, &[1.0, 0.0, 0.0, 5.0]));
    }

    #[test]
    fn symmetrize_casimir_spectrum() {
        let basis = Basis::full(&wl(&[1, 1]));
        let c = casimir_on_subset(&[1, 2], &basis).unwrap();
        let s = symmetrize(&c, &GramDiagonal::for_basis(&basis)).unwrap();
        assert_eq!(s, s.transpose());
        let ev = sorted_eigenvalues(s);
        let expected = [0.0, 4.0, 4.0, 4.0];
        for (a, b) in ev.iter().zip(expected) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn symmetrize_rejects_non_self_adjoint() {
        let basis = Basis::slice(&wl(&[1, 1]), 0);
        let m = QMatrix::from_rows(vec![vec![q(0), q(1)], vec![q(0), q(0)]]);
        let op = ExactOperator { basis: basis.clone(), matrix: m };
        assert_eq!(symmetrize(&op, &GramDiagonal::for_basis(&basis)), Err(Error::NotSelfAdjoint));
    }

    #[test]
    fn equal_endpoints_give_identity() {
        let a = DMatrix::from_row_slice(2, 2, &[1.0, 0.5, 0.5, 3.0]);
        let p = Pencil::new(a.clone(), a, PencilSettings::default()).unwrap();
        let r = pencil_track(&p).unwrap();
        assert_eq!(r.permutation, vec![0, 1]);
        assert!(r.certified);
    }

    #[test]
    fn crossing_is_reported() {
        let a = DMatrix::from_row_slice(2, 2, &[0.0, 0.0, 0.0, 1.0]);
        let b = DMatrix::from_row_slice(2, 2, &[1.0, 0.0, 0.0, 0.0]);
        let p = Pencil::new(a, b, PencilSettings { grid: 64, ..Default::default() }).unwrap();
        assert!(matches!(pencil_track(&p), Err(Error::PossibleCrossing { .. })));
    }

    #[test]
    fn three_point_edge_reverses() {
        let tree = BracketTree::left_comb(&[1, 2, 3]);
        let root = VertexSet::from_ids(&[1, 2, 3]);
        let e = edge_transport(
            &tree,
            root,
            Direction::ToRight,
            &wl(&[1, 1, 1]),
            1,
            TransportMode::Numeric,
            &Default::default(),
        )
        .unwrap();
        assert_eq!(e.middle_maps(), vec![vec![(0, 2), (2, 0)]]);
        let r = &e.blocks[0].report;
        assert!((r.start_eigenvalues[0] - 0.0).abs() < 1e-9 && (r.start_eigenvalues[1] - 4.0).abs() < 1e-9);
        assert!((r.end_eigenvalues[0] + 4.0).abs() < 1e-9 && (r.end_eigenvalues[1] - 0.0).abs() < 1e-9);
        assert!(e.certified());

        let e = edge_transport(
            &tree,
            root,
            Direction::ToRight,
            &wl(&[2, 2, 2]),
            2,
            TransportMode::Numeric,
            &Default::default(),
        )
        .unwrap();
        assert_eq!(e.middle_maps(), vec![vec![(0, 4), (2, 2), (4, 0)]]);
    }

    #[test]
    fn singleton_interval_is_identity() {
        let tree = BracketTree::left_comb(&[1, 2, 3]);
        let root = VertexSet::from_ids(&[1, 2, 3]);
        let e = edge_transport(
            &tree,
            root,
            Direction::ToRight,
            &wl(&[3, 0, 1]),
            2,
            TransportMode::Numeric,
            &Default::default(),
        )
        .unwrap();
        assert_eq!(e.middle_maps(), vec![vec![(3, 1)]]);
    }

    #[test]
    fn four_point_modes_agree() {
        let tree = BracketTree::left_comb(&[1, 2, 3, 4]);
        let v = VertexSet::from_ids(&[1, 2, 3]);
        for nu in [0, 2] {
            let num = edge_transport(
                &tree,
                v,
                Direction::ToRight,
                &wl(&[1, 1, 1, 1]),
                nu,
                TransportMode::Numeric,
                &Default::default(),
            )
            .unwrap();
            let comb = edge_transport(
                &tree,
                v,
                Direction::ToRight,
                &wl(&[1, 1, 1, 1]),
                nu,
                TransportMode::Combinatorial,
                &Default::default(),
            )
            .unwrap();
            assert_eq!(num.map, comb.map);
        }
    }

    #[test]
    fn rp1_loop_reverses_three_labels() {
        let cache = TransportCache::new(Default::default());
        let tree = BracketTree::left_comb(&[1, 2, 3]);
        for mode in [TransportMode::Combinatorial, TransportMode::Numeric] {
            let m = move_monodromy(&rp1_loop_moves(), &tree, &wl(&[2, 2, 2]), 2, mode, &cache).unwrap();
            assert_eq!(m.permutation(), Some(vec![2, 1, 0]));
        }
    }

    #[test]
    fn involution_loops_are_trivial() {
        let cache = TransportCache::new(Default::default());
        let tree = BracketTree::left_comb(&[1, 2, 3]);
        let w = CactusWord::from_pairs(3, &[(2, 3), (2, 3)]).unwrap();
        let m = loop_monodromy(&w, &tree, &wl(&[2, 2, 2]), 2, TransportMode::Numeric, &cache).unwrap();
        assert_eq!(m.permutation(), Some(vec![0, 1, 2]));
        let m = loop_monodromy(&CactusWord::identity(3), &tree, &wl(&[2, 2, 2]), 2, TransportMode::Numeric, &cache)
            .unwrap();
        assert_eq!(m.permutation(), Some(vec![0, 1, 2]));
    }

    #[test]
    fn singular_gram_is_positive() {
        let sing = singular_basis(&wl(&[2, 2, 2]), 2);
        let s = sing.matrix();
        let g = &(&s.transpose() * &GramDiagonal::for_basis(&sing.basis).matrix()) * &s;
        assert!(contravariant_factor(&g).is_ok());
    }
}
