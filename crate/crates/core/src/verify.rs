//! Cross-checks of the three cactus actions on Bethe labels: the crystal
//! action read through bracketing labels, the hive moves, and numeric
//! spectral transport.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::crystal::{
    bracketing_label, cactus_act_with, closed_form_commutor, commutor, highest_elements, CommutorKind, CrystalElem,
    WeightList,
};
use crate::error::{Error, Result};
use crate::hives::{cactus_act_labels, moves_to_shape, occurrence_set, realize_word, BracketTree, LabelState};
use crate::transport::{move_monodromy, PencilSettings, TransportCache, TransportMode};
use crate::word::{relation_instances, CactusGenerator, CactusWord};

pub const SCHEMA: u32 = 1;

/// Which actions to compute.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    Crystal,
    Hives,
    SpectralNumeric,
    /// Crystal and hives, without numerics.
    Combinatorial,
    All,
}

impl Mode {
    pub fn parse(s: &str) -> Option<Mode> {
        match s {
            "crystal" => Some(Mode::Crystal),
            "hives" => Some(Mode::Hives),
            "spectral-numeric" | "spectral" | "numeric" => Some(Mode::SpectralNumeric),
            "combinatorial" => Some(Mode::Combinatorial),
            "all" => Some(Mode::All),
            _ => None,
        }
    }

    fn crystal(self) -> bool {
        matches!(self, Mode::Crystal | Mode::Combinatorial | Mode::All)
    }

    fn hives(self) -> bool {
        matches!(self, Mode::Hives | Mode::Combinatorial | Mode::All)
    }

    fn spectral(self) -> bool {
        matches!(self, Mode::SpectralNumeric | Mode::All)
    }
}

/// Parameters of a verification run.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExperimentConfig {
    pub weights: WeightList,
    /// `None` runs every admissible top weight.
    pub nu: Option<u32>,
    /// `None` runs every generator `s_{p,q}` separately.
    pub word: Option<CactusWord>,
    /// Starting bracketing; defaults to the left comb.
    pub tree: Option<BracketTree>,
    pub mode: Mode,
    pub settings: PencilSettings,
    /// Use the printed closed-form two-factor commutor on the crystal side.
    pub closed_form_commutor: bool,
}

impl ExperimentConfig {
    pub fn new(weights: WeightList) -> Self {
        ExperimentConfig {
            weights,
            nu: None,
            word: None,
            tree: None,
            mode: Mode::All,
            settings: PencilSettings::default(),
            closed_form_commutor: false,
        }
    }

    pub fn n(&self) -> usize {
        self.weights.len()
    }

    pub fn tree(&self) -> BracketTree {
        self.tree.clone().unwrap_or_else(|| BracketTree::left_comb(&(1..=self.n()).collect::<Vec<_>>()))
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.n();
        if n == 0 {
            return Err(Error::Parse("at least one weight is required".into()));
        }
        if let Some(w) = &self.word {
            if w.arity() != n {
                return Err(Error::ArityMismatch { expected: n, found: w.arity() });
            }
        }
        self.tree().validate(n)
    }

    fn nus(&self) -> Vec<u32> {
        match self.nu {
            Some(nu) => vec![nu],
            None => {
                let total = self.weights.total();
                (0..=total).filter(|nu| (total - nu).is_multiple_of(2)).collect()
            }
        }
    }

    fn words(&self) -> Vec<CactusWord> {
        match &self.word {
            Some(w) => vec![w.clone()],
            None => CactusGenerator::all(self.n()).into_iter().map(CactusWord::single).collect(),
        }
    }

    fn commutor_kind(&self) -> CommutorKind {
        if self.closed_form_commutor {
            CommutorKind::ClosedForm
        } else {
            CommutorKind::Schuetzenberger
        }
    }
}

/// One entry of a label map.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LabelPair {
    pub from: LabelState,
    pub to: LabelState,
}

/// A label map together with the operations that produced it.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ModeResult {
    pub claim: String,
    pub map: Vec<LabelPair>,
    pub error: Option<String>,
    /// Only present for numeric transport.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub min_gap: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certified: Option<bool>,
    #[serde(skip)]
    pub numeric_failure: bool,
}

impl ModeResult {
    fn ok(claim: &str, map: Vec<LabelPair>) -> Self {
        ModeResult { claim: claim.into(), map, error: None, min_gap: None, certified: None, numeric_failure: false }
    }

    fn failed(claim: &str, e: &Error) -> Self {
        ModeResult {
            claim: claim.into(),
            map: Vec::new(),
            error: Some(e.to_string()),
            min_gap: None,
            certified: None,
            numeric_failure: matches!(e, Error::PossibleCrossing { .. }),
        }
    }

    fn image_of(&self, s: &LabelState) -> Option<&LabelState> {
        self.map.iter().find(|p| &p.from == s).map(|p| &p.to)
    }
}

/// A state on which the requested modes disagree.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Diff {
    pub state: LabelState,
    pub images: BTreeMap<String, Option<LabelState>>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InstanceReport {
    pub nu: u32,
    pub word: CactusWord,
    pub labels_checked: usize,
    pub results: BTreeMap<String, ModeResult>,
    pub agreement: bool,
    pub certified: bool,
    pub diffs: Vec<Diff>,
}

/// A two-factor input where the printed closed form and the commutor differ.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CommutorDiscrepancy {
    pub weights: [u32; 2],
    pub coords: [u32; 2],
    pub commutor: [u32; 2],
    pub closed_form: [i64; 2],
    pub closed_form_in_range: bool,
}

/// Every `(x, y) ∈ [0,λ1]×[0,λ2]` on which the two maps differ.
pub fn commutor_discrepancies(l1: u32, l2: u32) -> Vec<CommutorDiscrepancy> {
    let mut out = Vec::new();
    for x in 0..=l1 {
        for y in 0..=l2 {
            let b = CrystalElem::from_slices(&[l1, l2], &[x, y]).expect("in range");
            let ours = commutor(&b, 1).expect("split 1 of 2");
            let theirs = closed_form_commutor(x, y, l1, l2).expect("in range");
            let ours = [ours.coords()[0], ours.coords()[1]];
            if theirs.x != ours[0] as i64 || theirs.y != ours[1] as i64 {
                out.push(CommutorDiscrepancy {
                    weights: [l1, l2],
                    coords: [x, y],
                    commutor: ours,
                    closed_form: [theirs.x, theirs.y],
                    closed_form_in_range: theirs.in_range,
                });
            }
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Summary {
    pub instances: usize,
    pub agreements: usize,
    pub disagreements: usize,
    pub uncertified: usize,
}

/// Result of `verify etingof`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub schema: u32,
    pub command: String,
    pub config: ExperimentConfig,
    pub instances: Vec<InstanceReport>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub commutor_discrepancies: Vec<CommutorDiscrepancy>,
    pub summary: Summary,
    pub exit_code: i32,
}

impl VerificationReport {
    pub fn agreement(&self) -> bool {
        self.instances.iter().all(|i| i.agreement)
    }
}

const CLAIM_CRYSTAL: &str = "crystal-core::cactus_act + crystal-core::bracketing_label";
const CLAIM_CRYSTAL_CLOSED: &str = "crystal-core::closed_form_commutor + crystal-core::bracketing_label";
const CLAIM_HIVES: &str = "hive-labels::cactus_act_labels";
const CLAIM_SPECTRAL: &str = "spectral-transport::loop_monodromy";

fn crystal_map(
    word: &CactusWord,
    tree: &BracketTree,
    weights: &WeightList,
    nu: u32,
    kind: CommutorKind,
) -> Result<Vec<LabelPair>> {
    let planar = WeightList::new(tree.leaves().iter().map(|&i| weights.get(i - 1).expect("leaf id")).collect());
    let (_, image_tree) = realize_word(word, tree)?;
    let mut out = Vec::new();
    for b in highest_elements(&planar, nu).elements {
        let from = bracketing_label(&b, tree)?;
        let img = cactus_act_with(word, &b, kind)?;
        let to = bracketing_label(&img.elem, &image_tree)?;
        out.push(LabelPair { from, to });
    }
    out.sort_by(|a, b| a.from.cmp(&b.from));
    Ok(out)
}

fn hives_map(word: &CactusWord, tree: &BracketTree, weights: &WeightList, nu: u32) -> Result<Vec<LabelPair>> {
    occurrence_set(tree, weights, nu)?
        .into_iter()
        .map(|s| Ok(LabelPair { to: cactus_act_labels(word, &s)?, from: s }))
        .collect()
}

fn spectral_map(
    word: &CactusWord,
    tree: &BracketTree,
    weights: &WeightList,
    nu: u32,
    cache: &TransportCache,
) -> Result<(Vec<LabelPair>, Option<f64>, bool)> {
    let (moves, _) = realize_word(word, tree)?;
    let m = move_monodromy(&moves, tree, weights, nu, TransportMode::Numeric, cache)?;
    let min_gap = m.reports.iter().filter_map(|r| r.min_gap).reduce(f64::min);
    let map = m.map.into_iter().map(|(from, to)| LabelPair { from, to }).collect();
    Ok((map, min_gap, m.reports.iter().all(|r| r.certified)))
}

fn compare(results: &BTreeMap<String, ModeResult>, states: &[LabelState]) -> Vec<Diff> {
    let mut diffs = Vec::new();
    for s in states {
        let images: BTreeMap<String, Option<LabelState>> =
            results.iter().map(|(k, r)| (k.clone(), r.image_of(s).cloned())).collect();
        let mut values = images.values();
        let first = values.next().cloned().flatten();
        if first.is_none() || values.any(|v| v.as_ref() != first.as_ref()) {
            diffs.push(Diff { state: s.clone(), images });
        }
    }
    diffs
}

/// Runs one `(ν, word)` instance in every requested mode.
pub fn run_instance(cfg: &ExperimentConfig, word: &CactusWord, nu: u32, cache: &TransportCache) -> InstanceReport {
    let tree = cfg.tree();
    let weights = &cfg.weights;
    let mut results = BTreeMap::new();
    if cfg.mode.crystal() {
        let (claim, kind) = if cfg.closed_form_commutor {
            (CLAIM_CRYSTAL_CLOSED, CommutorKind::ClosedForm)
        } else {
            (CLAIM_CRYSTAL, cfg.commutor_kind())
        };
        let r = match crystal_map(word, &tree, weights, nu, kind) {
            Ok(m) => ModeResult::ok(claim, m),
            Err(e) => ModeResult::failed(claim, &e),
        };
        results.insert("crystal".to_string(), r);
    }
    if cfg.mode.hives() {
        let r = match hives_map(word, &tree, weights, nu) {
            Ok(m) => ModeResult::ok(CLAIM_HIVES, m),
            Err(e) => ModeResult::failed(CLAIM_HIVES, &e),
        };
        results.insert("hives".to_string(), r);
    }
    if cfg.mode.spectral() {
        let r = match spectral_map(word, &tree, weights, nu, cache) {
            Ok((m, gap, certified)) => {
                let mut r = ModeResult::ok(CLAIM_SPECTRAL, m);
                r.min_gap = gap;
                r.certified = Some(certified);
                r.numeric_failure = !certified;
                r
            }
            Err(e) => ModeResult::failed(CLAIM_SPECTRAL, &e),
        };
        results.insert("spectral-numeric".to_string(), r);
    }
    let states = occurrence_set(&tree, weights, nu).unwrap_or_default();
    let semantic_error = results.values().any(|r| r.error.is_some() && !r.numeric_failure);
    let numeric_failure = results.values().any(|r| r.numeric_failure);
    let diffs = if semantic_error || numeric_failure {
        compare_available(&results, &states)
    } else {
        compare(&results, &states)
    };
    let agreement = !semantic_error && diffs.is_empty();
    InstanceReport {
        nu,
        word: word.clone(),
        labels_checked: states.len(),
        results,
        agreement,
        certified: !numeric_failure,
        diffs,
    }
}

// Like `compare`, but modes that failed numerically are left out.
fn compare_available(results: &BTreeMap<String, ModeResult>, states: &[LabelState]) -> Vec<Diff> {
    let available: BTreeMap<String, ModeResult> =
        results.iter().filter(|(_, r)| !r.numeric_failure).map(|(k, r)| (k.clone(), r.clone())).collect();
    if available.is_empty() {
        return Vec::new();
    }
    compare(&available, states)
}

pub fn exit_code_for(instances: &[InstanceReport]) -> i32 {
    if instances.iter().any(|i| !i.agreement) {
        3
    } else if instances.iter().any(|i| !i.certified) {
        2
    } else {
        0
    }
}

fn summarize(instances: &[InstanceReport]) -> Summary {
    Summary {
        instances: instances.len(),
        agreements: instances.iter().filter(|i| i.agreement).count(),
        disagreements: instances.iter().filter(|i| !i.agreement).count(),
        uncertified: instances.iter().filter(|i| !i.certified).count(),
    }
}

/// For every word (or every generator) and every admissible `ν`, compares
/// the requested actions on all labels. Errors inside an instance are
/// recorded and the run continues.
pub fn run_verification(cfg: &ExperimentConfig) -> Result<VerificationReport> {
    cfg.validate()?;
    let cache = TransportCache::new(cfg.settings);
    let jobs: Vec<(CactusWord, u32)> =
        cfg.words().into_iter().flat_map(|w| cfg.nus().into_iter().map(move |nu| (w.clone(), nu))).collect();
    let instances: Vec<InstanceReport> = jobs.par_iter().map(|(w, nu)| run_instance(cfg, w, *nu, &cache)).collect();
    let mut discrepancies = Vec::new();
    if cfg.closed_form_commutor {
        let w = cfg.weights.as_slice();
        let mut pairs: Vec<(u32, u32)> = w.iter().flat_map(|&a| w.iter().map(move |&b| (a, b))).collect();
        pairs.sort_unstable();
        pairs.dedup();
        for (a, b) in pairs {
            discrepancies.extend(commutor_discrepancies(a, b));
        }
    }
    let exit_code = exit_code_for(&instances);
    Ok(VerificationReport {
        schema: SCHEMA,
        command: "verify etingof".into(),
        config: cfg.clone(),
        summary: summarize(&instances),
        instances,
        commutor_discrepancies: discrepancies,
        exit_code,
    })
}

/// One relation pair checked at one `ν`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RelationInstance {
    pub lhs: CactusWord,
    pub rhs: CactusWord,
    pub nu: u32,
    /// Mode name to "both sides act identically".
    pub holds: BTreeMap<String, bool>,
    pub claims: BTreeMap<String, String>,
    pub errors: Vec<String>,
    pub certified: bool,
    pub agreement: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RelationsReport {
    pub schema: u32,
    pub command: String,
    pub config: ExperimentConfig,
    pub relations: usize,
    pub instances: Vec<RelationInstance>,
    pub summary: Summary,
    pub exit_code: i32,
}

fn crystal_images(word: &CactusWord, weights: &WeightList, nu: u32, kind: CommutorKind) -> Result<Vec<CrystalElem>> {
    let total = weights.total();
    let depth = (total - nu) / 2;
    crate::crystal::weight_slice(weights, depth)
        .iter()
        .map(|b| cactus_act_with(word, b, kind).map(|i| i.elem))
        .collect()
}

fn normalized_label_images(
    word: &CactusWord,
    tree: &BracketTree,
    weights: &WeightList,
    nu: u32,
    mode: TransportMode,
    cache: &TransportCache,
) -> Result<Vec<LabelState>> {
    let (mut moves, end) = realize_word(word, tree)?;
    let target = BracketTree::left_comb(&end.leaves());
    moves.extend(moves_to_shape(&end, &target)?);
    let m = move_monodromy(&moves, tree, weights, nu, mode, cache)?;
    Ok(m.map.into_iter().map(|(_, t)| t).collect())
}

/// Checks every relation of `J_n` on crystal elements of each weight, on
/// label states, and on numerically transported labels.
pub fn run_relations(cfg: &ExperimentConfig) -> Result<RelationsReport> {
    cfg.validate()?;
    let n = cfg.n();
    let tree = cfg.tree();
    let cache = TransportCache::new(cfg.settings);
    let relations = relation_instances(n);
    let total = cfg.weights.total();
    // crystal weight slices are indexed by weight, not only highest weight
    let nus: Vec<u32> = match cfg.nu {
        Some(nu) => vec![nu],
        None => (0..=total).filter(|nu| (total - nu).is_multiple_of(2)).collect(),
    };
    let jobs: Vec<(usize, u32)> = (0..relations.len()).flat_map(|r| nus.iter().map(move |&nu| (r, nu))).collect();
    let instances: Vec<RelationInstance> = jobs
        .par_iter()
        .map(|&(r, nu)| {
            let (lhs, rhs) = &relations[r];
            let mut holds = BTreeMap::new();
            let mut claims = BTreeMap::new();
            let mut errors = Vec::new();
            let mut certified = true;
            if cfg.mode.crystal() {
                let kind = cfg.commutor_kind();
                let claim = match kind {
                    CommutorKind::Schuetzenberger => "crystal-core::cactus_act",
                    CommutorKind::ClosedForm => "crystal-core::closed_form_commutor",
                };
                claims.insert("crystal".into(), claim.into());
                match (crystal_images(lhs, &cfg.weights, nu, kind), crystal_images(rhs, &cfg.weights, nu, kind)) {
                    (Ok(a), Ok(b)) => {
                        holds.insert("crystal".into(), a == b);
                    }
                    (Err(e), _) | (_, Err(e)) => {
                        holds.insert("crystal".into(), false);
                        errors.push(format!("crystal: {e}"));
                    }
                }
            }
            let label_modes = [
                (cfg.mode.hives(), "hives", TransportMode::Combinatorial, "hive-labels::apply_move"),
                (cfg.mode.spectral(), "spectral-numeric", TransportMode::Numeric, "spectral-transport::loop_monodromy"),
            ];
            for (on, name, mode, claim) in label_modes {
                if !on {
                    continue;
                }
                claims.insert(name.into(), claim.into());
                let a = normalized_label_images(lhs, &tree, &cfg.weights, nu, mode, &cache);
                let b = normalized_label_images(rhs, &tree, &cfg.weights, nu, mode, &cache);
                match (a, b) {
                    (Ok(a), Ok(b)) => {
                        holds.insert(name.into(), a == b);
                    }
                    (Err(e), _) | (_, Err(e)) => {
                        if matches!(e, Error::PossibleCrossing { .. }) {
                            certified = false;
                        } else {
                            holds.insert(name.into(), false);
                        }
                        errors.push(format!("{name}: {e}"));
                    }
                }
            }
            let agreement = holds.values().all(|&h| h);
            RelationInstance { lhs: lhs.clone(), rhs: rhs.clone(), nu, holds, claims, errors, certified, agreement }
        })
        .collect();
    let summary = Summary {
        instances: instances.len(),
        agreements: instances.iter().filter(|i| i.agreement).count(),
        disagreements: instances.iter().filter(|i| !i.agreement).count(),
        uncertified: instances.iter().filter(|i| !i.certified).count(),
    };
    let exit_code = if summary.disagreements > 0 {
        3
    } else if summary.uncertified > 0 {
        2
    } else {
        0
    };
    Ok(RelationsReport {
        schema: SCHEMA,
        command: "verify relations".into(),
        config: cfg.clone(),
        relations: relations.len(),
        instances,
        summary,
        exit_code,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn wl(v: &[u32]) -> WeightList {
        WeightList::new(v.to_vec())
    }

    #[test]
    fn s13_on_three_doublets() {
        let mut cfg = ExperimentConfig::new(wl(&[1, 1, 1]));
        cfg.word = Some(CactusWord::from_pairs(3, &[(1, 3)]).unwrap());
        cfg.nu = Some(1);
        let r = run_verification(&cfg).unwrap();
        assert_eq!(r.instances.len(), 1);
        assert!(r.instances[0].agreement);
        assert_eq!(r.instances[0].labels_checked, 2);
        assert_eq!(r.exit_code, 0);
    }

    #[test]
    fn empty_word_agrees() {
        let mut cfg = ExperimentConfig::new(wl(&[1, 2, 1]));
        cfg.word = Some(CactusWord::identity(3));
        let r = run_verification(&cfg).unwrap();
        assert!(r.agreement());
        assert_eq!(r.exit_code, 0);
    }

    #[test]
    fn relation_sweep_three_triplets() {
        let cfg = ExperimentConfig::new(wl(&[2, 2, 2]));
        let r = run_relations(&cfg).unwrap();
        assert_eq!(r.exit_code, 0);
        assert!(r.instances.iter().all(|i| i.agreement));
    }

    #[test]
    fn closed_form_diagnostic_disagrees() {
        let mut cfg = ExperimentConfig::new(wl(&[1, 1]));
        cfg.closed_form_commutor = true;
        cfg.mode = Mode::All;
        let r = run_verification(&cfg).unwrap();
        assert_eq!(r.exit_code, 3);
        assert!(!r.commutor_discrepancies.is_empty());
        assert!(r.instances.iter().any(|i| !i.diffs.is_empty()));
    }

    #[test]
    fn discrepancy_on_doublet_midpoint() {
        let d = commutor_discrepancies(1, 1);
        assert!(d.iter().any(|x| x.coords == [1, 0] && x.commutor == [1, 0] && x.closed_form == [0, 1]));
    }
}
