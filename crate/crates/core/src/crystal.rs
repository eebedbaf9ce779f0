//! sl2 crystals of tensor products of irreducibles.
//!
//! The crystal of the irreducible of highest weight `λ` is the string
//! `0, 1, …, λ`, where `x` stands for `f^(x) v_λ`. An element of a tensor
//! product is a tuple of such coordinates. Kashiwara operators on tensors use
//! the two-factor rule applied left-associatively:
//!
//! ```text
//! ε(b1 ⊗ b2) = ε(b1) + (ε(b2) - φ(b1))+
//! φ(b1 ⊗ b2) = φ(b2) + (φ(b1) - ε(b2))+
//! ```

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize};

use crate::error::{Error, Result};
use crate::hives::{BracketTree, LabelState, VertexSet};
use crate::word::{decompose_generator, BlockSwap, CactusWord, Permutation};

/// Highest weights `λ_1, …, λ_n` of the tensor factors.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct WeightList(Vec<u32>);

impl WeightList {
    pub fn new(weights: Vec<u32>) -> Self {
        WeightList(weights)
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, i: usize) -> Option<u32> {
        self.0.get(i).copied()
    }

    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Dimension of the tensor product.
    pub fn dimension(&self) -> usize {
        self.0.iter().map(|&l| l as usize + 1).product()
    }

    pub fn permuted(&self, perm: &Permutation) -> WeightList {
        WeightList(perm.arrange(&self.0))
    }
}

impl From<Vec<u32>> for WeightList {
    fn from(v: Vec<u32>) -> Self {
        WeightList(v)
    }
}

impl fmt::Display for WeightList {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|l| l.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// An element of a tensor product crystal: `coords[i] ∈ [0, weights[i]]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct CrystalElem {
    weights: WeightList,
    coords: Vec<u32>,
}

impl CrystalElem {
    pub fn new(weights: WeightList, coords: Vec<u32>) -> Result<Self> {
        if weights.len() != coords.len() {
            return Err(Error::ArityMismatch { expected: weights.len(), found: coords.len() });
        }
        for (index, (&weight, &coord)) in weights.0.iter().zip(&coords).enumerate() {
            if coord > weight {
                return Err(Error::CoordinateOutOfRange { index, coord, weight });
            }
        }
        Ok(CrystalElem { weights, coords })
    }

    pub fn from_slices(weights: &[u32], coords: &[u32]) -> Result<Self> {
        Self::new(WeightList(weights.to_vec()), coords.to_vec())
    }

    /// The top element `(0, …, 0)`.
    pub fn top(weights: &WeightList) -> Self {
        CrystalElem { weights: weights.clone(), coords: vec![0; weights.len()] }
    }

    pub fn weights(&self) -> &WeightList {
        &self.weights
    }

    pub fn coords(&self) -> &[u32] {
        &self.coords
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    /// `Σλ_i - 2Σx_i`.
    pub fn weight(&self) -> i64 {
        self.weights.total() as i64 - 2 * self.coords.iter().map(|&x| x as i64).sum::<i64>()
    }

    pub fn eps(&self) -> u32 {
        eps_phi(&self.weights.0, &self.coords).0
    }

    pub fn phi(&self) -> u32 {
        eps_phi(&self.weights.0, &self.coords).1
    }

    pub fn e_tilde(&self) -> Option<CrystalElem> {
        let k = raise_index(&self.weights.0, &self.coords)?;
        let mut out = self.clone();
        out.coords[k] -= 1;
        Some(out)
    }

    pub fn f_tilde(&self) -> Option<CrystalElem> {
        let k = lower_index(&self.weights.0, &self.coords)?;
        let mut out = self.clone();
        out.coords[k] += 1;
        Some(out)
    }

    pub fn is_highest(&self) -> bool {
        raise_index(&self.weights.0, &self.coords).is_none()
    }

    /// Restriction to the factors `range` (0-based, half open).
    pub fn sub(&self, range: std::ops::Range<usize>) -> CrystalElem {
        CrystalElem { weights: WeightList(self.weights.0[range.clone()].to_vec()), coords: self.coords[range].to_vec() }
    }

    /// Concatenation `self ⊗ other`.
    pub fn tensor(&self, other: &CrystalElem) -> CrystalElem {
        let mut weights = self.weights.0.clone();
        weights.extend_from_slice(&other.weights.0);
        let mut coords = self.coords.clone();
        coords.extend_from_slice(&other.coords);
        CrystalElem { weights: WeightList(weights), coords }
    }

    /// Every element of the tensor product, in lexicographic order.
    pub fn all(weights: &WeightList) -> Vec<CrystalElem> {
        let mut out = vec![Vec::new()];
        for &l in &weights.0 {
            out = out
                .into_iter()
                .flat_map(|prefix: Vec<u32>| {
                    (0..=l).map(move |x| {
                        let mut v = prefix.clone();
                        v.push(x);
                        v
                    })
                })
                .collect();
        }
        out.into_iter().map(|coords| CrystalElem { weights: weights.clone(), coords }).collect()
    }
}

impl fmt::Display for CrystalElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(|x| x.to_string()).collect();
        write!(f, "({}) in {}", parts.join(","), self.weights)
    }
}

impl<'de> Deserialize<'de> for CrystalElem {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Repr {
            weights: WeightList,
            coords: Vec<u32>,
        }
        let r = Repr::deserialize(deserializer)?;
        CrystalElem::new(r.weights, r.coords).map_err(serde::de::Error::custom)
    }
}

fn combine(acc: (u32, u32), next: (u32, u32)) -> (u32, u32) {
    let (e1, p1) = acc;
    let (e2, p2) = next;
    (e1 + e2.saturating_sub(p1), p2 + p1.saturating_sub(e2))
}

fn eps_phi(weights: &[u32], coords: &[u32]) -> (u32, u32) {
    weights.iter().zip(coords).map(|(&l, &x)| (x, l - x)).fold((0, 0), combine)
}

// (ε, φ) of every prefix coords[..=k].
fn prefix_strings(weights: &[u32], coords: &[u32]) -> Vec<(u32, u32)> {
    weights
        .iter()
        .zip(coords)
        .scan((0, 0), |acc, (&l, &x)| {
            *acc = combine(*acc, (x, l - x));
            Some(*acc)
        })
        .collect()
}

// Factor on which ẽ acts: b = P ⊗ x_k acts on P iff φ(P) >= ε(x_k).
fn raise_index(weights: &[u32], coords: &[u32]) -> Option<usize> {
    if coords.is_empty() {
        return None;
    }
    let prefix = prefix_strings(weights, coords);
    let mut k = coords.len() - 1;
    while k > 0 && prefix[k - 1].1 >= coords[k] {
        k -= 1;
    }
    (coords[k] > 0).then_some(k)
}

// Factor on which f̃ acts: b = P ⊗ x_k acts on P iff φ(P) > ε(x_k).
fn lower_index(weights: &[u32], coords: &[u32]) -> Option<usize> {
    if coords.is_empty() {
        return None;
    }
    let prefix = prefix_strings(weights, coords);
    let mut k = coords.len() - 1;
    while k > 0 && prefix[k - 1].1 > coords[k] {
        k -= 1;
    }
    (coords[k] < weights[k]).then_some(k)
}

/// Highest elements of a given weight.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HighestSet {
    pub weights: WeightList,
    pub nu: u32,
    pub elements: Vec<CrystalElem>,
    /// `Σλ_i - ν` is odd, so the slice is empty for parity reasons.
    pub parity_mismatch: bool,
}

impl HighestSet {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}

/// Elements with `Σx_i = depth`, in lexicographic order.
pub fn weight_slice(weights: &WeightList, depth: u32) -> Vec<CrystalElem> {
    fn rec(w: &[u32], depth: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        match w.split_first() {
            None => {
                if depth == 0 {
                    out.push(prefix.clone());
                }
            }
            Some((&l, rest)) => {
                let room: u32 = rest.iter().sum();
                for x in depth.saturating_sub(room)..=l.min(depth) {
                    prefix.push(x);
                    rec(rest, depth - x, prefix, out);
                    prefix.pop();
                }
            }
        }
    }
    let mut out = Vec::new();
    rec(&weights.0, depth, &mut Vec::new(), &mut out);
    out.into_iter().map(|coords| CrystalElem { weights: weights.clone(), coords }).collect()
}

/// All `b` with `ẽ b = 0` and weight `ν`, by scanning the weight slice.
pub fn highest_elements(weights: &WeightList, nu: u32) -> HighestSet {
    let total = weights.total();
    let parity_mismatch = (total + nu) % 2 == 1;
    let elements = if parity_mismatch || nu > total {
        Vec::new()
    } else {
        weight_slice(weights, (total - nu) / 2).into_iter().filter(|b| b.is_highest()).collect()
    };
    HighestSet { weights: weights.clone(), nu, elements, parity_mismatch }
}

/// String reversal: the element at the same distance from the bottom of its
/// string as `b` is from the top.
pub fn schuetzenberger(b: &CrystalElem) -> CrystalElem {
    let (r, s) = eps_phi(&b.weights.0, &b.coords);
    let mut out = b.clone();
    if s > r {
        for _ in 0..s - r {
            out = out.f_tilde().expect("string has room below");
        }
    } else {
        for _ in 0..r - s {
            out = out.e_tilde().expect("string has room above");
        }
    }
    out
}

/// The crystal commutor `B ⊗ C → C ⊗ B` with `B` the first `split` factors:
/// `σ(b ⊗ c) = ξ(ξ(c) ⊗ ξ(b))`.
pub fn commutor(b: &CrystalElem, split: usize) -> Result<CrystalElem> {
    let n = b.len();
    if split == 0 || split >= n {
        return Err(Error::InvalidSplit { split, len: n });
    }
    let left = schuetzenberger(&b.sub(0..split));
    let right = schuetzenberger(&b.sub(split..n));
    Ok(schuetzenberger(&right.tensor(&left)))
}

/// Output of the printed piecewise-linear formula for the two-factor
/// commutor. May leave the crystal; `in_range` says whether it did not.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ClosedFormImage {
    pub x: i64,
    pub y: i64,
    pub in_range: bool,
}

/// `(y + (λ1-x-y)+ - (λ2-x-y)+, x + (λ2-x-y)+ - (λ1-x-y)+)`.
///
/// Kept for comparison with [`commutor`], which it does not agree with.
pub fn closed_form_commutor(x: u32, y: u32, l1: u32, l2: u32) -> Result<ClosedFormImage> {
    if x > l1 {
        return Err(Error::CoordinateOutOfRange { index: 0, coord: x, weight: l1 });
    }
    if y > l2 {
        return Err(Error::CoordinateOutOfRange { index: 1, coord: y, weight: l2 });
    }
    let (x, y, l1, l2) = (x as i64, y as i64, l1 as i64, l2 as i64);
    let a = (l1 - x - y).max(0);
    let b = (l2 - x - y).max(0);
    let (nx, ny) = (y + a - b, x + b - a);
    // the image lives in B_λ2 ⊗ B_λ1
    let in_range = (0..=l2).contains(&nx) && (0..=l1).contains(&ny);
    Ok(ClosedFormImage { x: nx, y: ny, in_range })
}

/// Which two-factor commutor drives a block swap.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CommutorKind {
    /// [`commutor`] on the two blocks.
    #[default]
    Schuetzenberger,
    /// The block swap is unrolled into adjacent transpositions, each given by
    /// [`closed_form_commutor`]. Fails when an image leaves the crystal.
    ClosedForm,
}

/// Result of the cactus action on a crystal element.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CactusImage {
    pub elem: CrystalElem,
    /// `arrangement.images()[i]` is the original factor now at position `i+1`.
    pub arrangement: Permutation,
}

pub fn block_swap_act(b: &CrystalElem, swap: &BlockSwap, kind: CommutorKind) -> Result<CrystalElem> {
    let n = b.len();
    if swap.start == 0 || swap.end > n || swap.mid < swap.start || swap.mid >= swap.end {
        return Err(Error::ArityMismatch { expected: n, found: swap.end });
    }
    let (lo, hi) = (swap.start - 1, swap.end);
    let middle = match kind {
        CommutorKind::Schuetzenberger => commutor(&b.sub(lo..hi), swap.left_len())?,
        CommutorKind::ClosedForm => closed_form_block_swap(&b.sub(lo..hi), swap.left_len())?,
    };
    let mut weights = b.weights.0.clone();
    let mut coords = b.coords.clone();
    weights[lo..hi].copy_from_slice(&middle.weights.0);
    coords[lo..hi].copy_from_slice(&middle.coords);
    Ok(CrystalElem { weights: WeightList(weights), coords })
}

// Moves the last factor of the left block across the right block, one
// adjacent closed-form swap at a time, until the blocks are exchanged.
fn closed_form_block_swap(b: &CrystalElem, split: usize) -> Result<CrystalElem> {
    let n = b.len();
    let mut w = b.weights.0.clone();
    let mut x = b.coords.clone();
    for i in (0..split).rev() {
        for j in i..i + (n - split) {
            let img = closed_form_commutor(x[j], x[j + 1], w[j], w[j + 1])?;
            if !img.in_range {
                return Err(Error::CoordinateOutOfRange {
                    index: j,
                    coord: img.x.max(img.y).max(0) as u32,
                    weight: w[j + 1],
                });
            }
            w.swap(j, j + 1);
            x[j] = img.x as u32;
            x[j + 1] = img.y as u32;
        }
    }
    CrystalElem::new(WeightList(w), x)
}

/// The cactus action on a tensor crystal; the rightmost generator acts first.
pub fn cactus_act(word: &CactusWord, b: &CrystalElem) -> Result<CactusImage> {
    cactus_act_with(word, b, CommutorKind::Schuetzenberger)
}

pub fn cactus_act_with(word: &CactusWord, b: &CrystalElem, kind: CommutorKind) -> Result<CactusImage> {
    let n = b.len();
    if word.arity() != n {
        return Err(Error::ArityMismatch { expected: n, found: word.arity() });
    }
    let mut elem = b.clone();
    let mut arrangement = Permutation::identity(n);
    for g in word.gens().iter().rev() {
        for swap in decompose_generator(g).iter().rev() {
            elem = block_swap_act(&elem, swap, kind)?;
            arrangement = arrangement.followed_by(&swap.permutation(n));
        }
    }
    Ok(CactusImage { elem, arrangement })
}

/// Labels of a highest element on a bracketing.
///
/// The factors of `b` are matched with the leaves of `tree` in planar order.
/// Every inner vertex gets the highest weight `ε + φ` of the string through
/// the sub-tuple below it; the root gets `ν = weight(b)`.
pub fn bracketing_label(b: &CrystalElem, tree: &BracketTree) -> Result<LabelState> {
    let n = b.len();
    tree.validate(n)?;
    if !b.is_highest() {
        return Err(Error::NotHighest);
    }
    let order = tree.leaves();
    let mut by_id = vec![0; n];
    for (pos, &id) in order.iter().enumerate() {
        by_id[id - 1] = b.weights.0[pos];
    }
    let mut labels = std::collections::BTreeMap::new();
    for v in tree.inner_vertices() {
        let positions: Vec<usize> =
            order.iter().enumerate().filter(|(_, id)| v.contains(VertexSet::singleton(**id))).map(|(p, _)| p).collect();
        let lo = positions[0];
        let hi = positions[positions.len() - 1] + 1;
        let (e, p) = eps_phi(&b.weights.0[lo..hi], &b.coords[lo..hi]);
        labels.insert(v, e + p);
    }
    LabelState::new(WeightList(by_id), tree.clone(), labels, b.weight() as u32)
}
