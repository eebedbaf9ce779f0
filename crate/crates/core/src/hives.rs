//! The sl2 hive calculus: Clebsch–Gordan intervals, occurrence sets of
//! bracketed tensor products, and the moves between bracketings.
//!
//! A bracketing is a [`BracketTree`] whose leaves are factor ids. A
//! [`LabelState`] assigns to every inner vertex the highest weight `μ` of the
//! irreducible summand it selects. Two kinds of moves relate bracketings:
//!
//! * a flip swaps the two children of a vertex and keeps every label;
//! * a rotation `((A B) C) ↔ (A (B C))` replaces the middle label by the
//!   associator `ψ(μ) = max(λ_A + λ_C, λ_B + ν) - μ`, where `λ_A, λ_B, λ_C`
//!   are the labels (or leaf weights) of the three blocks and `ν` is the
//!   label at the rotation vertex.
//!
//! The formula for `ψ` is symmetric in `A` and `C`, so the same expression
//! undoes a rotation in either direction.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::crystal::WeightList;
use crate::error::{Error, Result};
use crate::word::{decompose_generator, BlockSwap, CactusWord};

/// Set of leaf ids (1-based) below a vertex, as a bitmask.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSet(u32);

impl VertexSet {
    pub fn singleton(id: usize) -> Self {
        assert!((1..=32).contains(&id), "leaf id {id} out of range");
        VertexSet(1 << (id - 1))
    }

    pub fn from_ids(ids: &[usize]) -> Self {
        ids.iter().fold(VertexSet(0), |acc, &i| acc.union(VertexSet::singleton(i)))
    }

    pub fn union(self, other: VertexSet) -> Self {
        VertexSet(self.0 | other.0)
    }

    pub fn contains(self, other: VertexSet) -> bool {
        self.0 & other.0 == other.0
    }

    pub fn is_disjoint(self, other: VertexSet) -> bool {
        self.0 & other.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn ids(self) -> Vec<usize> {
        (0..32).filter(|b| self.0 >> b & 1 == 1).map(|b| b + 1).collect()
    }

    pub fn bits(self) -> u32 {
        self.0
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ids: Vec<String> = self.ids().iter().map(|i| i.to_string()).collect();
        write!(f, "{{{}}}", ids.join(","))
    }
}

/// Rooted binary tree with ordered leaves. Leaves carry factor ids.
///
/// Serializes as nested arrays of leaf ids, e.g. `[[1,2],3]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(untagged)]
pub enum BracketTree {
    Leaf(usize),
    Node(Box<BracketTree>, Box<BracketTree>),
}

impl BracketTree {
    pub fn node(left: BracketTree, right: BracketTree) -> Self {
        BracketTree::Node(Box::new(left), Box::new(right))
    }

    /// `((a b) c) ...`
    pub fn left_comb(order: &[usize]) -> Self {
        let mut it = order.iter();
        let first = BracketTree::Leaf(*it.next().expect("empty leaf order"));
        it.fold(first, |acc, &i| BracketTree::node(acc, BracketTree::Leaf(i)))
    }

    /// `... (a (b c))`
    pub fn right_comb(order: &[usize]) -> Self {
        let mut it = order.iter().rev();
        let last = BracketTree::Leaf(*it.next().expect("empty leaf order"));
        it.fold(last, |acc, &i| BracketTree::node(BracketTree::Leaf(i), acc))
    }

    fn left_comb_of(units: Vec<BracketTree>) -> Self {
        let mut it = units.into_iter();
        let first = it.next().expect("empty unit list");
        it.fold(first, BracketTree::node)
    }

    /// Every planar binary tree with the given leaf order.
    pub fn all_planar(order: &[usize]) -> Vec<BracketTree> {
        if order.len() == 1 {
            return vec![BracketTree::Leaf(order[0])];
        }
        let mut out = Vec::new();
        for k in 1..order.len() {
            let lefts = Self::all_planar(&order[..k]);
            let rights = Self::all_planar(&order[k..]);
            for l in &lefts {
                for r in &rights {
                    out.push(BracketTree::node(l.clone(), r.clone()));
                }
            }
        }
        out
    }

    /// One representative per bracketing of `n` factors up to flips,
    /// `(2n-3)!!` in total. Each representative has the child containing the
    /// smallest id on the left.
    pub fn all_unordered(n: usize) -> Vec<BracketTree> {
        fn canonical(t: &BracketTree) -> BracketTree {
            match t {
                BracketTree::Leaf(i) => BracketTree::Leaf(*i),
                BracketTree::Node(l, r) => {
                    let (l, r) = (canonical(l), canonical(r));
                    if l.min_leaf() < r.min_leaf() {
                        BracketTree::node(l, r)
                    } else {
                        BracketTree::node(r, l)
                    }
                }
            }
        }
        fn rec(ids: &[usize]) -> Vec<BracketTree> {
            // split off the subtree containing ids[0] from the rest
            if ids.len() == 1 {
                return vec![BracketTree::Leaf(ids[0])];
            }
            let rest = &ids[1..];
            let mut out = Vec::new();
            // choose subset S of rest to join ids[0] in the left child
            for mask in 0u32..(1 << rest.len()) {
                if mask == (1 << rest.len()) - 1 {
                    continue;
                }
                let mut left = vec![ids[0]];
                let mut right = Vec::new();
                for (b, &id) in rest.iter().enumerate() {
                    if mask >> b & 1 == 1 {
                        left.push(id);
                    } else {
                        right.push(id);
                    }
                }
                for l in rec(&left) {
                    for r in rec(&right) {
                        out.push(BracketTree::node(l.clone(), r));
                    }
                }
            }
            out
        }
        let ids: Vec<usize> = (1..=n).collect();
        let mut out: Vec<BracketTree> = rec(&ids).iter().map(canonical).collect();
        out.sort();
        out.dedup();
        out
    }

    pub fn is_leaf(&self) -> bool {
        matches!(self, BracketTree::Leaf(_))
    }

    pub fn children(&self) -> Option<(&BracketTree, &BracketTree)> {
        match self {
            BracketTree::Leaf(_) => None,
            BracketTree::Node(l, r) => Some((l, r)),
        }
    }

    pub fn leaves(&self) -> Vec<usize> {
        let mut out = Vec::new();
        self.collect_leaves(&mut out);
        out
    }

    fn collect_leaves(&self, out: &mut Vec<usize>) {
        match self {
            BracketTree::Leaf(i) => out.push(*i),
            BracketTree::Node(l, r) => {
                l.collect_leaves(out);
                r.collect_leaves(out);
            }
        }
    }

    fn min_leaf(&self) -> usize {
        match self {
            BracketTree::Leaf(i) => *i,
            BracketTree::Node(l, r) => l.min_leaf().min(r.min_leaf()),
        }
    }

    pub fn num_leaves(&self) -> usize {
        match self {
            BracketTree::Leaf(_) => 1,
            BracketTree::Node(l, r) => l.num_leaves() + r.num_leaves(),
        }
    }

    pub fn leaf_set(&self) -> VertexSet {
        match self {
            BracketTree::Leaf(i) => VertexSet::singleton(*i),
            BracketTree::Node(l, r) => l.leaf_set().union(r.leaf_set()),
        }
    }

    /// Leaf sets of inner vertices in pre-order (root first).
    pub fn inner_vertices(&self) -> Vec<VertexSet> {
        let mut out = Vec::new();
        self.collect_inner(&mut out);
        out
    }

    fn collect_inner(&self, out: &mut Vec<VertexSet>) {
        if let BracketTree::Node(l, r) = self {
            out.push(self.leaf_set());
            l.collect_inner(out);
            r.collect_inner(out);
        }
    }

    /// Checks that the leaves are a permutation of `1..=n`.
    pub fn validate(&self, n: usize) -> Result<()> {
        let mut leaves = self.leaves();
        leaves.sort_unstable();
        if leaves != (1..=n).collect::<Vec<_>>() {
            return Err(Error::TreeMismatch(format!("leaves {:?} are not a permutation of 1..={n}", self.leaves())));
        }
        if n > 32 {
            return Err(Error::TreeMismatch("at most 32 leaves are supported".into()));
        }
        Ok(())
    }

    pub fn subtree(&self, set: VertexSet) -> Option<&BracketTree> {
        if self.leaf_set() == set {
            return Some(self);
        }
        match self {
            BracketTree::Leaf(_) => None,
            BracketTree::Node(l, r) => l.subtree(set).or_else(|| r.subtree(set)),
        }
    }

    fn subtree_mut(&mut self, set: VertexSet) -> Option<&mut BracketTree> {
        if self.leaf_set() == set {
            return Some(self);
        }
        match self {
            BracketTree::Leaf(_) => None,
            BracketTree::Node(l, r) => {
                if l.leaf_set().contains(set) {
                    l.subtree_mut(set)
                } else if r.leaf_set().contains(set) {
                    r.subtree_mut(set)
                } else {
                    None
                }
            }
        }
    }

    /// Path from the root (`""`) as a string of `L`/`R` steps.
    pub fn path_of(&self, set: VertexSet) -> Option<String> {
        if self.leaf_set() == set {
            return Some(String::new());
        }
        let (l, r) = self.children()?;
        if let Some(p) = l.path_of(set) {
            return Some(format!("L{p}"));
        }
        r.path_of(set).map(|p| format!("R{p}"))
    }

    pub fn at_path(&self, path: &str) -> Option<&BracketTree> {
        path.chars().try_fold(self, |t, c| {
            let (l, r) = t.children()?;
            match c {
                'L' => Some(l),
                'R' => Some(r),
                _ => None,
            }
        })
    }

    /// Same shape with the leaves replaced, in planar order, by `order`.
    pub fn with_leaves(&self, order: &[usize]) -> BracketTree {
        fn rec(t: &BracketTree, it: &mut std::slice::Iter<'_, usize>) -> BracketTree {
            match t {
                BracketTree::Leaf(_) => BracketTree::Leaf(*it.next().expect("leaf count")),
                BracketTree::Node(l, r) => {
                    let l = rec(l, it);
                    let r = rec(r, it);
                    BracketTree::node(l, r)
                }
            }
        }
        assert_eq!(order.len(), self.num_leaves());
        rec(self, &mut order.iter())
    }

    /// Applies a move to the tree structure only.
    pub fn apply_move(&self, m: &Move) -> Result<BracketTree> {
        let mut out = self.clone();
        let node =
            out.subtree_mut(m.vertex()).ok_or_else(|| Error::InapplicableMove(format!("no vertex {}", m.vertex())))?;
        match m {
            Move::Flip(_) => match node {
                BracketTree::Node(l, r) => std::mem::swap(l, r),
                BracketTree::Leaf(_) => return Err(Error::InapplicableMove("flip at a leaf".into())),
            },
            Move::Rotate(_, dir) => rotate_in_place(node, *dir)?,
        }
        Ok(out)
    }
}

impl fmt::Display for BracketTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BracketTree::Leaf(i) => write!(f, "{i}"),
            BracketTree::Node(l, r) => write!(f, "({l} {r})"),
        }
    }
}

fn rotate_in_place(node: &mut BracketTree, dir: Direction) -> Result<()> {
    let placeholder = BracketTree::Leaf(0);
    let owned = std::mem::replace(node, placeholder);
    let rotated = match (owned, dir) {
        (BracketTree::Node(ab, c), Direction::ToRight) => match *ab {
            BracketTree::Node(a, b) => Ok(BracketTree::Node(a, Box::new(BracketTree::Node(b, c)))),
            leaf => Err((BracketTree::Node(Box::new(leaf), c), "left child is a leaf")),
        },
        (BracketTree::Node(a, bc), Direction::ToLeft) => match *bc {
            BracketTree::Node(b, c) => Ok(BracketTree::Node(Box::new(BracketTree::Node(a, b)), c)),
            leaf => Err((BracketTree::Node(a, Box::new(leaf)), "right child is a leaf")),
        },
        (leaf @ BracketTree::Leaf(_), _) => Err((leaf, "rotation at a leaf")),
    };
    match rotated {
        Ok(t) => {
            *node = t;
            Ok(())
        }
        Err((t, why)) => {
            *node = t;
            Err(Error::InapplicableMove(why.into()))
        }
    }
}

/// Direction of a rotation at a vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    /// `((A B) C) → (A (B C))`
    ToRight,
    /// `(A (B C)) → ((A B) C)`
    ToLeft,
}

impl Direction {
    pub fn inverse(self) -> Self {
        match self {
            Direction::ToRight => Direction::ToLeft,
            Direction::ToLeft => Direction::ToRight,
        }
    }
}

/// A move between bracketings, addressed by the leaf set of its vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Move {
    Flip(VertexSet),
    Rotate(VertexSet, Direction),
}

impl Move {
    pub fn vertex(&self) -> VertexSet {
        match self {
            Move::Flip(v) | Move::Rotate(v, _) => *v,
        }
    }
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Move::Flip(v) => write!(f, "flip{v}"),
            Move::Rotate(v, Direction::ToRight) => write!(f, "rotate_right{v}"),
            Move::Rotate(v, Direction::ToLeft) => write!(f, "rotate_left{v}"),
        }
    }
}

impl Serialize for Move {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// The three blocks of a rotation and the label data it touches.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RotationSite {
    pub a: VertexSet,
    pub b: VertexSet,
    pub c: VertexSet,
    /// Vertex that is removed (`A∪B` for `ToRight`, `B∪C` for `ToLeft`).
    pub old_middle: VertexSet,
    /// Vertex that is created.
    pub new_middle: VertexSet,
    pub vertex: VertexSet,
}

impl RotationSite {
    pub fn locate(tree: &BracketTree, vertex: VertexSet, dir: Direction) -> Result<Self> {
        let node = tree.subtree(vertex).ok_or_else(|| Error::InapplicableMove(format!("no vertex {vertex}")))?;
        let (l, r) = node.children().ok_or_else(|| Error::InapplicableMove("rotation at a leaf".into()))?;
        let (a, b, c) = match dir {
            Direction::ToRight => {
                let (a, b) =
                    l.children().ok_or_else(|| Error::InapplicableMove(format!("{vertex}: left child is a leaf")))?;
                (a.leaf_set(), b.leaf_set(), r.leaf_set())
            }
            Direction::ToLeft => {
                let (b, c) =
                    r.children().ok_or_else(|| Error::InapplicableMove(format!("{vertex}: right child is a leaf")))?;
                (l.leaf_set(), b.leaf_set(), c.leaf_set())
            }
        };
        let (old_middle, new_middle) = match dir {
            Direction::ToRight => (a.union(b), b.union(c)),
            Direction::ToLeft => (b.union(c), a.union(b)),
        };
        Ok(Self { a, b, c, old_middle, new_middle, vertex })
    }
}

/// A bracketing together with a label per inner vertex.
///
/// `weights` is indexed by leaf id (`weights[id - 1]`). The root carries the
/// top weight `nu`, and `labels` contains the root as well.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LabelState {
    weights: WeightList,
    tree: BracketTree,
    labels: BTreeMap<VertexSet, u32>,
    nu: u32,
}

impl LabelState {
    /// Builds and validates a label state.
    pub fn new(weights: WeightList, tree: BracketTree, labels: BTreeMap<VertexSet, u32>, nu: u32) -> Result<Self> {
        let state = Self { weights, tree, labels, nu };
        state.validate()?;
        Ok(state)
    }

    pub fn weights(&self) -> &WeightList {
        &self.weights
    }

    pub fn tree(&self) -> &BracketTree {
        &self.tree
    }

    pub fn labels(&self) -> &BTreeMap<VertexSet, u32> {
        &self.labels
    }

    pub fn nu(&self) -> u32 {
        self.nu
    }

    /// Label of a vertex, or the weight of a leaf.
    pub fn label(&self, set: VertexSet) -> Option<u32> {
        if set.len() == 1 {
            let id = set.ids()[0];
            return self.weights.get(id - 1);
        }
        self.labels.get(&set).copied()
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.weights.len();
        self.tree.validate(n)?;
        let inner = self.tree.inner_vertices();
        if inner.len() != self.labels.len() || inner.iter().any(|v| !self.labels.contains_key(v)) {
            return Err(Error::TreeMismatch("labels do not match the inner vertices".into()));
        }
        let root = self.tree.leaf_set();
        if n == 1 {
            if self.weights.get(0) != Some(self.nu) {
                return Err(Error::InadmissibleLabel { mu: self.nu, reason: "single factor".into() });
            }
            return Ok(());
        }
        if self.labels.get(&root) != Some(&self.nu) {
            return Err(Error::InadmissibleLabel { mu: self.nu, reason: "root label differs from nu".into() });
        }
        for v in inner {
            let node = self.tree.subtree(v).expect("inner vertex");
            let (l, r) = node.children().expect("inner vertex");
            let a = self.label(l.leaf_set()).expect("label");
            let b = self.label(r.leaf_set()).expect("label");
            let mu = self.labels[&v];
            if !admissible(a, b, mu) {
                return Err(Error::InadmissibleLabel {
                    mu,
                    reason: format!("not in the Clebsch-Gordan range of ({a}, {b}) at {v}"),
                });
            }
        }
        Ok(())
    }

    /// Labels keyed by vertex path (`""` is the root).
    pub fn labels_by_path(&self) -> BTreeMap<String, u32> {
        self.labels.iter().map(|(v, mu)| (self.tree.path_of(*v).expect("vertex in tree"), *mu)).collect()
    }

    /// The labels of the vertices common with `other` that differ.
    pub fn same_labels_except(&self, other: &LabelState, skip: VertexSet) -> bool {
        self.labels.iter().filter(|(v, _)| **v != skip).all(|(v, mu)| other.labels.get(v) == Some(mu))
    }
}

impl fmt::Display for LabelState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} [", self.tree)?;
        let parts: Vec<String> = self
            .labels
            .iter()
            .filter(|(v, _)| **v != self.tree.leaf_set())
            .map(|(v, mu)| format!("μ{v}={mu}"))
            .collect();
        write!(f, "{}] ν={}", parts.join(", "), self.nu)
    }
}

#[derive(Serialize, Deserialize)]
struct LabelStateRepr {
    weights: WeightList,
    tree: BracketTree,
    labels: BTreeMap<String, u32>,
    nu: u32,
}

impl Serialize for LabelState {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        LabelStateRepr {
            weights: self.weights.clone(),
            tree: self.tree.clone(),
            labels: self.labels_by_path(),
            nu: self.nu,
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for LabelState {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let repr = LabelStateRepr::deserialize(deserializer)?;
        let mut labels = BTreeMap::new();
        for (path, mu) in repr.labels {
            let node =
                repr.tree.at_path(&path).ok_or_else(|| D::Error::custom(format!("no vertex at path {path:?}")))?;
            labels.insert(node.leaf_set(), mu);
        }
        LabelState::new(repr.weights, repr.tree, labels, repr.nu).map_err(D::Error::custom)
    }
}

fn admissible(a: u32, b: u32, mu: u32) -> bool {
    a.abs_diff(b) <= mu && mu <= a + b && (a + b - mu).is_multiple_of(2)
}

/// `{μ : |λ1-λ2| <= μ <= λ1+λ2, λ1+λ2-μ even}` in increasing order.
pub fn cg_interval(l1: u32, l2: u32) -> Vec<u32> {
    (l1.abs_diff(l2)..=l1 + l2).step_by(2).collect()
}

/// The associator on labels: `max(λ_A + λ_C, λ_B + ν) - μ`.
///
/// Requires `μ ∈ M^ν_{(AB)C}`; the result lies in `M^ν_{A(BC)}`. Since the
/// constant is symmetric in `A` and `C`, calling it with `μ ∈ M^ν_{A(BC)}`
/// computes the inverse map.
pub fn associator_psi(mu: u32, la: u32, lb: u32, lc: u32, nu: u32) -> Result<u32> {
    if !admissible(la, lb, mu) || !admissible(mu, lc, nu) {
        return Err(Error::InadmissibleLabel { mu, reason: format!("not in M^{nu} for blocks ({la} {lb}) {lc}") });
    }
    Ok((la + lc).max(lb + nu) - mu)
}

/// All label states on `tree` with top weight `nu`, in a fixed order.
pub fn occurrence_set(tree: &BracketTree, weights: &WeightList, nu: u32) -> Result<Vec<LabelState>> {
    tree.validate(weights.len())?;
    fn rec(t: &BracketTree, w: &WeightList) -> Vec<(u32, Vec<(VertexSet, u32)>)> {
        match t {
            BracketTree::Leaf(i) => vec![(w.get(*i - 1).expect("leaf id"), Vec::new())],
            BracketTree::Node(l, r) => {
                let set = t.leaf_set();
                let mut out = Vec::new();
                let ls = rec(l, w);
                let rs = rec(r, w);
                for (a, la) in &ls {
                    for (b, lb) in &rs {
                        for mu in cg_interval(*a, *b) {
                            let mut labels = la.clone();
                            labels.extend(lb.iter().copied());
                            labels.push((set, mu));
                            out.push((mu, labels));
                        }
                    }
                }
                out
            }
        }
    }
    let mut out: Vec<LabelState> = rec(tree, weights)
        .into_iter()
        .filter(|(top, _)| *top == nu)
        .map(|(_, labels)| LabelState {
            weights: weights.clone(),
            tree: tree.clone(),
            labels: labels.into_iter().collect(),
            nu,
        })
        .collect();
    out.sort();
    Ok(out)
}

/// Applies a flip or rotation to a label state.
pub fn apply_move(state: &LabelState, m: &Move) -> Result<LabelState> {
    let tree = state.tree.apply_move(m)?;
    let mut labels = state.labels.clone();
    if let Move::Rotate(vertex, dir) = m {
        let site = RotationSite::locate(&state.tree, *vertex, *dir)?;
        let lab = |s: VertexSet| state.label(s).expect("block label");
        let mu = lab(site.old_middle);
        let nu = lab(site.vertex);
        let new_mu = associator_psi(mu, lab(site.a), lab(site.b), lab(site.c), nu)
            .or_else(|_| associator_psi(mu, lab(site.c), lab(site.b), lab(site.a), nu))?;
        labels.remove(&site.old_middle);
        labels.insert(site.new_middle, new_mu);
    }
    Ok(LabelState { weights: state.weights.clone(), tree, labels, nu: state.nu })
}

/// Rotations turning `src` into `target`. Both trees must have the same
/// planar leaf order.
pub fn moves_to_shape(src: &BracketTree, target: &BracketTree) -> Result<Vec<Move>> {
    if src.leaves() != target.leaves() {
        return Err(Error::TreeMismatch(format!("leaf orders differ: {:?} vs {:?}", src.leaves(), target.leaves())));
    }
    let mut cur = src.clone();
    let mut moves = Vec::new();
    reshape(&mut cur, target, &mut moves);
    debug_assert_eq!(&cur, target);
    Ok(moves)
}

fn reshape(cur: &mut BracketTree, target: &BracketTree, moves: &mut Vec<Move>) {
    if let BracketTree::Node(tl, tr) = target {
        make_split(cur, tl.num_leaves(), moves);
        if let BracketTree::Node(cl, cr) = cur {
            reshape(cl, tl, moves);
            reshape(cr, tr, moves);
        }
    }
}

// Rotates `cur` (and its descendants) until its left child has `k` leaves.
fn make_split(cur: &mut BracketTree, k: usize, moves: &mut Vec<Move>) {
    let set = cur.leaf_set();
    let BracketTree::Node(l, r) = cur else { return };
    let kc = l.num_leaves();
    let dir = if kc < k {
        make_split(r, k - kc, moves);
        Direction::ToLeft
    } else if kc > k {
        make_split(l, k, moves);
        Direction::ToRight
    } else {
        return;
    };
    rotate_in_place(cur, dir).expect("split child is an inner vertex");
    moves.push(Move::Rotate(set, dir));
}

fn minimal_cover(tree: &BracketTree, set: VertexSet) -> &BracketTree {
    let mut cur = tree;
    while let Some((l, r)) = cur.children() {
        if l.leaf_set().contains(set) {
            cur = l;
        } else if r.leaf_set().contains(set) {
            cur = r;
        } else {
            break;
        }
    }
    cur
}

fn replace_subtree(tree: &BracketTree, set: VertexSet, with: &BracketTree) -> BracketTree {
    if tree.leaf_set() == set {
        return with.clone();
    }
    match tree {
        BracketTree::Leaf(i) => BracketTree::Leaf(*i),
        BracketTree::Node(l, r) => BracketTree::node(replace_subtree(l, set, with), replace_subtree(r, set, with)),
    }
}

/// Moves realizing one block swap on `tree`, together with the resulting
/// tree.
///
/// When the two blocks are already siblings the swap is a single flip.
/// Otherwise the smallest subtree covering both blocks is rotated into a
/// left comb whose unit in the middle is `(left comb of block 1, left comb of
/// block 2)`, that unit is flipped, and the subtree is rotated back to its
/// original shape.
pub fn realize_block_swap(tree: &BracketTree, swap: &BlockSwap) -> Result<(Vec<Move>, BracketTree)> {
    let leaves = tree.leaves();
    if swap.start == 0 || swap.end > leaves.len() || !(swap.start <= swap.mid && swap.mid < swap.end) {
        return Err(Error::ArityMismatch { expected: leaves.len(), found: swap.end });
    }
    let left_ids = &leaves[swap.start - 1..swap.mid];
    let right_ids = &leaves[swap.mid..swap.end];
    let left = VertexSet::from_ids(left_ids);
    let right = VertexSet::from_ids(right_ids);
    let joint = left.union(right);

    if let Some((l, r)) = tree.subtree(joint).and_then(|t| t.children()) {
        if l.leaf_set() == left && r.leaf_set() == right {
            let m = Move::Flip(joint);
            return Ok((vec![m], tree.apply_move(&m)?));
        }
    }

    let cover = minimal_cover(tree, joint);
    let cover_leaves = cover.leaves();
    let offset = cover_leaves.iter().position(|&i| i == left_ids[0]).expect("block inside cover");
    let unit = |a: &[usize], b: &[usize]| BracketTree::node(BracketTree::left_comb(a), BracketTree::left_comb(b));
    let mut units: Vec<BracketTree> = cover_leaves[..offset].iter().map(|&i| BracketTree::Leaf(i)).collect();
    let mut flipped_units = units.clone();
    units.push(unit(left_ids, right_ids));
    flipped_units.push(unit(right_ids, left_ids));
    let tail = &cover_leaves[offset + left_ids.len() + right_ids.len()..];
    units.extend(tail.iter().map(|&i| BracketTree::Leaf(i)));
    flipped_units.extend(tail.iter().map(|&i| BracketTree::Leaf(i)));
    let canonical = BracketTree::left_comb_of(units);
    let flipped = BracketTree::left_comb_of(flipped_units);

    let mut new_order = cover_leaves[..offset].to_vec();
    new_order.extend_from_slice(right_ids);
    new_order.extend_from_slice(left_ids);
    new_order.extend_from_slice(tail);
    let restored = cover.with_leaves(&new_order);

    let mut moves = moves_to_shape(cover, &canonical)?;
    moves.push(Move::Flip(joint));
    moves.extend(moves_to_shape(&flipped, &restored)?);
    let result = replace_subtree(tree, cover.leaf_set(), &restored);
    Ok((moves, result))
}

/// Moves realizing a cactus word on `tree`: each generator is unrolled into
/// block swaps, and each block swap into rotations and one flip.
pub fn realize_word(word: &CactusWord, tree: &BracketTree) -> Result<(Vec<Move>, BracketTree)> {
    let n = tree.num_leaves();
    if word.arity() != n {
        return Err(Error::ArityMismatch { expected: n, found: word.arity() });
    }
    let mut cur = tree.clone();
    let mut moves = Vec::new();
    for g in word.gens().iter().rev() {
        for swap in decompose_generator(g).iter().rev() {
            let (m, next) = realize_block_swap(&cur, swap)?;
            moves.extend(m);
            cur = next;
        }
    }
    Ok((moves, cur))
}

pub fn apply_moves(state: &LabelState, moves: &[Move]) -> Result<LabelState> {
    moves.iter().try_fold(state.clone(), |s, m| apply_move(&s, m))
}

/// The cactus action on label states.
pub fn cactus_act_labels(word: &CactusWord, state: &LabelState) -> Result<LabelState> {
    let (moves, _) = realize_word(word, &state.tree)?;
    apply_moves(state, &moves)
}

/// Transports a state to another bracketing with the same leaf order.
pub fn move_to_tree(state: &LabelState, target: &BracketTree) -> Result<LabelState> {
    let moves = moves_to_shape(&state.tree, target)?;
    apply_moves(state, &moves)
}
