//! Exact sl2 Gaudin operators on tensor products `V_λ1 ⊗ … ⊗ V_λn`.
//!
//! Each `V_λ` has the divided-power basis `v_k = f^(k) v_λ`, `0 <= k <= λ`:
//!
//! ```text
//! h v_k = (λ - 2k) v_k,   f v_k = (k + 1) v_{k+1},   e v_k = (λ - k + 1) v_{k-1}
//! ```
//!
//! A basis vector of the tensor product is a tuple `(k_1, …, k_n)`. With
//! `Ω_ij = e_i f_j + f_i e_j + h_i h_j / 2` the partial Casimirs are
//! `C_J = Σ_{i∈J} c(λ_i) + 2 Σ_{i<j∈J} Ω_ij` with `c(λ) = λ(λ+2)/2`, and the
//! Gaudin Hamiltonians are `H_i = Σ_{j≠i} Ω_ij / (z_i - z_j)`.

use std::collections::{BTreeMap, HashMap};

use nalgebra::{DMatrix, SymmetricEigen};
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use crate::crystal::{weight_slice, CrystalElem, WeightList};
use crate::error::{Error, Result};
use crate::hives::{BracketTree, LabelState, VertexSet};
use crate::linalg::{q, q_frac, q_to_pq, QMatrix, Q};

/// Sparse vector keyed by basis tuples.
pub type SparseVec = BTreeMap<Vec<u32>, Q>;

/// `λ(λ+2)/2`, the Casimir eigenvalue on `V_λ`.
pub fn casimir_scalar(lambda: u32) -> Q {
    let l = lambda as i64;
    q_frac(l * (l + 2), 2)
}

/// Which tuples a [`Basis`] contains.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SliceKind {
    Full,
    /// Tuples of weight `Σλ_i - 2Σk_i = ν`.
    Weight(i64),
}

impl Serialize for SliceKind {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            SliceKind::Full => serializer.serialize_str("full"),
            SliceKind::Weight(nu) => serializer.serialize_i64(*nu),
        }
    }
}

/// Ordered set of product basis tuples, lexicographic.
#[derive(Debug, Clone)]
pub struct Basis {
    weights: WeightList,
    kind: SliceKind,
    tuples: Vec<Vec<u32>>,
    index: HashMap<Vec<u32>, usize>,
}

impl PartialEq for Basis {
    fn eq(&self, other: &Self) -> bool {
        self.weights == other.weights && self.kind == other.kind
    }
}

impl Basis {
    pub fn full(weights: &WeightList) -> Self {
        let tuples = CrystalElem::all(weights).into_iter().map(|b| b.coords().to_vec()).collect();
        Self::from_tuples(weights, SliceKind::Full, tuples)
    }

    /// The weight-`ν` slice; empty when `ν` has the wrong parity or size.
    pub fn slice(weights: &WeightList, nu: i64) -> Self {
        let total = weights.total() as i64;
        let tuples = if (total - nu) % 2 != 0 || nu.abs() > total {
            Vec::new()
        } else {
            weight_slice(weights, ((total - nu) / 2) as u32).into_iter().map(|b| b.coords().to_vec()).collect()
        };
        Self::from_tuples(weights, SliceKind::Weight(nu), tuples)
    }

    fn from_tuples(weights: &WeightList, kind: SliceKind, tuples: Vec<Vec<u32>>) -> Self {
        let index = tuples.iter().enumerate().map(|(i, t)| (t.clone(), i)).collect();
        Basis { weights: weights.clone(), kind, tuples, index }
    }

    pub fn weights(&self) -> &WeightList {
        &self.weights
    }

    pub fn kind(&self) -> SliceKind {
        self.kind
    }

    pub fn tuples(&self) -> &[Vec<u32>] {
        &self.tuples
    }

    pub fn dim(&self) -> usize {
        self.tuples.len()
    }

    pub fn index_of(&self, tuple: &[u32]) -> Option<usize> {
        self.index.get(tuple).copied()
    }

    pub fn to_sparse(&self, coords: &[Q]) -> SparseVec {
        self.tuples.iter().zip(coords).filter(|(_, c)| !c.is_zero()).map(|(t, c)| (t.clone(), c.clone())).collect()
    }

    /// Dense coordinates; `None` if the vector leaves the basis.
    pub fn to_dense(&self, v: &SparseVec) -> Option<Vec<Q>> {
        let mut out = vec![Q::zero(); self.dim()];
        for (t, c) in v {
            out[self.index_of(t)?] = c.clone();
        }
        Some(out)
    }
}

impl Serialize for Basis {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut s = serializer.serialize_struct("Basis", 4)?;
        s.serialize_field("weights", &self.weights)?;
        s.serialize_field("slice", &self.kind)?;
        s.serialize_field("dimension", &self.dim())?;
        s.serialize_field("tuples", &self.tuples)?;
        s.end()
    }
}

/// An exact matrix together with the basis it acts on.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExactOperator {
    pub basis: Basis,
    pub matrix: QMatrix,
}

/// `e`, `f`, `h` on `V_λ` in the basis `v_0, …, v_λ`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RepMatrices {
    pub e: QMatrix,
    pub f: QMatrix,
    pub h: QMatrix,
}

pub fn rep_matrices(lambda: u32) -> RepMatrices {
    let d = lambda as usize + 1;
    let l = lambda as i64;
    let e = QMatrix::from_fn(d, d, |i, j| if j == i + 1 { q(l - j as i64 + 1) } else { Q::zero() });
    let f = QMatrix::from_fn(d, d, |i, j| if i == j + 1 { q(j as i64 + 1) } else { Q::zero() });
    let h = QMatrix::from_fn(d, d, |i, j| if i == j { q(l - 2 * i as i64) } else { Q::zero() });
    RepMatrices { e, f, h }
}

fn add_term(out: &mut SparseVec, key: Vec<u32>, c: Q) {
    if c.is_zero() {
        return;
    }
    let entry = out.entry(key).or_insert_with(Q::zero);
    *entry += c;
}

fn prune(mut v: SparseVec) -> SparseVec {
    v.retain(|_, c| !c.is_zero());
    v
}

/// `Ω_ij` on one basis tuple (0-based factor indices).
fn omega_terms(w: &[u32], t: &[u32], i: usize, j: usize, out: &mut Vec<(Vec<u32>, Q)>) {
    let (li, lj) = (w[i] as i64, w[j] as i64);
    let (ki, kj) = (t[i] as i64, t[j] as i64);
    if ki >= 1 && kj < lj {
        let mut s = t.to_vec();
        s[i] -= 1;
        s[j] += 1;
        out.push((s, q((li - ki + 1) * (kj + 1))));
    }
    if ki < li && kj >= 1 {
        let mut s = t.to_vec();
        s[i] += 1;
        s[j] -= 1;
        out.push((s, q((ki + 1) * (lj - kj + 1))));
    }
    let d = (li - 2 * ki) * (lj - 2 * kj);
    if d != 0 {
        out.push((t.to_vec(), q_frac(d, 2)));
    }
}

fn apply_with(v: &SparseVec, mut terms: impl FnMut(&[u32], &mut Vec<(Vec<u32>, Q)>)) -> SparseVec {
    let mut out = SparseVec::new();
    let mut buf = Vec::new();
    for (t, c) in v {
        buf.clear();
        terms(t, &mut buf);
        for (s, a) in buf.drain(..) {
            add_term(&mut out, s, a * c);
        }
    }
    prune(out)
}

fn check_ids(ids: &[usize], n: usize) -> Result<()> {
    if ids.is_empty() {
        return Err(Error::Parse("empty factor subset".into()));
    }
    if let Some(&bad) = ids.iter().find(|&&i| i == 0 || i > n) {
        return Err(Error::ArityMismatch { expected: n, found: bad });
    }
    Ok(())
}

/// `C_J v` for a subset `J` of 1-based factor ids.
pub fn casimir_apply(ids: &[usize], weights: &WeightList, v: &SparseVec) -> Result<SparseVec> {
    let w = weights.as_slice();
    check_ids(ids, w.len())?;
    let scalar: Q = ids.iter().fold(Q::zero(), |acc, &i| acc + casimir_scalar(w[i - 1]));
    Ok(apply_with(v, |t, out| {
        out.push((t.to_vec(), scalar.clone()));
        let start = out.len();
        for (a, &i) in ids.iter().enumerate() {
            for &j in &ids[a + 1..] {
                omega_terms(w, t, i - 1, j - 1, out);
            }
        }
        for term in &mut out[start..] {
            term.1 *= q(2);
        }
    }))
}

/// `H_i v` at the point `z` (1-based `i`).
pub fn hamiltonian_apply(i: usize, z: &[Q], weights: &WeightList, v: &SparseVec) -> Result<SparseVec> {
    let w = weights.as_slice();
    let n = w.len();
    check_ids(&[i], n)?;
    if z.len() != n {
        return Err(Error::ArityMismatch { expected: n, found: z.len() });
    }
    check_distinct(z)?;
    let coeffs: Vec<Option<Q>> = (0..n).map(|j| (j != i - 1).then(|| (&z[i - 1] - &z[j]).recip())).collect();
    Ok(apply_with(v, |t, out| {
        for (j, c) in coeffs.iter().enumerate() {
            let Some(c) = c else { continue };
            let start = out.len();
            omega_terms(w, t, i - 1, j, out);
            for term in &mut out[start..] {
                term.1 *= c;
            }
        }
    }))
}

fn check_distinct(z: &[Q]) -> Result<()> {
    for i in 0..z.len() {
        for j in i + 1..z.len() {
            if z[i] == z[j] {
                return Err(Error::DegenerateConfiguration { i: i + 1, j: j + 1 });
            }
        }
    }
    Ok(())
}

/// Total `e = Σ e_i`.
pub fn total_e_apply(weights: &WeightList, v: &SparseVec) -> SparseVec {
    let w = weights.as_slice();
    apply_with(v, |t, out| {
        for i in 0..t.len() {
            if t[i] >= 1 {
                let mut s = t.to_vec();
                s[i] -= 1;
                out.push((s, q(w[i] as i64 - t[i] as i64 + 1)));
            }
        }
    })
}

/// `Σ_{i∈ids} f_i` (1-based ids).
pub fn block_f_apply(ids: &[usize], weights: &WeightList, v: &SparseVec) -> SparseVec {
    let w = weights.as_slice();
    apply_with(v, |t, out| {
        for &i in ids {
            if t[i - 1] < w[i - 1] {
                let mut s = t.to_vec();
                s[i - 1] += 1;
                out.push((s, q(t[i - 1] as i64 + 1)));
            }
        }
    })
}

/// Total `h = Σ h_i`.
pub fn total_h_apply(weights: &WeightList, v: &SparseVec) -> SparseVec {
    let w = weights.as_slice();
    apply_with(v, |t, out| {
        let d: i64 = w.iter().zip(t).map(|(&l, &k)| l as i64 - 2 * k as i64).sum();
        out.push((t.to_vec(), q(d)));
    })
}

/// Matrix of a weight-preserving map on `basis`.
pub fn matrix_of(basis: &Basis, op: impl Fn(&SparseVec) -> Result<SparseVec>) -> Result<QMatrix> {
    let mut m = QMatrix::zeros(basis.dim(), basis.dim());
    for (j, t) in basis.tuples().iter().enumerate() {
        let image = op(&SparseVec::from([(t.clone(), Q::one())]))?;
        for (s, c) in image {
            let i = basis.index_of(&s).ok_or(Error::NotInvariant)?;
            m[(i, j)] = c;
        }
    }
    Ok(m)
}

/// Exact matrix of `C_J` on `basis`.
pub fn casimir_on_subset(ids: &[usize], basis: &Basis) -> Result<ExactOperator> {
    let matrix = matrix_of(basis, |v| casimir_apply(ids, &basis.weights, v))?;
    Ok(ExactOperator { basis: basis.clone(), matrix })
}

/// Exact matrix of `H_i(z)` on `basis`. Coincident points are rejected.
pub fn hamiltonian(i: usize, z: &[Q], basis: &Basis) -> Result<ExactOperator> {
    let matrix = matrix_of(basis, |v| hamiltonian_apply(i, z, &basis.weights, v))?;
    Ok(ExactOperator { basis: basis.clone(), matrix })
}

/// Matrix of the total `e` from the `ν` slice to the `ν+2` slice.
pub fn total_raising(weights: &WeightList, nu: i64) -> (Basis, Basis, QMatrix) {
    let src = Basis::slice(weights, nu);
    let dst = Basis::slice(weights, nu + 2);
    let mut m = QMatrix::zeros(dst.dim(), src.dim());
    for (j, t) in src.tuples().iter().enumerate() {
        for (s, c) in total_e_apply(weights, &SparseVec::from([(t.clone(), Q::one())])) {
            let i = dst.index_of(&s).expect("raising lands in the next slice");
            m[(i, j)] = c;
        }
    }
    (src, dst, m)
}

/// Singular vectors of weight `ν`, as coordinates in the `ν` slice.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SingularSubspace {
    pub nu: i64,
    pub basis: Basis,
    #[serde(serialize_with = "serialize_vectors")]
    pub vectors: Vec<Vec<Q>>,
}

impl SingularSubspace {
    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    /// Matrix with the singular vectors as columns.
    pub fn matrix(&self) -> QMatrix {
        QMatrix::from_columns(&self.vectors, self.basis.dim())
    }
}

fn serialize_vectors<S: Serializer>(v: &[Vec<Q>], s: S) -> std::result::Result<S::Ok, S::Error> {
    let strings: Vec<Vec<String>> = v.iter().map(|col| col.iter().map(q_to_pq).collect()).collect();
    strings.serialize(s)
}

/// Exact kernel of the total raising operator on the `ν` slice.
pub fn singular_basis(weights: &WeightList, nu: i64) -> SingularSubspace {
    let (src, dst, e) = total_raising(weights, nu);
    let vectors = if src.dim() == 0 {
        Vec::new()
    } else if dst.dim() == 0 {
        (0..src.dim()).map(|j| (0..src.dim()).map(|i| if i == j { Q::one() } else { Q::zero() }).collect()).collect()
    } else {
        e.kernel()
    };
    SingularSubspace { nu, basis: src, vectors }
}

/// A joint eigenvector of the Casimirs of a bracketing, with its labels.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BracketingVector {
    pub state: LabelState,
    #[serde(serialize_with = "serialize_coords")]
    pub coords: Vec<Q>,
}

fn serialize_coords<S: Serializer>(v: &[Q], s: S) -> std::result::Result<S::Ok, S::Error> {
    let strings: Vec<String> = v.iter().map(q_to_pq).collect();
    strings.serialize(s)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Eigenbasis {
    pub basis: Basis,
    pub vectors: Vec<BracketingVector>,
}

struct Highest {
    mu: u32,
    labels: Vec<(VertexSet, u32)>,
    vector: SparseVec,
}

// Highest vectors of every weight inside the subtree, as vectors on full
// tuples that are zero outside the subtree.
fn subtree_highest(tree: &BracketTree, weights: &WeightList) -> Vec<Highest> {
    let n = weights.len();
    match tree {
        BracketTree::Leaf(i) => vec![Highest {
            mu: weights.get(i - 1).expect("leaf id in range"),
            labels: Vec::new(),
            vector: SparseVec::from([(vec![0; n], Q::one())]),
        }],
        BracketTree::Node(l, r) => {
            let left_ids = l.leaf_set().ids();
            let right_ids = r.leaf_set().ids();
            let set = tree.leaf_set();
            let lefts = subtree_highest(l, weights);
            let rights = subtree_highest(r, weights);
            let mut out = Vec::new();
            let powers = |h: &Highest, ids: &[usize], count: u32| {
                // F^(j) h for j = 0..=count
                let mut p = vec![h.vector.clone()];
                for j in 1..=count {
                    let next = block_f_apply(ids, weights, &p[j as usize - 1]);
                    let inv = q_frac(1, j as i64);
                    p.push(next.into_iter().map(|(t, c)| (t, c * &inv)).collect());
                }
                p
            };
            for u in &lefts {
                for w in &rights {
                    let (a, b) = (u.mu, w.mu);
                    let depth = a.min(b);
                    let up = powers(u, &left_ids, depth);
                    let wp = powers(w, &right_ids, depth);
                    for m in 0..=depth {
                        // Σ_j c_j F^(j)u ⊗ F^(m-j)w is killed by e iff
                        // c_{j+1} (a - j) + c_j (b - m + j + 1) = 0
                        let mut coeff = Q::one();
                        let mut vector = SparseVec::new();
                        for j in 0..=m {
                            if j > 0 {
                                let jm = (j - 1) as i64;
                                coeff = -coeff * q(b as i64 - m as i64 + jm + 1) / q(a as i64 - jm);
                            }
                            for (tu, cu) in &up[j as usize] {
                                for (tw, cw) in &wp[(m - j) as usize] {
                                    let key: Vec<u32> = tu.iter().zip(tw).map(|(x, y)| x + y).collect();
                                    add_term(&mut vector, key, &coeff * cu * cw);
                                }
                            }
                        }
                        let mut labels = u.labels.clone();
                        labels.extend(w.labels.iter().copied());
                        let mu = a + b - 2 * m;
                        labels.push((set, mu));
                        out.push(Highest { mu, labels, vector: prune(vector) });
                    }
                }
            }
            out
        }
    }
}

/// Joint eigenbasis of the Casimirs `C_I` of a bracketing on the singular
/// vectors of weight `ν`, built by Clebsch–Gordan recursion. Each vector is
/// scaled so that its first nonzero coordinate in the slice basis is one.
/// Vectors come in the order of [`crate::hives::occurrence_set`].
pub fn bracketing_eigenbasis(tree: &BracketTree, weights: &WeightList, nu: u32) -> Result<Eigenbasis> {
    tree.validate(weights.len())?;
    let highest = subtree_highest(tree, weights).into_iter().filter(|h| h.mu == nu).collect();
    assemble(tree, weights, nu, highest)
}

/// [`bracketing_eigenbasis`] for every top weight at once, keyed by `ν`.
pub fn bracketing_eigenbases(tree: &BracketTree, weights: &WeightList) -> Result<BTreeMap<u32, Eigenbasis>> {
    tree.validate(weights.len())?;
    let mut by_nu: BTreeMap<u32, Vec<Highest>> = BTreeMap::new();
    for h in subtree_highest(tree, weights) {
        by_nu.entry(h.mu).or_default().push(h);
    }
    by_nu.into_iter().map(|(nu, hs)| Ok((nu, assemble(tree, weights, nu, hs)?))).collect()
}

fn assemble(tree: &BracketTree, weights: &WeightList, nu: u32, highest: Vec<Highest>) -> Result<Eigenbasis> {
    let basis = Basis::slice(weights, nu as i64);
    let mut vectors = Vec::new();
    for h in highest {
        let labels: BTreeMap<VertexSet, u32> = h.labels.into_iter().collect();
        let state = LabelState::new(weights.clone(), tree.clone(), labels, nu)?;
        let mut coords = basis.to_dense(&h.vector).expect("highest vector lies in its weight slice");
        let first = coords.iter().find(|c| !c.is_zero()).expect("nonzero highest vector").clone();
        for c in &mut coords {
            *c /= &first;
        }
        vectors.push(BracketingVector { state, coords });
    }
    vectors.sort_by(|a, b| a.state.cmp(&b.state));
    Ok(Eigenbasis { basis, vectors })
}

/// Outcome of a numeric simplicity check of the Gaudin spectrum.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SimplicityReport {
    pub nu: i64,
    pub dimension: usize,
    /// Joint eigenvalues `(H_1, …, H_n)` per eigenvector, ordered by the
    /// eigenvalue of the combination.
    pub joint_eigenvalues: Vec<Vec<f64>>,
    /// Smallest gap of the combination `Σ c_i H_i`, relative to its norm.
    pub combination_gap: Option<f64>,
    /// Smallest over eigenvector pairs of the largest `|θ_i - θ'_i|`,
    /// relative to `max_i ‖H_i‖`.
    pub joint_gap: Option<f64>,
    pub tol: f64,
    pub certified: bool,
}

/// Fixed generic coefficients for the combination `Σ c_i H_i`.
pub fn generic_coefficients(n: usize) -> Vec<Q> {
    (0..n as i64).map(|i| q_frac(i * i + 3, 2 * i + 7)).collect()
}

/// Restricts each `H_i(z)` to the singular vectors of weight `ν`,
/// symmetrizes through the contravariant form and measures how well the
/// joint spectrum separates.
pub fn check_simple_spectrum(z: &[Q], weights: &WeightList, nu: i64, tol: f64) -> Result<SimplicityReport> {
    let n = weights.len();
    if z.len() != n {
        return Err(Error::ArityMismatch { expected: n, found: z.len() });
    }
    check_distinct(z)?;
    let sing = singular_basis(weights, nu);
    let d = sing.dim();
    if d <= 1 || n <= 1 {
        let joint = if d == 1 && n > 1 {
            let s = sing.matrix();
            let mut row = Vec::new();
            for i in 1..=n {
                let h = hamiltonian(i, z, &sing.basis)?;
                let r = s.solve(&(&h.matrix * &s)).ok_or(Error::NotInvariant)?;
                row.push(crate::linalg::q_to_f64(&r[(0, 0)]));
            }
            vec![row]
        } else {
            vec![vec![0.0; n]; d]
        };
        return Ok(SimplicityReport {
            nu,
            dimension: d,
            joint_eigenvalues: joint,
            combination_gap: None,
            joint_gap: None,
            tol,
            certified: true,
        });
    }
    let s = sing.matrix();
    let gram = crate::transport::GramDiagonal::for_basis(&sing.basis);
    let g = &(&s.transpose() * &gram.matrix()) * &s;
    let chol = crate::transport::contravariant_factor(&g)?;
    let coeffs = generic_coefficients(n);
    let mut restricted = Vec::with_capacity(n);
    let mut combination = QMatrix::zeros(d, d);
    for (i, c) in coeffs.iter().enumerate() {
        let h = hamiltonian(i + 1, z, &sing.basis)?;
        let r = s.solve(&(&h.matrix * &s)).ok_or(Error::NotInvariant)?;
        if &g * &r != &r.transpose() * &g {
            return Err(Error::NotSelfAdjoint);
        }
        combination = &combination + &r.scale(c);
        restricted.push(chol.symmetric(&r));
    }
    let comb = chol.symmetric(&combination);
    let eig = SymmetricEigen::new(comb.clone());
    let mut order: Vec<usize> = (0..d).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let comb_norm = spectral_norm(&comb).max(f64::MIN_POSITIVE);
    let combination_gap = order
        .windows(2)
        .map(|w| (eig.eigenvalues[w[1]] - eig.eigenvalues[w[0]]) / comb_norm)
        .fold(f64::INFINITY, f64::min);
    let joint: Vec<Vec<f64>> = order
        .iter()
        .map(|&k| {
            let v = eig.eigenvectors.column(k);
            restricted.iter().map(|m| (v.transpose() * m * v)[(0, 0)]).collect()
        })
        .collect();
    let scale = restricted.iter().map(spectral_norm).fold(0.0, f64::max).max(f64::MIN_POSITIVE);
    let mut joint_gap = f64::INFINITY;
    for a in 0..d {
        for b in a + 1..d {
            let sep = joint[a].iter().zip(&joint[b]).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max);
            joint_gap = joint_gap.min(sep / scale);
        }
    }
    Ok(SimplicityReport {
        nu,
        dimension: d,
        joint_eigenvalues: joint,
        combination_gap: Some(combination_gap),
        joint_gap: Some(joint_gap),
        tol,
        certified: joint_gap > tol,
    })
}

pub(crate) fn spectral_norm(m: &DMatrix<f64>) -> f64 {
    if m.is_empty() {
        return 0.0;
    }
    SymmetricEigen::new(m.clone()).eigenvalues.iter().fold(0.0, |acc: f64, x| acc.max(x.abs()))
}
