//! Cactus words.
//!
//! The cactus group `J_n` is generated by involutions `s_{p,q}`
//! (`1 <= p < q <= n`) subject to
//!
//! * `s_{p,q}^2 = e`,
//! * `s_{p1,q1} s_{p2,q2} = s_{p2,q2} s_{p1,q1}` when `q1 < p2`,
//! * `s_{p1,q1} s_{p2,q2} s_{p1,q1} = s_{p1+q1-q2, p1+q1-p2}` when
//!   `p1 <= p2 < q2 <= q1`.
//!
//! Words are read right to left: the rightmost generator acts first. No
//! normal form is computed; two words are compared through their actions.

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// The generator `s_{p,q}` of `J_n`. Indices are 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CactusGenerator {
    p: usize,
    q: usize,
    n: usize,
}

impl CactusGenerator {
    pub fn new(p: usize, q: usize, n: usize) -> Result<Self> {
        if p >= 1 && p < q && q <= n {
            Ok(Self { p, q, n })
        } else {
            Err(Error::InvalidGenerator { p, q, n })
        }
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn arity(&self) -> usize {
        self.n
    }

    /// All generators of `J_n`, ordered by `(p, q)`.
    pub fn all(n: usize) -> Vec<Self> {
        let mut out = Vec::new();
        for p in 1..=n {
            for q in p + 1..=n {
                out.push(Self { p, q, n });
            }
        }
        out
    }

    /// The segment reversal `s̄_{p,q}` in `S_n`.
    pub fn reversal(&self) -> Permutation {
        let mut images: Vec<usize> = (1..=self.n).collect();
        images[self.p - 1..self.q].reverse();
        Permutation { images }
    }
}

impl fmt::Display for CactusGenerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "s_{{{},{}}}", self.p, self.q)
    }
}

/// A word in the generators of `J_n`; the rightmost generator acts first.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CactusWord {
    n: usize,
    gens: Vec<CactusGenerator>,
}

impl CactusWord {
    pub fn identity(n: usize) -> Self {
        Self { n, gens: Vec::new() }
    }

    pub fn new(n: usize, gens: Vec<CactusGenerator>) -> Result<Self> {
        for g in &gens {
            if g.n != n {
                return Err(Error::ArityMismatch { expected: n, found: g.n });
            }
        }
        Ok(Self { n, gens })
    }

    /// Builds a word from `(p, q)` pairs, validating each one.
    pub fn from_pairs(n: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        let gens = pairs.iter().map(|&(p, q)| CactusGenerator::new(p, q, n)).collect::<Result<Vec<_>>>()?;
        Ok(Self { n, gens })
    }

    pub fn single(g: CactusGenerator) -> Self {
        Self { n: g.n, gens: vec![g] }
    }

    /// The word `s_{[k,l,m]} = s_{k,m} s_{k,l} s_{l+1,m}` swapping the
    /// adjacent blocks `[k,l]` and `[l+1,m]`. Trivial factors `s_{x,x}` are
    /// dropped.
    pub fn block_swap(n: usize, k: usize, l: usize, m: usize) -> Result<Self> {
        if !(1 <= k && k <= l && l < m && m <= n) {
            return Err(Error::InvalidGenerator { p: k, q: m, n });
        }
        let mut gens = vec![CactusGenerator::new(k, m, n)?];
        if k < l {
            gens.push(CactusGenerator::new(k, l, n)?);
        }
        if l + 1 < m {
            gens.push(CactusGenerator::new(l + 1, m, n)?);
        }
        Ok(Self { n, gens })
    }

    pub fn arity(&self) -> usize {
        self.n
    }

    pub fn gens(&self) -> &[CactusGenerator] {
        &self.gens
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    /// The product `self · other` (so `other` acts first).
    pub fn then_after(&self, other: &CactusWord) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::ArityMismatch { expected: self.n, found: other.n });
        }
        let mut gens = self.gens.clone();
        gens.extend_from_slice(&other.gens);
        Ok(Self { n: self.n, gens })
    }

    /// Generators are involutions, so the inverse is the reversed word.
    pub fn inverse(&self) -> Self {
        let mut gens = self.gens.clone();
        gens.reverse();
        Self { n: self.n, gens }
    }

    pub fn pairs(&self) -> Vec<[usize; 2]> {
        self.gens.iter().map(|g| [g.p, g.q]).collect()
    }
}

impl fmt::Display for CactusWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.gens.is_empty() {
            return write!(f, "e");
        }
        let parts: Vec<String> = self.gens.iter().map(|g| g.to_string()).collect();
        write!(f, "{}", parts.join(" "))
    }
}

#[derive(Serialize, Deserialize)]
struct WordRepr {
    n: usize,
    gens: Vec<[usize; 2]>,
}

impl Serialize for CactusWord {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        WordRepr { n: self.n, gens: self.pairs() }.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for CactusWord {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = WordRepr::deserialize(deserializer)?;
        let pairs: Vec<(usize, usize)> = repr.gens.iter().map(|g| (g[0], g[1])).collect();
        CactusWord::from_pairs(repr.n, &pairs).map_err(serde::de::Error::custom)
    }
}

/// A permutation of tensor positions, stored as an arrangement:
/// `images[i - 1]` is the original index now sitting at position `i`.
///
/// The arrangement of `[s_{1,3}, s_{1,2}]` on three factors is `[3, 1, 2]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Self { images: (1..=n).collect() }
    }

    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i == 0 || i > n || seen[i - 1] {
                return Err(Error::InvalidPermutation(images));
            }
            seen[i - 1] = true;
        }
        Ok(Self { images })
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| x == i + 1)
    }

    /// Rearranges `items` by this arrangement: `out[i] = items[images[i] - 1]`.
    pub fn arrange<T: Clone>(&self, items: &[T]) -> Vec<T> {
        self.images.iter().map(|&i| items[i - 1].clone()).collect()
    }

    /// Arrangement obtained by applying `step` after `self`.
    pub fn followed_by(&self, step: &Permutation) -> Permutation {
        Permutation { images: step.arrange(&self.images) }
    }
}

impl TryFrom<Vec<usize>> for Permutation {
    type Error = Error;

    fn try_from(images: Vec<usize>) -> Result<Self> {
        Permutation::new(images)
    }
}

impl From<Permutation> for Vec<usize> {
    fn from(p: Permutation) -> Self {
        p.images
    }
}

/// Swap of the adjacent blocks `[start, mid]` and `[mid + 1, end]`
/// (1-based, inclusive).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BlockSwap {
    pub start: usize,
    pub mid: usize,
    pub end: usize,
}

impl BlockSwap {
    /// Arrangement transposing the two blocks inside `[1, n]`.
    pub fn permutation(&self, n: usize) -> Permutation {
        let mut images: Vec<usize> = (1..=self.start.saturating_sub(1)).collect();
        images.extend(self.mid + 1..=self.end);
        images.extend(self.start..=self.mid);
        images.extend(self.end + 1..=n);
        Permutation { images }
    }

    pub fn left_len(&self) -> usize {
        self.mid + 1 - self.start
    }
}

impl fmt::Display for BlockSwap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "swap([{},{}],[{},{}])", self.start, self.mid, self.mid + 1, self.end)
    }
}

/// Image of a word under `π: J_n → S_n`, as an arrangement.
pub fn project_to_symmetric(word: &CactusWord) -> Permutation {
    word.gens.iter().rev().fold(Permutation::identity(word.n), |acc, g| acc.followed_by(&g.reversal()))
}

/// A word is pure when it lies in the kernel of `π`.
pub fn is_pure(word: &CactusWord) -> bool {
    project_to_symmetric(word).is_identity()
}

/// All instances of the defining relations of `J_n` as pairs of words with
/// equal value. The nesting family skips `(p2, q2) = (p1, q1)`, which is a
/// consequence of the involution relation.
pub fn relation_instances(n: usize) -> Vec<(CactusWord, CactusWord)> {
    let gens = CactusGenerator::all(n);
    let mut out = Vec::new();
    for &g in &gens {
        out.push((CactusWord { n, gens: vec![g, g] }, CactusWord::identity(n)));
    }
    for &a in &gens {
        for &b in &gens {
            if a.q < b.p {
                out.push((CactusWord { n, gens: vec![a, b] }, CactusWord { n, gens: vec![b, a] }));
            }
        }
    }
    for &a in &gens {
        for &b in &gens {
            if a.p <= b.p && b.q <= a.q && (a.p, a.q) != (b.p, b.q) {
                let c = CactusGenerator { p: a.p + a.q - b.q, q: a.p + a.q - b.p, n };
                out.push((CactusWord { n, gens: vec![a, b, a] }, CactusWord { n, gens: vec![c] }));
            }
        }
    }
    out
}

/// Unrolls `s_{p,q} = swap([p,q-1],{q}) ∘ s_{p,q-1}` into block swaps.
/// The returned list is read right to left like a word.
pub fn decompose_generator(g: &CactusGenerator) -> Vec<BlockSwap> {
    (g.p + 1..=g.q).rev().map(|end| BlockSwap { start: g.p, mid: end - 1, end }).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn word(n: usize, pairs: &[(usize, usize)]) -> CactusWord {
        CactusWord::from_pairs(n, pairs).unwrap()
    }

    #[test]
    fn projection_examples() {
        assert!(project_to_symmetric(&CactusWord::identity(3)).is_identity());
        assert_eq!(project_to_symmetric(&word(2, &[(1, 2)])).images(), &[2, 1]);
        // (1,2,3) -> s12 -> (2,1,3) -> s13 -> (3,1,2)
        assert_eq!(project_to_symmetric(&word(3, &[(1, 3), (1, 2)])).images(), &[3, 1, 2]);
    }

    #[test]
    fn purity_examples() {
        assert!(is_pure(&word(2, &[(1, 2), (1, 2)])));
        assert!(!is_pure(&word(2, &[(1, 2)])));
        // (1,2,3) -> (2,1,3) -> (3,1,2) -> (3,2,1)
        let w = word(3, &[(2, 3), (1, 3), (1, 2)]);
        assert_eq!(project_to_symmetric(&w).images(), &[3, 2, 1]);
        assert!(!is_pure(&w));
    }

    #[test]
    fn malformed_generators_rejected() {
        assert!(CactusGenerator::new(2, 2, 3).is_err());
        assert!(CactusGenerator::new(0, 2, 3).is_err());
        assert!(CactusGenerator::new(1, 4, 3).is_err());
        let g = CactusGenerator::new(1, 2, 2).unwrap();
        assert!(CactusWord::new(3, vec![g]).is_err());
    }

    #[test]
    fn relation_examples() {
        let r2 = relation_instances(2);
        assert_eq!(r2, vec![(word(2, &[(1, 2), (1, 2)]), CactusWord::identity(2))]);
        let r4 = relation_instances(4);
        assert!(r4.contains(&(word(4, &[(1, 2), (3, 4)]), word(4, &[(3, 4), (1, 2)]))));
        let r3 = relation_instances(3);
        assert!(r3.contains(&(word(3, &[(1, 3), (1, 2), (1, 3)]), word(3, &[(2, 3)]))));
    }

    #[test]
    fn decomposition_examples() {
        let d = |p, q, n| decompose_generator(&CactusGenerator::new(p, q, n).unwrap());
        assert_eq!(d(1, 2, 2), vec![BlockSwap { start: 1, mid: 1, end: 2 }]);
        assert_eq!(d(1, 3, 3), vec![BlockSwap { start: 1, mid: 2, end: 3 }, BlockSwap { start: 1, mid: 1, end: 2 }]);
        assert_eq!(d(2, 4, 4), vec![BlockSwap { start: 2, mid: 3, end: 4 }, BlockSwap { start: 2, mid: 2, end: 3 }]);
    }

    #[test]
    fn relations_respected_by_projection() {
        for n in 2..=5 {
            for (lhs, rhs) in relation_instances(n) {
                assert_eq!(project_to_symmetric(&lhs), project_to_symmetric(&rhs), "{lhs} = {rhs}");
            }
        }
    }

    #[test]
    fn decomposition_projects_to_reversal() {
        for n in 2..=6 {
            for g in CactusGenerator::all(n) {
                let perm = decompose_generator(&g)
                    .iter()
                    .rev()
                    .fold(Permutation::identity(n), |acc, s| acc.followed_by(&s.permutation(n)));
                assert_eq!(perm, g.reversal(), "{g}");
            }
        }
    }

    #[test]
    fn squares_of_generators_are_pure() {
        for g in CactusGenerator::all(5) {
            assert!(is_pure(&CactusWord { n: 5, gens: vec![g, g] }));
        }
    }

    #[test]
    fn block_swap_word_projects_to_block_transposition() {
        for n in 2..=5 {
            for k in 1..=n {
                for l in k..n {
                    for m in l + 1..=n {
                        let w = CactusWord::block_swap(n, k, l, m).unwrap();
                        let s = BlockSwap { start: k, mid: l, end: m };
                        assert_eq!(project_to_symmetric(&w), s.permutation(n));
                    }
                }
            }
        }
    }

    #[test]
    fn json_format() {
        let w = word(3, &[(1, 3), (1, 2)]);
        let s = serde_json::to_string(&w).unwrap();
        assert_eq!(s, r#"{"n":3,"gens":[[1,3],[1,2]]}"#);
        let back: CactusWord = serde_json::from_str(&s).unwrap();
        assert_eq!(back, w);
        assert!(serde_json::from_str::<CactusWord>(r#"{"n":2,"gens":[[1,3]]}"#).is_err());
    }
}
