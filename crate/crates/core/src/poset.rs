//! Finite posets stored as dense, transitively closed relations.

use std::collections::{BTreeSet, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A finite partially ordered set on the indices `0..n`.
///
/// Elements keep the index given by input order. `leq` is reflexive,
/// antisymmetric and transitive; `covers` is the Hasse diagram.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poset {
    labels: Vec<String>,
    leq: Vec<bool>,
    covers: Vec<(usize, usize)>,
}

impl fmt::Debug for Poset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Poset").field("labels", &self.labels).field("covers", &self.covers).finish()
    }
}

/// A strictly increasing sequence of pairwise comparable indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Chain(pub Vec<usize>);

impl Chain {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }
}

/// An order automorphism, stored as the image of each index.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PosetAutomorphism {
    perm: Vec<usize>,
}

impl PosetAutomorphism {
    pub fn identity(n: usize) -> Self {
        PosetAutomorphism { perm: (0..n).collect() }
    }

    /// Checks that `perm` is a bijection preserving and reflecting the order.
    pub fn new(poset: &Poset, perm: Vec<usize>) -> Result<Self> {
        let n = poset.len();
        if perm.len() != n {
            return Err(Error::NotPosetAutomorphism(format!("length {} != {n}", perm.len())));
        }
        let mut seen = vec![false; n];
        for &p in &perm {
            if p >= n || seen[p] {
                return Err(Error::NotPosetAutomorphism(format!("{perm:?} is not a permutation")));
            }
            seen[p] = true;
        }
        for i in 0..n {
            for j in 0..n {
                if poset.leq(i, j) != poset.leq(perm[i], perm[j]) {
                    return Err(Error::NotPosetAutomorphism(format!("order between {i} and {j} not preserved")));
                }
            }
        }
        Ok(PosetAutomorphism { perm })
    }

    pub fn apply(&self, x: usize) -> usize {
        self.perm[x]
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn len(&self) -> usize {
        self.perm.len()
    }

    pub fn is_empty(&self) -> bool {
        self.perm.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &p)| i == p)
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &PosetAutomorphism) -> PosetAutomorphism {
        PosetAutomorphism { perm: other.perm.iter().map(|&x| self.perm[x]).collect() }
    }

    pub fn inverse(&self) -> PosetAutomorphism {
        let mut inv = vec![0; self.perm.len()];
        for (i, &p) in self.perm.iter().enumerate() {
            inv[p] = i;
        }
        PosetAutomorphism { perm: inv }
    }
}

impl Poset {
    /// Builds the reflexive-transitive closure of `relation`.
    pub fn from_relation(labels: Vec<String>, relation: &[(usize, usize)]) -> Result<Self> {
        let n = labels.len();
        if n == 0 {
            return Err(Error::EmptyPoset);
        }
        let mut seen = HashSet::new();
        for l in &labels {
            if !seen.insert(l.as_str()) {
                return Err(Error::DuplicateLabel(l.clone()));
            }
        }
        let mut leq = vec![false; n * n];
        for i in 0..n {
            leq[i * n + i] = true;
        }
        for &(a, b) in relation {
            for index in [a, b] {
                if index >= n {
                    return Err(Error::IndexOutOfRange { index, size: n });
                }
            }
            leq[a * n + b] = true;
        }
        // Warshall
        for k in 0..n {
            for i in 0..n {
                if !leq[i * n + k] {
                    continue;
                }
                for j in 0..n {
                    if leq[k * n + j] {
                        leq[i * n + j] = true;
                    }
                }
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                if leq[i * n + j] && leq[j * n + i] {
                    return Err(Error::Cycle(labels[i].clone(), labels[j].clone()));
                }
            }
        }
        let mut poset = Poset { labels, leq, covers: Vec::new() };
        poset.covers = poset.compute_covers();
        Ok(poset)
    }

    /// Same as [`Poset::from_relation`]; the covers need not be minimal.
    pub fn from_covers(labels: Vec<String>, covers: &[(usize, usize)]) -> Result<Self> {
        Self::from_relation(labels, covers)
    }

    pub fn chain(n: usize) -> Result<Self> {
        let labels = (1..=n).map(|i| i.to_string()).collect();
        let covers: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Self::from_covers(labels, &covers)
    }

    pub fn antichain(n: usize) -> Result<Self> {
        let labels = (1..=n).map(|i| format!("a{i}")).collect();
        Self::from_covers(labels, &[])
    }

    /// Disjoint union; labels of `other` are suffixed if they collide.
    pub fn disjoint_union(&self, other: &Poset) -> Result<Self> {
        let n = self.len();
        let mut labels = self.labels.clone();
        for l in &other.labels {
            let mut l = l.clone();
            while labels.contains(&l) {
                l.push('\'');
            }
            labels.push(l);
        }
        let covers: Vec<_> =
            self.covers.iter().copied().chain(other.covers.iter().map(|&(a, b)| (a + n, b + n))).collect();
        Self::from_covers(labels, &covers)
    }

    /// Induced subposet on `indices`, which are relabelled `0..` in the given order.
    pub fn subposet(&self, indices: &[usize]) -> Result<Self> {
        for &index in indices {
            if index >= self.len() {
                return Err(Error::IndexOutOfRange { index, size: self.len() });
            }
        }
        let labels = indices.iter().map(|&i| self.labels[i].clone()).collect();
        let mut rel = Vec::new();
        for (a, &x) in indices.iter().enumerate() {
            for (b, &y) in indices.iter().enumerate() {
                if a != b && self.leq(x, y) {
                    rel.push((a, b));
                }
            }
        }
        Self::from_relation(labels, &rel)
    }

    fn compute_covers(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let mut covers = Vec::new();
        for x in 0..n {
            for y in 0..n {
                if x != y && self.leq(x, y) && !(0..n).any(|z| z != x && z != y && self.leq(x, z) && self.leq(z, y)) {
                    covers.push((x, y));
                }
            }
        }
        covers
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.leq[x * self.len() + y]
    }

    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    /// All pairs `(x, y)` with `x ⪯ y`, in row-major order.
    pub fn comparable_pairs(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        (0..n).flat_map(|x| (0..n).map(move |y| (x, y))).filter(|&(x, y)| self.leq(x, y)).collect()
    }

    pub(crate) fn check_index(&self, index: usize) -> Result<()> {
        if index < self.len() {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange { index, size: self.len() })
        }
    }

    pub fn check_comparable(&self, x: usize, y: usize) -> Result<()> {
        self.check_index(x)?;
        self.check_index(y)?;
        if self.leq(x, y) {
            Ok(())
        } else {
            Err(Error::NotComparable(x, y))
        }
    }

    /// Indices of the segment `[x, z]` in ascending index order.
    pub fn segment_indices(&self, x: usize, z: usize) -> Result<Vec<usize>> {
        self.check_comparable(x, z)?;
        Ok((0..self.len()).filter(|&y| self.leq(x, y) && self.leq(y, z)).collect())
    }

    pub fn segment(&self, x: usize, z: usize) -> Result<Poset> {
        self.subposet(&self.segment_indices(x, z)?)
    }

    /// Whether the given indices are pairwise comparable.
    pub fn is_chain(&self, indices: &[usize]) -> bool {
        indices.iter().enumerate().all(|(a, &x)| indices[a + 1..].iter().all(|&y| self.leq(x, y) || self.leq(y, x)))
    }

    pub fn minimal_elements(&self) -> Vec<usize> {
        (0..self.len()).filter(|&y| !(0..self.len()).any(|x| x != y && self.leq(x, y))).collect()
    }

    pub fn maximal_elements(&self) -> Vec<usize> {
        (0..self.len()).filter(|&x| !(0..self.len()).any(|y| x != y && self.leq(x, y))).collect()
    }

    /// Maximal chains are exactly the Hasse paths from a minimal to a
    /// maximal element; returned in lexicographic order.
    pub fn maximal_chains(&self) -> Vec<Chain> {
        let n = self.len();
        let mut up: Vec<Vec<usize>> = vec![Vec::new(); n];
        for &(a, b) in &self.covers {
            up[a].push(b);
        }
        let mut out = Vec::new();
        let mut stack: Vec<Vec<usize>> = self.minimal_elements().into_iter().map(|m| vec![m]).collect();
        while let Some(path) = stack.pop() {
            let last = *path.last().expect("paths are nonempty");
            if up[last].is_empty() {
                out.push(path);
                continue;
            }
            for &next in &up[last] {
                let mut p = path.clone();
                p.push(next);
                stack.push(p);
            }
        }
        out.sort();
        out.into_iter().map(Chain).collect()
    }

    /// Zig-zag connected components, each sorted, ordered by least index.
    pub fn connected_components(&self) -> Vec<Vec<usize>> {
        let n = self.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for &(a, b) in &self.covers {
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            if ra != rb {
                parent[ra.max(rb)] = ra.min(rb);
            }
        }
        let mut comps: Vec<Vec<usize>> = Vec::new();
        let mut root_slot = vec![usize::MAX; n];
        for x in 0..n {
            let r = find(&mut parent, x);
            if root_slot[r] == usize::MAX {
                root_slot[r] = comps.len();
                comps.push(Vec::new());
            }
            comps[root_slot[r]].push(x);
        }
        comps
    }

    /// Component index of each element, matching [`Poset::connected_components`].
    pub fn component_of(&self) -> Vec<usize> {
        let mut out = vec![0; self.len()];
        for (c, comp) in self.connected_components().iter().enumerate() {
            for &x in comp {
                out[x] = c;
            }
        }
        out
    }

    /// Length of a longest chain.
    pub fn bound(&self) -> usize {
        // heights along a linear extension
        let order = self.linear_extension();
        let mut height = vec![1usize; self.len()];
        for &y in &order {
            for &(a, b) in &self.covers {
                if b == y {
                    height[y] = height[y].max(height[a] + 1);
                }
            }
        }
        height.into_iter().max().unwrap_or(0)
    }

    /// Indices sorted so that `x ⪯ y` implies `x` comes first.
    pub fn linear_extension(&self) -> Vec<usize> {
        let n = self.len();
        let below: Vec<usize> = (0..n).map(|y| (0..n).filter(|&x| self.leq(x, y)).count()).collect();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&x| (below[x], x));
        order
    }

    fn element_invariants(&self) -> Vec<(usize, usize, usize, usize, usize)> {
        let n = self.len();
        let mut rank = vec![0usize; n];
        for &y in &self.linear_extension() {
            for &(a, b) in &self.covers {
                if b == y {
                    rank[y] = rank[y].max(rank[a] + 1);
                }
            }
        }
        (0..n)
            .map(|x| {
                let below = (0..n).filter(|&y| self.leq(y, x)).count();
                let above = (0..n).filter(|&y| self.leq(x, y)).count();
                let lower = self.covers.iter().filter(|c| c.1 == x).count();
                let upper = self.covers.iter().filter(|c| c.0 == x).count();
                (below, above, lower, upper, rank[x])
            })
            .collect()
    }

    /// The full automorphism group, identity first, in lexicographic order
    /// of the image sequences.
    pub fn automorphisms(&self) -> Vec<PosetAutomorphism> {
        let n = self.len();
        let inv = self.element_invariants();
        let mut out = Vec::new();
        let mut perm = vec![usize::MAX; n];
        let mut used = vec![false; n];
        self.extend_automorphism(0, &inv, &mut perm, &mut used, &mut out);
        out.sort();
        out
    }

    fn extend_automorphism(
        &self,
        x: usize,
        inv: &[(usize, usize, usize, usize, usize)],
        perm: &mut Vec<usize>,
        used: &mut Vec<bool>,
        out: &mut Vec<PosetAutomorphism>,
    ) {
        let n = self.len();
        if x == n {
            out.push(PosetAutomorphism { perm: perm.clone() });
            return;
        }
        for y in 0..n {
            if used[y] || inv[x] != inv[y] {
                continue;
            }
            let consistent =
                (0..x).all(|w| self.leq(w, x) == self.leq(perm[w], y) && self.leq(x, w) == self.leq(y, perm[w]));
            if !consistent {
                continue;
            }
            perm[x] = y;
            used[y] = true;
            self.extend_automorphism(x + 1, inv, perm, used, out);
            used[y] = false;
        }
        perm[x] = usize::MAX;
    }

    /// Decides whether `Aut(P)` acts transitively on the maximal chains.
    pub fn chain_transitivity(&self) -> ChainTransitivity {
        let chains = self.maximal_chains();
        let auts = self.automorphisms();
        let as_set = |c: &Chain| c.0.iter().copied().collect::<BTreeSet<_>>();
        let sets: Vec<_> = chains.iter().map(as_set).collect();
        // from_first[j] = some σ with σ(C_0) = C_j
        let mut from_first: Vec<Option<PosetAutomorphism>> = vec![None; chains.len()];
        for a in &auts {
            let image: BTreeSet<usize> = sets[0].iter().map(|&x| a.apply(x)).collect();
            if let Some(j) = sets.iter().position(|s| *s == image) {
                if from_first[j].is_none() {
                    from_first[j] = Some(a.clone());
                }
            }
        }
        if let Some(j) = from_first.iter().position(Option::is_none) {
            return ChainTransitivity::Intransitive { chains, unreachable: (0, j) };
        }
        let from_first: Vec<_> = from_first.into_iter().map(Option::unwrap).collect();
        let mut witnesses = Vec::new();
        for i in 0..chains.len() {
            for j in 0..chains.len() {
                let sigma = from_first[j].compose(&from_first[i].inverse());
                witnesses.push(ChainWitness { from: i, to: j, sigma });
            }
        }
        ChainTransitivity::Transitive { chains, witnesses }
    }

    pub fn is_chain_transitive(&self) -> bool {
        matches!(self.chain_transitivity(), ChainTransitivity::Transitive { .. })
    }

    pub fn to_file(&self) -> PosetFile {
        PosetFile {
            elements: self.labels.clone(),
            covers: Some(self.covers.iter().map(|&(a, b)| [a, b]).collect()),
            relation: None,
        }
    }

    pub fn from_file(file: &PosetFile) -> Result<Self> {
        let pairs: Vec<(usize, usize)> = match (&file.covers, &file.relation) {
            (Some(c), None) => c.iter().map(|p| (p[0], p[1])).collect(),
            (None, Some(r)) => r.iter().map(|p| (p[0], p[1])).collect(),
            (None, None) => Vec::new(),
            (Some(_), Some(_)) => return Err(Error::Parse("poset file has both \"covers\" and \"relation\"".into())),
        };
        Self::from_relation(file.elements.clone(), &pairs)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: PosetFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        Self::from_file(&file)
    }
}

/// `σ_{from,to}` maps maximal chain `from` onto maximal chain `to`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChainWitness {
    pub from: usize,
    pub to: usize,
    pub sigma: PosetAutomorphism,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ChainTransitivity {
    Transitive { chains: Vec<Chain>, witnesses: Vec<ChainWitness> },
    Intransitive { chains: Vec<Chain>, unreachable: (usize, usize) },
}

/// On-disk poset description: either Hasse covers or any generating relation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PosetFile {
    pub elements: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub covers: Option<Vec<[usize; 2]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub relation: Option<Vec<[usize; 2]>>,
}
