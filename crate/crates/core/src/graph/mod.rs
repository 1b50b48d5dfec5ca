//! Oriented graphs: finite vertex sets with an irreflexive, antisymmetric arc
//! relation.
//!
//! Graph values are immutable once built; every transformation returns a new
//! graph. Adjacency is kept as one out- and one in-bitset per vertex, which is
//! what the counting engine intersects.

mod io;

use crate::error::{Error, Result};
use crate::rational::{frac, Rational};
use crate::star::StarSpec;
use fixedbitset::FixedBitSet;
use serde::Serialize;

/// A vertex subset stored as a dense membership array over `0..n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VertexSet {
    bits: FixedBitSet,
}

impl VertexSet {
    pub fn empty(n: usize) -> Self {
        VertexSet {
            bits: FixedBitSet::with_capacity(n),
        }
    }

    pub fn all(n: usize) -> Self {
        let mut bits = FixedBitSet::with_capacity(n);
        bits.insert_range(..);
        VertexSet { bits }
    }

    pub fn from_ids(n: usize, ids: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut bits = FixedBitSet::with_capacity(n);
        for id in ids {
            if id >= n {
                return Err(Error::IdOutOfRange { id, n });
            }
            bits.insert(id);
        }
        Ok(VertexSet { bits })
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize) -> bool) -> Self {
        let mut bits = FixedBitSet::with_capacity(n);
        for v in 0..n {
            bits.set(v, f(v));
        }
        VertexSet { bits }
    }

    pub fn universe(&self) -> usize {
        self.bits.len()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.bits.contains(v)
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_clear()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.ones()
    }

    pub fn complement(&self) -> VertexSet {
        let mut bits = self.bits.clone();
        bits.toggle_range(..);
        VertexSet { bits }
    }

    pub fn is_disjoint(&self, other: &VertexSet) -> bool {
        self.bits.is_disjoint(&other.bits)
    }

    pub fn as_bitset(&self) -> &FixedBitSet {
        &self.bits
    }

    /// `|A| / n`.
    pub fn measure(&self) -> Rational {
        frac(self.len() as i64, self.universe() as i64)
    }
}

/// Neighborhood proportions of a vertex relative to a subset `A`, each
/// normalized by the order `n` of the whole graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexProfile {
    pub rho_plus: Rational,
    pub rho_minus: Rational,
    pub rho: Rational,
    /// Non-neighbors inside `A`; the vertex itself counts when it lies in `A`.
    pub rho_zero: Rational,
    pub mu: Rational,
}

/// Position of a graph vertex inside a star copy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum StarRole {
    Center,
    InLeaf,
    OutLeaf,
}

/// State of an unordered pair `{u, v}` with `u < v`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PairState {
    Absent,
    Forward,
    Backward,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OrientedGraph {
    n: usize,
    out: Vec<FixedBitSet>,
    inn: Vec<FixedBitSet>,
}

impl OrientedGraph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyGraph);
        }
        Ok(Self::edgeless(n))
    }

    fn edgeless(n: usize) -> Self {
        OrientedGraph {
            n,
            out: vec![FixedBitSet::with_capacity(n); n],
            inn: vec![FixedBitSet::with_capacity(n); n],
        }
    }

    /// Builds a graph from an arc list, rejecting loops, out-of-range ids,
    /// repeated arcs and digons.
    pub fn new(n: usize, arcs: &[(usize, usize)]) -> Result<Self> {
        let mut g = Self::empty(n)?;
        for &(u, v) in arcs {
            g.try_insert(u, v)?;
        }
        Ok(g)
    }

    fn try_insert(&mut self, u: usize, v: usize) -> Result<()> {
        for id in [u, v] {
            if id >= self.n {
                return Err(Error::IdOutOfRange { id, n: self.n });
            }
        }
        if u == v {
            return Err(Error::LoopArc(u));
        }
        if self.out[u].contains(v) {
            return Err(Error::DuplicateArc(u, v));
        }
        if self.out[v].contains(u) {
            return Err(Error::Digon(v, u));
        }
        self.insert_arc(u, v);
        Ok(())
    }

    pub(crate) fn insert_arc(&mut self, u: usize, v: usize) {
        debug_assert!(u != v && !self.out[v].contains(u));
        self.out[u].insert(v);
        self.inn[v].insert(u);
    }

    fn remove_pair(&mut self, u: usize, v: usize) {
        self.out[u].set(v, false);
        self.out[v].set(u, false);
        self.inn[u].set(v, false);
        self.inn[v].set(u, false);
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        self.out[u].contains(v)
    }

    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.out[u].contains(v) || self.inn[u].contains(v)
    }

    pub fn out_neighbors(&self, v: usize) -> &FixedBitSet {
        &self.out[v]
    }

    pub fn in_neighbors(&self, v: usize) -> &FixedBitSet {
        &self.inn[v]
    }

    pub fn neighbors(&self, v: usize) -> FixedBitSet {
        let mut nb = self.out[v].clone();
        nb.union_with(&self.inn[v]);
        nb
    }

    pub fn out_degree(&self, v: usize) -> usize {
        self.out[v].count_ones(..)
    }

    pub fn in_degree(&self, v: usize) -> usize {
        self.inn[v].count_ones(..)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.out_degree(v) + self.in_degree(v)
    }

    pub fn arc_count(&self) -> usize {
        self.out.iter().map(|s| s.count_ones(..)).sum()
    }

    /// Arcs in lexicographic order.
    pub fn arcs(&self) -> Vec<(usize, usize)> {
        (0..self.n)
            .flat_map(|u| self.out[u].ones().map(move |v| (u, v)))
            .collect()
    }

    pub fn pair_state(&self, u: usize, v: usize) -> PairState {
        if self.out[u].contains(v) {
            PairState::Forward
        } else if self.out[v].contains(u) {
            PairState::Backward
        } else {
            PairState::Absent
        }
    }

    /// Copy with the pair `{u, v}` set to `state` (`Forward` meaning `u -> v`).
    pub fn with_pair(&self, u: usize, v: usize, state: PairState) -> Result<Self> {
        self.check_id(u)?;
        self.check_id(v)?;
        if u == v {
            return Err(Error::SameVertex(u));
        }
        let mut g = self.clone();
        g.remove_pair(u, v);
        match state {
            PairState::Absent => {}
            PairState::Forward => g.insert_arc(u, v),
            PairState::Backward => g.insert_arc(v, u),
        }
        Ok(g)
    }

    pub(crate) fn check_id(&self, v: usize) -> Result<()> {
        if v >= self.n {
            Err(Error::IdOutOfRange { id: v, n: self.n })
        } else {
            Ok(())
        }
    }

    /// Every arc reversed.
    pub fn reverse(&self) -> Self {
        OrientedGraph {
            n: self.n,
            out: self.inn.clone(),
            inn: self.out.clone(),
        }
    }

    /// Proportions of out-, in-, all and non-neighbors of `v` inside `subset`.
    pub fn profile(&self, v: usize, subset: &VertexSet) -> Result<VertexProfile> {
        self.check_id(v)?;
        if subset.universe() != self.n {
            return Err(Error::IdOutOfRange {
                id: subset.universe(),
                n: self.n,
            });
        }
        let a = subset.as_bitset();
        let plus = self.out[v].intersection(a).count();
        let minus = self.inn[v].intersection(a).count();
        let size = subset.len();
        let n = self.n as i64;
        Ok(VertexProfile {
            rho_plus: frac(plus as i64, n),
            rho_minus: frac(minus as i64, n),
            rho: frac((plus + minus) as i64, n),
            rho_zero: frac((size - plus - minus) as i64, n),
            mu: frac(size as i64, n),
        })
    }

    /// Replaces every vertex by an independent set of size `t`; vertex `v`
    /// becomes `v * t .. v * t + t`.
    pub fn blow_up(&self, t: usize) -> Result<Self> {
        if t == 0 {
            return Err(Error::Domain {
                name: "t",
                value: 0.0,
                domain: "t >= 1",
            });
        }
        let size = self.n.checked_mul(t).ok_or(Error::Overflow("n * t"))?;
        let mut g = Self::edgeless(size);
        for (u, v) in self.arcs() {
            for i in 0..t {
                for j in 0..t {
                    g.insert_arc(u * t + i, v * t + j);
                }
            }
        }
        Ok(g)
    }

    /// Deletes `v` and adds a non-adjacent twin `u'` of `u` in its place
    /// (same id as `v`), copying `u`'s neighborhood inside `G - v`.
    pub fn clone_replace(&self, u: usize, v: usize) -> Result<Self> {
        self.check_id(u)?;
        self.check_id(v)?;
        if u == v {
            return Err(Error::SameVertex(u));
        }
        let mut g = self.clone();
        for w in 0..self.n {
            if w != v {
                g.remove_pair(v, w);
            }
        }
        for w in self.out[u].ones().filter(|&w| w != v) {
            g.insert_arc(v, w);
        }
        for w in self.inn[u].ones().filter(|&w| w != v) {
            g.insert_arc(w, v);
        }
        Ok(g)
    }

    /// Whether the listed vertices, with the given roles, induce exactly the
    /// star `spec` (center to each out-leaf, each in-leaf to the center, no
    /// other arcs). Repeated vertices never form a copy.
    pub fn induced_star_check(&self, roles: &[(usize, StarRole)], spec: &StarSpec) -> Result<bool> {
        let expected = spec.order();
        let count = |r: StarRole| roles.iter().filter(|(_, x)| *x == r).count();
        if roles.len() != expected
            || count(StarRole::Center) != 1
            || count(StarRole::OutLeaf) != spec.out_leaves()
            || count(StarRole::InLeaf) != spec.in_leaves()
        {
            return Err(Error::WrongCardinality {
                expected,
                got: roles.len(),
            });
        }
        for &(v, _) in roles {
            self.check_id(v)?;
        }
        let center = roles
            .iter()
            .find(|(_, r)| *r == StarRole::Center)
            .map(|(v, _)| *v)
            .unwrap_or(0);
        let leaves: Vec<(usize, StarRole)> = roles
            .iter()
            .copied()
            .filter(|(_, r)| *r != StarRole::Center)
            .collect();
        for (i, &(a, ra)) in leaves.iter().enumerate() {
            if a == center {
                return Ok(false);
            }
            let ok = match ra {
                StarRole::OutLeaf => self.has_arc(center, a),
                _ => self.has_arc(a, center),
            };
            if !ok {
                return Ok(false);
            }
            for &(b, _) in &leaves[i + 1..] {
                if a == b || self.adjacent(a, b) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}
