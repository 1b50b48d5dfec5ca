//! Induced-star counting.
//!
//! A copy of `S_{k,l}` with center `c` is a choice of `k` out-neighbors and
//! `l` in-neighbors of `c` that are pairwise non-adjacent. The fast path
//! therefore counts, per center, the independent sets of prescribed
//! composition inside the neighborhood, branching on the vertex with the
//! most neighbors left in the pool and closing with binomials once the pool
//! is independent. The oracle path enumerates every `(m+1)`-subset.

use crate::graph::{OrientedGraph, VertexSet};
use crate::rational::binomial;
use crate::star::StarSpec;
use fixedbitset::FixedBitSet;
use rayon::prelude::*;

/// Per-vertex tallies of the copies a vertex belongs to, by role.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct RoleCounts {
    pub center: Vec<u128>,
    pub in_leaf: Vec<u128>,
    pub out_leaf: Vec<u128>,
}

/// Copies split by where the center and the leaves fall relative to a vertex
/// subset `X` (complement `Y`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct TypedCounts {
    /// center in `X`, all leaves in `Y`
    pub type1: u128,
    /// center in `Y`, all leaves in `X`
    pub type2: u128,
    /// every vertex in `X`
    pub type_x: u128,
    /// every vertex in `Y`
    pub type_y: u128,
    /// leaves on both sides
    pub type0: u128,
}

impl TypedCounts {
    pub fn total(&self) -> u128 {
        self.type1 + self.type2 + self.type_x + self.type_y + self.type0
    }
}

pub(crate) struct Counter<'g> {
    g: &'g OrientedGraph,
    nbr: Vec<FixedBitSet>,
}

impl<'g> Counter<'g> {
    pub(crate) fn new(g: &'g OrientedGraph) -> Self {
        let nbr = (0..g.n()).map(|v| g.neighbors(v)).collect();
        Counter { g, nbr }
    }

    /// Independent sets with `a` vertices from `outp` and `b` from `inp`
    /// (the two pools are disjoint).
    pub(crate) fn independent(
        &self,
        outp: &FixedBitSet,
        inp: &FixedBitSet,
        a: usize,
        b: usize,
    ) -> u128 {
        let no = outp.count_ones(..);
        let ni = inp.count_ones(..);
        if a > no || b > ni {
            return 0;
        }
        if a == 0 && b == 0 {
            return 1;
        }
        let empty = FixedBitSet::with_capacity(self.g.n());
        let outp = if a == 0 { &empty } else { outp };
        let inp = if b == 0 { &empty } else { inp };
        let mut pool = outp.clone();
        pool.union_with(inp);

        let mut best = None;
        let mut best_deg = 0;
        for u in pool.ones() {
            let d = self.nbr[u].intersection(&pool).count();
            if d > best_deg {
                best_deg = d;
                best = Some(u);
            }
        }
        let Some(u) = best else {
            return binomial(no as u128, a as u128) * binomial(ni as u128, b as u128);
        };

        let mut out_ex = outp.clone();
        let mut in_ex = inp.clone();
        out_ex.set(u, false);
        in_ex.set(u, false);
        let skip = self.independent(&out_ex, &in_ex, a, b);

        let mut out_in = out_ex;
        let mut in_in = in_ex;
        out_in.difference_with(&self.nbr[u]);
        in_in.difference_with(&self.nbr[u]);
        let take = if outp.contains(u) {
            self.independent(&out_in, &in_in, a - 1, b)
        } else {
            self.independent(&out_in, &in_in, a, b - 1)
        };
        skip + take
    }

    fn centered_at(&self, c: usize, spec: &StarSpec, restrict: Option<&FixedBitSet>) -> u128 {
        let mut outp = self.g.out_neighbors(c).clone();
        let mut inp = self.g.in_neighbors(c).clone();
        if let Some(r) = restrict {
            outp.intersect_with(r);
            inp.intersect_with(r);
        }
        self.independent(&outp, &inp, spec.out_leaves(), spec.in_leaves())
    }

    /// Copies with center `c` that use `u` as a leaf on the side selected by
    /// `u_is_out` (then `u` is an out-neighbor of `c`).
    fn with_leaf(&self, c: usize, u: usize, u_is_out: bool, spec: &StarSpec) -> u128 {
        let mut outp = self.g.out_neighbors(c).clone();
        let mut inp = self.g.in_neighbors(c).clone();
        outp.difference_with(&self.nbr[u]);
        inp.difference_with(&self.nbr[u]);
        outp.set(u, false);
        inp.set(u, false);
        let (a, b) = (spec.out_leaves(), spec.in_leaves());
        if u_is_out {
            self.independent(&outp, &inp, a - 1, b)
        } else {
            self.independent(&outp, &inp, a, b - 1)
        }
    }
}

fn is_star(g: &OrientedGraph, set: &[usize], spec: &StarSpec) -> Option<usize> {
    let mut arcs = 0;
    let mut center = None;
    for &u in set {
        let mut out = 0;
        let mut inn = 0;
        for &w in set {
            if g.has_arc(u, w) {
                out += 1;
            } else if g.has_arc(w, u) {
                inn += 1;
            }
        }
        arcs += out;
        if out == spec.out_leaves() && inn == spec.in_leaves() {
            center = Some(u);
        }
    }
    if arcs == spec.m() {
        center
    } else {
        None
    }
}

/// Calls `f(center, members)` for every induced copy, by plain enumeration
/// of all `(m+1)`-subsets.
pub(crate) fn for_each_copy_oracle(
    g: &OrientedGraph,
    spec: &StarSpec,
    mut f: impl FnMut(usize, &[usize]),
) {
    let r = spec.order();
    let n = g.n();
    if n < r {
        return;
    }
    let mut idx: Vec<usize> = (0..r).collect();
    loop {
        if let Some(c) = is_star(g, &idx, spec) {
            f(c, &idx);
        }
        // next combination in lexicographic order
        let mut i = r;
        while i > 0 && idx[i - 1] == i - 1 + n - r {
            i -= 1;
        }
        if i == 0 {
            return;
        }
        idx[i - 1] += 1;
        for j in i..r {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Reference count: checks every `(m+1)`-subset for an induced copy.
pub fn count_oracle(g: &OrientedGraph, spec: &StarSpec) -> u128 {
    let mut count = 0u128;
    for_each_copy_oracle(g, spec, |_, _| count += 1);
    count
}

/// Exact count by per-center independent-set counting; agrees with
/// [`count_oracle`]. Small graphs (`n <= m + 3`) go straight to the oracle.
pub fn count_fast(g: &OrientedGraph, spec: &StarSpec) -> u128 {
    if g.n() <= spec.m() + 3 {
        return count_oracle(g, spec);
    }
    let counter = Counter::new(g);
    (0..g.n())
        .into_par_iter()
        .map(|c| counter.centered_at(c, spec, None))
        .sum()
}

/// Number of induced stars with `a` out-leaves and `b` in-leaves, for any
/// `a, b >= 0` (including the degenerate shapes a [`StarSpec`] rejects).
pub(crate) fn count_shape(g: &OrientedGraph, a: usize, b: usize) -> u128 {
    let counter = Counter::new(g);
    (0..g.n())
        .map(|c| counter.independent(g.out_neighbors(c), g.in_neighbors(c), a, b))
        .sum()
}

/// Number of copies each vertex takes part in, by role.
pub fn role_counts(g: &OrientedGraph, spec: &StarSpec) -> RoleCounts {
    let counter = Counter::new(g);
    let per_vertex: Vec<(u128, u128, u128)> = (0..g.n())
        .into_par_iter()
        .map(|u| {
            let center = counter.centered_at(u, spec, None);
            let out_leaf = g
                .in_neighbors(u)
                .ones()
                .map(|c| counter.with_leaf(c, u, true, spec))
                .sum();
            let in_leaf = g
                .out_neighbors(u)
                .ones()
                .map(|c| counter.with_leaf(c, u, false, spec))
                .sum();
            (center, in_leaf, out_leaf)
        })
        .collect();
    RoleCounts {
        center: per_vertex.iter().map(|t| t.0).collect(),
        in_leaf: per_vertex.iter().map(|t| t.1).collect(),
        out_leaf: per_vertex.iter().map(|t| t.2).collect(),
    }
}

/// Role counts by enumeration; test reference for [`role_counts`].
pub fn role_counts_oracle(g: &OrientedGraph, spec: &StarSpec) -> RoleCounts {
    let n = g.n();
    let mut rc = RoleCounts {
        center: vec![0; n],
        in_leaf: vec![0; n],
        out_leaf: vec![0; n],
    };
    for_each_copy_oracle(g, spec, |c, members| {
        rc.center[c] += 1;
        for &u in members.iter().filter(|&&u| u != c) {
            if g.has_arc(c, u) {
                rc.out_leaf[u] += 1;
            } else {
                rc.in_leaf[u] += 1;
            }
        }
    });
    rc
}

/// `pairs[u][v]`: copies containing both `u` and `v` (zero on the diagonal).
/// Enumeration only.
pub fn pair_counts_oracle(g: &OrientedGraph, spec: &StarSpec) -> Vec<Vec<u128>> {
    let n = g.n();
    let mut pairs = vec![vec![0u128; n]; n];
    for_each_copy_oracle(g, spec, |_, members| {
        for &u in members {
            for &v in members {
                if u != v {
                    pairs[u][v] += 1;
                }
            }
        }
    });
    pairs
}

/// Copies split by the position of center and leaves relative to `x`.
pub fn typed_counts(g: &OrientedGraph, spec: &StarSpec, x: &VertexSet) -> TypedCounts {
    let counter = Counter::new(g);
    let xs = x.as_bitset().clone();
    let ys = x.complement().as_bitset().clone();
    let parts: Vec<TypedCounts> = (0..g.n())
        .into_par_iter()
        .map(|c| {
            let total = counter.centered_at(c, spec, None);
            let in_x = counter.centered_at(c, spec, Some(&xs));
            let in_y = counter.centered_at(c, spec, Some(&ys));
            let mixed = total - in_x - in_y;
            if x.contains(c) {
                TypedCounts {
                    type1: in_y,
                    type_x: in_x,
                    type0: mixed,
                    ..Default::default()
                }
            } else {
                TypedCounts {
                    type2: in_x,
                    type_y: in_y,
                    type0: mixed,
                    ..Default::default()
                }
            }
        })
        .collect();
    parts
        .iter()
        .fold(TypedCounts::default(), |acc, t| TypedCounts {
            type1: acc.type1 + t.type1,
            type2: acc.type2 + t.type2,
            type_x: acc.type_x + t.type_x,
            type_y: acc.type_y + t.type_y,
            type0: acc.type0 + t.type0,
        })
}

/// Typed split by enumeration; test reference for [`typed_counts`].
pub fn typed_counts_oracle(g: &OrientedGraph, spec: &StarSpec, x: &VertexSet) -> TypedCounts {
    let mut t = TypedCounts::default();
    for_each_copy_oracle(g, spec, |c, members| {
        let leaves_in_x = members.iter().filter(|&&u| u != c && x.contains(u)).count();
        let all_x = leaves_in_x == spec.m();
        let all_y = leaves_in_x == 0;
        match (x.contains(c), all_x, all_y) {
            (true, true, _) => t.type_x += 1,
            (true, _, true) => t.type1 += 1,
            (false, true, _) => t.type2 += 1,
            (false, _, true) => t.type_y += 1,
            _ => t.type0 += 1,
        }
    });
    t
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(k: usize, l: usize) -> StarSpec {
        StarSpec::new(k, l).unwrap()
    }

    #[test]
    fn small_cases() {
        let star = OrientedGraph::new(4, &[(0, 1), (0, 2), (3, 0)]).unwrap();
        assert_eq!(count_oracle(&star, &spec(2, 1)), 1);
        assert_eq!(count_oracle(&star, &spec(1, 2)), 0);
        assert_eq!(count_oracle(&star.reverse(), &spec(1, 2)), 1);
        let tri = OrientedGraph::new(3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        assert_eq!(count_oracle(&tri, &spec(1, 1)), 0);
        let c4 = OrientedGraph::new(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        assert_eq!(count_oracle(&c4, &spec(1, 1)), 4);
        assert_eq!(
            count_oracle(&OrientedGraph::empty(2).unwrap(), &spec(1, 1)),
            0
        );
    }

    #[test]
    fn fast_path_on_empty_and_complete_bipartite() {
        let g = OrientedGraph::empty(10).unwrap();
        for (k, l) in [(1, 1), (2, 1), (3, 3)] {
            assert_eq!(count_fast(&g, &spec(k, l)), 0);
        }
        // K_{2,8}, X = {0,1}; each x sends arcs to 0..5 and receives from 6..7
        let mut arcs = vec![];
        for x in 0..2 {
            for y in 2..10 {
                arcs.push(if y < 8 { (x, y) } else { (y, x) });
            }
        }
        let g = OrientedGraph::new(10, &arcs).unwrap();
        // center x: C(6,2) * C(2,1) = 30 each; center y needs 3 leaves in X: none
        assert_eq!(count_fast(&g, &spec(2, 1)), 60);
        assert_eq!(count_oracle(&g, &spec(2, 1)), 60);
    }

    #[test]
    fn role_counts_match_enumeration() {
        let g = OrientedGraph::new(
            8,
            &[
                (0, 1),
                (0, 2),
                (3, 0),
                (4, 0),
                (1, 5),
                (6, 2),
                (7, 3),
                (4, 6),
                (0, 7),
            ],
        )
        .unwrap();
        for (k, l) in [(1, 1), (2, 1), (1, 2), (2, 2), (3, 1)] {
            let s = spec(k, l);
            let fast = role_counts(&g, &s);
            assert_eq!(fast, role_counts_oracle(&g, &s), "{s}");
            assert_eq!(fast.center.iter().sum::<u128>(), count_oracle(&g, &s));
        }
    }
}
