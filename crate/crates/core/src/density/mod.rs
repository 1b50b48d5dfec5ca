//! Induced-star densities.
//!
//! For a graph `G` on `n` vertices and the star `S = S_{k,l}` with `m = k + l`
//! leaves:
//!
//! * `i(S, G)` is the number of induced copies divided by `C(n, m+1)`;
//! * `s(G)` is the probability that a uniformly random map
//!   `V(S) -> V(G)` (repetitions allowed) is an isomorphism onto an induced
//!   copy, i.e. `count * k! * l! / n^(m+1)`.
//!
//! Per-vertex conditionals `s(z -> v)` fix the image of one star vertex `z`;
//! `s(v)` averages them over a uniformly random `z`, and `s(u, v)` averages
//! over ordered pairs of distinct star vertices.

mod count;
mod mc;

pub(crate) use count::count_shape;
pub use count::{
    count_fast, count_oracle, pair_counts_oracle, role_counts, role_counts_oracle, typed_counts,
    typed_counts_oracle, RoleCounts, TypedCounts,
};
pub use mc::{monte_carlo_s, monte_carlo_vertex, McEstimate};

use crate::error::Result;
use crate::graph::{OrientedGraph, VertexSet};
use crate::rational::{binomial_big, factorial_u128, frac, from_u128, int, Rational};
use crate::star::StarSpec;
use num_bigint::BigInt;

#[derive(Debug, Clone, PartialEq)]
pub struct DensityReport {
    pub count: u128,
    pub i_density: Rational,
    pub s_density: Rational,
    pub n: usize,
    pub spec: StarSpec,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexDensity {
    pub s_v: Rational,
    pub s_center: Rational,
    pub s_inleaf: Rational,
    pub s_outleaf: Rational,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TypedDensities {
    pub s1: Rational,
    pub s2: Rational,
    pub s_x: Rational,
    pub s_y: Rational,
    pub s0: Rational,
    pub x: VertexSet,
}

impl TypedDensities {
    pub fn total(&self) -> Rational {
        &self.s1 + &self.s2 + &self.s_x + &self.s_y + &self.s0
    }
}

fn n_pow(n: usize, e: usize) -> BigInt {
    num_traits::pow(BigInt::from(n), e)
}

/// `count * k! l! / n^(m+1)`.
pub fn s_from_count(count: u128, n: usize, spec: &StarSpec) -> Rational {
    frac(
        BigInt::from(count) * BigInt::from(spec.automorphisms()),
        n_pow(n, spec.order()),
    )
}

/// `count / C(n, m+1)`, zero when `n < m + 1`.
pub fn i_from_count(count: u128, n: usize, spec: &StarSpec) -> Rational {
    let total = binomial_big(n, spec.order());
    if total == num_bigint::BigUint::from(0u8) {
        return int(0);
    }
    frac(BigInt::from(count), BigInt::from(total))
}

pub fn density_report(g: &OrientedGraph, spec: &StarSpec) -> DensityReport {
    report_from_count(count_fast(g, spec), g.n(), spec)
}

pub fn report_from_count(count: u128, n: usize, spec: &StarSpec) -> DensityReport {
    DensityReport {
        count,
        i_density: i_from_count(count, n, spec),
        s_density: s_from_count(count, n, spec),
        n,
        spec: *spec,
    }
}

/// Converts role counts to the conditionals `s(c -> v)`, `s(i -> v)`,
/// `s(o -> v)` and `s(v)`.
pub fn vertex_densities_from_counts(
    rc: &RoleCounts,
    n: usize,
    spec: &StarSpec,
) -> Vec<VertexDensity> {
    let (a, b) = (spec.out_leaves(), spec.in_leaves());
    let denom = n_pow(n, spec.m());
    let w_center = BigInt::from(factorial_u128(a) * factorial_u128(b));
    // maps sending one fixed in-leaf (resp. out-leaf) to v, per copy
    let w_in = BigInt::from(factorial_u128(a) * factorial_u128(b - 1));
    let w_out = BigInt::from(factorial_u128(a - 1) * factorial_u128(b));
    (0..n)
        .map(|v| {
            let s_center = frac(BigInt::from(rc.center[v]) * &w_center, denom.clone());
            let s_inleaf = frac(BigInt::from(rc.in_leaf[v]) * &w_in, denom.clone());
            let s_outleaf = frac(BigInt::from(rc.out_leaf[v]) * &w_out, denom.clone());
            let s_v = (&s_center + &s_inleaf * int(b as i64) + &s_outleaf * int(a as i64))
                / int(spec.order() as i64);
            VertexDensity {
                s_v,
                s_center,
                s_inleaf,
                s_outleaf,
            }
        })
        .collect()
}

pub fn vertex_densities(g: &OrientedGraph, spec: &StarSpec) -> Vec<VertexDensity> {
    vertex_densities_from_counts(&role_counts(g, spec), g.n(), spec)
}

pub fn vertex_density(g: &OrientedGraph, v: usize, spec: &StarSpec) -> Result<VertexDensity> {
    g.check_id(v)?;
    Ok(vertex_densities(g, spec).swap_remove(v))
}

/// `s(u, v)` for all ordered pairs; computed by enumeration only.
pub fn pair_densities(g: &OrientedGraph, spec: &StarSpec) -> Vec<Vec<Rational>> {
    let pairs = pair_counts_oracle(g, spec);
    let m = spec.m();
    let denom = n_pow(g.n(), m - 1) * BigInt::from((m + 1) * m);
    let w = BigInt::from(spec.automorphisms());
    pairs
        .into_iter()
        .map(|row| {
            row.into_iter()
                .map(|c| frac(BigInt::from(c) * &w, denom.clone()))
                .collect()
        })
        .collect()
}

/// `{v : rho(v) >= 1/2}`.
pub fn high_degree_set(g: &OrientedGraph) -> VertexSet {
    VertexSet::from_fn(g.n(), |v| 2 * g.degree(v) >= g.n())
}

/// Typed decomposition of `s(G)` relative to `x` (default: the high-degree
/// set).
pub fn typed_densities(
    g: &OrientedGraph,
    spec: &StarSpec,
    x: Option<&VertexSet>,
) -> Result<TypedDensities> {
    let x = match x {
        Some(x) => {
            if x.universe() != g.n() {
                return Err(crate::Error::IdOutOfRange {
                    id: x.universe(),
                    n: g.n(),
                });
            }
            x.clone()
        }
        None => high_degree_set(g),
    };
    let t = typed_counts(g, spec, &x);
    let s = |c| s_from_count(c, g.n(), spec);
    Ok(TypedDensities {
        s1: s(t.type1),
        s2: s(t.type2),
        s_x: s(t.type_x),
        s_y: s(t.type_y),
        s0: s(t.type0),
        x,
    })
}

/// Identity linking the two normalizations:
/// `s = k! l! C(n, m+1) i / n^(m+1)`.
pub fn s_from_i(i: &Rational, n: usize, spec: &StarSpec) -> Rational {
    let c = from_u128(spec.automorphisms())
        * Rational::from_integer(BigInt::from(binomial_big(n, spec.order())));
    i * c / Rational::from_integer(n_pow(n, spec.order()))
}
