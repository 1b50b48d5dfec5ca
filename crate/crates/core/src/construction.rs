//! Near-extremal constructions: an independent set `X` completely joined to
//! an independent set `Y = Y1 ∪ Y2`.
//!
//! For `k > l` every arc between `X` and `Y2` points into `Y2`, and arcs
//! between `X` and `Y1` point into `Y1` with probability `l/(m-1)`. For
//! `k = l` there is a single class `Y` with arcs oriented by a fair coin.
//! Vertices are numbered `X`, then `Y1`, then `Y2`. When the requested star
//! has more in-leaves than out-leaves the whole graph is reversed.
//!
//! Balanced mode replaces the coin flips by a circulant pattern: `x_i -> y_j`
//! iff `(j - i r) mod |Y1| < r` with `r = round(l |Y1| / (m-1))`, so every
//! `X` vertex sends exactly `r` arcs into `Y1` and `Y1` in-degrees differ by
//! at most one. This finite-`n` rounding is a choice of this crate; only the
//! asymptotic proportions are prescribed.

use crate::error::{Error, Result};
use crate::graph::OrientedGraph;
use crate::opt::solve_opt;
use crate::star::StarSpec;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

const SLACK: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ConstructionMode {
    Random { seed: u64 },
    Balanced,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConstructionParams {
    pub spec: StarSpec,
    pub n: usize,
    pub alpha: f64,
    /// Ignored when `k = l`.
    pub d: f64,
    pub mode: ConstructionMode,
    pub x: usize,
    pub y1: usize,
    /// Always 0 when `k = l`; `Y` is then `y1`.
    pub y2: usize,
}

impl ConstructionParams {
    /// Validates `(alpha, d)` and derives the class sizes.
    pub fn new(
        spec: StarSpec,
        n: usize,
        alpha: f64,
        d: f64,
        mode: ConstructionMode,
    ) -> Result<Self> {
        let (k, l, m) = (spec.k(), spec.l(), spec.m());
        if n < m + 1 {
            return Err(Error::InfeasibleSizes(format!(
                "n = {n} is below the star order {}",
                m + 1
            )));
        }
        if !(0.0..=1.0).contains(&alpha) {
            return Err(Error::InfeasibleSizes(format!(
                "alpha = {alpha} outside [0, 1]"
            )));
        }
        let x = (alpha * n as f64).round() as usize;
        if spec.is_symmetric() {
            return Ok(ConstructionParams {
                spec,
                n,
                alpha,
                d,
                mode,
                x,
                y1: n - x,
                y2: 0,
            });
        }
        if !(0.0..=1.0).contains(&d) {
            return Err(Error::InfeasibleSizes(format!("d = {d} outside [0, 1]")));
        }
        let ratio = (m - 1) as f64 / (k - 1) as f64 * (1.0 - d);
        if ratio > 1.0 + SLACK {
            return Err(Error::InfeasibleSizes(format!(
                "d = {d} is below l/(m-1) = {}; Y2 would be negative",
                l as f64 / (m - 1) as f64
            )));
        }
        let y1 = ((ratio * (1.0 - alpha) * n as f64).round() as usize).min(n - x);
        Ok(ConstructionParams {
            spec,
            n,
            alpha,
            d,
            mode,
            x,
            y1,
            y2: n - x - y1,
        })
    }
}

/// Builds the construction described by `p`.
pub fn build_construction(p: &ConstructionParams) -> Result<OrientedGraph> {
    let ConstructionParams {
        spec, n, x, y1, y2, ..
    } = *p;
    if x + y1 + y2 != n || n < spec.order() {
        return Err(Error::InfeasibleSizes(format!(
            "sizes {x} + {y1} + {y2} do not fit n = {n}"
        )));
    }
    let mut g = OrientedGraph::empty(n)?;
    let flip = spec.is_reversed();
    let mut add = |u: usize, v: usize| {
        if flip {
            g.insert_arc(v, u)
        } else {
            g.insert_arc(u, v)
        }
    };
    let (num, den) = if spec.is_symmetric() {
        (1, 2)
    } else {
        (spec.l(), spec.m() - 1)
    };
    match p.mode {
        ConstructionMode::Balanced => {
            let r = if y1 == 0 {
                0
            } else {
                (num as f64 * y1 as f64 / den as f64).round() as usize
            };
            for i in 0..x {
                for j in 0..y1 {
                    let offset = (j + y1 - (i * r) % y1) % y1;
                    if offset < r {
                        add(i, x + j);
                    } else {
                        add(x + j, i);
                    }
                }
            }
        }
        ConstructionMode::Random { seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let prob = num as f64 / den as f64;
            for i in 0..x {
                for j in 0..y1 {
                    if rng.gen_bool(prob) {
                        add(i, x + j);
                    } else {
                        add(x + j, i);
                    }
                }
            }
        }
    }
    for i in 0..x {
        for j in 0..y2 {
            add(i, x + y1 + j);
        }
    }
    Ok(g)
}

/// Limit of `s(G)` for the construction as `n` grows, computed from the
/// probability that each star position lands in the right class with the
/// right orientation.
pub fn predict_s(p: &ConstructionParams) -> Result<f64> {
    let p = ConstructionParams::new(p.spec, p.n, p.alpha, p.d, p.mode)?;
    let (k, l, m) = (p.spec.k() as i32, p.spec.l() as i32, p.spec.m());
    let a = p.alpha;
    if p.spec.is_symmetric() {
        let x_center = a * ((1.0 - a) / 2.0).powi(2 * k);
        let y_center = (1.0 - a) * (a / 2.0).powi(2 * k);
        return Ok(x_center + y_center);
    }
    let d = p.d;
    let x_center = a * ((1.0 - a) * d).powi(k) * ((1.0 - a) * (1.0 - d)).powi(l);
    let beta1 = (m - 1) as f64 / (k - 1) as f64 * (1.0 - d) * (1.0 - a);
    let toward = l as f64 / (m - 1) as f64;
    let away = 1.0 - toward;
    let y1_center = beta1 * (a * away).powi(k) * (a * toward).powi(l);
    Ok(x_center + y1_center)
}

/// Solves for the optimal proportions and builds the matching graph.
pub fn optimal_params(
    spec: &StarSpec,
    n: usize,
    mode: ConstructionMode,
) -> Result<ConstructionParams> {
    let r = solve_opt(spec, 1e-12)?;
    let d = r.d_star.unwrap_or(0.5);
    ConstructionParams::new(*spec, n, r.alpha_star, d, mode)
}

pub fn optimal_construction(
    spec: &StarSpec,
    n: usize,
    mode: ConstructionMode,
) -> Result<OrientedGraph> {
    build_construction(&optimal_params(spec, n, mode)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::density::count_fast;
    use crate::density::s_from_count;
    use crate::opt::{objective_f, objective_sym};
    use crate::rational::to_f64;
    use rand::Rng;

    fn spec(k: usize, l: usize) -> StarSpec {
        StarSpec::new(k, l).unwrap()
    }

    #[test]
    fn s21_sizes() {
        let p =
            ConstructionParams::new(spec(2, 1), 10, 0.3, 9.0 / 14.0, ConstructionMode::Balanced)
                .unwrap();
        assert_eq!((p.x, p.y1, p.y2), (3, 5, 2));
        let g = build_construction(&p).unwrap();
        assert_eq!(g.arc_count(), 21);
    }

    #[test]
    fn infeasible_d() {
        let r = ConstructionParams::new(spec(4, 2), 50, 0.2, 0.2, ConstructionMode::Balanced);
        assert!(matches!(r, Err(Error::InfeasibleSizes(_))));
        assert!(
            ConstructionParams::new(spec(4, 2), 6, 0.2, 0.6, ConstructionMode::Balanced).is_err()
        );
    }

    #[test]
    fn balanced_ignores_seed_and_is_structured() {
        let s = spec(4, 2);
        let p = optimal_params(&s, 140, ConstructionMode::Balanced).unwrap();
        let g = build_construction(&p).unwrap();
        assert_eq!(g, build_construction(&p).unwrap());
        let r = (2.0 * p.y1 as f64 / 5.0).round() as usize;
        for i in 0..p.x {
            let into_y1 = (p.x..p.x + p.y1).filter(|&j| g.has_arc(i, j)).count();
            assert_eq!(into_y1, r);
            for j in 0..p.x {
                assert!(!g.adjacent(i, j));
            }
            for j in p.x..p.n {
                assert!(g.adjacent(i, j));
            }
        }
        for u in p.x..p.n {
            for v in p.x..p.n {
                assert!(!g.adjacent(u, v));
            }
        }
        let degs: Vec<usize> = (p.x..p.x + p.y1).map(|j| g.in_degree(j)).collect();
        assert!(degs.iter().max().unwrap() - degs.iter().min().unwrap() <= 1);
    }

    #[test]
    fn random_mode_concentrates() {
        let s = spec(4, 2);
        let p = optimal_params(&s, 700, ConstructionMode::Random { seed: 7 }).unwrap();
        let g = build_construction(&p).unwrap();
        let target = p.d * (1.0 - p.alpha) * 700.0;
        for i in 0..p.x {
            assert!((g.out_degree(i) as f64 - target).abs() <= 4.0 * (p.y1 as f64).sqrt());
        }
        let q = ConstructionParams {
            mode: ConstructionMode::Random { seed: 8 },
            ..p
        };
        assert_ne!(g, build_construction(&q).unwrap());
    }

    #[test]
    fn reversed_spec_reverses_graph() {
        let a = optimal_construction(&spec(3, 1), 30, ConstructionMode::Balanced).unwrap();
        let b = optimal_construction(&spec(1, 3), 30, ConstructionMode::Balanced).unwrap();
        assert_eq!(a.reverse(), b);
    }

    #[test]
    fn predict_matches_objective() {
        let p =
            ConstructionParams::new(spec(2, 1), 100, 0.3, 9.0 / 14.0, ConstructionMode::Balanced)
                .unwrap();
        assert!((predict_s(&p).unwrap() - 0.016875).abs() < 1e-15);
        let p0 = ConstructionParams { alpha: 0.0, ..p };
        assert_eq!(predict_s(&p0).unwrap(), 0.0);

        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..100 {
            let k = rng.gen_range(2..8);
            let l = rng.gen_range(1..k);
            let s = spec(k, l);
            let lo = l as f64 / (k + l - 1) as f64;
            let a = rng.gen_range(0.0..0.5);
            let d = rng.gen_range(lo..1.0);
            let p = ConstructionParams::new(s, 100, a, d, ConstructionMode::Balanced).unwrap();
            let want = objective_f(a, d, &s).unwrap();
            assert!((predict_s(&p).unwrap() - want).abs() <= 1e-12 * want.max(1e-300));
        }
        let s = spec(3, 3);
        let p = ConstructionParams::new(s, 100, 0.2, 0.0, ConstructionMode::Balanced).unwrap();
        let want = objective_sym(0.2, &s).unwrap();
        assert!((predict_s(&p).unwrap() - want).abs() <= 1e-15);
    }

    #[test]
    fn small_constructions_respect_opt() {
        let s = spec(2, 1);
        let opt = solve_opt(&s, 1e-12).unwrap().opt_value;
        let g = optimal_construction(&s, 140, ConstructionMode::Balanced).unwrap();
        let v = to_f64(&s_from_count(count_fast(&g, &s), 140, &s));
        assert!(v < opt && v > 0.85 * opt);

        let s = spec(3, 3);
        let opt = solve_opt(&s, 1e-12).unwrap().opt_value;
        let g = optimal_construction(&s, 128, ConstructionMode::Balanced).unwrap();
        let v = to_f64(&s_from_count(count_fast(&g, &s), 128, &s));
        assert!(v <= opt + 1e-12);
    }
}
