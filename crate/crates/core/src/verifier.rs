//! Checks of the inequalities behind the upper bound: the per-vertex degree
//! bound, the basic lemmas on sampled inputs, closed-form arithmetic facts in
//! `m`, the partition parameters of a graph, and a stability diagnostic.

use crate::density::{high_degree_set, monte_carlo_vertex, vertex_densities};
use crate::error::{Error, Result};
use crate::graph::{OrientedGraph, VertexSet};
use crate::opt::{solve_opt, Majorant};
use crate::rational::{binomial_big, frac, int, pow, to_f64, Rational};
use crate::star::StarSpec;
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

/// Largest `n` for which [`partition_stats`] computes `S` exactly.
pub const EXACT_S_LIMIT: usize = 200;
/// Per-vertex samples used for `S` above [`EXACT_S_LIMIT`].
pub const S_SAMPLES: u64 = 20_000;

#[derive(Debug, Clone, PartialEq)]
pub struct DegreeViolation {
    pub vertex: usize,
    pub s_v: Rational,
    pub bound: Rational,
}

/// Vertices with `s(v) > (lambda0 rho^m + lambda1 rho (1-rho)^(m-1)) / (m+1)`,
/// in exact arithmetic. The bound holds for every graph, so the result is
/// expected to be empty.
pub fn check_degree_bound(g: &OrientedGraph, spec: &StarSpec) -> Vec<DegreeViolation> {
    let m = spec.m();
    let (l0, l1) = (spec.lambda0(), spec.lambda1());
    let n = g.n() as i64;
    let order = int(spec.order() as i64);
    vertex_densities(g, spec)
        .into_iter()
        .enumerate()
        .filter_map(|(v, d)| {
            let rho = frac(g.degree(v) as i64, n);
            let bound = (&l0 * pow(&rho, m) + &l1 * &rho * pow(&(int(1) - &rho), m - 1)) / &order;
            (d.s_v > bound).then_some(DegreeViolation {
                vertex: v,
                s_v: d.s_v,
                bound,
            })
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DegreeSuiteReport {
    pub seed: u64,
    pub graphs: usize,
    /// Graph/spec combinations checked.
    pub checks: usize,
    pub violations: usize,
}

/// Random graph whose pairs are adjacent with probability `p`, each arc
/// oriented by a fair coin.
pub fn random_graph_density(n: usize, p: f64, rng: &mut impl Rng) -> Result<OrientedGraph> {
    let mut arcs = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                arcs.push(if rng.gen_bool(0.5) { (u, v) } else { (v, u) });
            }
        }
    }
    OrientedGraph::new(n, &arcs)
}

/// Runs [`check_degree_bound`] on `graphs` random graphs with
/// `8 <= n <= 20` and edge probability in `[0.1, 0.9]`, against every spec
/// with `6 <= m <= 9`.
pub fn degree_bound_suite(seed: u64, graphs: usize) -> DegreeSuiteReport {
    let specs = specs_in_range(6, 9, false);
    let violations = (0..graphs as u64)
        .into_par_iter()
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(i);
            let n = rng.gen_range(8..=20);
            let p = rng.gen_range(0.1..=0.9);
            let g = random_graph_density(n, p, &mut rng).expect("valid arcs");
            specs
                .iter()
                .map(|s| check_degree_bound(&g, s).len())
                .sum::<usize>()
        })
        .sum();
    DegreeSuiteReport {
        seed,
        graphs,
        checks: graphs * specs.len(),
        violations,
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PartitionStats {
    pub x: VertexSet,
    /// `mu(X)`.
    pub alpha: Rational,
    /// Max over `y in Y` of `rho_Y(y)`; `None` when `Y` is empty.
    pub beta: Option<Rational>,
    /// Min over `x in X` of `rho^-_Y(x)`; `None` when `X` is empty.
    pub gamma: Option<Rational>,
    /// Min over `x in X` of `rho(x)`; `None` when `X` is empty.
    pub big_d: Option<Rational>,
    /// `(m+1) min_v s(v)`; estimated when `s_approximate` is set.
    pub big_s: Rational,
    pub s_approximate: bool,
    /// Largest per-vertex standard error behind an estimated `S`, else 0.
    pub s_radius: f64,
    /// Min over `x in X` of `rho^+_Y(x)^k rho^-_Y(x)^l`; `None` when `X` is empty.
    pub s1: Option<Rational>,
    /// `S1` minus `(m-1)/((m+1) C(m,k)) (alpha+beta)(1-alpha)(1-D)^(m-2)`; may be negative.
    pub s2: Option<Rational>,
    /// `1 - E_x[rho^-_Y(x)] / (1-alpha)`.
    pub d: Option<Rational>,
    /// `1 - E_y[rho^+_X(y)] / alpha`; always equal to `d`.
    pub d_from_y: Option<Rational>,
    /// Non-adjacent pairs in `X x Y` divided by `n^2`.
    pub d0: Rational,
    /// `alpha E_x[rho^0_Y(x)]`; equals `d0` (0 when `X` is empty).
    pub d0_from_mean: Rational,
}

/// The parameters of a graph relative to `X` (default: `{v : rho(v) >= 1/2}`)
/// and `Y = V \ X`. Orientation follows the normalized star, so for a
/// reversed spec the graph is reversed first.
pub fn partition_stats(
    g: &OrientedGraph,
    spec: &StarSpec,
    x: Option<&VertexSet>,
    seed: u64,
) -> Result<PartitionStats> {
    let owned;
    let g = if spec.is_reversed() {
        owned = g.reverse();
        &owned
    } else {
        g
    };
    let n = g.n();
    let x = match x {
        Some(x) if x.universe() != n => {
            return Err(Error::IdOutOfRange {
                id: x.universe(),
                n,
            })
        }
        Some(x) => x.clone(),
        None => high_degree_set(g),
    };
    let y = x.complement();
    let (k, l, m) = (spec.k(), spec.l(), spec.m());
    let nn = n as i64;
    let r = |c: usize| frac(c as i64, nn);
    let (xs, ys) = (x.as_bitset(), y.as_bitset());

    let alpha = x.measure();
    let one = int(1);

    let beta = y
        .iter()
        .map(|v| g.neighbors(v).intersection(ys).count())
        .max()
        .map(r);
    let out_y: Vec<usize> = x
        .iter()
        .map(|v| g.out_neighbors(v).intersection(ys).count())
        .collect();
    let in_y: Vec<usize> = x
        .iter()
        .map(|v| g.in_neighbors(v).intersection(ys).count())
        .collect();
    let gamma = in_y.iter().copied().min().map(r);
    let big_d = x.iter().map(|v| g.degree(v)).min().map(r);
    let s1 = out_y
        .iter()
        .zip(&in_y)
        .map(|(&p, &q)| pow(&r(p), k) * pow(&r(q), l))
        .min();

    let s2 = match (&s1, &beta, &big_d) {
        (Some(s1), Some(beta), Some(dd)) => {
            let coef = frac(
                (m - 1) as i64,
                BigInt::from((m + 1) as i64) * BigInt::from(binomial_big(m, k)),
            );
            Some(s1 - coef * (&alpha + beta) * (&one - &alpha) * pow(&(&one - dd), m - 2))
        }
        _ => None,
    };

    let (nx, ny) = (x.len(), y.len());
    let (d, d_from_y) = if nx == 0 || ny == 0 {
        (None, None)
    } else {
        let in_sum: usize = in_y.iter().sum();
        let mean_in = frac(in_sum as i64, (nx as i64) * nn);
        let d_x = &one - mean_in / (&one - &alpha);
        let out_sum: usize = y
            .iter()
            .map(|v| g.out_neighbors(v).intersection(xs).count())
            .sum();
        let mean_out = frac(out_sum as i64, (ny as i64) * nn);
        let d_y = &one - mean_out / &alpha;
        (Some(d_x), Some(d_y))
    };

    let nonadj: usize = out_y.iter().zip(&in_y).map(|(p, q)| ny - p - q).sum();
    let d0 = frac(nonadj as i64, nn * nn);
    let d0_from_mean = if nx == 0 {
        int(0)
    } else {
        let mean_zero = frac(nonadj as i64, nx as i64 * nn);
        &alpha * mean_zero
    };

    let order = int(spec.order() as i64);
    let (big_s, s_approximate, s_radius) = if n <= EXACT_S_LIMIT {
        let min = vertex_densities(g, spec)
            .into_iter()
            .map(|d| d.s_v)
            .min()
            .unwrap_or_else(|| int(0));
        (min * &order, false, 0.0)
    } else {
        let est: Vec<_> = (0..n)
            .into_par_iter()
            .map(|v| monte_carlo_vertex(g, spec, v, S_SAMPLES, seed.wrapping_add(v as u64)))
            .collect();
        let min = est.iter().map(|e| e.estimate).fold(f64::INFINITY, f64::min);
        let radius = est.iter().map(|e| e.std_error).fold(0.0, f64::max);
        let min = Rational::from_float(min).unwrap_or_else(|| int(0));
        (min * &order, true, radius * spec.order() as f64)
    };

    Ok(PartitionStats {
        x,
        alpha,
        beta,
        gamma,
        big_d,
        big_s,
        s_approximate,
        s_radius,
        s1,
        s2,
        d,
        d_from_y,
        d0,
        d0_from_mean,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepCheck {
    pub name: &'static str,
    pub m: usize,
    /// Spec `(k, l)` for per-spec checks.
    pub spec: Option<(usize, usize)>,
    pub lhs: f64,
    pub rhs: f64,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepReport {
    pub lo: usize,
    pub hi: usize,
    pub checks: Vec<SweepCheck>,
    pub failures: usize,
}

/// `(m+1)^2/(m(m-1)) + (m+1)(m-1)^(m-2)/m^m`.
pub fn a8_expression(m: usize) -> f64 {
    let mf = m as f64;
    let mi = m as i32;
    (mf + 1.0).powi(2) / (mf * (mf - 1.0)) + (mf + 1.0) * (mf - 1.0).powi(mi - 2) / mf.powi(mi)
}

fn ratio_pow(num: i64, den: i64, e: usize) -> Rational {
    pow(&frac(num, den), e)
}

fn bigpow(b: i64, e: usize) -> Rational {
    Rational::from_integer(num_traits::pow(BigInt::from(b), e))
}

/// Evaluates the closed-form inequalities in `m` used by the technical
/// claims, exactly where no transcendental constant is involved.
pub fn arithmetic_sweeps(lo: usize, hi: usize) -> Result<SweepReport> {
    if lo < 6 || hi > 64 || lo > hi {
        return Err(Error::Range {
            lo,
            hi,
            min: 6,
            max: 64,
        });
    }
    let mut checks = Vec::new();
    let exact = |name, m, spec, lhs: &Rational, rhs: &Rational, holds: bool| SweepCheck {
        name,
        m,
        spec,
        lhs: to_f64(lhs),
        rhs: to_f64(rhs),
        holds,
    };
    let e = std::f64::consts::E;
    for m in lo..=hi {
        let mi = m as i64;
        let one = int(1);

        let lhs = bigpow(mi + 1, 4);
        let rhs = bigpow(mi, 2) * bigpow(mi - 1, m - 1);
        checks.push(exact(
            "(m+1)^4 < m^2 (m-1)^(m-1)",
            m,
            None,
            &lhs,
            &rhs,
            lhs < rhs,
        ));

        let lhs = &one - bigpow(mi + 1, 4) / (bigpow(mi, 2) * bigpow(mi - 1, m - 1));
        let rhs = frac(44, 45);
        checks.push(exact(
            "1 - (m+1)^4/(m^2 (m-1)^(m-1)) >= 44/45",
            m,
            None,
            &lhs,
            &rhs,
            lhs >= rhs,
        ));

        let lhs = frac(44, 45) * ratio_pow(mi, mi + 1, m);
        let rhs = frac(1, 3);
        checks.push(exact(
            "(44/45) (m/(m+1))^m >= 1/3",
            m,
            None,
            &lhs,
            &rhs,
            lhs >= rhs,
        ));

        let lhs = frac(1, 1) / bigpow(mi, 4) + frac(mi * mi + 1, mi) / bigpow(mi - 1, m - 1);
        let rhs = frac(1, mi * mi);
        checks.push(exact(
            "1/m^4 + (m^2+1)/(m (m-1)^(m-1)) <= 1/m^2",
            m,
            None,
            &lhs,
            &rhs,
            lhs <= rhs,
        ));

        let lhs = ratio_pow(mi + 1, mi, m) + int(mi + 1) * ratio_pow(mi + 1, mi - 1, m);
        let rhs = bigpow(2, m);
        checks.push(exact(
            "(1+1/m)^m + (m+1)(1+2/(m-1))^m < 2^m",
            m,
            None,
            &lhs,
            &rhs,
            lhs < rhs,
        ));

        let lhs = bigpow(mi + 1, 3) / bigpow(mi - 1, m);
        let rhs = frac(3, 100);
        checks.push(exact(
            "(m+1)^3/(m-1)^m <= 0.03",
            m,
            None,
            &lhs,
            &rhs,
            lhs <= rhs,
        ));

        let fact = Rational::from_integer(BigInt::from(crate::rational::factorial(m)));
        let lhs = frac(2, 9) * bigpow(mi + 1, 3) / (int(2) * fact);
        let rhs = frac(343, 6480);
        checks.push(exact(
            "(2/9)(m+1)^3/(2 m!) <= 343/6480",
            m,
            None,
            &lhs,
            &rhs,
            lhs <= rhs,
        ));

        let beta_term = |m: usize| (e * e * (m as f64 + 1.0) + e) / 2f64.powi(m as i32);
        let v = beta_term(m);
        let ok = v <= 55.0 / 64.0 && beta_term(m + 1) <= v;
        checks.push(SweepCheck {
            name: "(e^2(m+1)+e)/2^m <= 55/64 and decreasing",
            m,
            spec: None,
            lhs: v,
            rhs: 55.0 / 64.0,
            holds: ok,
        });

        let v = a8_expression(m);
        checks.push(SweepCheck {
            name: "(m+1)^2/(m(m-1)) + (m+1)(m-1)^(m-2)/m^m <= 1.73 and decreasing",
            m,
            spec: None,
            lhs: v,
            rhs: 1.73,
            holds: v <= 1.73 && a8_expression(m + 1) <= v,
        });

        let eps = 2.0 / (m as f64 - 1.0).powi(2);
        let v = (1.0 - eps) * (1.0 + eps / m as f64).powi(m as i32);
        checks.push(SweepCheck {
            name: "(1-eps)(1+eps/m)^m <= 1 - eps^2/2, eps = 2/(m-1)^2",
            m,
            spec: None,
            lhs: v,
            rhs: 1.0 - eps * eps / 2.0,
            holds: v <= 1.0 - eps * eps / 2.0,
        });

        for l in 1..=m / 2 {
            let k = m - l;
            let spec = StarSpec::new(k, l)?;
            let floor = Rational::from_integer(BigInt::from(crate::rational::self_power(k)))
                * Rational::from_integer(BigInt::from(crate::rational::self_power(l)))
                / bigpow(mi + 1, m);
            let a = frac(1, mi + 1);
            let value = if spec.is_symmetric() {
                crate::opt::objective_sym_exact(&a, &spec)?
            } else {
                crate::opt::objective_f_exact(&a, &frac(k as i64, mi), &spec)?
            };
            let rhs = int(mi + 1) * value;
            checks.push(exact(
                "k^k l^l/(m+1)^m <= (m+1) F(1/(m+1), k/m)",
                m,
                Some((k, l)),
                &floor,
                &rhs,
                floor <= rhs,
            ));
        }
    }
    let failures = checks.iter().filter(|c| !c.holds).count();
    Ok(SweepReport {
        lo,
        hi,
        checks,
        failures,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LemmaCheck {
    pub name: &'static str,
    pub cases: usize,
    pub failures: usize,
    /// Largest observed `(lhs - rhs) / scale`; non-positive when all pass.
    pub worst: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LemmaReport {
    pub seed: u64,
    pub checks: Vec<LemmaCheck>,
}

impl LemmaReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.failures == 0)
    }
}

const REL: f64 = 1e-12;

struct Tally {
    cases: usize,
    failures: usize,
    worst: f64,
}

impl Tally {
    fn new() -> Self {
        Tally {
            cases: 0,
            failures: 0,
            worst: f64::NEG_INFINITY,
        }
    }

    /// Records `lhs <= rhs` up to `REL * scale`.
    fn le(&mut self, lhs: f64, rhs: f64, scale: f64) {
        self.cases += 1;
        let gap = if scale > 0.0 {
            (lhs - rhs) / scale
        } else {
            lhs - rhs
        };
        self.worst = self.worst.max(gap);
        if lhs > rhs + REL * scale {
            self.failures += 1;
        }
    }

    fn done(self, name: &'static str) -> LemmaCheck {
        LemmaCheck {
            name,
            cases: self.cases,
            failures: self.failures,
            worst: self.worst,
        }
    }
}

/// All normalized specs with `lo <= m <= hi`.
pub fn specs_in_range(lo: usize, hi: usize, strict: bool) -> Vec<StarSpec> {
    let mut v = Vec::new();
    for m in lo..=hi {
        for l in 1..=m / 2 {
            let k = m - l;
            if !(strict && k == l) {
                v.push(StarSpec::new(k, l).expect("k, l >= 1"));
            }
        }
    }
    v
}

/// Samples the two elementary inequalities (`samples` tuples each) and runs
/// grid checks of the majorant `f` and of where `f_*(d)` peaks, for every
/// spec with `6 <= m <= 12`.
pub fn lemma_suite(seed: u64, samples: usize) -> LemmaReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut checks = Vec::new();

    let mut t = Tally::new();
    for _ in 0..samples {
        let a = 10.0 - rng.gen_range(0.0..10.0);
        let b = 10.0 - rng.gen_range(0.0..10.0);
        let x: f64 = rng.gen_range(0.0..=10.0);
        let y: f64 = rng.gen_range(0.0..=10.0);
        let lhs = x.powf(a) * y.powf(b);
        let rhs = a.powf(a) * b.powf(b) / (a + b).powf(a + b) * (x + y).powf(a + b);
        t.le(lhs, rhs, rhs);
    }
    checks.push(t.done("x^a y^b <= a^a b^b/(a+b)^(a+b) (x+y)^(a+b)"));

    let mut t = Tally::new();
    for _ in 0..samples {
        let a = 10.0 - rng.gen_range(0.0..10.0);
        let b = 10.0 - rng.gen_range(0.0..10.0);
        let x = rng.gen_range(0.0..=a);
        let y = rng.gen_range(0.0..=b);
        let lhs = (a - x) * (b - y);
        let rhs = a * b * (1.0 - (x + y) / (a + b));
        t.le(lhs, rhs, a * b);
    }
    checks.push(t.done("(a-x)(b-y) <= ab (1 - (x+y)/(a+b))"));

    const GRID: usize = 10_000;
    let specs = specs_in_range(6, 12, false);
    let (mut mono, mut conc, mut major) = (Tally::new(), Tally::new(), Tally::new());
    for spec in &specs {
        let (k, l) = (spec.k() as i32, spec.l() as i32);
        let scale = to_f64(&spec.lambda0());
        let xs: Vec<f64> = (0..GRID).map(|i| i as f64 / (GRID - 1) as f64).collect();
        let maj = Majorant::new(spec);
        let fs: Vec<f64> = xs.iter().map(|&x| maj.eval(x)).collect();
        for i in 0..GRID {
            major.le(xs[i].powi(k) * (1.0 - xs[i]).powi(l), fs[i], scale);
            if i + 1 < GRID {
                mono.le(fs[i], fs[i + 1], scale);
            }
            if i + 2 < GRID {
                conc.le((fs[i] + fs[i + 2]) / 2.0, fs[i + 1], scale);
            }
        }
    }
    checks.push(mono.done("f non-decreasing"));
    checks.push(conc.done("f midpoint-concave"));
    checks.push(major.done("f(x) >= x^k (1-x)^l"));

    let mut t = Tally::new();
    for spec in specs_in_range(6, 12, true) {
        let (k, m) = (spec.k() as f64, spec.m() as f64);
        let c = to_f64(&spec.tangent_slope());
        let lo = (k - 1.0) / (m - 1.0) - 1e-3;
        let hi = k / m + 1e-3;
        let mi = spec.m() as i32;
        let maj = Majorant::new(&spec);
        for _ in 0..100 {
            let a: f64 = rng.gen_range(0.0..=0.5);
            let vals: Vec<(f64, f64)> = (0..=GRID)
                .map(|j| {
                    let d = j as f64 / GRID as f64;
                    let f = maj.eval(d);
                    (
                        d,
                        a * (1.0 - a).powi(mi) * f + c * (1.0 - a) * a.powi(mi) * (1.0 - d),
                    )
                })
                .collect();
            let max = vals.iter().map(|v| v.1).fold(f64::NEG_INFINITY, f64::max);
            let tie = max - REL * max.abs();
            // distance from the window to the nearest grid maximizer
            let dist = vals
                .iter()
                .filter(|v| v.1 >= tie)
                .map(|v| {
                    if v.0 < lo {
                        lo - v.0
                    } else if v.0 > hi {
                        v.0 - hi
                    } else {
                        0.0
                    }
                })
                .fold(f64::INFINITY, f64::min);
            t.cases += 1;
            t.worst = t.worst.max(dist);
            if dist > 0.0 {
                t.failures += 1;
            }
        }
    }
    checks.push(t.done("argmax of f_*(d) in [(k-1)/(m-1), k/m]"));

    LemmaReport { seed, checks }
}

#[derive(Debug, Clone, PartialEq)]
pub struct StabilityReport {
    pub epsilon: f64,
    pub x: VertexSet,
    pub y1: VertexSet,
    pub y2: VertexSet,
    pub alpha_star: f64,
    pub d_star: f64,
    /// Measured quantities for the six conditions: `|mu(X) - a|`, the larger
    /// of the two `Y1`/`Y2` size deltas, internal arcs over `n^2`, and the
    /// violator fractions for the `X`, `Y1` and `Y2` degree windows.
    pub condition_deltas: [f64; 6],
    /// Violators of the degree windows on `X`, `Y1` and `Y2`.
    pub violating_counts: [usize; 3],
    /// Whether each measured quantity is at most `epsilon`.
    pub satisfied: [bool; 6],
}

/// Measures how close `g` is to the extremal structure. `X` is
/// `{rho >= 1/2}`, `Y2` collects the remaining vertices receiving arcs from
/// almost all of `X`, and `Y1` is the rest. A `Y1` vertex is expected to send
/// arcs to a `(k-1)/(m-1)` share of `X` and receive from an `l/(m-1)` share,
/// as in the construction.
pub fn stability_report(
    g: &OrientedGraph,
    spec: &StarSpec,
    epsilon: f64,
) -> Result<StabilityReport> {
    if spec.is_symmetric() {
        return Err(Error::WrongBranch("stability_report", "k > l"));
    }
    if epsilon.is_nan() || epsilon <= 0.0 {
        return Err(Error::Domain {
            name: "epsilon",
            value: epsilon,
            domain: "(0, inf)",
        });
    }
    let owned;
    let g = if spec.is_reversed() {
        owned = g.reverse();
        &owned
    } else {
        g
    };
    let opt = solve_opt(spec, 1e-12)?;
    let (a, d) = (opt.alpha_star, opt.d_star.expect("k > l"));
    let n = g.n();
    let nf = n as f64;
    let (k, l, m) = (spec.k() as f64, spec.l() as f64, spec.m() as f64);

    let x = high_degree_set(g);
    let mu_x = x.len() as f64 / nf;
    let xs = x.as_bitset().clone();
    let from_x = |v: usize| g.in_neighbors(v).intersection(&xs).count() as f64 / nf;
    let to_x = |v: usize| g.out_neighbors(v).intersection(&xs).count() as f64 / nf;
    let y2 = VertexSet::from_fn(n, |v| !x.contains(v) && from_x(v) >= mu_x - epsilon);
    let y1 = VertexSet::from_fn(n, |v| !x.contains(v) && !y2.contains(v));
    let y = x.complement();
    let ys = y.as_bitset();

    let share = (m - 1.0) / (k - 1.0) * (1.0 - d);
    let c1 = (mu_x - a).abs();
    let c2 = (y1.len() as f64 / nf - share * (1.0 - a))
        .abs()
        .max((y2.len() as f64 / nf - (1.0 - share) * (1.0 - a)).abs());
    let inside: usize = x
        .iter()
        .map(|v| g.out_neighbors(v).intersection(&xs).count())
        .sum::<usize>()
        + y.iter()
            .map(|v| g.out_neighbors(v).intersection(ys).count())
            .sum::<usize>();
    let c3 = inside as f64 / (nf * nf);

    let v4 = x
        .iter()
        .filter(|&v| {
            let p = g.out_neighbors(v).intersection(ys).count() as f64 / nf;
            let q = g.in_neighbors(v).intersection(ys).count() as f64 / nf;
            (p - d * (1.0 - a)).abs() > epsilon || (q - (1.0 - d) * (1.0 - a)).abs() > epsilon
        })
        .count();
    let v5 = y1
        .iter()
        .filter(|&v| {
            (to_x(v) - (k - 1.0) / (m - 1.0) * a).abs() > epsilon
                || (from_x(v) - l / (m - 1.0) * a).abs() > epsilon
        })
        .count();
    let v6 = y2.iter().filter(|&v| from_x(v) < a - epsilon).count();

    let deltas = [c1, c2, c3, v4 as f64 / nf, v5 as f64 / nf, v6 as f64 / nf];
    let satisfied = deltas.map(|q| q <= epsilon);
    Ok(StabilityReport {
        epsilon,
        x,
        y1,
        y2,
        alpha_star: a,
        d_star: d,
        condition_deltas: deltas,
        violating_counts: [v4, v5, v6],
        satisfied,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construction::{optimal_construction, ConstructionMode};
    use crate::search::random_graph;

    fn spec(k: usize, l: usize) -> StarSpec {
        StarSpec::new(k, l).unwrap()
    }

    #[test]
    fn degree_bound_on_random_graphs() {
        let specs = specs_in_range(6, 7, false);
        for seed in 0..20 {
            let g = random_graph(9 + seed as usize % 4, seed).unwrap();
            for s in &specs {
                assert!(check_degree_bound(&g, s).is_empty());
            }
        }
        assert!(check_degree_bound(&OrientedGraph::empty(10).unwrap(), &spec(4, 2)).is_empty());
    }

    #[test]
    fn stats_of_complete_bipartite() {
        let n = 10;
        let arcs: Vec<_> = (0..5).flat_map(|u| (5..10).map(move |v| (u, v))).collect();
        let g = OrientedGraph::new(n, &arcs).unwrap();
        let x = VertexSet::from_ids(n, 0..5).unwrap();
        let st = partition_stats(&g, &spec(4, 2), Some(&x), 0).unwrap();
        assert_eq!(st.d, Some(int(1)));
        assert_eq!(st.d_from_y, Some(int(1)));
        assert_eq!(st.d0, int(0));
        assert_eq!(st.alpha, frac(1, 2));
        assert_eq!(st.gamma, Some(int(0)));
        assert_eq!(st.beta, Some(int(0)));
    }

    #[test]
    fn stats_of_edgeless_graph() {
        let g = OrientedGraph::empty(8).unwrap();
        let st = partition_stats(&g, &spec(4, 2), None, 0).unwrap();
        assert!(st.x.is_empty());
        assert_eq!(st.alpha, int(0));
        assert_eq!(st.d0, int(0));
        assert!(st.gamma.is_none() && st.big_d.is_none() && st.s1.is_none() && st.d.is_none());
        assert_eq!(st.beta, Some(int(0)));
    }

    #[test]
    fn stats_of_construction() {
        let s = spec(4, 2);
        let g = optimal_construction(&s, 140, ConstructionMode::Balanced).unwrap();
        let st = partition_stats(&g, &s, None, 0).unwrap();
        assert!((to_f64(&st.alpha) - 1.0 / 7.0).abs() < 0.05);
        assert!((to_f64(st.d.as_ref().unwrap()) - 2.0 / 3.0).abs() < 0.05);
        assert_eq!(st.d, st.d_from_y);
        assert_eq!(st.d0, st.d0_from_mean);
        assert!(st.s1.as_ref().unwrap() >= st.s2.as_ref().unwrap());
        assert!(!st.s_approximate);
    }

    #[test]
    fn sweeps() {
        let r = arithmetic_sweeps(6, 64).unwrap();
        assert_eq!(
            r.failures,
            0,
            "{:?}",
            r.checks.iter().filter(|c| !c.holds).collect::<Vec<_>>()
        );
        assert!((a8_expression(6) - 1.727).abs() <= 1e-3);
        let first = &r.checks[0];
        assert_eq!((first.lhs, first.rhs), (2401.0, 112500.0));
        assert!(matches!(arithmetic_sweeps(5, 10), Err(Error::Range { .. })));
        assert!(arithmetic_sweeps(6, 65).is_err());
    }

    #[test]
    fn lemmas_hold() {
        let r = lemma_suite(0, 10_000);
        assert!(r.passed(), "{:?}", r);
    }

    #[test]
    fn stability_on_construction_and_tournament() {
        let s = spec(4, 2);
        let g = optimal_construction(&s, 700, ConstructionMode::Balanced).unwrap();
        let r = stability_report(&g, &s, 0.05).unwrap();
        assert_eq!(r.violating_counts, [0, 0, 0]);
        assert_eq!(r.condition_deltas[2], 0.0);
        assert_eq!(r.x.len() + r.y1.len() + r.y2.len(), 700);

        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let arcs: Vec<_> = (0..50)
            .flat_map(|u| (u + 1..50).map(move |v| (u, v)))
            .map(|(u, v)| if rng.gen_bool(0.5) { (u, v) } else { (v, u) })
            .collect();
        let t = OrientedGraph::new(50, &arcs).unwrap();
        let r = stability_report(&t, &s, 0.05).unwrap();
        assert!(r.violating_counts.iter().sum::<usize>() > 10);
        let r = stability_report(&t, &s, 1.0).unwrap();
        assert!(r.satisfied.iter().all(|&b| b));
        assert!(stability_report(&t, &spec(3, 3), 0.1).is_err());
    }
}
