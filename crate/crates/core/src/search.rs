//! Extremal search: exhaustive enumeration of labeled oriented graphs for
//! tiny `n`, and a hill-climbing heuristic built on clone-replace moves.

use crate::density::{count_fast, count_shape, i_from_count, vertex_densities};
use crate::error::{Error, Result};
use crate::graph::{OrientedGraph, PairState};
use crate::rational::Rational;
use crate::star::StarSpec;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use std::cmp::Ordering;

/// Largest `n` accepted by [`exhaustive_max`].
pub const EXHAUSTIVE_CAP: usize = 6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SearchMethod {
    Exhaustive,
    Local,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SearchResult {
    pub best_count: u128,
    pub best_i: Rational,
    pub witness: OrientedGraph,
    /// Graphs enumerated (exhaustive) or candidate graphs evaluated (local).
    pub explored: u64,
    pub method: SearchMethod,
    /// Exact counts after each accepted move, starting with the initial graph.
    /// Empty for exhaustive search.
    pub trace: Vec<u128>,
}

fn pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect()
}

#[derive(Clone, Copy)]
struct Masks {
    out: [u16; EXHAUSTIVE_CAP],
    inn: [u16; EXHAUSTIVE_CAP],
}

impl Masks {
    fn set(&mut self, u: usize, v: usize, digit: u8) {
        let (bu, bv) = (1u16 << u, 1u16 << v);
        self.out[u] &= !bv;
        self.out[v] &= !bu;
        self.inn[u] &= !bv;
        self.inn[v] &= !bu;
        match digit {
            1 => {
                self.out[u] |= bv;
                self.inn[v] |= bu;
            }
            2 => {
                self.out[v] |= bu;
                self.inn[u] |= bv;
            }
            _ => {}
        }
    }

    fn count(&self, n: usize, a: u32, b: u32) -> u64 {
        let mut total = 0;
        for c in 0..n {
            let nb = self.out[c] | self.inn[c];
            if nb.count_ones() < a + b {
                continue;
            }
            // all submasks of nb
            let mut s = nb;
            loop {
                if s.count_ones() == a + b
                    && (s & self.out[c]).count_ones() == a
                    && self.independent(s)
                {
                    total += 1;
                }
                if s == 0 {
                    break;
                }
                s = (s - 1) & nb;
            }
        }
        total
    }

    fn independent(&self, s: u16) -> bool {
        let mut rest = s;
        while rest != 0 {
            let u = rest.trailing_zeros() as usize;
            if (self.out[u] | self.inn[u]) & s != 0 {
                return false;
            }
            rest &= rest - 1;
        }
        true
    }
}

/// Graph with the given base-3 digits per pair: 0 absent, 1 `u -> v`,
/// 2 `v -> u`, pairs ordered `(0,1), (0,2), ..., (n-2,n-1)`.
fn graph_from_digits(n: usize, digits: &[u8]) -> OrientedGraph {
    let mut g = OrientedGraph::empty(n).expect("n >= 1");
    for (&(u, v), &d) in pairs(n).iter().zip(digits) {
        match d {
            1 => g.insert_arc(u, v),
            2 => g.insert_arc(v, u),
            _ => {}
        }
    }
    g
}

/// Exact maximum of the induced-copy count over all `3^C(n,2)` labeled
/// oriented graphs on `n <= 6` vertices. The witness is the maximizer whose
/// digit string (first pair most significant) is smallest.
pub fn exhaustive_max(n: usize, spec: &StarSpec) -> Result<SearchResult> {
    if n > EXHAUSTIVE_CAP {
        return Err(Error::TooLarge {
            n,
            cap: EXHAUSTIVE_CAP,
        });
    }
    if n == 0 {
        return Err(Error::EmptyGraph);
    }
    let pr = pairs(n);
    let p = pr.len();
    let prefix = p.min(6);
    let shards = 3usize.pow(prefix as u32);
    let tail = p - prefix;
    let (a, b) = (spec.out_leaves() as u32, spec.in_leaves() as u32);

    let (best, digits) = (0..shards)
        .into_par_iter()
        .map(|shard| {
            let mut digits = vec![0u8; p];
            let mut rem = shard;
            for i in (0..prefix).rev() {
                digits[i] = (rem % 3) as u8;
                rem /= 3;
            }
            let mut masks = Masks {
                out: [0; EXHAUSTIVE_CAP],
                inn: [0; EXHAUSTIVE_CAP],
            };
            for (i, &(u, v)) in pr.iter().enumerate() {
                masks.set(u, v, digits[i]);
            }
            let mut best = masks.count(n, a, b);
            let mut best_digits = digits.clone();
            'odometer: loop {
                let mut i = p;
                loop {
                    if i == prefix {
                        break 'odometer;
                    }
                    i -= 1;
                    digits[i] = (digits[i] + 1) % 3;
                    masks.set(pr[i].0, pr[i].1, digits[i]);
                    if digits[i] != 0 {
                        break;
                    }
                }
                let c = masks.count(n, a, b);
                if c > best {
                    best = c;
                    best_digits.copy_from_slice(&digits);
                }
            }
            (best, best_digits)
        })
        .reduce(
            || (0, vec![u8::MAX; p]),
            |x, y| match x.0.cmp(&y.0) {
                Ordering::Greater => x,
                Ordering::Less => y,
                Ordering::Equal => {
                    if x.1 <= y.1 {
                        x
                    } else {
                        y
                    }
                }
            },
        );
    let _ = tail;
    let witness = graph_from_digits(n, &digits);
    Ok(SearchResult {
        best_count: best as u128,
        best_i: i_from_count(best as u128, n, spec),
        witness,
        explored: 3u64.pow(p as u32),
        method: SearchMethod::Exhaustive,
        trace: Vec::new(),
    })
}

/// Lexicographic score: the full count, then (while the count is zero) the
/// distance to the nearest copy, then the counts of every sub-star with one
/// leaf fewer, two fewer, and so on.
fn score(g: &OrientedGraph, spec: &StarSpec) -> Vec<u128> {
    let (a, b) = (spec.out_leaves(), spec.in_leaves());
    let count = count_fast(g, spec);
    let mut s = vec![
        count,
        u128::MAX
            - if count == 0 {
                near_distance(g, spec)
            } else {
                0
            },
    ];
    for leaves in (1..spec.m()).rev() {
        let level = (0..=a.min(leaves))
            .filter(|&x| leaves - x <= b)
            .map(|x| count_shape(g, x, leaves - x))
            .sum();
        s.push(level);
    }
    s
}

/// Fewest pair changes turning some `(m+1)`-subset into an induced copy.
/// Only evaluated while no copy exists, and only when the number of subsets
/// is small; returns 0 otherwise.
fn near_distance(g: &OrientedGraph, spec: &StarSpec) -> u128 {
    let (n, r, a) = (g.n(), spec.order(), spec.out_leaves());
    if n < r || crate::rational::binomial(n as u128, r as u128) > 200_000 {
        return 0;
    }
    let mut best = usize::MAX;
    let mut idx: Vec<usize> = (0..r).collect();
    let mut diff = Vec::with_capacity(r);
    loop {
        for (ci, &c) in idx.iter().enumerate() {
            let mut cost = 0;
            diff.clear();
            for (li, &u) in idx.iter().enumerate() {
                if li == ci {
                    continue;
                }
                for &w in &idx[li + 1..] {
                    if w != c && g.adjacent(u, w) {
                        cost += 1;
                    }
                }
                let as_out = usize::from(!g.has_arc(c, u));
                let as_in = usize::from(!g.has_arc(u, c));
                cost += as_in;
                diff.push(as_out as isize - as_in as isize);
            }
            diff.sort_unstable();
            let extra: isize = diff[..a].iter().sum();
            best = best.min((cost as isize + extra) as usize);
        }
        let mut i = r;
        while i > 0 && idx[i - 1] == i - 1 + n - r {
            i -= 1;
        }
        if i == 0 {
            break;
        }
        idx[i - 1] += 1;
        for j in i..r {
            idx[j] = idx[j - 1] + 1;
        }
    }
    best as u128
}

/// The clone-replace move: `u` maximizes `s(u)` and `v` minimizes `s(v)`
/// (lowest id on ties); `v` is deleted and replaced by a twin of `u`.
/// Returns `None` when both are the same vertex.
pub fn clone_replace_step(
    g: &OrientedGraph,
    spec: &StarSpec,
) -> Option<(usize, usize, OrientedGraph)> {
    let vd = vertex_densities(g, spec);
    let mut u = 0;
    let mut v = 0;
    for (i, d) in vd.iter().enumerate() {
        if d.s_v > vd[u].s_v {
            u = i;
        }
        if d.s_v < vd[v].s_v {
            v = i;
        }
    }
    if u == v {
        return None;
    }
    Some((u, v, g.clone_replace(u, v).expect("ids in range")))
}

/// Uniformly random labeled oriented graph: each pair independently absent,
/// forward or backward.
pub fn random_graph(n: usize, seed: u64) -> Result<OrientedGraph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let digits: Vec<u8> = pairs(n).iter().map(|_| rng.gen_range(0..3u8)).collect();
    if n == 0 {
        return Err(Error::EmptyGraph);
    }
    Ok(graph_from_digits(n, &digits))
}

/// Hill climbing from a seeded random graph. Each step evaluates the
/// clone-replace move and every single-pair reassignment and takes the best
/// strict improvement (first found on ties: clone-replace, then pairs in
/// order). Stops at a local optimum or after `max_moves` accepted moves.
pub fn local_search(
    spec: &StarSpec,
    n: usize,
    seed: u64,
    max_moves: usize,
) -> Result<SearchResult> {
    if n < spec.order() {
        return Err(Error::InfeasibleSizes(format!(
            "n = {n} is below the star order {}",
            spec.order()
        )));
    }
    let mut g = random_graph(n, seed)?;
    let mut cur = score(&g, spec);
    let mut trace = vec![cur[0]];
    let mut explored = 1u64;
    let pr = pairs(n);
    for _ in 0..max_moves {
        let mut best: Option<(Vec<u128>, OrientedGraph)> = None;
        let consider = |cand: OrientedGraph, best: &mut Option<(Vec<u128>, OrientedGraph)>| {
            let sc = score(&cand, spec);
            let bar = best.as_ref().map_or(&cur, |b| &b.0);
            if sc > *bar {
                *best = Some((sc, cand));
            }
        };
        if let Some((_, _, cand)) = clone_replace_step(&g, spec) {
            explored += 1;
            consider(cand, &mut best);
        }
        for &(u, v) in &pr {
            let now = g.pair_state(u, v);
            for st in [PairState::Absent, PairState::Forward, PairState::Backward] {
                if st != now {
                    explored += 1;
                    consider(g.with_pair(u, v, st)?, &mut best);
                }
            }
        }
        match best {
            Some((sc, cand)) => {
                g = cand;
                cur = sc;
                trace.push(cur[0]);
            }
            None => break,
        }
    }
    Ok(SearchResult {
        best_count: cur[0],
        best_i: i_from_count(cur[0], n, spec),
        witness: g,
        explored,
        method: SearchMethod::Local,
        trace,
    })
}

/// Runs restarts with seeds `seed, seed + 1, ...` in parallel. Returns every
/// restart's result in seed order and the index of the best one (highest
/// count, earliest seed on ties).
pub fn local_search_restarts(
    spec: &StarSpec,
    n: usize,
    seed: u64,
    max_moves: usize,
    restarts: usize,
) -> Result<(usize, Vec<SearchResult>)> {
    if restarts == 0 {
        return Err(Error::Domain {
            name: "restarts",
            value: 0.0,
            domain: "[1, inf)",
        });
    }
    let runs: Vec<SearchResult> = (0..restarts as u64)
        .into_par_iter()
        .map(|r| local_search(spec, n, seed.wrapping_add(r), max_moves))
        .collect::<Result<_>>()?;
    let mut best = 0;
    for (i, r) in runs.iter().enumerate() {
        if r.best_count > runs[best].best_count {
            best = i;
        }
    }
    Ok((best, runs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construction::{optimal_construction, ConstructionMode};
    use crate::density::count_oracle;

    fn spec(k: usize, l: usize) -> StarSpec {
        StarSpec::new(k, l).unwrap()
    }

    fn brute_force(n: usize, spec: &StarSpec) -> u128 {
        let p = pairs(n).len();
        (0..3usize.pow(p as u32))
            .map(|mut idx| {
                let mut digits = vec![0u8; p];
                for i in (0..p).rev() {
                    digits[i] = (idx % 3) as u8;
                    idx /= 3;
                }
                count_oracle(&graph_from_digits(n, &digits), spec)
            })
            .max()
            .unwrap()
    }

    #[test]
    fn directed_four_cycle_is_extremal() {
        let s = spec(1, 1);
        let r = exhaustive_max(4, &s).unwrap();
        assert_eq!(r.best_count, 4);
        assert_eq!(r.best_i, Rational::from_integer(1.into()));
        assert_eq!(r.explored, 729);
        let w = &r.witness;
        assert_eq!(w.arc_count(), 4);
        for v in 0..4 {
            assert_eq!((w.out_degree(v), w.in_degree(v)), (1, 1));
        }
        assert_eq!(count_oracle(w, &s), 4);
        assert_eq!(exhaustive_max(4, &s).unwrap(), r);
    }

    #[test]
    fn matches_brute_force() {
        for (n, k, l) in [
            (3, 2, 1),
            (4, 2, 1),
            (4, 1, 2),
            (5, 2, 1),
            (5, 3, 1),
            (5, 2, 2),
        ] {
            let s = spec(k, l);
            let r = exhaustive_max(n, &s).unwrap();
            assert_eq!(r.best_count, brute_force(n, &s), "{n} {k} {l}");
            assert_eq!(count_oracle(&r.witness, &s), r.best_count);
        }
        assert_eq!(exhaustive_max(3, &spec(2, 1)).unwrap().best_count, 0);
        assert!(matches!(
            exhaustive_max(7, &spec(2, 1)),
            Err(Error::TooLarge { .. })
        ));
    }

    #[test]
    fn local_search_single_copy() {
        for (k, l) in [(1, 1), (2, 1), (1, 2), (3, 1), (2, 2), (3, 2)] {
            let s = spec(k, l);
            let r = local_search(&s, s.order(), 3, 1000).unwrap();
            assert_eq!(r.best_count, 1, "{k} {l}");
        }
    }

    #[test]
    fn local_search_monotone_and_beats_construction() {
        let s = spec(2, 1);
        let (best, runs) = local_search_restarts(&s, 12, 0, 10_000, 10).unwrap();
        for r in &runs {
            assert!(r.trace.windows(2).all(|w| w[0] <= w[1]));
            assert_eq!(count_fast(&r.witness, &s), r.best_count);
        }
        let g = optimal_construction(&s, 12, ConstructionMode::Balanced).unwrap();
        assert!(runs[best].best_i >= i_from_count(count_fast(&g, &s), 12, &s));
        let again = local_search_restarts(&s, 12, 0, 10_000, 10).unwrap();
        assert_eq!(again.1[best], runs[best]);
    }
}
