//! Sampling estimators of `s(G)` and `s(v)`.
//!
//! Samples are split into a fixed number of chunks, each driven by its own
//! ChaCha stream derived from the master seed, so results do not depend on
//! the number of worker threads.

use crate::graph::OrientedGraph;
use crate::star::StarSpec;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

const CHUNKS: u64 = 256;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct McEstimate {
    pub estimate: f64,
    pub std_error: f64,
    pub samples: u64,
    pub hits: u64,
    pub seed: u64,
}

impl McEstimate {
    fn from_hits(hits: u64, samples: u64, seed: u64) -> Self {
        let p = if samples == 0 {
            0.0
        } else {
            hits as f64 / samples as f64
        };
        let std_error = if samples == 0 {
            0.0
        } else {
            (p * (1.0 - p) / samples as f64).sqrt()
        };
        McEstimate {
            estimate: p,
            std_error,
            samples,
            hits,
            seed,
        }
    }
}

/// Image of a random map: index 0 is the center, then the out-leaves, then
/// the in-leaves.
fn is_copy(g: &OrientedGraph, img: &[usize], out_leaves: usize) -> bool {
    let c = img[0];
    for (i, &u) in img.iter().enumerate().skip(1) {
        let ok = if i <= out_leaves {
            g.has_arc(c, u)
        } else {
            g.has_arc(u, c)
        };
        if !ok {
            return false;
        }
    }
    for i in 1..img.len() {
        for j in i + 1..img.len() {
            if img[i] == img[j] || g.adjacent(img[i], img[j]) {
                return false;
            }
        }
    }
    true
}

fn chunked_hits(samples: u64, seed: u64, draw: impl Fn(&mut ChaCha8Rng) -> bool + Sync) -> u64 {
    (0..CHUNKS)
        .into_par_iter()
        .map(|chunk| {
            let len = samples / CHUNKS + u64::from(chunk < samples % CHUNKS);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(chunk);
            (0..len).filter(|_| draw(&mut rng)).count() as u64
        })
        .sum()
}

/// Unbiased estimate of `s(G)` from `samples` uniformly random maps, with the
/// binomial standard error.
pub fn monte_carlo_s(g: &OrientedGraph, spec: &StarSpec, samples: u64, seed: u64) -> McEstimate {
    let n = g.n();
    let r = spec.order();
    let a = spec.out_leaves();
    let hits = chunked_hits(samples, seed, |rng| {
        let mut img = [0usize; 64];
        let img = &mut img[..r.min(64)];
        if r > 64 {
            let v: Vec<usize> = (0..r).map(|_| rng.gen_range(0..n)).collect();
            return is_copy(g, &v, a);
        }
        for x in img.iter_mut() {
            *x = rng.gen_range(0..n);
        }
        is_copy(g, img, a)
    });
    McEstimate::from_hits(hits, samples, seed)
}

/// Estimate of `s(v)`: a uniformly random star vertex is mapped to `v`, the
/// others uniformly.
pub fn monte_carlo_vertex(
    g: &OrientedGraph,
    spec: &StarSpec,
    v: usize,
    samples: u64,
    seed: u64,
) -> McEstimate {
    let n = g.n();
    let r = spec.order();
    let a = spec.out_leaves();
    let hits = chunked_hits(samples, seed, |rng| {
        let mut img: Vec<usize> = (0..r).map(|_| rng.gen_range(0..n)).collect();
        let z = rng.gen_range(0..r);
        img[z] = v;
        is_copy(g, &img, a)
    });
    McEstimate::from_hits(hits, samples, seed)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_graph_never_hits() {
        let g = OrientedGraph::empty(10).unwrap();
        let e = monte_carlo_s(&g, &StarSpec::new(2, 1).unwrap(), 10_000, 7);
        assert_eq!((e.estimate, e.std_error, e.hits), (0.0, 0.0, 0));
    }

    #[test]
    fn deterministic_given_seed() {
        let g = OrientedGraph::new(4, &[(0, 1), (0, 2), (3, 0)]).unwrap();
        let s = StarSpec::new(2, 1).unwrap();
        let a = monte_carlo_s(&g, &s, 100_000, 3);
        let b = monte_carlo_s(&g, &s, 100_000, 3);
        assert_eq!(a, b);
        assert_ne!(a.hits, monte_carlo_s(&g, &s, 100_000, 4).hits);
    }

    #[test]
    fn star_density_within_five_sigma() {
        let g = OrientedGraph::new(4, &[(0, 1), (0, 2), (3, 0)]).unwrap();
        let e = monte_carlo_s(&g, &StarSpec::new(2, 1).unwrap(), 1_000_000, 11);
        assert!(
            (e.estimate - 1.0 / 128.0).abs() <= 5.0 * e.std_error,
            "{e:?}"
        );
    }
}
