#![allow(dead_code)]

use rand::Rng;
use star_inducibility::OrientedGraph;

/// Each pair adjacent with probability `p`, orientation by a fair coin.
pub fn random_graph(rng: &mut impl Rng, n: usize, p: f64) -> OrientedGraph {
    let mut arcs = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                arcs.push(if rng.gen_bool(0.5) { (u, v) } else { (v, u) });
            }
        }
    }
    OrientedGraph::new(n, &arcs).unwrap()
}

pub fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

/// Brute force over all `n^(m+1)` maps from the star (center first, then
/// out-leaves, then in-leaves): how many are isomorphisms onto induced
/// copies, in total and with a given position sent to each vertex.
pub struct MapTally {
    pub total: u128,
    /// `by_position[z][v]`: good maps with star vertex `z` sent to `v`.
    pub by_position: Vec<Vec<u128>>,
}

pub fn enumerate_maps(g: &OrientedGraph, a: usize, b: usize) -> MapTally {
    let n = g.n();
    let r = a + b + 1;
    let mut img = vec![0usize; r];
    let mut tally = MapTally {
        total: 0,
        by_position: vec![vec![0; n]; r],
    };
    loop {
        let c = img[0];
        let mut ok = true;
        for i in 1..r {
            let want = if i <= a {
                g.has_arc(c, img[i])
            } else {
                g.has_arc(img[i], c)
            };
            ok &= want;
            for j in i + 1..r {
                ok &= img[i] != img[j] && !g.adjacent(img[i], img[j]);
            }
        }
        if ok {
            tally.total += 1;
            for (z, &v) in img.iter().enumerate() {
                tally.by_position[z][v] += 1;
            }
        }
        let mut i = 0;
        loop {
            if i == r {
                return tally;
            }
            img[i] += 1;
            if img[i] < n {
                break;
            }
            img[i] = 0;
            i += 1;
        }
    }
}
