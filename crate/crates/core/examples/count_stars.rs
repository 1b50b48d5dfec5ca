//! Exact counting and the normalized densities on a small graph.

use star_inducibility::density::{count_fast, count_oracle, density_report, vertex_densities};
use star_inducibility::{OrientedGraph, StarSpec};

fn main() -> star_inducibility::Result<()> {
    // a directed 5-cycle with two chords
    let g = OrientedGraph::new(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 2), (3, 1)])?;
    for (a, b) in [(1, 1), (2, 1), (1, 2)] {
        let spec = StarSpec::new(a, b)?;
        let r = density_report(&g, &spec);
        assert_eq!(count_fast(&g, &spec), count_oracle(&g, &spec));
        println!(
            "{spec}: count {}, i = {}, s = {}",
            r.count, r.i_density, r.s_density
        );
    }
    let spec = StarSpec::new(1, 1)?;
    for (v, d) in vertex_densities(&g, &spec).iter().enumerate() {
        println!("  s(v = {v}) = {}", d.s_v);
    }
    Ok(())
}
