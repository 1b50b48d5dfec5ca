//! Exhaustive search over every oriented graph on a few vertices.

use star_inducibility::search::exhaustive_max;
use star_inducibility::StarSpec;

fn main() -> star_inducibility::Result<()> {
    for (a, b, n) in [(1, 1, 4), (2, 1, 5), (1, 1, 5)] {
        let spec = StarSpec::new(a, b)?;
        let r = exhaustive_max(n, &spec)?;
        println!(
            "{spec}, n = {n}: {} graphs, best count {}, i = {}",
            r.explored, r.best_count, r.best_i
        );
        println!("  witness arcs {:?}", r.witness.arcs());
    }
    Ok(())
}
