//! Sampling estimate of s(G) compared with the exact value.

use star_inducibility::construction::{optimal_construction, ConstructionMode};
use star_inducibility::density::{density_report, monte_carlo_s};
use star_inducibility::rational::to_f64;
use star_inducibility::StarSpec;

fn main() -> star_inducibility::Result<()> {
    let spec = StarSpec::new(3, 1)?;
    let g = optimal_construction(&spec, 60, ConstructionMode::Random { seed: 1 })?;
    let exact = to_f64(&density_report(&g, &spec).s_density);
    for samples in [10_000, 100_000, 1_000_000] {
        let e = monte_carlo_s(&g, &spec, samples, 42);
        let z = (e.estimate - exact) / e.std_error;
        println!(
            "{samples:>8} samples: {:.6} +- {:.6} (exact {exact:.6}, z = {z:+.2})",
            e.estimate, e.std_error
        );
    }
    Ok(())
}
