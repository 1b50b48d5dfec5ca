//! Partition statistics and the stability diagnostic on a construction.

use star_inducibility::construction::{optimal_construction, ConstructionMode};
use star_inducibility::rational::to_f64;
use star_inducibility::verifier::{partition_stats, stability_report};
use star_inducibility::StarSpec;

fn main() -> star_inducibility::Result<()> {
    let spec = StarSpec::new(3, 1)?;
    let g = optimal_construction(&spec, 80, ConstructionMode::Balanced)?;
    let p = partition_stats(&g, &spec, None, 0)?;
    println!(
        "|X| = {}, alpha = {:.4}, S = {:.6e}",
        p.x.len(),
        to_f64(&p.alpha),
        to_f64(&p.big_s)
    );
    if let Some(d) = &p.d {
        println!("d = {:.4}", to_f64(d));
    }
    let r = stability_report(&g, &spec, 0.05)?;
    println!("target alpha* = {:.4}, d* = {:.4}", r.alpha_star, r.d_star);
    for (i, (delta, ok)) in r.condition_deltas.iter().zip(r.satisfied).enumerate() {
        println!(
            "condition {}: {delta:.4} {}",
            i + 1,
            if ok { "ok" } else { "violated" }
        );
    }
    Ok(())
}
