//! Hill climbing from random tournaments, with restarts.

use star_inducibility::rational::to_f64;
use star_inducibility::search::local_search_restarts;
use star_inducibility::StarSpec;

fn main() -> star_inducibility::Result<()> {
    let spec = StarSpec::new(2, 1)?;
    let (best, runs) = local_search_restarts(&spec, 12, 7, 500, 4)?;
    for (i, r) in runs.iter().enumerate() {
        println!(
            "restart {i}: count {:>4}, i = {:.4}, {} accepted moves",
            r.best_count,
            to_f64(&r.best_i),
            r.trace.len() - 1
        );
    }
    println!("best restart: {best}");
    Ok(())
}
