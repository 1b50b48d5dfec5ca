//! Near-extremal constructions approach the optimum as n grows.

use star_inducibility::construction::{
    build_construction, optimal_params, predict_s, ConstructionMode,
};
use star_inducibility::density::density_report;
use star_inducibility::opt::solve_opt;
use star_inducibility::rational::to_f64;
use star_inducibility::StarSpec;

fn main() -> star_inducibility::Result<()> {
    let spec = StarSpec::new(4, 2)?;
    let opt = solve_opt(&spec, 1e-12)?.opt_value;
    println!("OPT = {opt:.6e}");
    for n in [30, 60, 120] {
        let p = optimal_params(&spec, n, ConstructionMode::Balanced)?;
        let g = build_construction(&p)?;
        let s = to_f64(&density_report(&g, &spec).s_density);
        println!(
            "n = {n:>3}: |X| = {:>3}, |Y1| = {:>3}, |Y2| = {:>3}, s = {s:.6e} ({:.3} of OPT), predicted {:.6e}",
            p.x, p.y1, p.y2, s / opt, predict_s(&p)?
        );
    }
    Ok(())
}
