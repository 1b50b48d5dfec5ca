//! Asymptotic expansion of the optimum against the solver.

use star_inducibility::opt::{solve_opt, taylor_approx};
use star_inducibility::StarSpec;

fn main() -> star_inducibility::Result<()> {
    println!(
        "{:>3} {:>3} {:>16} {:>16} {:>10}",
        "k", "l", "expansion", "solver", "rel err"
    );
    for (k, l) in [(4, 2), (5, 1), (5, 3), (8, 2), (10, 5)] {
        let spec = StarSpec::new(k, l)?;
        let t = taylor_approx(&spec)?;
        let r = solve_opt(&spec, 1e-12)?;
        let rel = (t.value_hat - r.opt_value).abs() / r.opt_value;
        println!(
            "{k:>3} {l:>3} {:>16.10e} {:>16.10e} {rel:>10.2e}",
            t.value_hat, r.opt_value
        );
    }
    Ok(())
}
