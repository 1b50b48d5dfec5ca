//! Inducibility for every star with 6 <= m <= 9.

use star_inducibility::opt::solve_opt;
use star_inducibility::StarSpec;

fn main() -> star_inducibility::Result<()> {
    println!(
        "{:>2} {:>2} {:>9} {:>9} {:>12}",
        "k", "l", "alpha*", "d*", "inducibility"
    );
    for m in 6..=9 {
        for l in 1..=m / 2 {
            let r = solve_opt(&StarSpec::new(m - l, l)?, 1e-12)?;
            let d = r.d_star.map_or("-".to_string(), |d| format!("{d:.6}"));
            println!(
                "{:>2} {l:>2} {:>9.6} {d:>9} {:>12.8}",
                m - l,
                r.alpha_star,
                r.inducibility
            );
        }
    }
    Ok(())
}
