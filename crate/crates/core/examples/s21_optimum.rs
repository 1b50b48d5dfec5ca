//! Inducibility of S_{2,1}: numeric maximizer plus the exact rational check.

use star_inducibility::opt::{objective_f_exact, solve_opt};
use star_inducibility::rational::{frac, int};
use star_inducibility::StarSpec;

fn main() -> star_inducibility::Result<()> {
    let spec = StarSpec::new(2, 1)?;
    let r = solve_opt(&spec, 1e-12)?;
    println!(
        "alpha* = {:.9}, d* = {:.9}",
        r.alpha_star,
        r.d_star.unwrap()
    );
    println!(
        "OPT = {:.12}, inducibility = {:.12}",
        r.opt_value, r.inducibility
    );
    let exact = objective_f_exact(&frac(3, 10), &frac(9, 14), &spec)? * int(12);
    println!("12 F(3/10, 9/14) = {exact}");
    Ok(())
}
