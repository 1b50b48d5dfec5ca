//! Per-vertex degree bound, sampled lemma checks and the closed-form sweep.

use star_inducibility::verifier::{arithmetic_sweeps, degree_bound_suite, lemma_suite};

fn main() -> star_inducibility::Result<()> {
    let d = degree_bound_suite(1, 200);
    println!(
        "degree bound: {} graphs, {} vertex checks, {} violations",
        d.graphs, d.checks, d.violations
    );
    let l = lemma_suite(1, 20_000);
    for c in &l.checks {
        println!(
            "{:<60} {:>7} cases, {} failures",
            c.name, c.cases, c.failures
        );
    }
    let a = arithmetic_sweeps(6, 64)?;
    println!(
        "arithmetic: {} checks, {} failures",
        a.checks.len(),
        a.failures
    );
    Ok(())
}
