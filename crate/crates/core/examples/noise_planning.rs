//! Planning an experiment: measurement counts per stage, the best number of
//! stages under noise, and the resulting fidelity bound.

use qestkit::phase::{alpha_bound_check, bernstein_counts, noise_planning, worst_case_fidelity};

fn main() -> qestkit::Result<()> {
    let c = bernstein_counts(6, 2f64.powi(-12))?;
    println!("l = 6, eps = 2^-12: N = {} per basis, N_tot = {}", c.n, c.n_tot);
    println!("stage-arc margin at alpha = 0.3794: {:.2e} rad", alpha_bound_check());

    for e in [4, 6, 8] {
        let plan = noise_planning(2f64.powi(-e), 10)?;
        println!("\nr = 2^-{e}: m* = {:.2} (approx {}), best stage count {}", plan.m_star, plan.m_star_approx, plan.l_star);
        for s in &plan.curve {
            println!("  stage {:2}  m = {:4}  H/m = {:9.3}", s.stage, s.uses, s.info_per_use);
        }
    }

    println!("\nworst-case infidelity with eps = 4^-l:");
    for l in 4..=10 {
        let b = worst_case_fidelity(l, 4f64.powi(-(l as i32)))?;
        println!("  l = {l:2}  1-F <= {:.3e}  (x 4^l = {:.4})", b.exact, b.exact * 4f64.powi(l as i32));
    }
    Ok(())
}
