//! Monte-Carlo coverage of the iterative phase estimator, with and without
//! depolarizing noise. Pass a trial count as the first argument.

use qestkit::phase::{run_simulation, NoiseModel, SimConfig};

fn main() -> qestkit::Result<()> {
    let trials = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(20_000);
    println!("   l  N_tot        r   coverage   95% interval");
    for (l, n_tot, r) in [(6, 30, 0.0), (8, 40, 0.0), (6, 30, 1.0 / 16.0), (5, 30, 1.0 / 32.0), (7, 30, 1.0 / 32.0), (6, 100, 1.0 / 32.0)] {
        let rep = run_simulation(&SimConfig { l, n_tot, trials, noise: NoiseModel::new(r)?, seed: 2024 })?;
        println!("{l:4} {n_tot:6} {r:8.5} {:10.5}   [{:.5}, {:.5}]", rep.coverage, rep.ci_lo, rep.ci_hi);
    }
    Ok(())
}
