//! Two-stage adaptive estimation of a qubit azimuth: a coarse x/y estimate,
//! then a measurement rotated to the most sensitive direction.

use qestkit::phase::{adaptive_demo, adaptive_mse, trial_rng, AdaptiveSetup};

fn main() -> qestkit::Result<()> {
    let setup = AdaptiveSetup { phi: 0.9, polar: 1.2, n: 10_000, n_first: 1_000 };
    let one = adaptive_demo(&setup, &mut trial_rng(5, 0))?;
    println!("true phi {:.4}: first stage {:.4}, refined {:.4}", setup.phi, one.first, one.refined);

    let mse = adaptive_mse(&setup, 1000, 5)?;
    println!(
        "over {} replicates: MSE first stage {:.3e}, refined {:.3e} ({} clamped)",
        mse.replicates, mse.mse_first, mse.mse_refined, mse.clamped
    );
    Ok(())
}
