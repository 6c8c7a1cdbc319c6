//! Classical Fisher information of random measurements never exceeds the SLD
//! information; the SLD eigenbasis measurement reaches it.

use qestkit::linalg::herm_eig;
use qestkit::metrics::{check_bc, check_bc_equality, fisher_info, sld_info};
use qestkit::models::sld_score;
use qestkit::quantum::Povm;
use qestkit::random::{random_family, random_povm};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> qestkit::Result<()> {
    let fam = random_family(42, 3, 1);
    let theta = [0.2];
    let h = sld_info(&fam, &theta)?;
    println!("H = {:.6}", h.get(0, 0));

    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for outcomes in [2, 3, 5, 8] {
        let povm = random_povm(&mut rng, 3, outcomes);
        let f = fisher_info(&fam, &theta, &povm)?;
        let bc = check_bc(&f, &h)?;
        println!("random {outcomes}-outcome POVM: F = {:.6}  H - F = {:.6}  holds: {}", f.get(0, 0), bc.min_eigenvalue, bc.holds);
    }

    let lambda = sld_score(&fam, &theta, 0)?.lambda;
    let pvm = Povm::from_basis(&herm_eig(&lambda)?.vectors)?;
    let f = fisher_info(&fam, &theta, &pvm)?;
    let eq = check_bc_equality(&fam, &theta, &pvm)?;
    println!("SLD eigenbasis: F = {:.6}, equality conditions satisfied: {}", f.get(0, 0), eq.all_satisfied);
    Ok(())
}
