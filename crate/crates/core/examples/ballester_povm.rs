//! A measurement attaining the multi-parameter SLD bound on a pure family
//! whose derivatives satisfy the Matsumoto condition.

use qestkit::metrics::{ballester_povm, check_matsumoto, dim_bound_check, fisher_info, sld_info};
use qestkit::models::commuting_ud;
use qestkit::random::random_pure_family;

fn main() -> qestkit::Result<()> {
    let fam = commuting_ud(3, vec![1.0, 1.0])?;
    let theta = [0.2, 0.4];
    println!("Matsumoto: {:?}", check_matsumoto(&fam, &theta)?);
    let povm = ballester_povm(&fam, &theta, None)?;
    println!("{} elements, completeness error {:.1e}", povm.len(), povm.completeness_error());
    let f = fisher_info(&fam, &theta, &povm)?;
    let h = sld_info(&fam, &theta)?;
    println!("F = {:?}\nH = {:?}\nmax |F - H| = {:.2e}", f.entries, h.entries, f.max_abs_diff(&h));

    // three parameters on a qubit cannot all be estimated optimally
    let qubit = random_pure_family(7, 2, 3);
    let v = dim_bound_check(&qubit, &[0.1, 0.2, 0.3])?;
    println!("\n3-parameter qubit family: Matsumoto holds {}, max |Im| {:.3}", v.matsumoto_holds, v.max_imag);
    match ballester_povm(&qubit, &[0.1, 0.2, 0.3], None) {
        Ok(_) => println!("unexpected: measurement constructed"),
        Err(e) => println!("ballester_povm refuses: {e}"),
    }
    Ok(())
}
