//! Every information matrix of the Bloch-ball qubit family at one point, and
//! the effect of the eigenvector phase convention on C_Upsilon.

use qestkit::metrics::{c_l, c_upsilon, kmb_info, rld_info, sld_info, InfoMatrix};
use qestkit::models::{bloch_qubit, Gauge};

fn show(m: &InfoMatrix) {
    println!("{}:", m.kind.label());
    for row in &m.entries {
        let cells: Vec<String> = row.iter().map(|x| format!("{x:>9.5}")).collect();
        println!("   [{}]", cells.join(" "));
    }
}

fn main() -> qestkit::Result<()> {
    // (r, polar, azimuth)
    let theta = [0.5, 1.0, 0.7];
    let fam = bloch_qubit(false);
    show(&sld_info(&fam, &theta)?);
    show(&c_l(&fam, &theta)?);
    show(&c_upsilon(&fam, &theta, Gauge::FixedPhase)?);
    show(&kmb_info(&fam, &theta)?);
    show(&rld_info(&fam, &theta)?);

    println!("\nsame states, eigenvector phases shifted by the azimuth:");
    show(&c_upsilon(&bloch_qubit(true), &theta, Gauge::FixedPhase)?);
    show(&c_l(&bloch_qubit(true), &theta)?);

    let numeric = fam.numerical();
    let diff = sld_info(&fam, &theta)?.max_abs_diff(&sld_info(&numeric, &theta)?);
    println!("\nanalytic vs finite-difference SLD information: max diff {diff:.2e}");
    Ok(())
}
