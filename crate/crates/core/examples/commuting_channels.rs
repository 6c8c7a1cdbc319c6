//! Separate versus sequential use of commuting unitary channels: the SLD
//! information trace gains a factor n from sequential use.

use qestkit::metrics::{commuting_scheme_info, sld_info, Scheme};
use qestkit::models::{commuting_ud, commuting_ud_separate};

fn main() -> qestkit::Result<()> {
    println!(" n   separate  sequential  ratio");
    for n in [1, 2, 5, 10] {
        let f = vec![1.0; n];
        let sep = commuting_scheme_info(&f, 2, Scheme::Separate)?;
        let seq = commuting_scheme_info(&f, 2, Scheme::Sequential)?;
        println!("{n:2} {sep:10.3} {seq:11.3} {:6.2}", seq / sep);
    }

    // check the closed forms against the output states themselves
    let slopes = vec![1.0, 2.0];
    let theta = [0.1, 0.25];
    let seq = sld_info(&commuting_ud(3, slopes.clone())?, &theta)?.trace();
    let sep = sld_info(&commuting_ud_separate(3, slopes.clone())?, &theta)?.trace();
    println!(
        "\nd = 3, slopes (1, 2): sequential tr H = {seq:.6} (formula {:.6}), separate tr H = {sep:.6} (formula {:.6})",
        commuting_scheme_info(&slopes, 3, Scheme::Sequential)?,
        commuting_scheme_info(&slopes, 3, Scheme::Separate)?
    );
    Ok(())
}
