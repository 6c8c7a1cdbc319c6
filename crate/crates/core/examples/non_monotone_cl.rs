//! C_L can grow under a noisy channel: a qutrit rotation whose C_L increases
//! after depolarizing noise, alongside the monotone-function picture.

use qestkit::metrics::{c_l, monotone_f, sld_info, CoefficientKind};
use qestkit::models::depol_qutrit_rotation;

fn main() -> qestkit::Result<()> {
    let delta = 0.1;
    for eps in [0.0, 0.1, 0.2, 0.5] {
        let fam = depol_qutrit_rotation(delta, eps)?;
        let cl = c_l(&fam, &[0.3])?.get(0, 0);
        let h = sld_info(&fam, &[0.3])?.get(0, 0);
        println!("eps = {eps:<3}  C_L = {cl:.6}  (8d + 8eps(1/3 - d) = {:.6})  H = {h:.2e}", 8.0 * delta + 8.0 * eps * (1.0 / 3.0 - delta));
    }

    println!("\n    t    f_SLD    f_KMB    f_RLD    f_CL");
    for t in [0.0, 0.25, 0.5, 1.0, 2.0, 4.0] {
        let f: Vec<String> = CoefficientKind::ALL.iter().map(|&k| format!("{:8.4}", monotone_f(k, t).unwrap())).collect();
        println!("{t:5.2} {}", f.join(" "));
    }
    println!("f_CL is not increasing (f_CL(0) = 0.5 > f_CL(1) = 0), so C_L is not a monotone metric.");
    Ok(())
}
