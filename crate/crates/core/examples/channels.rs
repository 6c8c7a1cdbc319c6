//! Kraus channels acting on qubit and qutrit states, and Born-rule outcome
//! probabilities after the noise.

use qestkit::linalg::CMatrix;
use qestkit::quantum::{
    apply, born, channel_by_name, make_amplitude_damping, make_depolarizing, measure_basis, Axis, DensityMatrix,
    PureState, CHANNEL_NAMES,
};

fn main() -> qestkit::Result<()> {
    println!("registered channels: {}", CHANNEL_NAMES.join(", "));

    let plus = PureState::plus().density();
    for eps in [0.0, 0.25, 0.5, 1.0] {
        let out = apply(&make_depolarizing(2, eps)?, &plus)?;
        let p = born(&out, &measure_basis(Axis::X))?;
        println!("depolarizing eps={eps:<4}  purity {:.4}  P(+x) = {:.4}", out.purity(), p[0]);
    }

    let excited = PureState::basis(2, 1).density();
    for gamma in [0.0, 0.3, 1.0] {
        let out = apply(&make_amplitude_damping(gamma)?, &excited)?;
        println!("amplitude damping gamma={gamma:<3}  P(|0>) = {:.3}", out.matrix()[(0, 0)].re);
    }

    let qutrit = DensityMatrix::new(CMatrix::diag_real(&[0.7, 0.2, 0.1]))?;
    let out = apply(&channel_by_name("depolarizing", &[3.0, 0.6])?, &qutrit)?;
    let diag: Vec<String> = (0..3).map(|k| format!("{:.4}", out.matrix()[(k, k)].re)).collect();
    println!("qutrit depolarizing eps=0.6  diagonal [{}]", diag.join(", "));

    let gd = channel_by_name("gen_damp", &[0.4, 0.25])?;
    println!("generalized damping has {} Kraus operators, completeness error {:.1e}", gd.kraus().len(), gd.completeness_error());
    Ok(())
}
