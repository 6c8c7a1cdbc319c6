//! States, measurements and channels.

mod channel;
mod povm;
mod state;

pub use channel::{
    apply, channel_by_name, clock_shift_unitaries, extend, make_amplitude_damping, make_depolarizing,
    make_generalized_damping, make_generalized_pauli, make_pauli, make_phase_unitary, phase_unitary, KrausChannel,
    CHANNEL_NAMES,
};
pub use povm::{born, measure_basis, Axis, Povm};
pub use state::{canonical_spectral, pauli_x, pauli_y, pauli_z, DensityMatrix, PureState, SpectralState};
