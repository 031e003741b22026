//! Fixtures shared by the criterion benches.

use wtangle_core::densmat::PureStateVector;
use wtangle_core::symstate::wclass_state;

/// Full amplitude vector of the n-qubit W state.
pub fn w_state_vector(n: usize) -> PureStateVector {
    wclass_state(n, std::f64::consts::PI)
        .expect("valid W state")
        .to_full_vector()
        .expect("within the qubit cap")
}
