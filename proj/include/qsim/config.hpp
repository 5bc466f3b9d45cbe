#pragma once

namespace qsim {

/// Resource guards for state, density-matrix and dense-gate allocation.
/// Defaults are desk scale: a 24-qubit statevector is ~256 MB of amplitudes.
struct SizeLimits {
    int max_state_qubits = 24;
    int max_density_qubits = 12;
    int max_dense_gate_qubits = 12;
    int max_oracle_inputs = 20;
};

/// Mutable global limits. Adjust once at startup (e.g. from QSIM_MAX_QUBITS);
/// not synchronized for concurrent mutation.
SizeLimits& limits();

} // namespace qsim
