#pragma once

#include <span>
#include <vector>

#include "qsim/gate_matrix.hpp"

namespace qsim::detail {

// Applies `gate` in place to a raw amplitude vector of an n_qubits register.
// Targets are assumed validated (distinct, in range, one per gate qubit).
// Does not touch the gate's call counter.
void apply_gate_raw(std::vector<Complex>& amps, int n_qubits, const GateMatrix& gate,
                    std::span<const int> targets);

void validate_targets(int n_qubits, int arity, std::span<const int> targets);

} // namespace qsim::detail
