#pragma once

#include <span>
#include <vector>

#include "qsim/random.hpp"
#include "qsim/state_vector.hpp"

namespace qsim {

/// Outcome of measuring a subset of qubits in the computational basis.
/// `bits` follows the order of the measured targets; `post_state` is the
/// explicitly renormalized conditional state of the full register;
/// `probability` is the Born probability of this outcome.
struct MeasurementResult {
    std::vector<int> bits;
    StateVector post_state;
    double probability;
};

/// Samples `targets` per the Born rule and collapses the state. Targets must
/// be distinct, in range, and nonempty.
MeasurementResult measure(const StateVector& state, std::span<const int> targets,
                          RandomSource& rng);
MeasurementResult measure(const StateVector& state, std::initializer_list<int> targets,
                          RandomSource& rng);

/// Deterministic collapse onto the given outcome bits (one per target).
/// Rejects outcomes of (numerically) zero probability. Backs the forced-
/// measurement hooks used by golden reproductions.
MeasurementResult project(const StateVector& state, std::span<const int> targets,
                          std::span<const int> bits);
MeasurementResult project(const StateVector& state, std::initializer_list<int> targets,
                          std::initializer_list<int> bits);

} // namespace qsim
