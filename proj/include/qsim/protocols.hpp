#pragma once

#include <utility>

#include "qsim/measurement.hpp"
#include "qsim/state_vector.hpp"

namespace qsim {

/// Labels the four maximally entangled two-qubit states beta_xy.
struct BellLabel {
    int x = 0;
    int y = 0;
};

/// Prepares beta_xy from |xy> by H on the first qubit then CNOT:
///   beta_00 = (|00>+|11>)/sqrt2   beta_01 = (|01>+|10>)/sqrt2
///   beta_10 = (|00>-|11>)/sqrt2   beta_11 = (|01>-|10>)/sqrt2
StateVector bell_state(BellLabel label);

/// Encodes two classical bits on the sender's half of a shared beta_00 pair:
/// 00 -> identity, 01 -> X, 10 -> Z, 11 -> Z.X, producing beta_{b1 b2}.
/// The shared state is checked to be beta_00.
StateVector superdense_encode(int b1, int b2, const StateVector& shared);

/// Recovers the two bits from a Bell state by undoing the Bell circuit
/// (CNOT then H on the first qubit) and reading the computational basis.
/// Deterministic; rejects inputs that are not one of the four Bell states.
std::pair<int, int> superdense_decode(const StateVector& state);

/// One teleportation run. bob_state_before is the receiver's qubit right
/// after the sender's measurement, bob_state_after includes the classical
/// correction; for a beta_00 channel the correction is Z^m1 X^m2.
struct TeleportRecord {
    int m1 = 0;
    int m2 = 0;
    StateVector bob_state_before;
    StateVector bob_state_after;
    double fidelity_to_input = 0.0;
};

/// Teleports the single-qubit state psi over a shared Bell pair. Supported
/// channels are beta_00 and beta_11; the beta_11 correction table
/// (Z^(1 xor m1) X^(1 xor m2)) was pinned by simulating all four outcomes.
TeleportRecord teleport(const StateVector& psi, BellLabel label, RandomSource& rng);

/// True iff the two-qubit state is not a product of single-qubit states,
/// detected by a mixed reduced density matrix for the first qubit.
bool is_entangled(const StateVector& state);

} // namespace qsim
