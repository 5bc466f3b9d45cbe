#pragma once

#include <vector>

#include "qsim/gate_matrix.hpp"
#include "qsim/truth_table.hpp"

namespace qsim {

enum class StandardGate { X, Z, H, SqrtNot };

/// The named single-qubit unitaries:
///   X = ((0,1),(1,0));  Z = ((1,0),(0,-1));  H = ((1,1),(1,-1))/sqrt(2);
///   SqrtNot squares to X.
GateMatrix standard_gate(StandardGate name);

/// Bloch rotation by theta about the y axis.
GateMatrix ry_gate(double theta);

/// Bloch rotation by theta about the z axis: diag(e^{-i theta/2}, e^{i theta/2}).
GateMatrix rz_gate(double theta);

/// Block-diagonal controlled gate: identity unless the n_controls leading
/// qubits are all 1, in which case `base` acts on the trailing qubits.
GateMatrix controlled(const GateMatrix& base, int n_controls);

/// controlled(X, 1): |a,b> -> |a, a xor b>.
GateMatrix cnot();

/// controlled(X, 2): |a,b,c> -> |a,b, c xor ab>.
GateMatrix toffoli();

/// Controlled swap with the control as the LAST listed qubit: |a,b,c> swaps
/// a and b iff c = 1.
GateMatrix fredkin();

struct GateOp {
    GateMatrix gate;
    std::vector<int> targets;
};

/// The two-qubit swap as exactly three CNOT applications.
std::vector<GateOp> swap_circuit();

/// H on each of n qubits; entry (row, col) = (-1)^(row.col)/sqrt(2^n).
GateMatrix hadamard_n(int n);

/// Discrete Fourier transform over an n-qubit register,
/// |X> -> sum_Y e^{2 pi i XY/2^n} |Y> / sqrt(2^n); qft(1) = H. The inverse
/// flag yields the conjugate transpose.
GateMatrix qft(int n, bool inverse = false);

/// (n+1)-qubit permutation gate |X, y> -> |X, y xor f(X)>. Self-inverse.
GateMatrix xor_oracle(const TruthTable& f);

/// Diagonal gate |X> -> (-1)^f(X) |X>. Self-inverse.
GateMatrix phase_oracle(const TruthTable& f);

/// diag(+1, -1, -1, ..., -1) on n qubits: flips the phase of every basis
/// state except |0...0>. Equals twice the projector on |0...0> minus identity.
GateMatrix conditional_phase_shift(int n);

} // namespace qsim
