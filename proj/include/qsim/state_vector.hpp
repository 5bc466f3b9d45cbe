#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace qsim {

using Complex = std::complex<double>;

class GateMatrix;

/// Normalized pure state of an n-qubit register, stored as the full list of
/// 2^n complex amplitudes over the computational basis.
///
/// Ordering convention: the first-listed qubit of |q0 q1 ... q_{n-1}> is the
/// most significant, so the amplitude of that basis state sits at index
/// sum_i q_i * 2^(n-1-i). Register dumps therefore read like the binary
/// integer labelling the state.
class StateVector {
  public:
    /// Validates length == 2^n_qubits, the qubit-count limit and
    /// normalization (sum of |amplitude|^2 within 1e-9 of 1).
    StateVector(int n_qubits, std::vector<Complex> amplitudes);

    int n_qubits() const { return n_qubits_; }
    std::uint64_t dim() const { return std::uint64_t{1} << n_qubits_; }

    const Complex& operator[](std::uint64_t index) const { return amps_[index]; }
    const std::vector<Complex>& amplitudes() const { return amps_; }

  private:
    struct AssumeNormalized {};
    StateVector(AssumeNormalized, int n_qubits, std::vector<Complex> amplitudes)
        : n_qubits_(n_qubits), amps_(std::move(amplitudes)) {}

    // Unitary application preserves the norm; re-validating after every gate
    // would double the memory traffic of the kernels.
    friend StateVector apply_gate(const StateVector& state, const GateMatrix& gate,
                                  std::span<const int> targets);

    int n_qubits_;
    std::vector<Complex> amps_;
};

/// |index> on an n-qubit register.
StateVector basis_state(int n_qubits, std::uint64_t index);

/// |a> (x) |b>: amplitude[i * 2^b.n + j] = a[i] * b[j].
StateVector tensor(const StateVector& a, const StateVector& b);

/// Born probabilities |amplitude[i]|^2, in basis order.
std::vector<double> probabilities(const StateVector& state);

/// |<a|b>|^2. Requires matching qubit counts.
double fidelity(const StateVector& a, const StateVector& b);

/// Multiplies by the global phase that makes the first nonzero amplitude
/// real and positive. Used to pin a representative for golden comparisons.
StateVector phase_normalized(const StateVector& state);

/// One line per nonzero amplitude: `<index-in-binary> <re> <im>`, indices
/// ascending, 12 significant digits. Amplitudes below 1e-12 in magnitude
/// count as zero.
std::string dump_state(const StateVector& state);

/// Parses the dump_state format. Qubit count is taken from the width of the
/// binary indices; the amplitudes are renormalized if within 1e-6 of unit
/// norm, rejected otherwise.
StateVector parse_state_dump(const std::string& text);

} // namespace qsim
