#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "qsim/gate_matrix.hpp"
#include "qsim/state_vector.hpp"

namespace qsim {

/// 2^n x 2^n density operator, row-major. Carries mixed states, reduced
/// states and dephasing; validated Hermitian within 1e-10 with unit trace.
class DensityMatrix {
  public:
    DensityMatrix(int n_qubits, std::vector<Complex> entries);

    int n_qubits() const { return n_qubits_; }
    std::uint64_t dim() const { return std::uint64_t{1} << n_qubits_; }

    const Complex& entry(std::uint64_t row, std::uint64_t col) const {
        return entries_[row * dim() + col];
    }
    const std::vector<Complex>& entries() const { return entries_; }

  private:
    int n_qubits_;
    std::vector<Complex> entries_;
};

/// |psi><psi|.
DensityMatrix to_density(const StateVector& state);

/// Traces out every qubit not listed in `keep`; the result's qubits follow
/// the order of `keep`. Trace is preserved.
DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const int> keep);
DensityMatrix partial_trace(const DensityMatrix& rho, std::initializer_list<int> keep);

/// Tr(rho^2); 1 for pure states, 1/2^n for the maximally mixed state.
double purity(const DensityMatrix& rho);

/// U rho U+ on the listed target qubits.
DensityMatrix apply_gate(const DensityMatrix& rho, const GateMatrix& gate,
                         std::span<const int> targets);
DensityMatrix apply_gate(const DensityMatrix& rho, const GateMatrix& gate,
                         std::initializer_list<int> targets);

} // namespace qsim
