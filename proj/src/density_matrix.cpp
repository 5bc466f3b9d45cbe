#include "qsim/density_matrix.hpp"

#include <cmath>
#include <stdexcept>

#include "kernels.hpp"
#include "qsim/config.hpp"

namespace qsim {

DensityMatrix::DensityMatrix(int n_qubits, std::vector<Complex> entries)
    : n_qubits_(n_qubits), entries_(std::move(entries)) {
    if (n_qubits_ < 1) {
        throw std::invalid_argument("density matrix must cover at least one qubit");
    }
    if (n_qubits_ > limits().max_density_qubits) {
        throw std::invalid_argument("density matrix of " + std::to_string(n_qubits_) +
                                    " qubits exceeds the configured maximum of " +
                                    std::to_string(limits().max_density_qubits));
    }
    const std::uint64_t d = dim();
    if (entries_.size() != d * d) {
        throw std::invalid_argument("density matrix needs 2^n x 2^n entries");
    }
    Complex trace{0.0, 0.0};
    for (std::uint64_t r = 0; r < d; ++r) {
        trace += entries_[r * d + r];
        for (std::uint64_t c = r; c < d; ++c) {
            const Complex upper = entries_[r * d + c];
            const Complex lower = entries_[c * d + r];
            if (!std::isfinite(upper.real()) || !std::isfinite(upper.imag())) {
                throw std::invalid_argument("density matrix entries must be finite");
            }
            if (std::abs(upper - std::conj(lower)) > 1e-10) {
                throw std::invalid_argument("density matrix is not Hermitian");
            }
        }
    }
    if (std::abs(trace - Complex{1.0, 0.0}) > 1e-10) {
        throw std::invalid_argument("density matrix trace must be 1");
    }
}

DensityMatrix to_density(const StateVector& state) {
    const std::uint64_t d = state.dim();
    std::vector<Complex> entries(d * d);
    for (std::uint64_t r = 0; r < d; ++r) {
        for (std::uint64_t c = 0; c < d; ++c) {
            entries[r * d + c] = state[r] * std::conj(state[c]);
        }
    }
    return DensityMatrix(state.n_qubits(), std::move(entries));
}

DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const int> keep) {
    if (keep.empty()) {
        throw std::invalid_argument("partial trace must keep at least one qubit");
    }
    detail::validate_targets(rho.n_qubits(), static_cast<int>(keep.size()), keep);
    const int n = rho.n_qubits();
    const int m = static_cast<int>(keep.size());
    const int t = n - m;
    const std::uint64_t d = rho.dim();

    std::uint64_t keep_mask = 0;
    std::vector<int> keep_pos(m);
    for (int j = 0; j < m; ++j) {
        keep_pos[j] = n - 1 - keep[j];
        keep_mask |= std::uint64_t{1} << keep_pos[j];
    }
    std::vector<int> traced_pos;
    for (int p = 0; p < n; ++p) {
        if (!(keep_mask >> p & 1)) {
            traced_pos.push_back(p);
        }
    }

    const std::uint64_t dm = std::uint64_t{1} << m;
    const std::uint64_t dt = std::uint64_t{1} << t;
    std::vector<std::uint64_t> keep_offs(dm, 0);
    for (std::uint64_t g = 0; g < dm; ++g) {
        for (int j = 0; j < m; ++j) {
            keep_offs[g] |= ((g >> (m - 1 - j)) & 1) << keep_pos[j];
        }
    }
    std::vector<std::uint64_t> traced_offs(dt, 0);
    for (std::uint64_t e = 0; e < dt; ++e) {
        for (int j = 0; j < t; ++j) {
            traced_offs[e] |= ((e >> j) & 1) << traced_pos[j];
        }
    }

    std::vector<Complex> out(dm * dm, Complex{0.0, 0.0});
    for (std::uint64_t r = 0; r < dm; ++r) {
        for (std::uint64_t c = 0; c < dm; ++c) {
            Complex sum{0.0, 0.0};
            for (std::uint64_t e = 0; e < dt; ++e) {
                const std::uint64_t row = keep_offs[r] | traced_offs[e];
                const std::uint64_t col = keep_offs[c] | traced_offs[e];
                sum += rho.entries()[row * d + col];
            }
            out[r * dm + c] = sum;
        }
    }
    return DensityMatrix(m, std::move(out));
}

DensityMatrix partial_trace(const DensityMatrix& rho, std::initializer_list<int> keep) {
    return partial_trace(rho, std::span<const int>(keep.begin(), keep.size()));
}

double purity(const DensityMatrix& rho) {
    const std::uint64_t d = rho.dim();
    Complex sum{0.0, 0.0};
    for (std::uint64_t r = 0; r < d; ++r) {
        for (std::uint64_t c = 0; c < d; ++c) {
            sum += rho.entries()[r * d + c] * rho.entries()[c * d + r];
        }
    }
    return sum.real();
}

DensityMatrix apply_gate(const DensityMatrix& rho, const GateMatrix& gate,
                         std::span<const int> targets) {
    detail::validate_targets(rho.n_qubits(), gate.arity(), targets);
    const std::uint64_t d = rho.dim();
    std::vector<Complex> entries(rho.entries());
    // U rho U+ via two passes of the statevector kernels: U over every
    // column, then conj(U) over every row.
    std::vector<Complex> line(d);
    for (std::uint64_t c = 0; c < d; ++c) {
        for (std::uint64_t r = 0; r < d; ++r) {
            line[r] = entries[r * d + c];
        }
        detail::apply_gate_raw(line, rho.n_qubits(), gate, targets);
        for (std::uint64_t r = 0; r < d; ++r) {
            entries[r * d + c] = line[r];
        }
    }
    const GateMatrix conj_gate = gate.conjugated();
    for (std::uint64_t r = 0; r < d; ++r) {
        for (std::uint64_t c = 0; c < d; ++c) {
            line[c] = entries[r * d + c];
        }
        detail::apply_gate_raw(line, rho.n_qubits(), conj_gate, targets);
        for (std::uint64_t c = 0; c < d; ++c) {
            entries[r * d + c] = line[c];
        }
    }
    if (gate.call_counter()) {
        ++*gate.call_counter();
    }
    return DensityMatrix(rho.n_qubits(), std::move(entries));
}

DensityMatrix apply_gate(const DensityMatrix& rho, const GateMatrix& gate,
                         std::initializer_list<int> targets) {
    return apply_gate(rho, gate, std::span<const int>(targets.begin(), targets.size()));
}

} // namespace qsim
