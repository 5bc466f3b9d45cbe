#include "qsim/gates.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "qsim/config.hpp"

namespace qsim {

GateMatrix standard_gate(StandardGate name) {
    switch (name) {
    case StandardGate::X:
        return GateMatrix::permutation(1, {1, 0});
    case StandardGate::Z:
        return GateMatrix::diagonal(1, {Complex{1, 0}, Complex{-1, 0}});
    case StandardGate::H: {
        const double s = 1.0 / std::numbers::sqrt2;
        return GateMatrix::dense(1, {Complex{s, 0}, Complex{s, 0}, Complex{s, 0}, Complex{-s, 0}});
    }
    case StandardGate::SqrtNot:
        // ((1+i, 1-i), (1-i, 1+i)) / 2; squares to X.
        return GateMatrix::dense(1, {Complex{0.5, 0.5}, Complex{0.5, -0.5}, Complex{0.5, -0.5},
                                     Complex{0.5, 0.5}});
    }
    throw std::invalid_argument("unknown standard gate");
}

GateMatrix ry_gate(double theta) {
    const double c = std::cos(theta / 2.0);
    const double s = std::sin(theta / 2.0);
    return GateMatrix::dense(1, {Complex{c, 0}, Complex{-s, 0}, Complex{s, 0}, Complex{c, 0}});
}

GateMatrix rz_gate(double theta) {
    return GateMatrix::diagonal(1, {std::polar(1.0, -theta / 2.0), std::polar(1.0, theta / 2.0)});
}

GateMatrix cnot() {
    return controlled(standard_gate(StandardGate::X), 1);
}

GateMatrix toffoli() {
    return controlled(standard_gate(StandardGate::X), 2);
}

GateMatrix fredkin() {
    // Local index is (a, b, c) with c — the control — least significant.
    std::vector<std::uint64_t> perm(8);
    for (std::uint64_t idx = 0; idx < 8; ++idx) {
        const std::uint64_t a = (idx >> 2) & 1;
        const std::uint64_t b = (idx >> 1) & 1;
        const std::uint64_t c = idx & 1;
        perm[idx] = c ? (b << 2 | a << 1 | c) : idx;
    }
    return GateMatrix::permutation(3, std::move(perm));
}

std::vector<GateOp> swap_circuit() {
    return {
        GateOp{cnot(), {0, 1}},
        GateOp{cnot(), {1, 0}},
        GateOp{cnot(), {0, 1}},
    };
}

GateMatrix hadamard_n(int n) {
    return GateMatrix::walsh_hadamard(n);
}

GateMatrix qft(int n, bool inverse) {
    return GateMatrix::fourier(n, inverse);
}

GateMatrix xor_oracle(const TruthTable& f) {
    const int arity = f.n_inputs() + 1;
    if (arity > limits().max_state_qubits) {
        throw std::invalid_argument("oracle register exceeds the configured maximum");
    }
    std::vector<std::uint64_t> perm(std::uint64_t{1} << arity);
    for (std::uint64_t x = 0; x < f.size(); ++x) {
        const std::uint64_t flip = f.value(x) ? 1 : 0;
        perm[x << 1] = (x << 1) | flip;
        perm[(x << 1) | 1] = (x << 1) | (1 ^ flip);
    }
    return GateMatrix::permutation(arity, std::move(perm));
}

GateMatrix phase_oracle(const TruthTable& f) {
    std::vector<Complex> diag(f.size());
    for (std::uint64_t x = 0; x < f.size(); ++x) {
        diag[x] = f.value(x) ? Complex{-1, 0} : Complex{1, 0};
    }
    return GateMatrix::diagonal(f.n_inputs(), std::move(diag));
}

GateMatrix conditional_phase_shift(int n) {
    if (n < 1 || n > limits().max_state_qubits) {
        throw std::invalid_argument("conditional phase shift size out of range");
    }
    std::vector<Complex> diag(std::uint64_t{1} << n, Complex{-1, 0});
    diag[0] = Complex{1, 0};
    return GateMatrix::diagonal(n, std::move(diag));
}

} // namespace qsim
