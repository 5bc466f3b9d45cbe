#include "qsim/decoherence.hpp"

#include <cmath>
#include <stdexcept>

#include "qsim/gates.hpp"
#include "qsim/state_vector.hpp"

namespace qsim {

namespace {

void check_gamma(Overlap gamma) {
    if (!(gamma.gamma >= 0.0) || !(gamma.gamma <= 1.0)) {
        throw std::invalid_argument("overlap must lie in [0, 1]");
    }
}

// Scales every coherence between differing values of one qubit by gamma.
DensityMatrix dephase_qubit(const DensityMatrix& rho, int qubit, double gamma) {
    const int pos = rho.n_qubits() - 1 - qubit;
    const std::uint64_t d = rho.dim();
    std::vector<Complex> entries(rho.entries());
    for (std::uint64_t r = 0; r < d; ++r) {
        for (std::uint64_t c = 0; c < d; ++c) {
            if (((r >> pos) & 1) != ((c >> pos) & 1)) {
                entries[r * d + c] *= gamma;
            }
        }
    }
    return DensityMatrix(rho.n_qubits(), std::move(entries));
}

} // namespace

DensityMatrix apparatus_reduced_density(Complex alpha, Complex beta, Complex apparatus_overlap) {
    const double norm = std::norm(alpha) + std::norm(beta);
    if (std::abs(norm - 1.0) > 1e-10) {
        throw std::invalid_argument("qubit amplitudes must be normalized");
    }
    if (std::abs(apparatus_overlap) > 1.0 + 1e-12) {
        throw std::invalid_argument("pointer-state overlap cannot exceed 1");
    }
    std::vector<Complex> entries = {
        Complex{std::norm(alpha), 0.0},
        alpha * std::conj(beta) * std::conj(apparatus_overlap),
        std::conj(alpha) * beta * apparatus_overlap,
        Complex{std::norm(beta), 0.0},
    };
    return DensityMatrix(1, std::move(entries));
}

DensityMatrix decohere_qubit(const DensityMatrix& rho, Overlap gamma) {
    if (rho.n_qubits() != 1) {
        throw std::invalid_argument("decohere_qubit takes a single-qubit state");
    }
    check_gamma(gamma);
    return dephase_qubit(rho, 0, gamma.gamma);
}

DeutschProbabilities deutsch_decohered(const TruthTable& f, Overlap gamma) {
    if (f.n_inputs() != 1) {
        throw std::invalid_argument("the circuit takes a one-bit function");
    }
    check_gamma(gamma);

    // Deutsch circuit on |0>|1> with one dephasing interaction on the
    // control qubit between its two Hadamard gates.
    StateVector state = basis_state(2, 1);
    state = apply_gate(state, hadamard_n(2), {0, 1});
    state = apply_gate(state, xor_oracle(f), {0, 1});
    DensityMatrix rho = to_density(state);
    rho = dephase_qubit(rho, 0, gamma.gamma);
    rho = apply_gate(rho, standard_gate(StandardGate::H), {0});

    double p0 = 0.0;
    for (std::uint64_t i = 0; i < rho.dim(); ++i) {
        if (((i >> 1) & 1) == 0) {
            p0 += rho.entry(i, i).real();
        }
    }
    return DeutschProbabilities{p0, 1.0 - p0};
}

Overlap overlap_at(const DecayModel& model, double t) {
    if (!(model.lambda > 0.0)) {
        throw std::invalid_argument("decay rate must be positive");
    }
    if (t < 0.0) {
        throw std::invalid_argument("time must be nonnegative");
    }
    return Overlap{std::exp(-model.lambda * t)};
}

} // namespace qsim
