#include "qsim/measurement.hpp"

#include <cmath>
#include <stdexcept>

#include "kernels.hpp"

namespace qsim {

namespace {

struct TargetBits {
    std::vector<int> pos;      // bit position per target
    std::uint64_t mask = 0;
};

TargetBits measured_bits(const StateVector& state, std::span<const int> targets) {
    if (targets.empty()) {
        throw std::invalid_argument("measurement needs at least one target");
    }
    detail::validate_targets(state.n_qubits(), static_cast<int>(targets.size()), targets);
    TargetBits tb;
    tb.pos.reserve(targets.size());
    for (int t : targets) {
        const int p = state.n_qubits() - 1 - t;
        tb.pos.push_back(p);
        tb.mask |= std::uint64_t{1} << p;
    }
    return tb;
}

MeasurementResult collapse(const StateVector& state, const TargetBits& tb,
                           const std::vector<int>& bits) {
    std::uint64_t pattern = 0;
    for (std::size_t j = 0; j < bits.size(); ++j) {
        pattern |= static_cast<std::uint64_t>(bits[j]) << tb.pos[j];
    }
    double mass = 0.0;
    for (std::uint64_t i = 0; i < state.dim(); ++i) {
        if ((i & tb.mask) == pattern) {
            mass += std::norm(state[i]);
        }
    }
    if (mass <= 1e-15) {
        throw std::invalid_argument("cannot collapse onto an outcome of zero probability");
    }
    // Renormalize explicitly so repeated measurement chains do not drift.
    const double scale = 1.0 / std::sqrt(mass);
    std::vector<Complex> post(state.dim(), Complex{0.0, 0.0});
    for (std::uint64_t i = 0; i < state.dim(); ++i) {
        if ((i & tb.mask) == pattern) {
            post[i] = state[i] * scale;
        }
    }
    return MeasurementResult{bits, StateVector(state.n_qubits(), std::move(post)), mass};
}

} // namespace

MeasurementResult measure(const StateVector& state, std::span<const int> targets,
                          RandomSource& rng) {
    const TargetBits tb = measured_bits(state, targets);
    double total = 0.0;
    for (std::uint64_t i = 0; i < state.dim(); ++i) {
        total += std::norm(state[i]);
    }
    const double threshold = rng.uniform() * total;
    std::uint64_t sampled = state.dim() - 1;
    double cumulative = 0.0;
    for (std::uint64_t i = 0; i < state.dim(); ++i) {
        cumulative += std::norm(state[i]);
        if (cumulative > threshold) {
            sampled = i;
            break;
        }
    }
    std::vector<int> bits(targets.size());
    for (std::size_t j = 0; j < bits.size(); ++j) {
        bits[j] = static_cast<int>((sampled >> tb.pos[j]) & 1);
    }
    return collapse(state, tb, bits);
}

MeasurementResult measure(const StateVector& state, std::initializer_list<int> targets,
                          RandomSource& rng) {
    return measure(state, std::span<const int>(targets.begin(), targets.size()), rng);
}

MeasurementResult project(const StateVector& state, std::span<const int> targets,
                          std::span<const int> bits) {
    const TargetBits tb = measured_bits(state, targets);
    if (bits.size() != targets.size()) {
        throw std::invalid_argument("projection needs one bit per target");
    }
    std::vector<int> outcome(bits.begin(), bits.end());
    for (int b : outcome) {
        if (b != 0 && b != 1) {
            throw std::invalid_argument("projection bits must be 0 or 1");
        }
    }
    return collapse(state, tb, outcome);
}

MeasurementResult project(const StateVector& state, std::initializer_list<int> targets,
                          std::initializer_list<int> bits) {
    return project(state, std::span<const int>(targets.begin(), targets.size()),
                   std::span<const int>(bits.begin(), bits.size()));
}

} // namespace qsim
