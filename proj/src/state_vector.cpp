#include "qsim/state_vector.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "qsim/config.hpp"

namespace qsim {

namespace {

void check_qubit_count(int n_qubits) {
    if (n_qubits < 1) {
        throw std::invalid_argument("state must have at least one qubit");
    }
    if (n_qubits > limits().max_state_qubits) {
        throw std::invalid_argument("state of " + std::to_string(n_qubits) +
                                    " qubits exceeds the configured maximum of " +
                                    std::to_string(limits().max_state_qubits));
    }
}

double norm_sq(const std::vector<Complex>& amps) {
    double sum = 0.0;
    for (const Complex& a : amps) {
        sum += std::norm(a);
    }
    return sum;
}

} // namespace

StateVector::StateVector(int n_qubits, std::vector<Complex> amplitudes)
    : n_qubits_(n_qubits), amps_(std::move(amplitudes)) {
    check_qubit_count(n_qubits_);
    if (amps_.size() != (std::uint64_t{1} << n_qubits_)) {
        throw std::invalid_argument("amplitude count must be exactly 2^n_qubits");
    }
    const double norm = norm_sq(amps_);
    if (!std::isfinite(norm) || std::abs(norm - 1.0) > 1e-9) {
        throw std::invalid_argument("state is not normalized");
    }
}

StateVector basis_state(int n_qubits, std::uint64_t index) {
    check_qubit_count(n_qubits);
    const std::uint64_t dim = std::uint64_t{1} << n_qubits;
    if (index >= dim) {
        throw std::invalid_argument("basis index out of range");
    }
    std::vector<Complex> amps(dim, Complex{0.0, 0.0});
    amps[index] = Complex{1.0, 0.0};
    return StateVector(n_qubits, std::move(amps));
}

StateVector tensor(const StateVector& a, const StateVector& b) {
    const int n = a.n_qubits() + b.n_qubits();
    check_qubit_count(n);
    std::vector<Complex> amps(std::uint64_t{1} << n);
    const std::uint64_t db = b.dim();
    for (std::uint64_t i = 0; i < a.dim(); ++i) {
        for (std::uint64_t j = 0; j < db; ++j) {
            amps[i * db + j] = a[i] * b[j];
        }
    }
    return StateVector(n, std::move(amps));
}

std::vector<double> probabilities(const StateVector& state) {
    std::vector<double> probs(state.dim());
    for (std::uint64_t i = 0; i < state.dim(); ++i) {
        probs[i] = std::norm(state[i]);
    }
    return probs;
}

double fidelity(const StateVector& a, const StateVector& b) {
    if (a.n_qubits() != b.n_qubits()) {
        throw std::invalid_argument("fidelity requires matching qubit counts");
    }
    Complex inner{0.0, 0.0};
    for (std::uint64_t i = 0; i < a.dim(); ++i) {
        inner += std::conj(a[i]) * b[i];
    }
    return std::norm(inner);
}

StateVector phase_normalized(const StateVector& state) {
    Complex pivot{0.0, 0.0};
    for (std::uint64_t i = 0; i < state.dim(); ++i) {
        if (std::abs(state[i]) > 1e-12) {
            pivot = state[i];
            break;
        }
    }
    if (pivot == Complex{0.0, 0.0}) {
        return state;
    }
    const Complex phase = std::conj(pivot) / std::abs(pivot);
    std::vector<Complex> amps(state.amplitudes());
    for (Complex& a : amps) {
        a *= phase;
    }
    return StateVector(state.n_qubits(), std::move(amps));
}

std::string dump_state(const StateVector& state) {
    std::string out;
    char line[96];
    for (std::uint64_t i = 0; i < state.dim(); ++i) {
        const Complex& a = state[i];
        if (std::abs(a) <= 1e-12) {
            continue;
        }
        std::string bits(state.n_qubits(), '0');
        for (int q = 0; q < state.n_qubits(); ++q) {
            if ((i >> (state.n_qubits() - 1 - q)) & 1) {
                bits[q] = '1';
            }
        }
        std::snprintf(line, sizeof line, "%s %.12g %.12g\n", bits.c_str(), a.real(), a.imag());
        out += line;
    }
    return out;
}

StateVector parse_state_dump(const std::string& text) {
    std::istringstream is(text);
    std::string bits;
    double re = 0.0;
    double im = 0.0;
    int n_qubits = 0;
    std::vector<std::pair<std::uint64_t, Complex>> parsed;
    while (is >> bits >> re >> im) {
        if (n_qubits == 0) {
            n_qubits = static_cast<int>(bits.size());
            check_qubit_count(n_qubits);
        } else if (bits.size() != static_cast<std::size_t>(n_qubits)) {
            throw std::invalid_argument("state dump has inconsistent index widths");
        }
        std::uint64_t index = 0;
        for (char c : bits) {
            if (c != '0' && c != '1') {
                throw std::invalid_argument("state dump index must be binary");
            }
            index = (index << 1) | static_cast<std::uint64_t>(c - '0');
        }
        if (!std::isfinite(re) || !std::isfinite(im)) {
            throw std::invalid_argument("state dump amplitude must be finite");
        }
        parsed.emplace_back(index, Complex{re, im});
    }
    if (parsed.empty()) {
        throw std::invalid_argument("state dump is empty");
    }
    std::vector<Complex> amps(std::uint64_t{1} << n_qubits, Complex{0.0, 0.0});
    for (const auto& [index, amp] : parsed) {
        amps[index] = amp;
    }
    double norm = norm_sq(amps);
    if (std::abs(norm - 1.0) > 1e-6) {
        throw std::invalid_argument("state dump is not normalized");
    }
    const double scale = 1.0 / std::sqrt(norm);
    for (Complex& a : amps) {
        a *= scale;
    }
    return StateVector(n_qubits, std::move(amps));
}

} // namespace qsim
