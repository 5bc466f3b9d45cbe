#include "qsim/algorithms.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <numeric>

#include "kernels.hpp"
#include "qsim/config.hpp"
#include "qsim/gates.hpp"
#include "qsim/numtheory.hpp"
#include "qsim/state_vector.hpp"

namespace qsim {

namespace {

std::vector<int> iota_targets(int first, int count) {
    std::vector<int> targets(count);
    std::iota(targets.begin(), targets.end(), first);
    return targets;
}

// Mutable amplitude buffer for assembling a circuit without per-gate copies.
// Callers still observe value semantics: the buffer is local to the
// algorithm and sealed into a StateVector at the end.
struct Register {
    int n;
    std::vector<Complex> amps;

    explicit Register(const StateVector& initial)
        : n(initial.n_qubits()), amps(initial.amplitudes()) {}

    void apply(const GateMatrix& gate, std::span<const int> targets) {
        detail::validate_targets(n, gate.arity(), targets);
        detail::apply_gate_raw(amps, n, gate, targets);
        if (gate.call_counter()) {
            ++*gate.call_counter();
        }
    }
    void apply(const GateMatrix& gate, std::initializer_list<int> targets) {
        apply(gate, std::span<const int>(targets.begin(), targets.size()));
    }

    StateVector seal() { return StateVector(n, std::move(amps)); }
};

// Shared Deutsch/Deutsch-Jozsa circuit: H everywhere on |0...0>|1>, one
// oracle query, H on the register, then read the amplitude left on the
// all-zero register state (the ancilla stays in (|0>-|1>)/sqrt2, so the
// register amplitude is sqrt2 times the full-state amplitude).
OracleClassification classify_constant_or_balanced(const TruthTable& f) {
    const int n = f.n_inputs();
    GateMatrix oracle = xor_oracle(f);
    auto calls = std::make_shared<std::uint64_t>(0);
    oracle.attach_call_counter(calls);

    StateVector state = basis_state(n + 1, 1);
    state = apply_gate(state, hadamard_n(n + 1), iota_targets(0, n + 1));
    state = apply_gate(state, oracle, iota_targets(0, n + 1));
    state = apply_gate(state, hadamard_n(n), iota_targets(0, n));

    const Complex zero_amp = state[0] * std::numbers::sqrt2;
    const double amplitude = zero_amp.real();
    const FunctionClass cls =
        std::abs(amplitude) > 0.5 ? FunctionClass::Constant : FunctionClass::Balanced;
    return OracleClassification{cls, amplitude, *calls};
}

bool is_prime(std::uint64_t n) {
    if (n < 2) {
        return false;
    }
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            return false;
        }
    }
    return true;
}

// Exact k-th-root test around the floating-point estimate.
bool is_prime_power(std::uint64_t n) {
    for (int k = 2; (std::uint64_t{1} << k) <= n; ++k) {
        const auto root = static_cast<std::uint64_t>(
            std::llround(std::pow(static_cast<double>(n), 1.0 / k)));
        for (std::uint64_t r = root > 1 ? root - 1 : 2; r <= root + 1; ++r) {
            std::uint64_t power = 1;
            bool overflow = false;
            for (int i = 0; i < k; ++i) {
                if (power > n / r) {
                    overflow = true;
                    break;
                }
                power *= r;
            }
            if (!overflow && power == n && is_prime(r)) {
                return true;
            }
        }
    }
    return false;
}

int bit_length(std::uint64_t n) {
    return 64 - std::countl_zero(n);
}

} // namespace

OracleClassification deutsch(const TruthTable& f) {
    if (f.n_inputs() != 1) {
        throw std::invalid_argument("deutsch takes a one-bit function");
    }
    return classify_constant_or_balanced(f);
}

OracleClassification deutsch_jozsa(const TruthTable& f) {
    if (!f.is_constant() && !f.is_balanced()) {
        throw std::invalid_argument("function is neither constant nor balanced");
    }
    return classify_constant_or_balanced(f);
}

BernsteinVaziraniResult bernstein_vazirani(std::uint64_t a, int n) {
    if (n < 1 || n > limits().max_oracle_inputs) {
        throw std::invalid_argument("register size out of range");
    }
    if (a >= (std::uint64_t{1} << n)) {
        throw std::invalid_argument("hidden integer must fit in the register");
    }
    TruthTable f(n);
    for (std::uint64_t x = 0; x < f.size(); ++x) {
        f.set(x, std::popcount(a & x) & 1);
    }
    GateMatrix oracle = xor_oracle(f);
    auto calls = std::make_shared<std::uint64_t>(0);
    oracle.attach_call_counter(calls);

    StateVector state = basis_state(n + 1, 1);
    state = apply_gate(state, hadamard_n(n + 1), iota_targets(0, n + 1));
    state = apply_gate(state, oracle, iota_targets(0, n + 1));
    state = apply_gate(state, hadamard_n(n), iota_targets(0, n));

    // The register holds |A> exactly; read off the peak of the distribution.
    std::uint64_t best = 0;
    double best_prob = -1.0;
    for (std::uint64_t x = 0; x < (std::uint64_t{1} << n); ++x) {
        const double p = std::norm(state[x << 1]) + std::norm(state[(x << 1) | 1]);
        if (p > best_prob) {
            best_prob = p;
            best = x;
        }
    }
    return BernsteinVaziraniResult{best, best_prob, *calls};
}

GroverPlan grover_plan(std::uint64_t database_size, std::uint64_t solution_count) {
    if (database_size < 2 || std::popcount(database_size) != 1) {
        throw std::invalid_argument("database size must be a power of two");
    }
    if (solution_count < 1 || solution_count > database_size) {
        throw std::invalid_argument("solution count must lie in [1, database size]");
    }
    const double ratio = static_cast<double>(solution_count) / static_cast<double>(database_size);
    const double theta = 2.0 * std::asin(std::min(1.0, std::sqrt(ratio)));
    const double k = std::numbers::pi / (2.0 * theta) - 0.5;
    const auto k_opt = static_cast<std::uint64_t>(std::max<long long>(0, std::llround(k)));
    return GroverPlan{database_size, solution_count, theta, k_opt};
}

GroverResult grover_search(const TruthTable& f, std::uint64_t solution_count,
                           RandomSource& rng) {
    if (f.count_ones() != solution_count) {
        throw std::invalid_argument("solution count does not match the oracle");
    }
    const int n = f.n_inputs();
    const GroverPlan plan = grover_plan(f.size(), solution_count);

    GateMatrix oracle = phase_oracle(f);
    auto calls = std::make_shared<std::uint64_t>(0);
    oracle.attach_call_counter(calls);
    const GateMatrix hadamards = hadamard_n(n);
    const GateMatrix cps = conditional_phase_shift(n);
    const std::vector<int> reg = iota_targets(0, n);

    StateVector state = apply_gate(basis_state(n, 0), hadamards, reg);
    for (std::uint64_t k = 0; k < plan.optimal_iterations; ++k) {
        state = apply_gate(state, oracle, reg);
        // Reflection about the uniform state: H^n (2|0><0| - I) H^n.
        state = apply_gate(state, hadamards, reg);
        state = apply_gate(state, cps, reg);
        state = apply_gate(state, hadamards, reg);
    }
    const double angle = (2.0 * static_cast<double>(plan.optimal_iterations) + 1.0) *
                         plan.theta / 2.0;
    const double success = std::sin(angle) * std::sin(angle);

    const MeasurementResult m = measure(state, reg, rng);
    std::uint64_t index = 0;
    for (int j = 0; j < n; ++j) {
        index = (index << 1) | static_cast<std::uint64_t>(m.bits[j]);
    }
    return GroverResult{index, f.value(index), plan.optimal_iterations, success, *calls};
}

PhaseEstimate phase_estimation(const GateMatrix& u, const StateVector& eigen_input,
                               int n_bits, RandomSource& rng,
                               std::optional<std::uint64_t> forced_measurement) {
    if (u.arity() != eigen_input.n_qubits()) {
        throw std::invalid_argument("eigenstate register must match the gate arity");
    }
    if (n_bits < 1) {
        throw std::invalid_argument("control register needs at least one qubit");
    }
    const int m = u.arity();
    if (n_bits + m > limits().max_state_qubits) {
        throw std::invalid_argument("phase estimation register exceeds the configured maximum");
    }
    const std::vector<int> control = iota_targets(0, n_bits);
    StateVector state = tensor(basis_state(n_bits, 0), eigen_input);
    state = apply_gate(state, hadamard_n(n_bits), control);

    // Controlled-U^(2^j) ladder; the control qubit carrying weight 2^j is
    // register qubit n_bits-1-j. Powers come from repeated squaring.
    GateMatrix power = u;
    for (int j = 0; j < n_bits; ++j) {
        std::vector<int> targets;
        targets.reserve(1 + m);
        targets.push_back(n_bits - 1 - j);
        for (int t = 0; t < m; ++t) {
            targets.push_back(n_bits + t);
        }
        state = apply_gate(state, controlled(power, 1), targets);
        if (j + 1 < n_bits) {
            power = multiply(power, power);
        }
    }
    state = apply_gate(state, qft(n_bits, true), control);

    MeasurementResult readout = [&] {
        if (forced_measurement) {
            if (*forced_measurement >= (std::uint64_t{1} << n_bits)) {
                throw std::invalid_argument("forced measurement must fit in the register");
            }
            std::vector<int> bits(n_bits);
            for (int j = 0; j < n_bits; ++j) {
                bits[j] = static_cast<int>((*forced_measurement >> (n_bits - 1 - j)) & 1);
            }
            return project(state, control, bits);
        }
        return measure(state, control, rng);
    }();

    std::uint64_t measured = 0;
    for (int j = 0; j < n_bits; ++j) {
        measured = (measured << 1) | static_cast<std::uint64_t>(readout.bits[j]);
    }
    const double fraction =
        static_cast<double>(measured) / static_cast<double>(std::uint64_t{1} << n_bits);
    return PhaseEstimate{measured, n_bits, fraction, readout.probability};
}

int phase_register_size(int n_bits, double delta) {
    if (n_bits < 1) {
        throw std::invalid_argument("bit count must be positive");
    }
    if (!(delta > 0.0) || !(delta < 1.0)) {
        throw std::invalid_argument("delta must lie in (0, 1)");
    }
    const double extra = std::log2(2.0 + 1.0 / (2.0 * delta));
    return n_bits + static_cast<int>(std::ceil(extra));
}

GateMatrix modular_multiply_gate(std::uint64_t a, std::uint64_t modulus) {
    if (modulus < 2) {
        throw std::invalid_argument("modulus must be at least 2");
    }
    if (a < 1 || a >= modulus) {
        throw std::invalid_argument("multiplier must lie in [1, modulus)");
    }
    if (gcd(a, modulus) != 1) {
        throw std::invalid_argument("multiplier must be coprime to the modulus");
    }
    const int m = bit_length(modulus);
    if (m > limits().max_dense_gate_qubits) {
        throw std::invalid_argument("modulus register exceeds the configured gate maximum");
    }
    std::vector<std::uint64_t> perm(std::uint64_t{1} << m);
    for (std::uint64_t x = 0; x < perm.size(); ++x) {
        perm[x] = x < modulus ? a * x % modulus : x;
    }
    return GateMatrix::permutation(m, std::move(perm));
}

OrderFindingResult find_order(std::uint64_t a, std::uint64_t modulus, RandomSource& rng,
                              const OrderFindingOptions& options) {
    if (modulus < 2) {
        throw std::invalid_argument("modulus must be at least 2");
    }
    if (a < 1 || a >= modulus || gcd(a, modulus) != 1) {
        throw std::invalid_argument("base must lie in [1, modulus) and be coprime to it");
    }
    if (a == 1) {
        // Degenerate base: every phase fraction is 0, but the order is 1.
        return OrderFindingResult{1, {}};
    }
    const int m = bit_length(modulus);
    const int n_bits = options.control_bits.value_or(2 * m + 1);
    if (n_bits <= 0) {
        throw std::invalid_argument("control register needs at least one qubit");
    }
    const GateMatrix u = modular_multiply_gate(a, modulus);
    const StateVector target = basis_state(m, 1);

    OrderFindingResult result;
    for (int attempt = 0; attempt < options.max_attempts; ++attempt) {
        const PhaseEstimate pe =
            phase_estimation(u, target, n_bits, rng, options.forced_measurement);
        const std::optional<std::uint64_t> candidate =
            recover_order(pe.measured, n_bits, a, modulus);
        const bool verified = candidate && modpow(a, *candidate, modulus) == 1;
        result.attempts.push_back(OrderAttempt{pe.measured, candidate, verified});
        if (verified) {
            result.order = candidate;
            return result;
        }
        if (options.forced_measurement) {
            break; // the projection would only repeat itself
        }
    }
    return result;
}

ShorOutcome shor_factor(std::uint64_t n, RandomSource& rng, const ShorOptions& options) {
    if (n < 4) {
        throw std::invalid_argument("factoring needs n >= 4");
    }
    ShorOutcome outcome;
    if (n % 2 == 0) {
        outcome.factors = {2, n / 2};
        outcome.trace.push_back(ShorAttempt{2, std::nullopt, std::nullopt, "even_shortcut"});
        return outcome;
    }
    if (is_prime(n)) {
        throw PrimeInputError("cannot factor a prime");
    }
    if (is_prime_power(n)) {
        throw PrimePowerInputError("prime powers are outside the even-order argument");
    }

    for (int attempt = 0; attempt < options.max_attempts; ++attempt) {
        const std::uint64_t a = (attempt == 0 && options.forced_base)
                                    ? *options.forced_base
                                    : 2 + rng.uniform_below(n - 2);
        const std::uint64_t g = gcd(a, n);
        if (g > 1 && g < n) {
            outcome.factors = {std::min(g, n / g), std::max(g, n / g)};
            outcome.trace.push_back(ShorAttempt{a, std::nullopt, std::nullopt, "gcd_factor"});
            return outcome;
        }

        const OrderFindingResult order_res = find_order(a, n, rng, options.order_options);
        const std::optional<std::uint64_t> measured =
            order_res.attempts.empty() ? std::nullopt
                                       : std::optional{order_res.attempts.back().measured};
        if (!order_res.order) {
            outcome.trace.push_back(ShorAttempt{a, measured, std::nullopt, "order_not_found"});
            continue;
        }
        const std::uint64_t r = *order_res.order;
        if (r % 2 != 0) {
            outcome.trace.push_back(ShorAttempt{a, measured, r, "odd_order"});
            continue;
        }
        const std::uint64_t h = modpow(a, r / 2, n);
        if (h == n - 1) {
            outcome.trace.push_back(ShorAttempt{a, measured, r, "trivial_root"});
            continue;
        }
        for (const std::uint64_t f : {gcd(h + 1, n), gcd(h + n - 1, n)}) {
            if (f > 1 && f < n) {
                outcome.factors = {std::min(f, n / f), std::max(f, n / f)};
                outcome.trace.push_back(ShorAttempt{a, measured, r, "factored"});
                return outcome;
            }
        }
        outcome.trace.push_back(ShorAttempt{a, measured, r, "no_factor"});
    }
    throw AttemptsExhaustedError("factoring attempts exhausted");
}

} // namespace qsim
