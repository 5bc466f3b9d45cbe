#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qsim/gate_matrix.hpp"
#include "qsim/measurement.hpp"
#include "qsim/truth_table.hpp"

namespace qsim {

enum class FunctionClass { Constant, Balanced };

/// Verdict of a constant-vs-balanced query. `zero_amplitude` is the
/// amplitude the circuit leaves on the all-zero register state (+-1 for
/// constant functions, exactly 0 for balanced ones); `oracle_calls` counts
/// actual oracle-gate applications.
struct OracleClassification {
    FunctionClass function_class;
    double zero_amplitude;
    std::uint64_t oracle_calls;
};

/// Single-call constant/balanced decision for a one-bit function.
OracleClassification deutsch(const TruthTable& f);

/// Single-call constant/balanced decision under the promise that f is one or
/// the other; the promise is checked and its violation is an error.
OracleClassification deutsch_jozsa(const TruthTable& f);

struct BernsteinVaziraniResult {
    std::uint64_t recovered;
    double probability;
    std::uint64_t oracle_calls;
};

/// Recovers A from one query to the bitwise scalar-product oracle
/// f_A(X) = A.X. Deterministic: the register ends in |A> with amplitude 1.
BernsteinVaziraniResult bernstein_vazirani(std::uint64_t a, int n);

/// Iteration geometry for searching M marked items among N = 2^n:
/// sin(theta/2) = sqrt(M/N) and the optimal iteration count maximizes
/// sin^2((2k+1) theta / 2).
struct GroverPlan {
    std::uint64_t database_size;
    std::uint64_t solution_count;
    double theta;
    std::uint64_t optimal_iterations;
};

GroverPlan grover_plan(std::uint64_t database_size, std::uint64_t solution_count);

struct GroverResult {
    std::uint64_t index;
    bool verified;
    std::uint64_t iterations;
    double success_probability;
    std::uint64_t oracle_calls;
};

/// Amplitude amplification: uniform start, optimal_iterations rounds of
/// phase oracle followed by the reflection about the uniform state
/// (realized as H^n . CPS . H^n), then one measurement. `solution_count`
/// must match the oracle's actual number of ones; the returned index is
/// re-checked against f.
GroverResult grover_search(const TruthTable& f, std::uint64_t solution_count,
                           RandomSource& rng);

struct PhaseEstimate {
    std::uint64_t measured;
    int n_bits;
    double fraction;   // measured / 2^n_bits
    double probability; // Born probability of this outcome
};

/// Estimates the phase fraction phi/2pi of U's eigenvalue on |u> with an
/// n_bits control register: Hadamards, the controlled-U^(2^j) ladder with
/// powers formed by repeated matrix squaring, inverse Fourier transform,
/// measurement. Exact n-bit fractions are recovered with certainty;
/// `forced_measurement` projects the readout onto a chosen outcome instead
/// of sampling (golden-trace hook).
PhaseEstimate phase_estimation(const GateMatrix& u, const StateVector& eigen_input,
                               int n_bits, RandomSource& rng,
                               std::optional<std::uint64_t> forced_measurement = std::nullopt);

/// Control-register size needed to hit n_bits of phase with failure
/// probability at most delta: n_bits + ceil(log2(2 + 1/(2 delta))).
int phase_register_size(int n_bits, double delta);

/// Modular-multiplication permutation |X> -> |a X mod modulus> for X below
/// the modulus, identity above it. Requires gcd(a, modulus) = 1.
GateMatrix modular_multiply_gate(std::uint64_t a, std::uint64_t modulus);

struct OrderFindingOptions {
    int max_attempts = 8;
    std::optional<int> control_bits;                  // default 2m+1
    std::optional<std::uint64_t> forced_measurement;  // golden-trace hook
};

struct OrderAttempt {
    std::uint64_t measured;
    std::optional<std::uint64_t> order_candidate;
    bool verified;
};

struct OrderFindingResult {
    std::optional<std::uint64_t> order;
    std::vector<OrderAttempt> attempts;
};

/// Quantum order finding: phase estimation of the modular-multiply gate with
/// the target register prepared in |1>, followed by continued-fraction
/// recovery of the order and a classical a^r = 1 (mod N) check, retrying up
/// to max_attempts times.
OrderFindingResult find_order(std::uint64_t a, std::uint64_t modulus, RandomSource& rng,
                              const OrderFindingOptions& options = {});

struct ShorAttempt {
    std::uint64_t base;
    std::optional<std::uint64_t> measured;
    std::optional<std::uint64_t> order;
    std::string status;
};

struct ShorOutcome {
    std::pair<std::uint64_t, std::uint64_t> factors;
    std::vector<ShorAttempt> trace;
};

struct ShorOptions {
    int max_attempts = 64;
    std::optional<std::uint64_t> forced_base;        // golden-trace hook
    OrderFindingOptions order_options;
};

struct PrimeInputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct PrimePowerInputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct AttemptsExhaustedError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Factors composite N: random base, gcd shortcut, quantum order finding,
/// then gcd(a^(r/2) +- 1, N) when r is even and a^(r/2) != -1 (mod N). Even
/// N short-circuits to (2, N/2); primes and prime powers are rejected with
/// distinct errors. Every attempt is recorded in the trace.
ShorOutcome shor_factor(std::uint64_t n, RandomSource& rng, const ShorOptions& options = {});

} // namespace qsim
