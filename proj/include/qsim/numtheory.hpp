#pragma once

#include <cstdint>
#include <optional>
#include <vector>

namespace qsim {

/// Exact nonnegative rational s/t, kept fully reduced.
struct Fraction {
    std::uint64_t num = 0;
    std::uint64_t den = 1;

    bool operator==(const Fraction&) const = default;
};

/// Continued fraction [a0; a1, a2, ...] of a rational in [0, 1]. Every
/// coefficient after a0 is >= 1 and the expansion is finite.
struct CFExpansion {
    std::vector<std::uint64_t> coefficients;
};

/// Greatest common divisor by the Euclidean algorithm; gcd(a, 0) = a.
std::uint64_t gcd(std::uint64_t a, std::uint64_t b);

/// a^e mod n by square-and-multiply; n >= 2 and n < 2^31 so products fit in
/// 64 bits without overflow.
std::uint64_t modpow(std::uint64_t a, std::uint64_t e, std::uint64_t n);

/// Canonical expansion of num/den with num <= den, den > 0.
CFExpansion continued_fraction(std::uint64_t num, std::uint64_t den);

/// Successive truncations of the expansion via the standard recurrence; each
/// returned fraction is reduced and the last equals the (reduced) input.
std::vector<Fraction> convergents(const CFExpansion& cf);

/// Scans the convergents of measured/2^n_bits in order and returns the first
/// denominator t < modulus with base^t = 1 (mod modulus); absent when no
/// convergent works. Testing every denominator keeps the recovery robust
/// when the phase numerator shares a factor with the order.
std::optional<std::uint64_t> recover_order(std::uint64_t measured, int n_bits,
                                           std::uint64_t base, std::uint64_t modulus);

/// Count of k in [1, n) coprime to n, by brute force; n <= 10^6.
std::uint64_t euler_phi(std::uint64_t n);

/// Smallest r >= 1 with a^r = 1 (mod n), by iterated multiplication.
/// Requires gcd(a mod n, n) = 1.
std::uint64_t order_bruteforce(std::uint64_t a, std::uint64_t n);

} // namespace qsim
