#include "qsim/numtheory.hpp"

#include <stdexcept>

namespace qsim {

namespace {

constexpr std::uint64_t kModulusCap = std::uint64_t{1} << 31;

void check_modulus(std::uint64_t n) {
    if (n < 2) {
        throw std::invalid_argument("modulus must be at least 2");
    }
    if (n >= kModulusCap) {
        throw std::invalid_argument("modulus must be below 2^31 so products fit in 64 bits");
    }
}

Fraction reduced(std::uint64_t num, std::uint64_t den) {
    const std::uint64_t g = gcd(den, num);
    return Fraction{num / g, den / g};
}

} // namespace

std::uint64_t gcd(std::uint64_t a, std::uint64_t b) {
    if (a == 0 && b == 0) {
        throw std::invalid_argument("gcd(0, 0) is undefined");
    }
    while (b != 0) {
        const std::uint64_t r = a % b;
        a = b;
        b = r;
    }
    return a;
}

std::uint64_t modpow(std::uint64_t a, std::uint64_t e, std::uint64_t n) {
    check_modulus(n);
    std::uint64_t base = a % n;
    std::uint64_t result = 1 % n;
    while (e != 0) {
        if (e & 1) {
            result = result * base % n;
        }
        base = base * base % n;
        e >>= 1;
    }
    return result;
}

CFExpansion continued_fraction(std::uint64_t num, std::uint64_t den) {
    if (den == 0) {
        throw std::invalid_argument("continued fraction needs a nonzero denominator");
    }
    if (num > den) {
        throw std::invalid_argument("continued fraction input must lie in [0, 1]");
    }
    CFExpansion cf;
    std::uint64_t n = num;
    std::uint64_t d = den;
    while (d != 0) {
        cf.coefficients.push_back(n / d);
        const std::uint64_t r = n % d;
        n = d;
        d = r;
    }
    return cf;
}

std::vector<Fraction> convergents(const CFExpansion& cf) {
    std::vector<Fraction> out;
    out.reserve(cf.coefficients.size());
    std::uint64_t h_prev = 1, h_prev2 = 0; // numerators
    std::uint64_t k_prev = 0, k_prev2 = 1; // denominators
    for (std::uint64_t a : cf.coefficients) {
        const std::uint64_t h = a * h_prev + h_prev2;
        const std::uint64_t k = a * k_prev + k_prev2;
        out.push_back(reduced(h, k));
        h_prev2 = h_prev;
        h_prev = h;
        k_prev2 = k_prev;
        k_prev = k;
    }
    return out;
}

std::optional<std::uint64_t> recover_order(std::uint64_t measured, int n_bits,
                                           std::uint64_t base, std::uint64_t modulus) {
    check_modulus(modulus);
    if (n_bits < 1 || n_bits > 62) {
        throw std::invalid_argument("register size out of range");
    }
    const std::uint64_t den = std::uint64_t{1} << n_bits;
    if (measured >= den) {
        throw std::invalid_argument("measured value must fit in the register");
    }
    if (gcd(base % modulus, modulus) != 1) {
        throw std::invalid_argument("base must be coprime to the modulus");
    }
    for (const Fraction& c : convergents(continued_fraction(measured, den))) {
        if (c.den < modulus && modpow(base, c.den, modulus) == 1) {
            return c.den;
        }
    }
    return std::nullopt;
}

std::uint64_t euler_phi(std::uint64_t n) {
    if (n < 2 || n > 1'000'000) {
        throw std::invalid_argument("euler_phi supports 2 <= n <= 10^6");
    }
    std::uint64_t count = 0;
    for (std::uint64_t k = 1; k < n; ++k) {
        if (gcd(k, n) == 1) {
            ++count;
        }
    }
    return count;
}

std::uint64_t order_bruteforce(std::uint64_t a, std::uint64_t n) {
    check_modulus(n);
    const std::uint64_t base = a % n;
    if (gcd(base, n) != 1) {
        throw std::invalid_argument("order is defined only for bases coprime to the modulus");
    }
    std::uint64_t value = base;
    std::uint64_t r = 1;
    while (value != 1) {
        value = value * base % n;
        ++r;
    }
    return r;
}

} // namespace qsim
