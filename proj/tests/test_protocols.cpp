#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cmath>
#include <numbers>

#include "qsim/density_matrix.hpp"
#include "qsim/gates.hpp"
#include "qsim/protocols.hpp"
#include "test_helpers.hpp"

using namespace qsim;
using testutil::near;
using testutil::random_state;
using testutil::states_equal;

namespace {
const double kInvSqrt2 = 1.0 / std::numbers::sqrt2;

Complex inner(const StateVector& a, const StateVector& b) {
    Complex sum{0, 0};
    for (std::uint64_t i = 0; i < a.dim(); ++i) {
        sum += std::conj(a[i]) * b[i];
    }
    return sum;
}
} // namespace

TEST_CASE("the four Bell states match their closed forms") {
    const StateVector b00 = bell_state({0, 0});
    CHECK(near(b00[0], Complex{kInvSqrt2, 0}, 1e-12));
    CHECK(near(b00[3], Complex{kInvSqrt2, 0}, 1e-12));

    const StateVector b01 = bell_state({0, 1});
    CHECK(near(b01[1], Complex{kInvSqrt2, 0}, 1e-12));
    CHECK(near(b01[2], Complex{kInvSqrt2, 0}, 1e-12));

    const StateVector b10 = bell_state({1, 0});
    CHECK(near(b10[0], Complex{kInvSqrt2, 0}, 1e-12));
    CHECK(near(b10[3], Complex{-kInvSqrt2, 0}, 1e-12));

    const StateVector b11 = bell_state({1, 1});
    CHECK(near(b11[1], Complex{kInvSqrt2, 0}, 1e-12));
    CHECK(near(b11[2], Complex{-kInvSqrt2, 0}, 1e-12));

    CHECK_THROWS_AS(bell_state({2, 0}), std::invalid_argument);
}

TEST_CASE("Bell states form an orthonormal family") {
    const std::array<StateVector, 4> bells = {bell_state({0, 0}), bell_state({0, 1}),
                                              bell_state({1, 0}), bell_state({1, 1})};
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            const Complex overlap = inner(bells[i], bells[j]);
            CHECK(near(overlap, i == j ? Complex{1, 0} : Complex{0, 0}, 1e-12));
        }
    }
}

TEST_CASE("superdense encoding maps bit pairs onto Bell states") {
    const StateVector shared = bell_state({0, 0});
    for (int b1 = 0; b1 < 2; ++b1) {
        for (int b2 = 0; b2 < 2; ++b2) {
            const StateVector coded = superdense_encode(b1, b2, shared);
            CHECK(states_equal(coded, bell_state({b1, b2}), 1e-12));
        }
    }
    CHECK_THROWS_AS(superdense_encode(0, 1, bell_state({0, 1})), std::invalid_argument);
    CHECK_THROWS_AS(superdense_encode(0, 1, basis_state(2, 0)), std::invalid_argument);
}

TEST_CASE("superdense decoding inverts the Bell circuit deterministically") {
    CHECK(superdense_decode(bell_state({0, 0})) == std::pair{0, 0});
    CHECK(superdense_decode(bell_state({1, 1})) == std::pair{1, 1});
    for (int b1 = 0; b1 < 2; ++b1) {
        for (int b2 = 0; b2 < 2; ++b2) {
            const StateVector coded = superdense_encode(b1, b2, bell_state({0, 0}));
            CHECK(superdense_decode(coded) == std::pair{b1, b2});
        }
    }
    CHECK_THROWS_AS(superdense_decode(basis_state(2, 2)), std::invalid_argument);
    CHECK_THROWS_AS(superdense_decode(basis_state(1, 0)), std::invalid_argument);
}

TEST_CASE("teleporting a basis state is exact") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        RandomSource rng(seed);
        const TeleportRecord record = teleport(basis_state(1, 0), {0, 0}, rng);
        CHECK(near(record.fidelity_to_input, 1.0, 1e-10));
        CHECK(states_equal(phase_normalized(record.bob_state_after), basis_state(1, 0), 1e-10));
    }
}

TEST_CASE("the outcome (1,1) leaves alpha|1> - beta|0> before correction") {
    const StateVector psi(1, {Complex{0.6, 0}, Complex{0.8, 0}});
    bool seen = false;
    for (std::uint64_t seed = 0; seed < 64 && !seen; ++seed) {
        RandomSource rng(seed);
        const TeleportRecord record = teleport(psi, {0, 0}, rng);
        if (record.m1 == 1 && record.m2 == 1) {
            seen = true;
            const StateVector expected(1, {Complex{-0.8, 0}, Complex{0.6, 0}});
            CHECK(near(fidelity(record.bob_state_before, expected), 1.0, 1e-10));
            CHECK(near(fidelity(record.bob_state_after, psi), 1.0, 1e-10));
        }
    }
    CHECK(seen);
}

TEST_CASE("teleportation over the beta_11 channel uses the flipped corrections") {
    // Pin the per-outcome correction table by simulating until all four
    // measurement outcomes have been seen.
    std::array<bool, 4> seen{};
    const StateVector psi(1, {Complex{0.6, 0}, Complex{0.8, 0}});
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        RandomSource rng(seed);
        const TeleportRecord record = teleport(psi, {1, 1}, rng);
        seen[record.m1 * 2 + record.m2] = true;
        CHECK(record.fidelity_to_input >= 1.0 - 1e-9);
    }
    for (bool outcome_seen : seen) {
        CHECK(outcome_seen);
    }
}

TEST_CASE("teleportation fidelity across a thousand random states") {
    for (std::uint64_t seed = 0; seed < 1000; ++seed) {
        RandomSource rng(seed);
        const StateVector psi = random_state(1, 5000 + seed);
        const TeleportRecord record = teleport(psi, {0, 0}, rng);
        CHECK(record.fidelity_to_input >= 1.0 - 1e-9);
        // Correction is Z^m1 X^m2 on the pre-measurement qubit.
        StateVector corrected = record.bob_state_before;
        if (record.m2) {
            corrected = apply_gate(corrected, standard_gate(StandardGate::X), {0});
        }
        if (record.m1) {
            corrected = apply_gate(corrected, standard_gate(StandardGate::Z), {0});
        }
        CHECK(near(fidelity(corrected, record.bob_state_after), 1.0, 1e-10));
    }
}

TEST_CASE("teleportation outcomes are uniform within 3 sigma") {
    const StateVector psi(1, {Complex{0.28, 0.1}, Complex{0.7, std::sqrt(1 - 0.28 * 0.28 -
                                                                         0.1 * 0.1 - 0.49)}});
    std::array<int, 4> counts{};
    const int runs = 40000;
    RandomSource rng(1);
    for (int i = 0; i < runs; ++i) {
        const TeleportRecord record = teleport(psi, {0, 0}, rng);
        ++counts[record.m1 * 2 + record.m2];
    }
    const double expected = runs / 4.0;
    const double sigma = std::sqrt(runs * 0.25 * 0.75);
    for (int outcome = 0; outcome < 4; ++outcome) {
        CHECK(std::abs(counts[outcome] - expected) <= 3.0 * sigma);
    }
}

TEST_CASE("the receiver's qubit is maximally mixed before the correction") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const StateVector psi = random_state(1, 8800 + seed);
        StateVector state = tensor(psi, bell_state({0, 0}));
        state = apply_gate(state, cnot(), {0, 1});
        state = apply_gate(state, standard_gate(StandardGate::H), {0});
        const DensityMatrix bob = partial_trace(to_density(state), {2});
        CHECK(near(bob.entry(0, 0), Complex{0.5, 0}, 1e-10));
        CHECK(near(bob.entry(1, 1), Complex{0.5, 0}, 1e-10));
        CHECK(near(bob.entry(0, 1), Complex{0, 0}, 1e-10));
    }
}

TEST_CASE("teleport validates its inputs") {
    RandomSource rng(0);
    CHECK_THROWS_AS(teleport(basis_state(2, 0), {0, 0}, rng), std::invalid_argument);
    CHECK_THROWS_AS(teleport(basis_state(1, 0), {0, 1}, rng), std::invalid_argument);
    CHECK_THROWS_AS(teleport(basis_state(1, 0), {1, 0}, rng), std::invalid_argument);
}

TEST_CASE("entanglement detection by reduced purity") {
    CHECK(is_entangled(bell_state({0, 0})));
    CHECK(is_entangled(bell_state({1, 1})));
    CHECK_FALSE(is_entangled(tensor(random_state(1, 1), random_state(1, 2))));

    // |0>(|0>+|1>)/sqrt2 written in the computational basis, a product in
    // disguise.
    const StateVector disguised(2, {Complex{kInvSqrt2, 0}, Complex{kInvSqrt2, 0}, Complex{0, 0},
                                    Complex{0, 0}});
    CHECK_FALSE(is_entangled(disguised));
    CHECK_THROWS_AS(is_entangled(basis_state(3, 0)), std::invalid_argument);
}
