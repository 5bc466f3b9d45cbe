#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "qsim/bloch.hpp"
#include "qsim/config.hpp"
#include "qsim/density_matrix.hpp"
#include "qsim/gates.hpp"
#include "qsim/measurement.hpp"
#include "qsim/state_vector.hpp"
#include "test_helpers.hpp"

using namespace qsim;
using testutil::near;
using testutil::random_state;
using testutil::states_equal;

namespace {
const double kInvSqrt2 = 1.0 / std::numbers::sqrt2;

StateVector plus_state() {
    return apply_gate(basis_state(1, 0), standard_gate(StandardGate::H), {0});
}

StateVector bell_phi_plus() {
    StateVector s = tensor(plus_state(), basis_state(1, 0));
    return apply_gate(s, cnot(), {0, 1});
}
} // namespace

TEST_CASE("basis states put the whole amplitude on the labelled index") {
    const StateVector zero = basis_state(1, 0);
    CHECK(near(zero[0], Complex{1, 0}, 1e-15));
    CHECK(near(zero[1], Complex{0, 0}, 1e-15));

    const StateVector three = basis_state(2, 3);
    for (std::uint64_t i = 0; i < 4; ++i) {
        CHECK(near(three[i], i == 3 ? Complex{1, 0} : Complex{0, 0}, 1e-15));
    }

    const StateVector origin = basis_state(3, 0);
    CHECK(near(origin[0], Complex{1, 0}, 1e-15));
    CHECK(near(probabilities(origin)[0], 1.0, 1e-15));
}

TEST_CASE("basis state construction rejects bad input") {
    CHECK_THROWS_AS(basis_state(2, 4), std::invalid_argument);
    CHECK_THROWS_AS(basis_state(0, 0), std::invalid_argument);
    CHECK_THROWS_AS(basis_state(limits().max_state_qubits + 1, 0), std::invalid_argument);
}

TEST_CASE("state vectors must be normalized and the right length") {
    CHECK_THROWS_AS(StateVector(1, {Complex{1, 0}}), std::invalid_argument);
    CHECK_THROWS_AS(StateVector(1, std::vector<Complex>{Complex{1, 0}, Complex{1, 0}}),
                    std::invalid_argument);
}

TEST_CASE("single-qubit gate application matches the defining actions") {
    const StateVector one = apply_gate(basis_state(1, 0), standard_gate(StandardGate::X), {0});
    CHECK(states_equal(one, basis_state(1, 1), 1e-12));

    const StateVector plus = plus_state();
    CHECK(near(plus[0], Complex{kInvSqrt2, 0}, 1e-12));
    CHECK(near(plus[1], Complex{kInvSqrt2, 0}, 1e-12));

    const StateVector flipped = apply_gate(basis_state(2, 2), cnot(), {0, 1});
    CHECK(states_equal(flipped, basis_state(2, 3), 1e-12));
}

TEST_CASE("apply_gate validates targets") {
    const StateVector s = basis_state(2, 0);
    CHECK_THROWS_AS(apply_gate(s, cnot(), {0}), std::invalid_argument);
    CHECK_THROWS_AS(apply_gate(s, cnot(), {0, 0}), std::invalid_argument);
    CHECK_THROWS_AS(apply_gate(s, cnot(), {0, 2}), std::invalid_argument);
}

TEST_CASE("apply_gate leaves the input state untouched") {
    const StateVector s = plus_state();
    const std::vector<Complex> before = s.amplitudes();
    (void)apply_gate(s, standard_gate(StandardGate::Z), {0});
    CHECK(s.amplitudes() == before);
}

TEST_CASE("tensor products compose registers") {
    CHECK(states_equal(tensor(basis_state(1, 1), basis_state(1, 0)), basis_state(2, 2), 1e-15));

    const StateVector uniform2 = tensor(plus_state(), plus_state());
    for (std::uint64_t i = 0; i < 4; ++i) {
        CHECK(near(uniform2[i], Complex{0.5, 0}, 1e-12));
    }

    const StateVector psi = StateVector(1, {Complex{0.6, 0}, Complex{0.8, 0}});
    const StateVector lifted = tensor(psi, basis_state(1, 0));
    CHECK(near(lifted[0], Complex{0.6, 0}, 1e-15));
    CHECK(near(lifted[2], Complex{0.8, 0}, 1e-15));
    CHECK(near(lifted[1], Complex{0, 0}, 1e-15));
}

TEST_CASE("tensor rejects oversized registers") {
    SizeLimits saved = limits();
    limits().max_state_qubits = 3;
    CHECK_THROWS_AS(tensor(basis_state(2, 0), basis_state(2, 0)), std::invalid_argument);
    limits() = saved;
}

TEST_CASE("probabilities follow the Born rule") {
    const std::vector<double> p0 = probabilities(basis_state(1, 0));
    CHECK(near(p0[0], 1.0, 1e-15));
    CHECK(near(p0[1], 0.0, 1e-15));

    const std::vector<double> ph = probabilities(plus_state());
    CHECK(near(ph[0], 0.5, 1e-12));
    CHECK(near(ph[1], 0.5, 1e-12));

    const std::vector<double> pb = probabilities(bell_phi_plus());
    CHECK(near(pb[0], 0.5, 1e-12));
    CHECK(near(pb[1], 0.0, 1e-12));
    CHECK(near(pb[2], 0.0, 1e-12));
    CHECK(near(pb[3], 0.5, 1e-12));
}

TEST_CASE("measuring a Hadamard qubit gives both outcomes across seeds") {
    int ones = 0;
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        RandomSource rng(seed);
        const MeasurementResult m = measure(plus_state(), {0}, rng);
        CHECK(near(m.probability, 0.5, 1e-12));
        ones += m.bits[0];
    }
    CHECK(ones > 50);
    CHECK(ones < 150);
}

TEST_CASE("measuring a basis state is deterministic") {
    for (std::uint64_t seed : {0ull, 1ull, 99ull}) {
        RandomSource rng(seed);
        const MeasurementResult m = measure(basis_state(2, 3), {0, 1}, rng);
        CHECK(m.bits == std::vector<int>{1, 1});
        CHECK(near(m.probability, 1.0, 1e-12));
    }
}

TEST_CASE("Bell pair measurements are perfectly correlated") {
    const StateVector bell = bell_phi_plus();
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        RandomSource rng(seed);
        const MeasurementResult first = measure(bell, {0}, rng);
        const MeasurementResult second = measure(first.post_state, {1}, rng);
        CHECK(second.bits[0] == first.bits[0]);
        CHECK(near(second.probability, 1.0, 1e-12));
    }
}

TEST_CASE("measurement validates its targets") {
    RandomSource rng(0);
    CHECK_THROWS_AS(measure(plus_state(), std::span<const int>{}, rng), std::invalid_argument);
    CHECK_THROWS_AS(measure(plus_state(), {1}, rng), std::invalid_argument);
}

TEST_CASE("repeating a measurement on the collapsed state is stable") {
    for (std::uint64_t seed = 0; seed < 25; ++seed) {
        const StateVector s = random_state(4, 1000 + seed);
        RandomSource rng(seed);
        const MeasurementResult first = measure(s, {1, 3}, rng);
        const MeasurementResult again = measure(first.post_state, {1, 3}, rng);
        CHECK(again.bits == first.bits);
        CHECK(near(again.probability, 1.0, 1e-12));
    }
}

TEST_CASE("projection collapses onto the requested outcome") {
    const MeasurementResult m = project(bell_phi_plus(), {0}, {1});
    CHECK(near(m.probability, 0.5, 1e-12));
    CHECK(states_equal(m.post_state, basis_state(2, 3), 1e-12));
    CHECK_THROWS_AS(project(basis_state(2, 0), {0}, {1}), std::invalid_argument);
}

TEST_CASE("sampled frequencies match the Born probabilities within 3 sigma") {
    const int shots = 100000;
    for (int n = 1; n <= 4; ++n) {
        const StateVector s = random_state(n, 77 + n);
        const std::vector<double> p = probabilities(s);
        std::vector<int> counts(s.dim(), 0);
        RandomSource rng(4242);
        std::vector<int> targets(n);
        for (int q = 0; q < n; ++q) {
            targets[q] = q;
        }
        for (int shot = 0; shot < shots; ++shot) {
            const MeasurementResult m = measure(s, targets, rng);
            std::uint64_t idx = 0;
            for (int b : m.bits) {
                idx = (idx << 1) | static_cast<std::uint64_t>(b);
            }
            ++counts[idx];
        }
        for (std::uint64_t i = 0; i < s.dim(); ++i) {
            const double expected = p[i] * shots;
            const double sigma = std::sqrt(std::max(p[i] * (1 - p[i]) * shots, 1e-9));
            CHECK(std::abs(counts[i] - expected) <= 3.0 * sigma + 1.0);
        }
    }
}

TEST_CASE("density matrix of the Hadamard state is the half-ones matrix") {
    const DensityMatrix rho = to_density(plus_state());
    for (int r = 0; r < 2; ++r) {
        for (int c = 0; c < 2; ++c) {
            CHECK(near(rho.entry(r, c), Complex{0.5, 0}, 1e-12));
        }
    }

    const DensityMatrix zero = to_density(basis_state(1, 0));
    CHECK(near(zero.entry(0, 0), Complex{1, 0}, 1e-15));
    CHECK(near(zero.entry(1, 1), Complex{0, 0}, 1e-15));
}

TEST_CASE("density matrix of a Bell state has quarter-corner support") {
    const DensityMatrix rho = to_density(bell_phi_plus());
    // Oracle: outer product computed by hand for (|00>+|11>)/sqrt2.
    for (std::uint64_t r = 0; r < 4; ++r) {
        for (std::uint64_t c = 0; c < 4; ++c) {
            const bool corner = (r == 0 || r == 3) && (c == 0 || c == 3);
            CHECK(near(rho.entry(r, c), corner ? Complex{0.5, 0} : Complex{0, 0}, 1e-12));
        }
    }
}

TEST_CASE("partial trace of a Bell state is maximally mixed") {
    const DensityMatrix reduced = partial_trace(to_density(bell_phi_plus()), {0});
    CHECK(near(reduced.entry(0, 0), Complex{0.5, 0}, 1e-12));
    CHECK(near(reduced.entry(1, 1), Complex{0.5, 0}, 1e-12));
    CHECK(near(reduced.entry(0, 1), Complex{0, 0}, 1e-12));
    CHECK(near(purity(reduced), 0.5, 1e-12));
}

TEST_CASE("partial trace of a product state recovers the factors") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const StateVector a = random_state(2, 50 + seed);
        const StateVector b = random_state(1, 150 + seed);
        const DensityMatrix reduced = partial_trace(to_density(tensor(a, b)), {0, 1});
        const DensityMatrix expected = to_density(a);
        for (std::uint64_t r = 0; r < reduced.dim(); ++r) {
            for (std::uint64_t c = 0; c < reduced.dim(); ++c) {
                CHECK(near(reduced.entry(r, c), expected.entry(r, c), 1e-10));
            }
        }
        CHECK(near(purity(reduced), 1.0, 1e-10));
    }
}

TEST_CASE("partial trace keeps the trace and rejects an empty keep list") {
    const DensityMatrix rho = to_density(random_state(3, 9));
    const DensityMatrix reduced = partial_trace(rho, {2});
    Complex trace{0, 0};
    for (std::uint64_t i = 0; i < reduced.dim(); ++i) {
        trace += reduced.entry(i, i);
    }
    CHECK(near(trace, Complex{1, 0}, 1e-10));
    CHECK_THROWS_AS(partial_trace(rho, std::span<const int>{}), std::invalid_argument);

    const DensityMatrix second = partial_trace(to_density(basis_state(2, 1)), {1});
    CHECK(near(second.entry(0, 0), Complex{0, 0}, 1e-12));
    CHECK(near(second.entry(1, 1), Complex{1, 0}, 1e-12));
}

TEST_CASE("purity separates pure states from mixtures") {
    CHECK(near(purity(to_density(random_state(2, 3))), 1.0, 1e-10));
    const DensityMatrix mixed(1, {Complex{0.5, 0}, Complex{0, 0}, Complex{0, 0}, Complex{0.5, 0}});
    CHECK(near(purity(mixed), 0.5, 1e-12));
}

TEST_CASE("Bloch vectors of the named states") {
    const BlochVector north = bloch_vector(to_density(basis_state(1, 0)));
    CHECK(near(north.rx, 0.0, 1e-12));
    CHECK(near(north.ry, 0.0, 1e-12));
    CHECK(near(north.rz, 1.0, 1e-12));

    const BlochVector x_axis = bloch_vector(to_density(plus_state()));
    CHECK(near(x_axis.rx, 1.0, 1e-12));
    CHECK(near(x_axis.ry, 0.0, 1e-12));
    CHECK(near(x_axis.rz, 0.0, 1e-12));

    const DensityMatrix mixed(1, {Complex{0.5, 0}, Complex{0, 0}, Complex{0, 0}, Complex{0.5, 0}});
    const BlochVector center = bloch_vector(mixed);
    CHECK(near(center.length(), 0.0, 1e-12));

    CHECK_THROWS_AS(bloch_vector(to_density(basis_state(2, 0))), std::invalid_argument);
}

TEST_CASE("density_from_bloch inverts bloch_vector") {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        std::mt19937_64 gen(seed);
        std::uniform_real_distribution<double> unit(-1.0, 1.0);
        BlochVector r{unit(gen), unit(gen), unit(gen)};
        const double len = r.length();
        if (len > 1.0) {
            r.rx /= len;
            r.ry /= len;
            r.rz /= len;
        }
        const BlochVector back = bloch_vector(density_from_bloch(r));
        CHECK(near(back.rx, r.rx, 1e-10));
        CHECK(near(back.ry, r.ry, 1e-10));
        CHECK(near(back.rz, r.rz, 1e-10));
    }
}

TEST_CASE("pure states sit on the Bloch sphere, mixtures strictly inside") {
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        const StateVector pure = random_state(1, 7000 + seed);
        CHECK(near(bloch_vector(to_density(pure)).length(), 1.0, 1e-9));
    }
    std::mt19937_64 gen(11);
    std::uniform_real_distribution<double> weight(0.05, 0.95);
    int tested = 0;
    for (std::uint64_t seed = 0; tested < 100; ++seed) {
        const StateVector a = random_state(1, 9000 + 2 * seed);
        const StateVector b = random_state(1, 9001 + 2 * seed);
        if (fidelity(a, b) > 0.98) {
            continue; // nearly identical states would sit on the surface
        }
        ++tested;
        const double w = weight(gen);
        const DensityMatrix da = to_density(a);
        const DensityMatrix db = to_density(b);
        std::vector<Complex> mix(4);
        for (int i = 0; i < 4; ++i) {
            mix[i] = w * da.entries()[i] + (1.0 - w) * db.entries()[i];
        }
        const DensityMatrix rho(1, std::move(mix));
        CHECK(bloch_vector(rho).length() < 1.0 - 1e-12);
    }
}

TEST_CASE("fidelity basics and the cloning-circuit gap") {
    CHECK(near(fidelity(basis_state(1, 0), basis_state(1, 0)), 1.0, 1e-15));
    CHECK(near(fidelity(basis_state(1, 0), basis_state(1, 1)), 0.0, 1e-15));

    // CNOT copying |+>: the entangled output overlaps |+>|+> with
    // probability 1/2, the hand value of the inner product squared.
    const StateVector copied = apply_gate(tensor(plus_state(), basis_state(1, 0)), cnot(), {0, 1});
    const StateVector target = tensor(plus_state(), plus_state());
    CHECK(near(fidelity(copied, target), 0.5, 1e-12));
    CHECK_THROWS_AS(fidelity(basis_state(1, 0), basis_state(2, 0)), std::invalid_argument);
}

TEST_CASE("random unitaries preserve the norm") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        for (int arity = 1; arity <= 3; ++arity) {
            const int n = 6;
            const StateVector s = random_state(n, 300 + seed);
            const GateMatrix u = testutil::random_unitary(arity, 400 + 10 * seed + arity);
            std::vector<int> targets;
            for (int q = 0; q < arity; ++q) {
                targets.push_back((static_cast<int>(seed) + 2 * q) % n);
            }
            std::sort(targets.begin(), targets.end());
            targets.erase(std::unique(targets.begin(), targets.end()), targets.end());
            if (static_cast<int>(targets.size()) != arity) {
                continue;
            }
            const StateVector out = apply_gate(s, u, targets);
            double norm = 0.0;
            for (std::uint64_t i = 0; i < out.dim(); ++i) {
                norm += std::norm(out[i]);
            }
            CHECK(near(norm, 1.0, 1e-10));
        }
    }
}

TEST_CASE("strided application agrees with the naive dense product") {
    for (std::uint64_t seed = 0; seed < 8; ++seed) {
        const StateVector s = random_state(3, 600 + seed);
        const GateMatrix u = testutil::random_unitary(2, 700 + seed);
        const StateVector fast = apply_gate(s, u, {2, 0});
        // Oracle: embed U into the full 8x8 matrix entry by entry.
        testutil::DenseMatrix full{8, std::vector<Complex>(64, Complex{0, 0})};
        auto sub = [](std::uint64_t i) {
            return ((i & 1) << 1) | ((i >> 2) & 1); // targets {2, 0}
        };
        auto rest = [](std::uint64_t i) { return (i >> 1) & 1; };
        for (std::uint64_t r = 0; r < 8; ++r) {
            for (std::uint64_t c = 0; c < 8; ++c) {
                if (rest(r) == rest(c)) {
                    full.at(r, c) = u.entry(sub(r), sub(c));
                }
            }
        }
        const StateVector slow = testutil::matvec(full, s);
        CHECK(states_equal(fast, slow, 1e-10));
    }
}

TEST_CASE("state dump uses binary labels with 12 significant digits") {
    const std::string dump = dump_state(plus_state());
    CHECK(dump == "0 0.707106781187 0\n1 0.707106781187 0\n");

    const std::string bell = dump_state(bell_phi_plus());
    CHECK(bell == "00 0.707106781187 0\n11 0.707106781187 0\n");

    const StateVector parsed = parse_state_dump(bell);
    CHECK(states_equal(parsed, bell_phi_plus(), 1e-9));

    CHECK_THROWS_AS(parse_state_dump("00 1 0\n1 0 0\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse_state_dump("02 1 0\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse_state_dump("0 0.5 0\n"), std::invalid_argument);
}

TEST_CASE("phase normalization pins the first nonzero amplitude") {
    const StateVector s(2, {Complex{0, 0}, Complex{0, -kInvSqrt2}, Complex{0, kInvSqrt2},
                            Complex{0, 0}});
    const StateVector fixed = phase_normalized(s);
    CHECK(near(fixed[1], Complex{kInvSqrt2, 0}, 1e-12));
    CHECK(near(fixed[2], Complex{-kInvSqrt2, 0}, 1e-12));
    CHECK(near(fidelity(fixed, s), 1.0, 1e-12));
}
