#include "qsim/protocols.hpp"

#include <stdexcept>

#include "qsim/density_matrix.hpp"
#include "qsim/gates.hpp"

namespace qsim {

namespace {

void check_label(BellLabel label) {
    if ((label.x != 0 && label.x != 1) || (label.y != 0 && label.y != 1)) {
        throw std::invalid_argument("Bell labels are bit pairs");
    }
}

StateVector extract_receiver_qubit(const StateVector& post, int m1, int m2) {
    const std::uint64_t block = (static_cast<std::uint64_t>(m1) << 2) |
                                (static_cast<std::uint64_t>(m2) << 1);
    return StateVector(1, {post[block], post[block | 1]});
}

} // namespace

StateVector bell_state(BellLabel label) {
    check_label(label);
    const std::uint64_t index = static_cast<std::uint64_t>(label.x) << 1 |
                                static_cast<std::uint64_t>(label.y);
    StateVector state = basis_state(2, index);
    state = apply_gate(state, standard_gate(StandardGate::H), {0});
    return apply_gate(state, cnot(), {0, 1});
}

StateVector superdense_encode(int b1, int b2, const StateVector& shared) {
    check_label(BellLabel{b1, b2});
    if (shared.n_qubits() != 2 || fidelity(shared, bell_state({0, 0})) < 1.0 - 1e-9) {
        throw std::invalid_argument("superdense coding needs a shared beta_00 pair");
    }
    StateVector state = shared;
    if (b2) {
        state = apply_gate(state, standard_gate(StandardGate::X), {0});
    }
    if (b1) {
        state = apply_gate(state, standard_gate(StandardGate::Z), {0});
    }
    return state;
}

std::pair<int, int> superdense_decode(const StateVector& state) {
    if (state.n_qubits() != 2) {
        throw std::invalid_argument("superdense decoding takes a two-qubit state");
    }
    bool is_bell = false;
    for (int x = 0; x < 2 && !is_bell; ++x) {
        for (int y = 0; y < 2 && !is_bell; ++y) {
            is_bell = fidelity(state, bell_state({x, y})) >= 1.0 - 1e-9;
        }
    }
    if (!is_bell) {
        throw std::invalid_argument("input is not a Bell state");
    }
    // Undo the Bell circuit; the result is the computational basis label.
    StateVector decoded = apply_gate(state, cnot(), {0, 1});
    decoded = apply_gate(decoded, standard_gate(StandardGate::H), {0});
    const std::vector<double> probs = probabilities(decoded);
    int best = 0;
    for (int i = 1; i < 4; ++i) {
        if (probs[i] > probs[best]) {
            best = i;
        }
    }
    return {best >> 1, best & 1};
}

TeleportRecord teleport(const StateVector& psi, BellLabel label, RandomSource& rng) {
    if (psi.n_qubits() != 1) {
        throw std::invalid_argument("teleportation sends a single qubit");
    }
    check_label(label);
    const bool beta11 = label.x == 1 && label.y == 1;
    if (!beta11 && !(label.x == 0 && label.y == 0)) {
        throw std::invalid_argument("supported channels are beta_00 and beta_11");
    }

    StateVector state = tensor(psi, bell_state(label));
    state = apply_gate(state, cnot(), {0, 1});
    state = apply_gate(state, standard_gate(StandardGate::H), {0});
    const MeasurementResult m = measure(state, {0, 1}, rng);
    const int m1 = m.bits[0];
    const int m2 = m.bits[1];

    const StateVector before = extract_receiver_qubit(m.post_state, m1, m2);
    // beta_00 corrections are Z^m1 X^m2; the beta_11 table, pinned by
    // simulating all four outcomes, is the bit-flipped rule
    // Z^(1 xor m1) X^(1 xor m2).
    const int apply_x = beta11 ? 1 ^ m2 : m2;
    const int apply_z = beta11 ? 1 ^ m1 : m1;
    StateVector after = before;
    if (apply_x) {
        after = apply_gate(after, standard_gate(StandardGate::X), {0});
    }
    if (apply_z) {
        after = apply_gate(after, standard_gate(StandardGate::Z), {0});
    }
    return TeleportRecord{m1, m2, before, after, fidelity(after, psi)};
}

bool is_entangled(const StateVector& state) {
    if (state.n_qubits() != 2) {
        throw std::invalid_argument("entanglement test takes a two-qubit state");
    }
    return purity(partial_trace(to_density(state), {0})) < 1.0 - 1e-9;
}

} // namespace qsim
