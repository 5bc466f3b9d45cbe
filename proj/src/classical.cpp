#include "qsim/classical.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace qsim {

namespace {

void check_bit(Bit b) {
    if (b != 0 && b != 1) {
        throw std::invalid_argument("bit values must be 0 or 1");
    }
}

int step_arity(RevGateKind kind) {
    switch (kind) {
    case RevGateKind::Toffoli:
    case RevGateKind::Fredkin:
        return 3;
    case RevGateKind::Cnot:
        return 2;
    case RevGateKind::Not:
        return 1;
    }
    throw std::invalid_argument("unknown reversible gate kind");
}

void validate_step(const RevStep& step, int n_wires) {
    if (static_cast<int>(step.wires.size()) != step_arity(step.kind)) {
        throw std::invalid_argument("reversible step has the wrong wire count");
    }
    for (std::size_t i = 0; i < step.wires.size(); ++i) {
        if (step.wires[i] < 0 || step.wires[i] >= n_wires) {
            throw std::invalid_argument("reversible step wire out of range");
        }
        for (std::size_t j = i + 1; j < step.wires.size(); ++j) {
            if (step.wires[i] == step.wires[j]) {
                throw std::invalid_argument("reversible step wires must be distinct");
            }
        }
    }
}

void apply_step(std::vector<Bit>& w, const RevStep& step) {
    switch (step.kind) {
    case RevGateKind::Toffoli:
        w[step.wires[2]] ^= w[step.wires[0]] & w[step.wires[1]];
        return;
    case RevGateKind::Fredkin:
        if (w[step.wires[2]]) {
            std::swap(w[step.wires[0]], w[step.wires[1]]);
        }
        return;
    case RevGateKind::Cnot:
        w[step.wires[1]] ^= w[step.wires[0]];
        return;
    case RevGateKind::Not:
        w[step.wires[0]] ^= 1;
        return;
    }
}

} // namespace

Bit eval_gate(LogicGate kind, Bit a, std::optional<Bit> b) {
    check_bit(a);
    if (kind == LogicGate::Not) {
        if (b.has_value()) {
            throw std::invalid_argument("NOT takes a single input");
        }
        return 1 ^ a;
    }
    if (!b.has_value()) {
        throw std::invalid_argument("binary gate needs two inputs");
    }
    check_bit(*b);
    switch (kind) {
    case LogicGate::And:
        return a & *b;
    case LogicGate::Or:
        return a | *b;
    case LogicGate::Xor:
        return a ^ *b;
    case LogicGate::Nand:
        return 1 ^ (a & *b);
    case LogicGate::Nor:
        return 1 ^ (a | *b);
    case LogicGate::Not:
        break;
    }
    throw std::invalid_argument("unknown logic gate");
}

ReversibleCircuit ReversibleCircuit::parse(const std::string& text) {
    std::istringstream is(text);
    std::string word;
    if (!(is >> word) || word != "wires") {
        throw std::invalid_argument("circuit must start with `wires <n>`");
    }
    ReversibleCircuit circuit;
    if (!(is >> circuit.n_wires) || circuit.n_wires < 1) {
        throw std::invalid_argument("circuit needs a positive wire count");
    }
    while (is >> word) {
        RevStep step;
        if (word == "toffoli") {
            step.kind = RevGateKind::Toffoli;
        } else if (word == "fredkin") {
            step.kind = RevGateKind::Fredkin;
        } else if (word == "cnot") {
            step.kind = RevGateKind::Cnot;
        } else if (word == "not") {
            step.kind = RevGateKind::Not;
        } else {
            throw std::invalid_argument("unknown circuit step: " + word);
        }
        step.wires.resize(step_arity(step.kind));
        for (int& wire : step.wires) {
            if (!(is >> wire)) {
                throw std::invalid_argument("circuit step is missing wire indices");
            }
        }
        validate_step(step, circuit.n_wires);
        circuit.steps.push_back(std::move(step));
    }
    return circuit;
}

std::string ReversibleCircuit::serialize() const {
    std::string out = "wires " + std::to_string(n_wires) + "\n";
    for (const RevStep& step : steps) {
        switch (step.kind) {
        case RevGateKind::Toffoli: out += "toffoli"; break;
        case RevGateKind::Fredkin: out += "fredkin"; break;
        case RevGateKind::Cnot: out += "cnot"; break;
        case RevGateKind::Not: out += "not"; break;
        }
        for (int wire : step.wires) {
            out += " " + std::to_string(wire);
        }
        out += "\n";
    }
    return out;
}

ReversibleCircuit ReversibleCircuit::reversed() const {
    // Every supported step is an involution, so reversing the order is
    // enough to invert the circuit.
    ReversibleCircuit out;
    out.n_wires = n_wires;
    out.steps.assign(steps.rbegin(), steps.rend());
    return out;
}

std::vector<Bit> run_reversible(const ReversibleCircuit& circuit, std::span<const Bit> input) {
    if (static_cast<int>(input.size()) != circuit.n_wires) {
        throw std::invalid_argument("input length must equal the circuit wire count");
    }
    std::vector<Bit> wires(input.begin(), input.end());
    for (Bit b : wires) {
        check_bit(b);
    }
    for (const RevStep& step : circuit.steps) {
        validate_step(step, circuit.n_wires);
        apply_step(wires, step);
    }
    return wires;
}

std::vector<Bit> run_reversible(const ReversibleCircuit& circuit, std::initializer_list<Bit> input) {
    return run_reversible(circuit, std::span<const Bit>(input.begin(), input.size()));
}

std::vector<Bit> compute_with_uncompute(const RoledCircuit& f, std::span<const Bit> x) {
    const int n = f.circuit.n_wires;
    if (static_cast<int>(f.roles.size()) != n) {
        throw std::invalid_argument("need one wire role per circuit wire");
    }
    std::vector<int> input_wires;
    std::vector<int> result_wires;
    for (int w = 0; w < n; ++w) {
        if (f.roles[w] == WireRole::Input) {
            input_wires.push_back(w);
        } else if (f.roles[w] == WireRole::Result) {
            result_wires.push_back(w);
        }
    }
    if (static_cast<int>(x.size()) != static_cast<int>(input_wires.size())) {
        throw std::invalid_argument("input length must match the number of input wires");
    }
    if (result_wires.empty()) {
        throw std::invalid_argument("circuit declares no result wires");
    }

    // (x, 0, 0) -> (x, r(x), g(x))
    std::vector<Bit> wires(n, 0);
    for (std::size_t i = 0; i < x.size(); ++i) {
        check_bit(x[i]);
        wires[input_wires[i]] = x[i];
    }
    for (const RevStep& step : f.circuit.steps) {
        validate_step(step, n);
        apply_step(wires, step);
    }
    // CNOT fan-in of the result onto fresh trailing wires.
    std::vector<Bit> copy(result_wires.size());
    for (std::size_t i = 0; i < result_wires.size(); ++i) {
        copy[i] = wires[result_wires[i]];
    }
    // Uncompute: the exact inverse restores every non-input wire to 0.
    for (auto it = f.circuit.steps.rbegin(); it != f.circuit.steps.rend(); ++it) {
        apply_step(wires, *it);
    }
    for (int w = 0; w < n; ++w) {
        if (f.roles[w] != WireRole::Input && wires[w] != 0) {
            throw std::runtime_error("garbage wire " + std::to_string(w) +
                                     " was not restored to 0 by uncomputation");
        }
    }
    wires.insert(wires.end(), copy.begin(), copy.end());
    return wires;
}

std::vector<Bit> compute_with_uncompute(const RoledCircuit& f, std::initializer_list<Bit> x) {
    return compute_with_uncompute(f, std::span<const Bit>(x.begin(), x.size()));
}

std::pair<Bit, Bit> half_adder(Bit x, Bit y) {
    check_bit(x);
    check_bit(y);
    const std::vector<Bit> out = run_reversible(half_adder_circuit(), {x, y, 0});
    return {out[1], out[2]};
}

ReversibleCircuit half_adder_circuit() {
    ReversibleCircuit circuit;
    circuit.n_wires = 3;
    circuit.steps = {
        RevStep{RevGateKind::Toffoli, {0, 1, 2}}, // carry = xy
        RevStep{RevGateKind::Cnot, {0, 1}},       // sum = x xor y
    };
    return circuit;
}

} // namespace qsim
