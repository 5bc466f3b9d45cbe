#pragma once

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace qsim {

using Bit = int; // valid values are 0 and 1

enum class LogicGate { Not, And, Or, Xor, Nand, Nor };

/// Elementary classical gate evaluation. `b` must be present exactly for the
/// binary gates.
Bit eval_gate(LogicGate kind, Bit a, std::optional<Bit> b = std::nullopt);

enum class RevGateKind { Toffoli, Fredkin, Cnot, Not };

struct RevStep {
    RevGateKind kind;
    std::vector<int> wires;
};

/// Reversible bit circuit: every step is self-inverse, so running the steps
/// in reverse order undoes the circuit exactly.
struct ReversibleCircuit {
    int n_wires = 0;
    std::vector<RevStep> steps;

    /// Text format: `wires <n>` then one step per line,
    /// `toffoli i j k | fredkin i j k | cnot i j | not i`.
    static ReversibleCircuit parse(const std::string& text);
    std::string serialize() const;

    ReversibleCircuit reversed() const;
};

std::vector<Bit> run_reversible(const ReversibleCircuit& circuit, std::span<const Bit> input);
std::vector<Bit> run_reversible(const ReversibleCircuit& circuit, std::initializer_list<Bit> input);

enum class WireRole { Input, Result, Garbage };

/// Circuit plus a role per wire. Result and garbage wires are ancilla: they
/// enter as 0 and the circuit leaves r(x) on the result wires and whatever
/// scratch it produced on the garbage wires.
struct RoledCircuit {
    ReversibleCircuit circuit;
    std::vector<WireRole> roles;
};

/// Runs f, copies the result wires onto fresh trailing wires with CNOT
/// fan-in, then runs f backwards. Output wires read (x, 0...0, r(x)): the
/// inputs are preserved, every ancilla and garbage wire is restored to 0 and
/// the copy holds the result. A nonzero ancilla at the end is reported as an
/// error.
std::vector<Bit> compute_with_uncompute(const RoledCircuit& f, std::span<const Bit> x);
std::vector<Bit> compute_with_uncompute(const RoledCircuit& f, std::initializer_list<Bit> x);

/// sum = x xor y, carry = x and y.
std::pair<Bit, Bit> half_adder(Bit x, Bit y);

/// The half adder as a reversible circuit on wires (x, y, 0): one Toffoli
/// then one CNOT, leaving the sum on wire 1 and the carry on wire 2. Also
/// runs unchanged on quantum basis states.
ReversibleCircuit half_adder_circuit();

} // namespace qsim
