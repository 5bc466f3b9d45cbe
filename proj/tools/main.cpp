#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "qsim/algorithms.hpp"
#include "qsim/bloch.hpp"
#include "qsim/classical.hpp"
#include "qsim/config.hpp"
#include "qsim/decoherence.hpp"
#include "qsim/density_matrix.hpp"
#include "qsim/gates.hpp"
#include "qsim/numtheory.hpp"
#include "qsim/protocols.hpp"
#include "qsim/state_vector.hpp"

using json = nlohmann::json;
using namespace qsim;

namespace {

struct CommonOpts {
    std::uint64_t seed = 0;
    int shots = 1;
    bool pretty = false;
    bool timing = false;
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
    cmd->add_option("--seed", opts.seed, "RNG seed, always echoed in the report");
    cmd->add_option("--shots", opts.shots, "repetitions for sampling summaries")
        ->check(CLI::PositiveNumber);
    cmd->add_flag("--pretty", opts.pretty, "render the report as text instead of JSON");
    cmd->add_flag("--timing", opts.timing,
                  "include wall_time_ms (makes output run-dependent)");
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::invalid_argument("cannot open file: " + path);
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

TruthTable load_truth_table(const std::string& path) {
    try {
        return TruthTable::parse(read_file(path));
    } catch (const std::invalid_argument& e) {
        throw std::invalid_argument("oracle file " + path + ": " + e.what());
    }
}

json state_lines(const StateVector& state) {
    json lines = json::array();
    std::istringstream is(dump_state(state));
    std::string line;
    while (std::getline(is, line)) {
        lines.push_back(line);
    }
    return lines;
}

StateVector random_pure_qubit(RandomSource& rng) {
    // Box-Muller pairs, normalized: Haar-uniform on the Bloch sphere.
    auto gaussian = [&rng] {
        const double u1 = std::max(rng.uniform(), 1e-300);
        const double u2 = rng.uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    };
    Complex a{gaussian(), gaussian()};
    Complex b{gaussian(), gaussian()};
    const double norm = std::sqrt(std::norm(a) + std::norm(b));
    return StateVector(1, {a / norm, b / norm});
}

void render_pretty(const json& value, const std::string& prefix) {
    if (value.is_object()) {
        for (const auto& [key, sub] : value.items()) {
            if (sub.is_structured()) {
                std::cout << prefix << key << ":\n";
                render_pretty(sub, prefix + "  ");
            } else {
                std::cout << prefix << key << ": " << sub.dump() << "\n";
            }
        }
    } else if (value.is_array()) {
        for (const auto& sub : value) {
            if (sub.is_structured()) {
                std::cout << prefix << "-\n";
                render_pretty(sub, prefix + "  ");
            } else {
                std::cout << prefix << "- " << sub.dump() << "\n";
            }
        }
    } else {
        std::cout << prefix << value.dump() << "\n";
    }
}

class ReportBuilder {
  public:
    ReportBuilder(std::string subcommand, const CommonOpts& opts)
        : opts_(opts), start_(std::chrono::steady_clock::now()) {
        report_["subcommand"] = std::move(subcommand);
        report_["seed"] = opts.seed;
        report_["shots"] = opts.shots;
    }

    void inputs(json value) { report_["inputs"] = std::move(value); }
    void result(json value) { report_["result"] = std::move(value); }
    void oracle_calls(std::uint64_t calls) { report_["oracle_call_count"] = calls; }

    void emit() {
        if (opts_.timing) {
            const auto elapsed = std::chrono::steady_clock::now() - start_;
            report_["wall_time_ms"] =
                std::chrono::duration<double, std::milli>(elapsed).count();
        }
        if (opts_.pretty) {
            render_pretty(report_, "");
        } else {
            std::cout << report_.dump(2) << "\n";
        }
    }

  private:
    CommonOpts opts_;
    std::chrono::steady_clock::time_point start_;
    json report_ = json::object();
};

const char* class_name(FunctionClass cls) {
    return cls == FunctionClass::Constant ? "CONSTANT" : "BALANCED";
}

json order_attempts_json(const OrderFindingResult& result) {
    json attempts = json::array();
    for (const OrderAttempt& attempt : result.attempts) {
        json row{{"measured", attempt.measured}, {"verified", attempt.verified}};
        row["candidate"] = attempt.order_candidate ? json(*attempt.order_candidate)
                                                   : json(nullptr);
        attempts.push_back(std::move(row));
    }
    return attempts;
}

int run_deutsch(const std::string& oracle_path, bool generalized, const CommonOpts& opts) {
    ReportBuilder report(generalized ? "dj" : "deutsch", opts);
    const TruthTable f = load_truth_table(oracle_path);
    report.inputs({{"oracle", oracle_path}, {"n", f.n_inputs()}});
    const OracleClassification verdict = generalized ? deutsch_jozsa(f) : deutsch(f);
    report.result({{"class", class_name(verdict.function_class)},
                   {"zero_amplitude", verdict.zero_amplitude}});
    report.oracle_calls(verdict.oracle_calls);
    report.emit();
    return 0;
}

int run_bv(std::uint64_t a, int n, const CommonOpts& opts) {
    ReportBuilder report("bv", opts);
    report.inputs({{"a", a}, {"n", n}});
    const BernsteinVaziraniResult result = bernstein_vazirani(a, n);
    report.result({{"recovered", result.recovered}, {"probability", result.probability}});
    report.oracle_calls(result.oracle_calls);
    report.emit();
    return 0;
}

int run_grover(int n, const std::string& oracle_path, std::vector<std::uint64_t> targets,
               std::optional<std::uint64_t> solutions, const CommonOpts& opts) {
    ReportBuilder report("grover", opts);
    TruthTable f = [&] {
        if (!oracle_path.empty()) {
            return load_truth_table(oracle_path);
        }
        if (n <= 0) {
            throw std::invalid_argument("grover needs --n with --target");
        }
        TruthTable table(n);
        for (std::uint64_t t : targets) {
            table.set(t, true);
        }
        return table;
    }();
    const std::uint64_t m = solutions.value_or(f.count_ones());
    json inputs{{"n", f.n_inputs()}, {"solutions", m}};
    if (!oracle_path.empty()) {
        inputs["oracle"] = oracle_path;
    } else {
        inputs["targets"] = targets;
    }
    report.inputs(std::move(inputs));

    RandomSource rng(opts.seed);
    const GroverResult first = grover_search(f, m, rng);
    json result{{"index", first.index},
                {"verified", first.verified},
                {"iterations", first.iterations},
                {"success_probability", first.success_probability}};
    if (opts.shots > 1) {
        json histogram = json::object();
        histogram[std::to_string(first.index)] = 1;
        for (int shot = 1; shot < opts.shots; ++shot) {
            const GroverResult next = grover_search(f, m, rng);
            const std::string key = std::to_string(next.index);
            histogram[key] = histogram.value(key, 0) + 1;
        }
        result["samples"] = std::move(histogram);
    }
    report.result(std::move(result));
    report.oracle_calls(first.oracle_calls);
    report.emit();
    return 0;
}

int run_phase_est(std::optional<std::uint64_t> phase_num, std::uint64_t phase_den,
                  std::optional<std::uint64_t> base, std::uint64_t modulus, int bits,
                  std::optional<std::uint64_t> force_x, const CommonOpts& opts) {
    ReportBuilder report("phase-est", opts);
    GateMatrix u = [&] {
        if (phase_num) {
            if (phase_den == 0) {
                throw std::invalid_argument("phase denominator must be positive");
            }
            const double angle = 2.0 * std::numbers::pi * static_cast<double>(*phase_num) /
                                 static_cast<double>(phase_den);
            return GateMatrix::diagonal(1, {Complex{1, 0}, std::polar(1.0, angle)});
        }
        if (!base) {
            throw std::invalid_argument("phase-est needs --phase-num or --a");
        }
        return modular_multiply_gate(*base, modulus);
    }();
    json inputs{{"bits", bits}};
    if (phase_num) {
        inputs["phase_num"] = *phase_num;
        inputs["phase_den"] = phase_den;
    } else {
        inputs["a"] = *base;
        inputs["modulus"] = modulus;
    }
    if (force_x) {
        inputs["force_x"] = *force_x;
    }
    report.inputs(std::move(inputs));

    const StateVector target = basis_state(u.arity(), 1);
    RandomSource rng(opts.seed);
    const PhaseEstimate first = phase_estimation(u, target, bits, rng, force_x);
    json result{{"measured", first.measured},
                {"n_bits", first.n_bits},
                {"fraction", first.fraction},
                {"probability", first.probability}};
    if (opts.shots > 1 && !force_x) {
        json histogram = json::object();
        histogram[std::to_string(first.measured)] = 1;
        for (int shot = 1; shot < opts.shots; ++shot) {
            const PhaseEstimate next = phase_estimation(u, target, bits, rng, std::nullopt);
            const std::string key = std::to_string(next.measured);
            histogram[key] = histogram.value(key, 0) + 1;
        }
        result["samples"] = std::move(histogram);
    }
    report.result(std::move(result));
    report.emit();
    return 0;
}

int run_order(std::uint64_t a, std::uint64_t modulus, int attempts,
              std::optional<int> control_bits, std::optional<std::uint64_t> force_x,
              const CommonOpts& opts) {
    ReportBuilder report("order", opts);
    json inputs{{"a", a}, {"n", modulus}, {"attempts", attempts}};
    if (control_bits) {
        inputs["control_bits"] = *control_bits;
    }
    if (force_x) {
        inputs["force_x"] = *force_x;
    }
    report.inputs(std::move(inputs));

    OrderFindingOptions options;
    options.max_attempts = attempts;
    options.control_bits = control_bits;
    options.forced_measurement = force_x;
    RandomSource rng(opts.seed);
    const OrderFindingResult result = find_order(a, modulus, rng, options);
    json payload{{"attempts", order_attempts_json(result)}};
    payload["order"] = result.order ? json(*result.order) : json(nullptr);
    report.result(std::move(payload));
    report.emit();
    return result.order ? 0 : 1;
}

int run_factor(std::uint64_t n, int attempts, std::optional<std::uint64_t> force_a,
               std::optional<std::uint64_t> force_x, std::optional<int> control_bits,
               const CommonOpts& opts) {
    ReportBuilder report("factor", opts);
    json inputs{{"n", n}, {"attempts", attempts}};
    if (force_a) {
        inputs["force_a"] = *force_a;
    }
    if (force_x) {
        inputs["force_x"] = *force_x;
    }
    if (control_bits) {
        inputs["control_bits"] = *control_bits;
    }
    report.inputs(std::move(inputs));

    ShorOptions options;
    options.max_attempts = attempts;
    options.forced_base = force_a;
    options.order_options.forced_measurement = force_x;
    options.order_options.control_bits = control_bits;
    RandomSource rng(opts.seed);
    const ShorOutcome outcome = shor_factor(n, rng, options);

    json trace = json::array();
    for (const ShorAttempt& attempt : outcome.trace) {
        json row{{"a", attempt.base}, {"status", attempt.status}};
        row["x"] = attempt.measured ? json(*attempt.measured) : json(nullptr);
        row["r"] = attempt.order ? json(*attempt.order) : json(nullptr);
        trace.push_back(std::move(row));
    }
    report.result({{"factors", {outcome.factors.first, outcome.factors.second}},
                   {"trace", std::move(trace)}});
    report.emit();
    return 0;
}

int run_teleport(const std::string& state_path, const std::string& label_bits,
                 const CommonOpts& opts) {
    ReportBuilder report("teleport", opts);
    if (label_bits != "00" && label_bits != "11") {
        throw std::invalid_argument("supported Bell labels are 00 and 11");
    }
    const BellLabel label{label_bits[0] - '0', label_bits[1] - '0'};
    RandomSource rng(opts.seed);
    const StateVector psi = state_path.empty() ? random_pure_qubit(rng)
                                               : parse_state_dump(read_file(state_path));
    report.inputs({{"state", state_path.empty() ? json("random") : json(state_path)},
                   {"label", label_bits}});

    const TeleportRecord first = teleport(psi, label, rng);
    json result{{"input_state", state_lines(psi)},
                {"m1", first.m1},
                {"m2", first.m2},
                {"bob_state_before", state_lines(first.bob_state_before)},
                {"bob_state_after", state_lines(first.bob_state_after)},
                {"fidelity", first.fidelity_to_input}};
    if (opts.shots > 1) {
        json histogram{{"00", 0}, {"01", 0}, {"10", 0}, {"11", 0}};
        histogram[std::to_string(first.m1) + std::to_string(first.m2)] = 1;
        for (int shot = 1; shot < opts.shots; ++shot) {
            const TeleportRecord next = teleport(psi, label, rng);
            const std::string key = std::to_string(next.m1) + std::to_string(next.m2);
            histogram[key] = histogram.value(key, 0) + 1;
        }
        result["samples"] = std::move(histogram);
    }
    report.result(std::move(result));
    report.emit();
    return 0;
}

int run_superdense(const std::string& bits, const CommonOpts& opts) {
    ReportBuilder report("superdense", opts);
    if (bits.size() != 2 || (bits[0] != '0' && bits[0] != '1') ||
        (bits[1] != '0' && bits[1] != '1')) {
        throw std::invalid_argument("--bits takes a two-character bit string");
    }
    report.inputs({{"bits", bits}});
    const StateVector coded = superdense_encode(bits[0] - '0', bits[1] - '0',
                                                bell_state({0, 0}));
    const auto [b1, b2] = superdense_decode(coded);
    report.result({{"encoded_state", state_lines(coded)},
                   {"decoded", std::to_string(b1) + std::to_string(b2)}});
    report.emit();
    return 0;
}

int run_bloch(const std::string& state_path, const CommonOpts& opts) {
    ReportBuilder report("bloch", opts);
    report.inputs({{"state", state_path}});
    const StateVector psi = parse_state_dump(read_file(state_path));
    const DensityMatrix rho = to_density(psi);
    const BlochVector r = bloch_vector(rho);
    report.result({{"rx", r.rx}, {"ry", r.ry}, {"rz", r.rz}, {"purity", purity(rho)}});
    report.emit();
    return 0;
}

int run_rev(const std::string& circuit_path, const std::string& input_bits,
            const CommonOpts& opts) {
    ReportBuilder report("rev-run", opts);
    report.inputs({{"circuit", circuit_path}, {"input", input_bits}});
    const ReversibleCircuit circuit = ReversibleCircuit::parse(read_file(circuit_path));
    std::vector<Bit> input;
    for (char c : input_bits) {
        if (c != '0' && c != '1') {
            throw std::invalid_argument("--input takes a bit string");
        }
        input.push_back(c - '0');
    }
    const std::vector<Bit> output = run_reversible(circuit, input);
    std::string rendered;
    for (Bit b : output) {
        rendered += static_cast<char>('0' + b);
    }
    report.result({{"output", rendered}});
    report.emit();
    return 0;
}

int run_decohered(double gamma, const std::string& oracle_path, const CommonOpts& opts) {
    ReportBuilder report("deutsch-decohered", opts);
    report.inputs({{"gamma", gamma}, {"oracle", oracle_path}});
    const TruthTable f = load_truth_table(oracle_path);
    const DeutschProbabilities probs = deutsch_decohered(f, Overlap{gamma});
    report.result({{"P0", probs.p0},
                   {"P1", probs.p1},
                   {"classification_reliable", std::abs(probs.p0 - probs.p1) > 1e-9}});
    report.emit();
    return 0;
}

int run_order_classical(std::uint64_t a, std::uint64_t modulus, const CommonOpts& opts) {
    ReportBuilder report("order-classical", opts);
    report.inputs({{"a", a}, {"n", modulus}});
    report.result({{"order", order_bruteforce(a, modulus)}});
    report.emit();
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    if (const char* cap = std::getenv("QSIM_MAX_QUBITS")) {
        try {
            limits().max_state_qubits = std::stoi(cap);
        } catch (const std::exception&) {
            std::cerr << "error: QSIM_MAX_QUBITS must be an integer\n";
            return 2;
        }
    }

    CLI::App app{"statevector quantum-circuit simulator"};
    app.require_subcommand(1);
    CommonOpts opts;

    std::string oracle_path;
    std::string state_path;
    std::string circuit_path;
    std::string input_bits;
    std::string label_bits = "00";
    std::string dense_bits;
    std::uint64_t a_value = 0;
    std::uint64_t n_value = 0;
    std::uint64_t phase_den = 1;
    std::optional<std::uint64_t> phase_num;
    std::optional<std::uint64_t> maybe_a;
    std::optional<std::uint64_t> force_x;
    std::optional<std::uint64_t> force_a;
    std::optional<std::uint64_t> solutions;
    std::optional<int> control_bits;
    std::vector<std::uint64_t> targets;
    int n_qubits = 0;
    int bits = 4;
    int attempts = 64;
    double gamma = 1.0;

    CLI::App* deutsch_cmd = app.add_subcommand("deutsch", "one-call constant/balanced test");
    deutsch_cmd->add_option("--oracle", oracle_path, "truth table file")->required();
    add_common(deutsch_cmd, opts);

    CLI::App* dj_cmd = app.add_subcommand("dj", "Deutsch-Jozsa classification");
    dj_cmd->add_option("--oracle", oracle_path, "truth table file")->required();
    add_common(dj_cmd, opts);

    CLI::App* bv_cmd = app.add_subcommand("bv", "Bernstein-Vazirani hidden integer");
    bv_cmd->add_option("--a", a_value, "hidden integer")->required();
    bv_cmd->add_option("--n", n_qubits, "register size")->required();
    add_common(bv_cmd, opts);

    CLI::App* grover_cmd = app.add_subcommand("grover", "amplitude-amplification search");
    grover_cmd->add_option("--n", n_qubits, "index register size (with --target)");
    grover_cmd->add_option("--oracle", oracle_path, "truth table file");
    grover_cmd->add_option("--target", targets, "solution index (repeatable)");
    grover_cmd->add_option("--solutions", solutions, "number of solutions M");
    add_common(grover_cmd, opts);

    CLI::App* pe_cmd = app.add_subcommand("phase-est", "phase estimation");
    pe_cmd->add_option("--bits", bits, "control register size")->required();
    pe_cmd->add_option("--phase-num", phase_num, "phase fraction numerator");
    pe_cmd->add_option("--phase-den", phase_den, "phase fraction denominator");
    pe_cmd->add_option("--a", maybe_a, "modular multiplier (with --modulus)");
    pe_cmd->add_option("--modulus", n_value, "modulus for the multiply gate");
    pe_cmd->add_option("--force-x", force_x, "project the readout onto this outcome");
    add_common(pe_cmd, opts);

    CLI::App* order_cmd = app.add_subcommand("order", "quantum order finding");
    order_cmd->add_option("--a", a_value, "base")->required();
    order_cmd->add_option("--n", n_value, "modulus")->required();
    order_cmd->add_option("--attempts", attempts, "max attempts");
    order_cmd->add_option("--control-bits", control_bits, "control register override");
    order_cmd->add_option("--force-x", force_x, "project the readout onto this outcome");
    add_common(order_cmd, opts);

    CLI::App* factor_cmd = app.add_subcommand("factor", "Shor factorization");
    factor_cmd->add_option("--n", n_value, "number to factor")->required();
    factor_cmd->add_option("--attempts", attempts, "max attempts");
    factor_cmd->add_option("--force-a", force_a, "fix the first random base");
    factor_cmd->add_option("--force-x", force_x, "project the readout onto this outcome");
    factor_cmd->add_option("--control-bits", control_bits, "control register override");
    add_common(factor_cmd, opts);

    CLI::App* teleport_cmd = app.add_subcommand("teleport", "one-qubit teleportation");
    teleport_cmd->add_option("--state", state_path, "input state dump (default: random)");
    teleport_cmd->add_option("--label", label_bits, "Bell channel label (00 or 11)");
    add_common(teleport_cmd, opts);

    CLI::App* dense_cmd = app.add_subcommand("superdense", "two bits over one qubit");
    dense_cmd->add_option("--bits", dense_bits, "two bits to send")->required();
    add_common(dense_cmd, opts);

    CLI::App* bloch_cmd = app.add_subcommand("bloch", "Bloch vector of a one-qubit state");
    bloch_cmd->add_option("--state", state_path, "state dump file")->required();
    add_common(bloch_cmd, opts);

    CLI::App* rev_cmd = app.add_subcommand("rev-run", "run a reversible bit circuit");
    rev_cmd->add_option("--circuit", circuit_path, "circuit file")->required();
    rev_cmd->add_option("--input", input_bits, "input bit string")->required();
    add_common(rev_cmd, opts);

    CLI::App* deco_cmd = app.add_subcommand("deutsch-decohered",
                                            "Deutsch circuit with dephasing");
    deco_cmd->add_option("--gamma", gamma, "environment overlap in [0, 1]")->required();
    deco_cmd->add_option("--oracle", oracle_path, "truth table file")->required();
    add_common(deco_cmd, opts);

    CLI::App* oc_cmd = app.add_subcommand("order-classical", "brute-force order");
    oc_cmd->add_option("--a", a_value, "base")->required();
    oc_cmd->add_option("--n", n_value, "modulus")->required();
    add_common(oc_cmd, opts);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (deutsch_cmd->parsed()) {
            return run_deutsch(oracle_path, false, opts);
        }
        if (dj_cmd->parsed()) {
            return run_deutsch(oracle_path, true, opts);
        }
        if (bv_cmd->parsed()) {
            return run_bv(a_value, n_qubits, opts);
        }
        if (grover_cmd->parsed()) {
            return run_grover(n_qubits, oracle_path, targets, solutions, opts);
        }
        if (pe_cmd->parsed()) {
            return run_phase_est(phase_num, phase_den, maybe_a, n_value, bits, force_x, opts);
        }
        if (order_cmd->parsed()) {
            return run_order(a_value, n_value, attempts, control_bits, force_x, opts);
        }
        if (factor_cmd->parsed()) {
            return run_factor(n_value, attempts, force_a, force_x, control_bits, opts);
        }
        if (teleport_cmd->parsed()) {
            return run_teleport(state_path, label_bits, opts);
        }
        if (dense_cmd->parsed()) {
            return run_superdense(dense_bits, opts);
        }
        if (bloch_cmd->parsed()) {
            return run_bloch(state_path, opts);
        }
        if (rev_cmd->parsed()) {
            return run_rev(circuit_path, input_bits, opts);
        }
        if (deco_cmd->parsed()) {
            return run_decohered(gamma, oracle_path, opts);
        }
        if (oc_cmd->parsed()) {
            return run_order_classical(a_value, n_value, opts);
        }
    } catch (const PrimeInputError& e) {
        std::cerr << "factoring failed: " << e.what() << "\n";
        return 1;
    } catch (const PrimePowerInputError& e) {
        std::cerr << "factoring failed: " << e.what() << "\n";
        return 1;
    } catch (const AttemptsExhaustedError& e) {
        std::cerr << "algorithm failed: " << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "failure: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
