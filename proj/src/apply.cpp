#include <cmath>
#include <numbers>
#include <stdexcept>

#include "kernels.hpp"
#include "qsim/gate_matrix.hpp"
#include "qsim/state_vector.hpp"

namespace qsim {

namespace {

// Bit bookkeeping for applying a k-qubit gate to chosen targets of an
// n-qubit register. Qubit q occupies bit position n-1-q of the amplitude
// index, and the j-th listed target supplies bit k-1-j of the gate-local
// sub-index. When the targets are consecutive ascending qubits the
// sub-index is a plain shifted field of the full index.
struct TargetMap {
    int n = 0;
    int k = 0;
    std::uint64_t target_mask = 0;
    std::vector<int> pos; // bit position per listed target
    bool contiguous = false;
    int shift = 0;
};

TargetMap make_target_map(int n_qubits, std::span<const int> targets) {
    TargetMap m;
    m.n = n_qubits;
    m.k = static_cast<int>(targets.size());
    m.pos.resize(m.k);
    for (int j = 0; j < m.k; ++j) {
        m.pos[j] = n_qubits - 1 - targets[j];
        m.target_mask |= std::uint64_t{1} << m.pos[j];
    }
    m.contiguous = true;
    for (int j = 0; j < m.k; ++j) {
        if (m.pos[j] != m.pos[0] - j) {
            m.contiguous = false;
            break;
        }
    }
    if (m.contiguous) {
        m.shift = m.pos[m.k - 1];
    }
    return m;
}

inline std::uint64_t extract_sub(std::uint64_t i, const TargetMap& m) {
    if (m.contiguous) {
        return (i >> m.shift) & ((std::uint64_t{1} << m.k) - 1);
    }
    std::uint64_t g = 0;
    for (int j = 0; j < m.k; ++j) {
        g |= ((i >> m.pos[j]) & 1) << (m.k - 1 - j);
    }
    return g;
}

inline std::uint64_t deposit_sub(std::uint64_t g, const TargetMap& m) {
    if (m.contiguous) {
        return g << m.shift;
    }
    std::uint64_t s = 0;
    for (int j = 0; j < m.k; ++j) {
        s |= ((g >> (m.k - 1 - j)) & 1) << m.pos[j];
    }
    return s;
}

void apply_diagonal_kernel(std::vector<Complex>& amps, const TargetMap& m,
                           const std::vector<Complex>& diag, std::uint64_t cmask) {
    const std::uint64_t dim = std::uint64_t{1} << m.n;
    if (cmask == 0) {
        for (std::uint64_t i = 0; i < dim; ++i) {
            amps[i] *= diag[extract_sub(i, m)];
        }
        return;
    }
    // Visit only the stratum where every control bit is set.
    const std::uint64_t free_mask = (dim - 1) & ~cmask;
    std::uint64_t sub = free_mask;
    while (true) {
        const std::uint64_t i = sub | cmask;
        amps[i] *= diag[extract_sub(i, m)];
        if (sub == 0) {
            break;
        }
        sub = (sub - 1) & free_mask;
    }
}

// In-place permutation of the target field, one stratum at a time. The
// permutation's cycles are decomposed once into offset walks; every stratum
// then rotates its amplitudes along those cycles without any scratch buffer.
void permute_in_place(std::vector<Complex>& amps, const TargetMap& m,
                      const std::vector<std::uint64_t>& perm, std::uint64_t cmask) {
    const std::uint64_t dim = std::uint64_t{1} << m.n;
    const std::uint64_t subdim = std::uint64_t{1} << m.k;
    std::vector<std::uint64_t> offs(subdim);
    for (std::uint64_t g = 0; g < subdim; ++g) {
        offs[g] = deposit_sub(g, m);
    }
    std::vector<std::vector<std::uint64_t>> cycles;
    std::vector<char> visited(subdim, 0);
    for (std::uint64_t start = 0; start < subdim; ++start) {
        if (visited[start] || perm[start] == start) {
            visited[start] = 1;
            continue;
        }
        std::vector<std::uint64_t> cycle{offs[start]};
        for (std::uint64_t x = perm[start]; x != start; x = perm[x]) {
            visited[x] = 1;
            cycle.push_back(offs[x]);
        }
        visited[start] = 1;
        cycles.push_back(std::move(cycle));
    }
    const std::uint64_t free_mask = (dim - 1) & ~(m.target_mask | cmask);
    std::uint64_t sub = 0;
    do {
        const std::uint64_t base = sub | cmask;
        for (const std::vector<std::uint64_t>& cycle : cycles) {
            Complex carry = amps[base | cycle[0]];
            for (std::size_t s = 1; s < cycle.size(); ++s) {
                std::swap(carry, amps[base | cycle[s]]);
            }
            amps[base | cycle[0]] = carry;
        }
        sub = (sub - free_mask) & free_mask;
    } while (sub != 0);
}

void apply_walsh_kernel(std::vector<Complex>& amps, const TargetMap& m, std::uint64_t cmask) {
    const std::uint64_t dim = std::uint64_t{1} << m.n;
    const double scale = 1.0 / std::numbers::sqrt2;
    for (int j = 0; j < m.k; ++j) {
        const std::uint64_t bit = std::uint64_t{1} << m.pos[j];
        if (cmask == 0) {
            for (std::uint64_t block = 0; block < dim; block += bit << 1) {
                for (std::uint64_t i = block; i < block + bit; ++i) {
                    const Complex lo = amps[i];
                    const Complex hi = amps[i | bit];
                    amps[i] = (lo + hi) * scale;
                    amps[i | bit] = (lo - hi) * scale;
                }
            }
        } else {
            for (std::uint64_t i = 0; i < dim; ++i) {
                if ((i & bit) == 0 && (i & cmask) == cmask) {
                    const Complex lo = amps[i];
                    const Complex hi = amps[i | bit];
                    amps[i] = (lo + hi) * scale;
                    amps[i | bit] = (lo - hi) * scale;
                }
            }
        }
    }
}

void apply_dense_kernel(std::vector<Complex>& amps, const TargetMap& m,
                        const std::vector<Complex>& u, std::uint64_t cmask) {
    const std::uint64_t dim = std::uint64_t{1} << m.n;
    const std::uint64_t subdim = std::uint64_t{1} << m.k;
    std::vector<std::uint64_t> offs(subdim);
    for (std::uint64_t g = 0; g < subdim; ++g) {
        offs[g] = deposit_sub(g, m);
    }
    const std::uint64_t free_mask = (dim - 1) & ~(m.target_mask | cmask);
    std::vector<Complex> in(subdim);
    // Walk every sub-mask of the free bits; each one fixes a stratum of
    // 2^k amplitudes the gate mixes.
    std::uint64_t stratum = free_mask;
    while (true) {
        const std::uint64_t base = stratum | cmask;
        for (std::uint64_t g = 0; g < subdim; ++g) {
            in[g] = amps[base | offs[g]];
        }
        for (std::uint64_t r = 0; r < subdim; ++r) {
            const Complex* row = &u[r * subdim];
            Complex acc{0.0, 0.0};
            for (std::uint64_t c = 0; c < subdim; ++c) {
                acc += row[c] * in[c];
            }
            amps[base | offs[r]] = acc;
        }
        if (stratum == 0) {
            break;
        }
        stratum = (stratum - 1) & free_mask;
    }
}

// Radix-2 transform of a power-of-two buffer:
//   out[y] = sum_x exp(sign 2 pi i x y / len) in[x] / sqrt(len)
// with the sign baked into the per-stage twiddle tables, which come straight
// from cos/sin so no accumulated products drift.
void fourier_pow2(std::vector<Complex>& buf,
                  const std::vector<std::vector<Complex>>& stage_twiddles) {
    const std::size_t n = buf.size();
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) {
            j ^= bit;
        }
        j ^= bit;
        if (i < j) {
            std::swap(buf[i], buf[j]);
        }
    }
    std::size_t stage = 0;
    for (std::size_t len = 2; len <= n; len <<= 1, ++stage) {
        const std::vector<Complex>& tw = stage_twiddles[stage];
        for (std::size_t block = 0; block < n; block += len) {
            for (std::size_t j = 0; j < len / 2; ++j) {
                const Complex lo = buf[block + j];
                const Complex hi = buf[block + j + len / 2] * tw[j];
                buf[block + j] = lo + hi;
                buf[block + j + len / 2] = lo - hi;
            }
        }
    }
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    for (Complex& a : buf) {
        a *= scale;
    }
}

void apply_fourier_kernel(std::vector<Complex>& amps, const TargetMap& m, bool inverse,
                          std::uint64_t cmask) {
    const std::uint64_t dim = std::uint64_t{1} << m.n;
    const std::uint64_t subdim = std::uint64_t{1} << m.k;
    const int sign = inverse ? -1 : 1;
    std::vector<std::vector<Complex>> stage_twiddles;
    for (std::size_t len = 2; len <= subdim; len <<= 1) {
        std::vector<Complex> tw(len / 2);
        for (std::size_t j = 0; j < len / 2; ++j) {
            const double angle =
                sign * 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(len);
            tw[j] = Complex{std::cos(angle), std::sin(angle)};
        }
        stage_twiddles.push_back(std::move(tw));
    }
    std::vector<std::uint64_t> offs(subdim);
    for (std::uint64_t g = 0; g < subdim; ++g) {
        offs[g] = deposit_sub(g, m);
    }
    const std::uint64_t free_mask = (dim - 1) & ~(m.target_mask | cmask);
    std::vector<Complex> buf(subdim);
    std::uint64_t stratum = free_mask;
    while (true) {
        const std::uint64_t base = stratum | cmask;
        for (std::uint64_t g = 0; g < subdim; ++g) {
            buf[g] = amps[base | offs[g]];
        }
        fourier_pow2(buf, stage_twiddles);
        for (std::uint64_t g = 0; g < subdim; ++g) {
            amps[base | offs[g]] = buf[g];
        }
        if (stratum == 0) {
            break;
        }
        stratum = (stratum - 1) & free_mask;
    }
}

// Splits a (possibly controlled) gate into its control mask and the
// structural payload carrier.
struct PeeledGate {
    const GateMatrix* effective;
    std::uint64_t cmask = 0;
    TargetMap map;
};

PeeledGate peel(int n_qubits, const GateMatrix& gate, std::span<const int> targets) {
    PeeledGate p;
    if (gate.structure() == GateStructure::Controlled) {
        const int nc = gate.n_controls();
        for (int j = 0; j < nc; ++j) {
            p.cmask |= std::uint64_t{1} << (n_qubits - 1 - targets[j]);
        }
        p.effective = gate.base();
        p.map = make_target_map(n_qubits, targets.subspan(nc));
    } else {
        p.effective = &gate;
        p.map = make_target_map(n_qubits, targets);
    }
    return p;
}

void dispatch_in_place(std::vector<Complex>& amps, const PeeledGate& p) {
    switch (p.effective->structure()) {
    case GateStructure::Diagonal:
        apply_diagonal_kernel(amps, p.map, p.effective->diagonal_entries(), p.cmask);
        return;
    case GateStructure::Permutation:
        permute_in_place(amps, p.map, p.effective->permutation_map(), p.cmask);
        return;
    case GateStructure::Hadamard:
        apply_walsh_kernel(amps, p.map, p.cmask);
        return;
    case GateStructure::Fourier:
        apply_fourier_kernel(amps, p.map, p.effective->fourier_inverse(), p.cmask);
        return;
    case GateStructure::General:
        apply_dense_kernel(amps, p.map, p.effective->dense_entries(), p.cmask);
        return;
    case GateStructure::Controlled:
        break; // flattened at construction, peeled above
    }
    throw std::logic_error("unreachable gate structure");
}

} // namespace

namespace detail {

void validate_targets(int n_qubits, int arity, std::span<const int> targets) {
    if (static_cast<int>(targets.size()) != arity) {
        throw std::invalid_argument("target count must equal gate arity");
    }
    std::uint64_t seen = 0;
    for (int t : targets) {
        if (t < 0 || t >= n_qubits) {
            throw std::invalid_argument("target qubit out of range");
        }
        const std::uint64_t bit = std::uint64_t{1} << t;
        if (seen & bit) {
            throw std::invalid_argument("duplicate target qubit");
        }
        seen |= bit;
    }
}

void apply_gate_raw(std::vector<Complex>& amps, int n_qubits, const GateMatrix& gate,
                    std::span<const int> targets) {
    dispatch_in_place(amps, peel(n_qubits, gate, targets));
}

} // namespace detail

StateVector apply_gate(const StateVector& state, const GateMatrix& gate,
                       std::span<const int> targets) {
    detail::validate_targets(state.n_qubits(), gate.arity(), targets);
    std::vector<Complex> amps(state.amplitudes());
    dispatch_in_place(amps, peel(state.n_qubits(), gate, targets));
    if (gate.call_counter()) {
        ++*gate.call_counter();
    }
    return StateVector(StateVector::AssumeNormalized{}, state.n_qubits(), std::move(amps));
}

StateVector apply_gate(const StateVector& state, const GateMatrix& gate,
                       std::initializer_list<int> targets) {
    return apply_gate(state, gate, std::span<const int>(targets.begin(), targets.size()));
}

} // namespace qsim
