#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include "qsim/gate_matrix.hpp"
#include "qsim/state_vector.hpp"

// Test-side helpers kept independent of the library's application kernels:
// dense matrices are stored as row-major vectors and applied by naive
// matrix-vector products, so they can serve as oracles for the strided paths.
namespace testutil {

using qsim::Complex;

inline bool near(double a, double b, double tol) {
    return std::abs(a - b) <= tol;
}

inline bool near(Complex a, Complex b, double tol) {
    return std::abs(a - b) <= tol;
}

inline bool states_equal(const qsim::StateVector& a, const qsim::StateVector& b, double tol) {
    if (a.n_qubits() != b.n_qubits()) {
        return false;
    }
    for (std::uint64_t i = 0; i < a.dim(); ++i) {
        if (!near(a[i], b[i], tol)) {
            return false;
        }
    }
    return true;
}

inline bool states_equal_up_to_phase(const qsim::StateVector& a, const qsim::StateVector& b,
                                     double tol) {
    return std::abs(qsim::fidelity(a, b) - 1.0) <= tol;
}

struct DenseMatrix {
    std::uint64_t dim = 0;
    std::vector<Complex> e;

    Complex& at(std::uint64_t r, std::uint64_t c) { return e[r * dim + c]; }
    Complex at(std::uint64_t r, std::uint64_t c) const { return e[r * dim + c]; }
};

inline DenseMatrix dense_of(const qsim::GateMatrix& g) {
    return DenseMatrix{g.dim(), g.dense_entries()};
}

inline DenseMatrix matmul(const DenseMatrix& a, const DenseMatrix& b) {
    DenseMatrix out{a.dim, std::vector<Complex>(a.dim * a.dim, Complex{0, 0})};
    for (std::uint64_t r = 0; r < a.dim; ++r) {
        for (std::uint64_t k = 0; k < a.dim; ++k) {
            for (std::uint64_t c = 0; c < a.dim; ++c) {
                out.at(r, c) += a.at(r, k) * b.at(k, c);
            }
        }
    }
    return out;
}

inline DenseMatrix kron(const DenseMatrix& a, const DenseMatrix& b) {
    const std::uint64_t dim = a.dim * b.dim;
    DenseMatrix out{dim, std::vector<Complex>(dim * dim, Complex{0, 0})};
    for (std::uint64_t ra = 0; ra < a.dim; ++ra) {
        for (std::uint64_t ca = 0; ca < a.dim; ++ca) {
            for (std::uint64_t rb = 0; rb < b.dim; ++rb) {
                for (std::uint64_t cb = 0; cb < b.dim; ++cb) {
                    out.at(ra * b.dim + rb, ca * b.dim + cb) = a.at(ra, ca) * b.at(rb, cb);
                }
            }
        }
    }
    return out;
}

inline bool matrices_equal(const DenseMatrix& a, const DenseMatrix& b, double tol) {
    if (a.dim != b.dim) {
        return false;
    }
    for (std::uint64_t i = 0; i < a.e.size(); ++i) {
        if (!near(a.e[i], b.e[i], tol)) {
            return false;
        }
    }
    return true;
}

// max_c |(U+U - I)_{rc}| over all entries.
inline double unitarity_defect(const DenseMatrix& u) {
    double worst = 0.0;
    for (std::uint64_t c1 = 0; c1 < u.dim; ++c1) {
        for (std::uint64_t c2 = 0; c2 < u.dim; ++c2) {
            Complex inner{0, 0};
            for (std::uint64_t r = 0; r < u.dim; ++r) {
                inner += std::conj(u.at(r, c1)) * u.at(r, c2);
            }
            const Complex want = c1 == c2 ? Complex{1, 0} : Complex{0, 0};
            worst = std::max(worst, std::abs(inner - want));
        }
    }
    return worst;
}

inline qsim::StateVector matvec(const DenseMatrix& u, const qsim::StateVector& x) {
    std::vector<Complex> out(u.dim, Complex{0, 0});
    for (std::uint64_t r = 0; r < u.dim; ++r) {
        for (std::uint64_t c = 0; c < u.dim; ++c) {
            out[r] += u.at(r, c) * x[c];
        }
    }
    return qsim::StateVector(x.n_qubits(), std::move(out));
}

// Deterministic pseudorandom state, normalized Gaussian amplitudes.
inline qsim::StateVector random_state(int n_qubits, std::uint64_t seed) {
    std::mt19937_64 gen(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    std::vector<Complex> amps(std::uint64_t{1} << n_qubits);
    double norm = 0.0;
    for (Complex& a : amps) {
        a = Complex{normal(gen), normal(gen)};
        norm += std::norm(a);
    }
    const double scale = 1.0 / std::sqrt(norm);
    for (Complex& a : amps) {
        a *= scale;
    }
    return qsim::StateVector(n_qubits, std::move(amps));
}

// Haar-ish random unitary via Gram-Schmidt on a random complex matrix.
inline qsim::GateMatrix random_unitary(int arity, std::uint64_t seed) {
    std::mt19937_64 gen(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    const std::uint64_t dim = std::uint64_t{1} << arity;
    std::vector<std::vector<Complex>> cols(dim, std::vector<Complex>(dim));
    for (auto& col : cols) {
        for (Complex& x : col) {
            x = Complex{normal(gen), normal(gen)};
        }
    }
    for (std::uint64_t c = 0; c < dim; ++c) {
        for (std::uint64_t prev = 0; prev < c; ++prev) {
            Complex proj{0, 0};
            for (std::uint64_t r = 0; r < dim; ++r) {
                proj += std::conj(cols[prev][r]) * cols[c][r];
            }
            for (std::uint64_t r = 0; r < dim; ++r) {
                cols[c][r] -= proj * cols[prev][r];
            }
        }
        double norm = 0.0;
        for (const Complex& x : cols[c]) {
            norm += std::norm(x);
        }
        const double scale = 1.0 / std::sqrt(norm);
        for (Complex& x : cols[c]) {
            x *= scale;
        }
    }
    std::vector<Complex> entries(dim * dim);
    for (std::uint64_t r = 0; r < dim; ++r) {
        for (std::uint64_t c = 0; c < dim; ++c) {
            entries[r * dim + c] = cols[c][r];
        }
    }
    return qsim::GateMatrix::dense(arity, std::move(entries));
}

} // namespace testutil
