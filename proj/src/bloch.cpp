#include "qsim/bloch.hpp"

#include <cmath>
#include <stdexcept>

namespace qsim {

const std::array<std::array<Complex, 4>, 3> kPauli = {{
    {Complex{0, 0}, Complex{1, 0}, Complex{1, 0}, Complex{0, 0}},   // sigma_x
    {Complex{0, 0}, Complex{0, -1}, Complex{0, 1}, Complex{0, 0}},  // sigma_y
    {Complex{1, 0}, Complex{0, 0}, Complex{0, 0}, Complex{-1, 0}},  // sigma_z
}};

double BlochVector::length() const {
    return std::sqrt(rx * rx + ry * ry + rz * rz);
}

BlochVector bloch_vector(const DensityMatrix& rho) {
    if (rho.n_qubits() != 1) {
        throw std::invalid_argument("Bloch vector is defined for a single qubit");
    }
    std::array<double, 3> r{};
    for (int i = 0; i < 3; ++i) {
        Complex trace{0.0, 0.0};
        for (int a = 0; a < 2; ++a) {
            for (int b = 0; b < 2; ++b) {
                trace += rho.entry(a, b) * kPauli[i][b * 2 + a];
            }
        }
        r[i] = trace.real();
    }
    return BlochVector{r[0], r[1], r[2]};
}

DensityMatrix density_from_bloch(const BlochVector& r) {
    if (r.length() > 1.0 + 1e-10) {
        throw std::invalid_argument("Bloch vector must lie in the unit ball");
    }
    std::vector<Complex> entries = {
        Complex{(1.0 + r.rz) / 2.0, 0.0},
        Complex{r.rx / 2.0, -r.ry / 2.0},
        Complex{r.rx / 2.0, r.ry / 2.0},
        Complex{(1.0 - r.rz) / 2.0, 0.0},
    };
    return DensityMatrix(1, std::move(entries));
}

} // namespace qsim
