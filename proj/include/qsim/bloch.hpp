#pragma once

#include <array>

#include "qsim/density_matrix.hpp"

namespace qsim {

/// Point in the unit ball parameterizing a single-qubit density matrix via
/// rho = (I + r . sigma) / 2. Pure states sit on the surface, |r| = 1.
struct BlochVector {
    double rx = 0.0;
    double ry = 0.0;
    double rz = 0.0;

    double length() const;
};

/// The Pauli matrices sigma_x, sigma_y, sigma_z as 2x2 row-major grids.
extern const std::array<std::array<Complex, 4>, 3> kPauli;

/// r_i = Tr(rho sigma_i). Requires a single-qubit density matrix.
BlochVector bloch_vector(const DensityMatrix& rho);

/// Inverse map rho = (I + r . sigma) / 2; requires |r| <= 1 + 1e-10.
DensityMatrix density_from_bloch(const BlochVector& r);

} // namespace qsim
