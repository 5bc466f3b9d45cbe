#pragma once

#include "qsim/density_matrix.hpp"
#include "qsim/truth_table.hpp"

namespace qsim {

/// Real overlap of the two environment/apparatus pointer states, in [0, 1].
/// 1 means no information leaked (full coherence), 0 means perfectly
/// distinguishable pointer states (complete dephasing).
struct Overlap {
    double gamma = 1.0;
};

/// Exponential overlap decay e^(-lambda t); the decoherence time is
/// 1/lambda.
struct DecayModel {
    double lambda;

    double decoherence_time() const { return 1.0 / lambda; }
};

/// Qubit state after entangling with a measuring apparatus whose pointer
/// states overlap by <m0|m1> = apparatus_overlap:
///   ((|alpha|^2,          alpha conj(beta) conj(<m0|m1>)),
///    (conj(alpha) beta <m0|m1>,   |beta|^2))
/// Requires |alpha|^2 + |beta|^2 = 1 and |apparatus_overlap| <= 1.
DensityMatrix apparatus_reduced_density(Complex alpha, Complex beta, Complex apparatus_overlap);

/// Dephasing channel on one qubit: diagonal unchanged, off-diagonal entries
/// scaled by gamma.
DensityMatrix decohere_qubit(const DensityMatrix& rho, Overlap gamma);

struct DeutschProbabilities {
    double p0;
    double p1;
};

/// Deutsch circuit with a single dephasing interaction on the control qubit
/// between its two Hadamard gates, evolved as a density matrix. Returns the
/// control-qubit measurement probabilities
///   P0 = (1 + (-1)^(f(0)+f(1)) gamma) / 2,  P1 = 1 - P0.
DeutschProbabilities deutsch_decohered(const TruthTable& f, Overlap gamma);

/// gamma(t) = e^(-lambda t), t >= 0.
Overlap overlap_at(const DecayModel& model, double t);

} // namespace qsim
