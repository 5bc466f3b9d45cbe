#pragma once

#include <complex>
#include <cstdint>
#include <memory>
#include <vector>

#include "qsim/state_vector.hpp"

namespace qsim {

/// Storage/application strategy for a unitary. Structured forms keep O(2^k)
/// data instead of the 4^k dense grid and select specialized kernels in
/// apply_gate; the matrix semantics are identical either way.
enum class GateStructure {
    General,     // dense 2^k x 2^k entries
    Diagonal,    // diagonal entries only
    Permutation, // U|x> = |perm[x]>
    Controlled,  // identity unless the leading control qubits are all 1
    Hadamard,    // H tensored over every acted-on qubit
    Fourier,     // discrete Fourier transform over the acted-on register
};

/// Unitary operator on `arity` qubits. Immutable after construction; cheap to
/// copy (structured payloads are shared). Row/column indices follow the same
/// most-significant-first convention as StateVector, with the i-th listed
/// target supplying bit (arity-1-i).
class GateMatrix {
  public:
    /// Dense constructor; validates unitarity (U+U = I within 1e-10) for
    /// dimensions up to 256, and the dense-gate size cap always.
    static GateMatrix dense(int arity, std::vector<Complex> entries);

    /// diag entries must all have unit magnitude within 1e-10.
    static GateMatrix diagonal(int arity, std::vector<Complex> diag);

    /// perm must be a bijection on [0, 2^arity): U|x> = |perm[x]>.
    static GateMatrix permutation(int arity, std::vector<std::uint64_t> perm);

    static GateMatrix identity(int arity);

    /// H^(x)k: entry (row, col) = (-1)^(row.col) / sqrt(2^k) with the bitwise
    /// scalar product in the exponent.
    static GateMatrix walsh_hadamard(int arity);

    /// |X> -> sum_Y exp(+-2 pi i XY / 2^k) |Y> / sqrt(2^k); the inverse flag
    /// selects the conjugated exponent (equal to the adjoint).
    static GateMatrix fourier(int arity, bool inverse);

    int arity() const { return arity_; }
    std::uint64_t dim() const { return std::uint64_t{1} << arity_; }
    GateStructure structure() const { return structure_; }

    /// Matrix element, computed from the structured payload when present.
    Complex entry(std::uint64_t row, std::uint64_t col) const;

    /// Materializes the full 2^k x 2^k grid (row-major). Subject to the
    /// dense-gate size cap.
    std::vector<Complex> dense_entries() const;

    /// Conjugate transpose.
    GateMatrix adjoint() const;

    /// Entrywise conjugate (used for density-matrix evolution).
    GateMatrix conjugated() const;

    /// Structure-aware unitarity test; falls back to the dense U+U check.
    bool is_unitary(double tol = 1e-10) const;

    /// Attach a counter bumped once per apply_gate call on this gate (shared
    /// across copies). Used to account oracle queries.
    void attach_call_counter(std::shared_ptr<std::uint64_t> counter);
    const std::shared_ptr<std::uint64_t>& call_counter() const { return call_counter_; }

    // Structured payload accessors (empty/null unless the tag matches).
    const std::vector<Complex>& diagonal_entries() const { return diag_; }
    const std::vector<std::uint64_t>& permutation_map() const { return perm_; }
    int n_controls() const { return n_controls_; }
    const GateMatrix* base() const { return base_.get(); }
    bool fourier_inverse() const { return fourier_inverse_; }

    friend GateMatrix controlled(const GateMatrix& base, int n_controls);

  private:
    GateMatrix(int arity, GateStructure structure) : arity_(arity), structure_(structure) {}

    int arity_;
    GateStructure structure_;
    std::vector<Complex> entries_;      // General
    std::vector<Complex> diag_;         // Diagonal
    std::vector<std::uint64_t> perm_;   // Permutation
    int n_controls_ = 0;                // Controlled
    std::shared_ptr<const GateMatrix> base_;
    bool fourier_inverse_ = false;      // Fourier
    std::shared_ptr<std::uint64_t> call_counter_;
};

/// A x B on the concatenated registers (A acts on the leading qubits).
GateMatrix tensor_product(const GateMatrix& a, const GateMatrix& b);

/// Matrix product a.b. Permutation.Permutation and Diagonal.Diagonal keep
/// their structure; other combinations go through dense entries.
GateMatrix multiply(const GateMatrix& a, const GateMatrix& b);

/// Returns the unitary image of `state`; the input is left unmodified and the
/// norm is preserved. `targets` lists distinct qubit indices, one per gate
/// qubit, most significant first.
StateVector apply_gate(const StateVector& state, const GateMatrix& gate,
                       std::span<const int> targets);
StateVector apply_gate(const StateVector& state, const GateMatrix& gate,
                       std::initializer_list<int> targets);

} // namespace qsim
