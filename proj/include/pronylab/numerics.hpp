#ifndef PRONYLAB_NUMERICS_HPP
#define PRONYLAB_NUMERICS_HPP

#include "pronylab/torus.hpp"

#include <complex>
#include <cstddef>
#include <vector>

namespace pronylab {

using cx = std::complex<double>;

/// Dense row-major complex matrix, just enough for the small kernels here.
class CMatrix {
public:
    CMatrix() = default;
    CMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    cx& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const cx& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    double frobenius_norm() const;
    /// A^H * A (cols x cols, Hermitian).
    CMatrix gram() const;
    std::vector<cx> apply(const std::vector<cx>& x) const;

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<cx> a_;
};

struct EigenResult {
    std::vector<double> values; ///< ascending
    CMatrix vectors;            ///< column k pairs with values[k], orthonormal
};

/// Cyclic Jacobi for a Hermitian matrix (entries are symmetrized on entry).
/// Order capped at 512; signals numerical failure on non-convergence.
EigenResult hermitian_eigen(const CMatrix& a);

/// Smallest singular value via the Gram matrix; tiny negative eigenvalues
/// from roundoff are clamped to zero. Requires rows >= cols, cols <= 64.
double sigma_min_via_gram(const CMatrix& a);

struct SvdResult {
    std::vector<double> singular_values; ///< descending
    CMatrix right_vectors;               ///< columns, orthonormal
};

/// Singular values and right singular vectors through the Gram eigenproblem.
SvdResult subspace_svd(const CMatrix& a);

/// Householder QR least squares min ||Ax - b||_2; signals ill-posed input
/// when a diagonal of R collapses relative to the column scale.
std::vector<cx> least_squares(const CMatrix& a, const std::vector<cx>& b);

/// Coefficients c of det(xI - A) = x^n + c[0] x^{n-1} + ... + c[n-1],
/// by the trace (Faddeev-LeVerrier) recursion. n <= 16.
std::vector<cx> characteristic_polynomial(const CMatrix& a);

/// All roots of the monic polynomial x^n + c[0] x^{n-1} + ... + c[n-1]
/// by Durand-Kerner iteration.
std::vector<cx> polynomial_roots(const std::vector<cx>& monic_coeffs);

/// Eigenvalues of a small general complex matrix (n <= 16), via the
/// characteristic polynomial.
std::vector<cx> small_eigenvalues(const CMatrix& a);

// --- discrete optimal transport ---------------------------------------------

struct TransportProblem {
    std::vector<TorusPoint> sources;
    std::vector<double> source_mass; ///< positive
    std::vector<TorusPoint> sinks;
    std::vector<double> sink_mass; ///< positive; totals balanced to 1e-10
};

struct TransportPlanEntry {
    std::size_t source, sink;
    double mass;
};

struct TransportResult {
    double cost = 0.0;
    std::vector<TransportPlanEntry> plan;
    std::vector<double> source_potential; ///< dual: -u_i
    std::vector<double> sink_potential;   ///< dual: v_j, with v_j - u_i <= c_ij
};

/// Exact min-cost transport between small discrete measures under the
/// wrapped torus metric. Successive shortest augmenting paths with node
/// potentials; at most 64 sources and sinks.
TransportResult min_cost_transport(const TransportProblem& p);

} // namespace pronylab

#endif
