#ifndef PRONYLAB_ESPRIT_HPP
#define PRONYLAB_ESPRIT_HPP

#include "pronylab/measure.hpp"
#include "pronylab/report.hpp"

#include <cstddef>

namespace pronylab {

struct EspritConfig {
    int n;             ///< moments k = -N..N
    std::size_t m;     ///< known node count
    int pencil_rows = 0; ///< P; 0 selects the default N+1

    int rows() const { return pencil_rows > 0 ? pencil_rows : n + 1; }
    int cols() const { return 2 * n + 2 - rows(); }
};

struct EspritResult {
    DiscreteMeasure measure;  ///< recovered nodes (ascending) and weights
    double singular_gap;      ///< sigma_M / sigma_{M+1} (inf if exhausted)
    bool subspace_reliable;   ///< gap >= 10
};

/// Univariate ESPRIT: Hankel trajectory matrix, top-M right singular
/// subspace, shift-invariance eigenvalues projected to the unit circle,
/// weights by full Vandermonde least squares.
EspritResult esprit_recover(const MomentVector& moments, const EspritConfig& cfg);

/// Stability check: recover from exact and perturbed moments of mu0 and
/// compare against 190 M / c_min * ||e||_inf. Premise: mu0 in the class
/// with sep >= 2/(N+1) and ||e||_inf < c_min/60.
TheoremReport check_esprit_stability(const DiscreteMeasure& mu0, const std::vector<cx>& e,
                                     const EspritConfig& cfg, double c_min);

} // namespace pronylab

#endif
