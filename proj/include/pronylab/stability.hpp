#ifndef PRONYLAB_STABILITY_HPP
#define PRONYLAB_STABILITY_HPP

#include "pronylab/esprit.hpp"
#include "pronylab/measure.hpp"
#include "pronylab/report.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace pronylab {

/// Split of the joint node set of two measures: matched pairs within the
/// radius versus isolated nodes.
struct MatchDecomposition {
    std::vector<std::size_t> y1;  ///< indices into mu1 with a unique close partner
    std::vector<std::size_t> eta; ///< eta[i] pairs y1[i] with that index of mu2
    std::vector<std::size_t> y3_from_mu1;
    std::vector<std::size_t> y3_from_mu2;

    std::size_t y3_size() const { return y3_from_mu1.size() + y3_from_mu2.size(); }
};

/// Nodes of mu1 gain a partner in mu2 when exactly one node of the other set
/// lies strictly within the radius (and symmetrically); everything else
/// lands in Y3. Nodes are processed in sorted order.
MatchDecomposition match_and_decompose(const DiscreteMeasure& mu1, const DiscreteMeasure& mu2,
                                       double radius);

// --- Lipschitz-type certifications -------------------------------------------

TheoremReport check_univariate(const DiscreteMeasure& mu1, const DiscreteMeasure& mu2, int n,
                               double kappa, double c_min);

TheoremReport check_diederichs_univariate(const DiscreteMeasure& mu1, const DiscreteMeasure& mu2,
                                          int n, double c_min);

TheoremReport check_2d_l2(const DiscreteMeasure& mu1, const DiscreteMeasure& mu2, int n,
                          double c_min);

TheoremReport check_2d_linf_diederichs(const DiscreteMeasure& mu1, const DiscreteMeasure& mu2,
                                       int n, double c_min);

TheoremReport check_highd(const DiscreteMeasure& mu1, const DiscreteMeasure& mu2, int n, int d,
                          double c_min);

/// W1 against both the M-dependent constant and the simplified 2.3.
TheoremReport check_global_w1(const DiscreteMeasure& mu1, const DiscreteMeasure& mu2, int n,
                              int d, std::size_t m_cap, double c_min, int angles = 360);

/// Matching-distance order bound in the kappa = sqrt(5/3) class.
TheoremReport check_md_order(const DiscreteMeasure& mu1, const DiscreteMeasure& mu2, int n,
                             double c_min);

// --- clustered Vandermonde ----------------------------------------------------

struct ClusterDecomposition {
    std::vector<std::vector<std::size_t>> clusters; ///< singletons and pairs
    double delta;                                   ///< min inter-cluster distance (inf if one cluster)
    double tau;                                     ///< min intra-pair distance (inf if no pairs)
};

/// Clusters are connected components under wrapped max-norm distance
/// <= sqrt(d)/N; any component of three or more nodes is an error.
ClusterDecomposition cluster_decompose(const NodeSet& y, int n, int d);

/// Smallest singular value of (e^{-2 pi i t.k})_{k in ball, t in Y} through
/// the Gram matrix; the l2 ball Gram is accumulated with per-axis Dirichlet
/// kernels over shells.
double vandermonde_sigma_min(const NodeSet& y, int n, int d, BallNorm norm);

/// Pair-cluster lower bound, with Nagel's full-grid variant evaluated
/// alongside for the premise and constant comparison.
TheoremReport check_pair_cluster_bound(const NodeSet& y, int n, int d);

} // namespace pronylab

#endif
