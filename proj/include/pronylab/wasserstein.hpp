#ifndef PRONYLAB_WASSERSTEIN_HPP
#define PRONYLAB_WASSERSTEIN_HPP

#include "pronylab/measure.hpp"
#include "pronylab/numerics.hpp"

#include <cstddef>
#include <utility>
#include <vector>

namespace pronylab {

struct W1Result {
    double value = 0.0;        ///< certified lower bound of the sup
    double argmax_angle = 0.0; ///< in [0, pi)
    double gap = 0.0;          ///< refined max minus coarse grid max
    std::vector<std::pair<double, double>> grid_profile; ///< (angle, value)
    TransportResult plan;                                ///< at the argmax angle
};

/// 1-Wasserstein distance between complex probability-like measures:
/// sup over 1-Lipschitz f of |int f d(mu1 - mu2)|. The modulus is reduced
/// exactly to a family of real problems: for real f,
/// Re(e^{-i theta} int f d(mu1-mu2)) = int f d nu_theta with
/// nu_theta = Re(e^{-i theta}(mu1-mu2)), and since the achievable set
/// {(Re, Im) of int f} is convex and symmetric, sup_f |int f| equals
/// max_theta sup_f int f d nu_theta. Each inner problem is a balanced
/// transport between the positive and negative parts of nu_theta
/// (the weights of mu1 - mu2 sum to zero). theta is scanned on a uniform
/// grid over [0, pi) and refined by golden section around the incumbent.
W1Result w1_complex(const DiscreteMeasure& mu1, const DiscreteMeasure& mu2, int angles = 360);

/// Aggregated atoms of mu1 - mu2 on the union support (same-node weights
/// merged; atoms below 1e-13 modulus dropped).
std::vector<std::pair<TorusPoint, cx>> signed_difference(const DiscreteMeasure& mu1,
                                                         const DiscreteMeasure& mu2);

/// Total variation of a discrete complex measure given as aggregated atoms.
double total_variation(const std::vector<std::pair<TorusPoint, cx>>& atoms);

/// W1 <= |mu1 - mu2|(T^d) / sqrt(2).
double w1_upper_bound_tv(const DiscreteMeasure& mu1, const DiscreteMeasure& mu2);

/// Matched-pair transport bound:
/// sqrt(|Y|) [ (sum ||c_t||^2 ||t - eta(t)||^2)^{1/2}
///             + (sum |c1 - c2|^2)^{1/2} / sqrt(2) ],
/// with ||c_t||^2 = |c1_t|^2 + |c2_{eta(t)}|^2. eta maps node index of mu1 to
/// node index of mu2 and must be a bijection.
double w1_upper_bound_matched(const DiscreteMeasure& mu1, const DiscreteMeasure& mu2,
                              const std::vector<std::size_t>& eta);

} // namespace pronylab

#endif
