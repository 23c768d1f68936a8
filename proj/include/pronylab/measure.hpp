#ifndef PRONYLAB_MEASURE_HPP
#define PRONYLAB_MEASURE_HPP

#include "pronylab/numerics.hpp"
#include "pronylab/torus.hpp"

#include <complex>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace pronylab {

/// Norm selector for frequency balls: the l2 ball or the full grid (l-inf).
enum class BallNorm { l2, linf };

/// The integer frequencies k with ||k||_p <= N, enumerated lexicographically.
class FrequencySet {
public:
    FrequencySet(int d, int n, BallNorm p);

    int dim() const noexcept { return d_; }
    int radius() const noexcept { return n_; }
    BallNorm norm() const noexcept { return p_; }
    std::size_t size() const noexcept { return members_.size(); }
    const std::vector<std::vector<int>>& members() const noexcept { return members_; }

    bool operator==(const FrequencySet& o) const {
        return d_ == o.d_ && n_ == o.n_ && p_ == o.p_;
    }

private:
    int d_, n_;
    BallNorm p_;
    std::vector<std::vector<int>> members_;
};

/// Discrete complex measure with unit total mass ("probability-like").
class DiscreteMeasure {
public:
    DiscreteMeasure() = default;
    DiscreteMeasure(NodeSet nodes, std::vector<cx> weights);

    int dim() const noexcept { return nodes_.dim(); }
    std::size_t size() const noexcept { return nodes_.size(); }
    const NodeSet& nodes() const noexcept { return nodes_; }
    const std::vector<cx>& weights() const noexcept { return weights_; }

private:
    NodeSet nodes_;
    std::vector<cx> weights_;
};

/// Trigonometric moments of a measure over a frequency set.
class MomentVector {
public:
    MomentVector() = default;
    MomentVector(FrequencySet freqs, std::vector<cx> values);

    const FrequencySet& freqs() const noexcept { return *freqs_; }
    const std::vector<cx>& values() const noexcept { return values_; }
    std::size_t size() const noexcept { return values_.size(); }

private:
    // shared_ptr keeps copies cheap; the set itself is immutable
    std::shared_ptr<const FrequencySet> freqs_;
    std::vector<cx> values_;
};

inline constexpr double mass_epsilon = 1e-10;

/// Forward moment map: values(k) = sum_j c_j exp(-2 pi i k.t_j) for k in the
/// ball. Pairwise summation over nodes; k.t reduced mod 1 before the
/// exponential.
MomentVector moment_map(const DiscreteMeasure& mu, const FrequencySet& ball);

/// Euclidean norm of the elementwise difference; frequency sets must agree.
double moment_l2_distance(const MomentVector& a, const MomentVector& b);

/// Max modulus of the elementwise difference.
double moment_linf_distance(const MomentVector& a, const MomentVector& b);

struct AdmissibilityClass {
    double c_min;
    double q; ///< minimal separation
    int d;
    int n;
    BallNorm p = BallNorm::l2;
};

enum class AdmissibilityViolation { none, min_weight, mass, separation };

struct AdmissibilityReport {
    bool ok;
    AdmissibilityViolation failing = AdmissibilityViolation::none;
};

const char* to_string(AdmissibilityViolation v);

/// Checks |c| >= c_min, sum c = 1, sep >= q (in that order).
AdmissibilityReport check_admissible(const DiscreteMeasure& mu, const AdmissibilityClass& cls);

/// Deterministic generator of an admissible measure and a jittered companion.
/// Both outputs lie in the class; node jitter is per-coordinate uniform with
/// magnitude <= delta_target*q, weight jitter is rescaled to unit mass.
/// delta_target == 0 returns two identical measures.
std::pair<DiscreteMeasure, DiscreteMeasure>
random_admissible_pair(const AdmissibilityClass& cls, std::size_t m, std::uint64_t seed,
                       double delta_target);

} // namespace pronylab

#endif
