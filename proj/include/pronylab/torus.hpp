#ifndef PRONYLAB_TORUS_HPP
#define PRONYLAB_TORUS_HPP

#include <cstddef>
#include <span>
#include <vector>

namespace pronylab {

/// Tolerance below which two nodes are treated as colliding.
inline constexpr double node_epsilon = 1e-12;

/// A point on the d-torus, coordinates canonicalized into [0,1).
class TorusPoint {
public:
    TorusPoint() = default;
    explicit TorusPoint(std::vector<double> coords);

    int dim() const noexcept { return static_cast<int>(coords_.size()); }
    double operator[](std::size_t i) const { return coords_[i]; }
    std::span<const double> coords() const noexcept { return coords_; }

    bool operator==(const TorusPoint&) const = default;
    /// Lexicographic order on the canonical coordinates.
    bool operator<(const TorusPoint& o) const { return coords_ < o.coords_; }

private:
    std::vector<double> coords_;
};

/// Reduce a real number into [0,1).
double wrap_unit(double x);

/// Distance of x to the nearest integer, in [0, 1/2].
double wrap_abs(double x);

/// Wrapped max-norm of a coordinate difference vector: min over integer
/// shifts of the infinity norm (absolute value for d = 1). Value in [0, 1/2].
double torus_norm(std::span<const double> diff);

/// Convenience: wrapped distance between two points of equal dimension.
double torus_distance(const TorusPoint& a, const TorusPoint& b);

/// Per-coordinate wrapped absolute difference, each entry in [0, 1/2].
std::vector<double> componentwise_torus_diff(const TorusPoint& a, const TorusPoint& b);

/// An ordered list of pairwise distinct torus points of equal dimension.
class NodeSet {
public:
    NodeSet() = default;
    explicit NodeSet(std::vector<TorusPoint> points);

    std::size_t size() const noexcept { return points_.size(); }
    bool empty() const noexcept { return points_.empty(); }
    int dim() const noexcept { return points_.empty() ? 0 : points_[0].dim(); }
    const TorusPoint& operator[](std::size_t i) const { return points_[i]; }
    const std::vector<TorusPoint>& points() const noexcept { return points_; }

private:
    std::vector<TorusPoint> points_;
};

/// Minimal pairwise wrapped distance. Requires at least two nodes.
double separation(const NodeSet& y);

/// Exact bottleneck matching value between equal-cardinality node sets:
/// min over permutations of the max matched wrapped distance.
double matching_distance(const NodeSet& y, const NodeSet& yp);

/// Same, but also returns an optimal assignment perm with perm[i] the index
/// in yp matched to node i of y.
double matching_distance(const NodeSet& y, const NodeSet& yp, std::vector<std::size_t>& perm);

namespace detail {
/// Brute-force oracle over all permutations; |Y| <= 8.
double matching_distance_brute_force(const NodeSet& y, const NodeSet& yp);
} // namespace detail

} // namespace pronylab

#endif
