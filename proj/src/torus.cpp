#include "pronylab/torus.hpp"

#include "pronylab/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace pronylab {

double wrap_unit(double x) {
    double y = x - std::floor(x);
    if (y >= 1.0) // floor rounding at negative multiples of 1
        y -= 1.0;
    return y;
}

double wrap_abs(double x) {
    double y = std::fabs(x - std::round(x));
    return std::min(y, 0.5);
}

TorusPoint::TorusPoint(std::vector<double> coords) : coords_(std::move(coords)) {
    if (coords_.empty())
        fail(errc::invalid_argument, "torus point needs dimension >= 1");
    for (double& c : coords_)
        c = wrap_unit(c);
}

double torus_norm(std::span<const double> diff) {
    double m = 0.0;
    for (double x : diff)
        m = std::max(m, wrap_abs(x));
    return m;
}

double torus_distance(const TorusPoint& a, const TorusPoint& b) {
    if (a.dim() != b.dim())
        fail(errc::dimension_mismatch, "torus_distance: dimension mismatch");
    double m = 0.0;
    for (int i = 0; i < a.dim(); ++i)
        m = std::max(m, wrap_abs(a[i] - b[i]));
    return m;
}

std::vector<double> componentwise_torus_diff(const TorusPoint& a, const TorusPoint& b) {
    if (a.dim() != b.dim())
        fail(errc::dimension_mismatch, "componentwise_torus_diff: dimension mismatch");
    std::vector<double> out(a.dim());
    for (int i = 0; i < a.dim(); ++i)
        out[i] = wrap_abs(a[i] - b[i]);
    return out;
}

NodeSet::NodeSet(std::vector<TorusPoint> points) : points_(std::move(points)) {
    for (std::size_t i = 0; i < points_.size(); ++i) {
        if (points_[i].dim() != points_[0].dim())
            fail(errc::dimension_mismatch, "node set mixes dimensions");
        for (std::size_t j = 0; j < i; ++j)
            if (torus_distance(points_[i], points_[j]) <= node_epsilon)
                fail(errc::invalid_argument, "node set contains colliding nodes");
    }
}

double separation(const NodeSet& y) {
    if (y.size() < 2)
        fail(errc::invalid_argument, "separation undefined for fewer than two nodes");
    double s = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < y.size(); ++i)
        for (std::size_t j = i + 1; j < y.size(); ++j)
            s = std::min(s, torus_distance(y[i], y[j]));
    return s;
}

namespace {

// Perfect matching feasibility when only pairs with dist <= thr are allowed.
// Kuhn's augmenting paths; fills match_ji (yp index -> y index or npos).
bool feasible(const std::vector<std::vector<double>>& dist, double thr,
              std::vector<std::size_t>& match_ji) {
    const std::size_t n = dist.size();
    match_ji.assign(n, static_cast<std::size_t>(-1));
    std::vector<char> used;

    auto augment = [&](auto&& self, std::size_t i) -> bool {
        for (std::size_t j = 0; j < n; ++j) {
            if (dist[i][j] <= thr && !used[j]) {
                used[j] = 1;
                if (match_ji[j] == static_cast<std::size_t>(-1) || self(self, match_ji[j])) {
                    match_ji[j] = i;
                    return true;
                }
            }
        }
        return false;
    };

    for (std::size_t i = 0; i < n; ++i) {
        used.assign(n, 0);
        if (!augment(augment, i))
            return false;
    }
    return true;
}

} // namespace

double matching_distance(const NodeSet& y, const NodeSet& yp, std::vector<std::size_t>& perm) {
    if (y.size() != yp.size())
        fail(errc::invalid_argument, "matching_distance: node sets of different cardinality");
    const std::size_t n = y.size();
    perm.assign(n, 0);
    if (n == 0)
        return 0.0;
    if (y.dim() != yp.dim())
        fail(errc::dimension_mismatch, "matching_distance: dimension mismatch");

    std::vector<std::vector<double>> dist(n, std::vector<double>(n));
    std::vector<double> cand;
    cand.reserve(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            cand.push_back(dist[i][j] = torus_distance(y[i], yp[j]));
    std::sort(cand.begin(), cand.end());
    cand.erase(std::unique(cand.begin(), cand.end()), cand.end());

    // Binary search the smallest feasible threshold among candidate distances.
    std::size_t lo = 0, hi = cand.size() - 1;
    std::vector<std::size_t> match_ji;
    while (lo < hi) {
        std::size_t mid = (lo + hi) / 2;
        if (feasible(dist, cand[mid], match_ji))
            hi = mid;
        else
            lo = mid + 1;
    }
    feasible(dist, cand[lo], match_ji);
    for (std::size_t j = 0; j < n; ++j)
        perm[match_ji[j]] = j;
    return cand[lo];
}

double matching_distance(const NodeSet& y, const NodeSet& yp) {
    std::vector<std::size_t> perm;
    return matching_distance(y, yp, perm);
}

namespace detail {

double matching_distance_brute_force(const NodeSet& y, const NodeSet& yp) {
    if (y.size() != yp.size())
        fail(errc::invalid_argument, "matching_distance: node sets of different cardinality");
    const std::size_t n = y.size();
    if (n == 0)
        return 0.0;
    if (n > 8)
        fail(errc::invalid_argument, "brute-force matching limited to 8 nodes");
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    double best = std::numeric_limits<double>::infinity();
    do {
        double worst = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            worst = std::max(worst, torus_distance(y[i], yp[idx[i]]));
        best = std::min(best, worst);
    } while (std::next_permutation(idx.begin(), idx.end()));
    return best;
}

} // namespace detail

} // namespace pronylab
