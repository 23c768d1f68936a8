#include "pronylab/measure.hpp"

#include "pronylab/error.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numbers>
#include <random>

namespace pronylab {

FrequencySet::FrequencySet(int d, int n, BallNorm p) : d_(d), n_(n), p_(p) {
    if (d < 1 || n < 0)
        fail(errc::invalid_argument, "frequency set needs d >= 1, N >= 0");
    std::vector<int> k(d, -n);
    const long long n2 = static_cast<long long>(n) * n;
    while (true) {
        if (p == BallNorm::linf) {
            members_.push_back(k);
        } else {
            long long s = 0;
            for (int c : k)
                s += static_cast<long long>(c) * c;
            if (s <= n2)
                members_.push_back(k);
        }
        int axis = d - 1;
        while (axis >= 0 && k[axis] == n)
            k[axis--] = -n;
        if (axis < 0)
            break;
        ++k[axis];
    }
}

DiscreteMeasure::DiscreteMeasure(NodeSet nodes, std::vector<cx> weights)
    : nodes_(std::move(nodes)), weights_(std::move(weights)) {
    if (nodes_.size() != weights_.size())
        fail(errc::invalid_argument, "measure: node/weight count mismatch");
    if (nodes_.empty())
        fail(errc::invalid_argument, "measure: needs at least one atom");
    for (const cx& w : weights_)
        if (!(std::abs(w) > 0.0))
            fail(errc::invalid_argument, "measure: zero weight");
}

MomentVector::MomentVector(FrequencySet freqs, std::vector<cx> values)
    : freqs_(std::make_shared<FrequencySet>(std::move(freqs))), values_(std::move(values)) {
    if (freqs_->size() != values_.size())
        fail(errc::invalid_argument, "moment vector: value count does not match frequency set");
}

namespace {

// Pairwise (tree) summation keeps roundoff bounded for larger node counts.
cx pairwise_sum(const std::vector<cx>& terms, std::size_t lo, std::size_t hi) {
    if (hi - lo <= 4) {
        cx s = 0.0;
        for (std::size_t i = lo; i < hi; ++i)
            s += terms[i];
        return s;
    }
    const std::size_t mid = lo + (hi - lo) / 2;
    return pairwise_sum(terms, lo, mid) + pairwise_sum(terms, mid, hi);
}

} // namespace

MomentVector moment_map(const DiscreteMeasure& mu, const FrequencySet& ball) {
    if (mu.dim() != ball.dim())
        fail(errc::dimension_mismatch, "moment_map: measure and ball dimension differ");
    const std::size_t m = mu.size();
    std::vector<cx> values(ball.size());
    std::vector<cx> terms(m);
    for (std::size_t ki = 0; ki < ball.size(); ++ki) {
        const std::vector<int>& k = ball.members()[ki];
        for (std::size_t j = 0; j < m; ++j) {
            double dot = 0.0;
            for (int i = 0; i < mu.dim(); ++i)
                dot += k[i] * mu.nodes()[j][i];
            dot -= std::floor(dot); // phase argument reduced mod 1
            terms[j] = mu.weights()[j] *
                       std::polar(1.0, -2.0 * std::numbers::pi * dot);
        }
        values[ki] = pairwise_sum(terms, 0, m);
    }
    return MomentVector(ball, std::move(values));
}

double moment_l2_distance(const MomentVector& a, const MomentVector& b) {
    if (!(a.freqs() == b.freqs()))
        fail(errc::invalid_argument, "moment distance: frequency sets differ");
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        s += std::norm(a.values()[i] - b.values()[i]);
    return std::sqrt(s);
}

double moment_linf_distance(const MomentVector& a, const MomentVector& b) {
    if (!(a.freqs() == b.freqs()))
        fail(errc::invalid_argument, "moment distance: frequency sets differ");
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        s = std::max(s, std::abs(a.values()[i] - b.values()[i]));
    return s;
}

const char* to_string(AdmissibilityViolation v) {
    switch (v) {
    case AdmissibilityViolation::none: return "none";
    case AdmissibilityViolation::min_weight: return "min-weight";
    case AdmissibilityViolation::mass: return "mass";
    case AdmissibilityViolation::separation: return "separation";
    }
    return "?";
}

AdmissibilityReport check_admissible(const DiscreteMeasure& mu, const AdmissibilityClass& cls) {
    if (mu.dim() != cls.d)
        fail(errc::dimension_mismatch, "check_admissible: dimension mismatch");
    for (const cx& w : mu.weights())
        if (std::abs(w) < cls.c_min * (1.0 - 1e-12))
            return {false, AdmissibilityViolation::min_weight};
    cx mass = 0.0;
    for (const cx& w : mu.weights())
        mass += w;
    if (std::abs(mass - 1.0) > mass_epsilon)
        return {false, AdmissibilityViolation::mass};
    if (mu.size() >= 2 && separation(mu.nodes()) < cls.q * (1.0 - 1e-12))
        return {false, AdmissibilityViolation::separation};
    return {true, AdmissibilityViolation::none};
}

namespace {

double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double uniform_sym(std::mt19937_64& rng) { return 2.0 * uniform01(rng) - 1.0; }

std::vector<TorusPoint> draw_nodes(std::mt19937_64& rng, int d, std::size_t m, double sep_min,
                                   int& budget) {
    while (budget > 0) {
        --budget;
        std::vector<TorusPoint> pts;
        pts.reserve(m);
        bool ok = true;
        for (std::size_t j = 0; j < m && ok; ++j) {
            std::vector<double> c(d);
            for (int i = 0; i < d; ++i)
                c[i] = uniform01(rng);
            TorusPoint p(std::move(c));
            for (const TorusPoint& prev : pts)
                if (torus_distance(prev, p) < sep_min) {
                    ok = false;
                    break;
                }
            if (ok)
                pts.push_back(std::move(p));
        }
        if (ok)
            return pts;
    }
    fail(errc::budget_exhausted, "random_admissible_pair: node sampling budget exhausted");
}

std::vector<cx> draw_weights(std::mt19937_64& rng, std::size_t m, double c_min, int& budget) {
    while (budget > 0) {
        --budget;
        std::vector<cx> w(m);
        cx sum = 0.0;
        for (std::size_t j = 0; j < m; ++j) {
            const double r = 1.0 + 0.8 * uniform01(rng);
            const double phi = (std::numbers::pi / 6.0) * uniform_sym(rng);
            w[j] = std::polar(r, phi);
            sum += w[j];
        }
        if (std::abs(sum) < 1e-6)
            continue;
        bool ok = true;
        for (cx& v : w) {
            v /= sum;
            if (std::abs(v) < c_min)
                ok = false;
        }
        if (ok)
            return w;
    }
    fail(errc::budget_exhausted, "random_admissible_pair: weight sampling budget exhausted");
}

} // namespace

std::pair<DiscreteMeasure, DiscreteMeasure>
random_admissible_pair(const AdmissibilityClass& cls, std::size_t m, std::uint64_t seed,
                       double delta_target) {
    if (m == 0)
        fail(errc::invalid_argument, "random_admissible_pair: needs at least one node");
    if (!(cls.q > 0.0) || !(cls.c_min > 0.0))
        fail(errc::invalid_argument, "random_admissible_pair: class needs q > 0, c_min > 0");
    if (cls.c_min * static_cast<double>(m) > 1.0)
        fail(errc::invalid_argument, "random_admissible_pair: c_min too large for node count");
    if (delta_target < 0.0)
        fail(errc::invalid_argument, "random_admissible_pair: negative jitter");

    std::mt19937_64 rng(seed * 0x9e3779b97f4a7c15ULL + 0x2545f4914f6cdd1dULL);
    int budget = 100000;

    // Jitter moves each node by at most delta*q per coordinate, so drawing
    // the base set at separation q(1 + 2 delta) keeps both measures in class.
    // When that inflated separation is not clearly feasible (q near the torus
    // diameter, or a crowded circle), draw at q and let the jitter loop below
    // reject until the companion is admissible too.
    double sep_gen = cls.q * (1.0 + 2.0 * delta_target);
    const bool crowded = (cls.d == 1) ? (static_cast<double>(m) * sep_gen > 0.9)
                                      : (sep_gen > 0.45);
    if (crowded)
        sep_gen = cls.q;
    std::vector<TorusPoint> nodes = draw_nodes(rng, cls.d, m, sep_gen, budget);
    std::vector<cx> weights = draw_weights(rng, m, cls.c_min, budget);
    DiscreteMeasure mu1(NodeSet(nodes), weights);

    if (delta_target == 0.0)
        return {mu1, mu1};

    while (budget > 0) {
        --budget;
        std::vector<TorusPoint> jittered;
        jittered.reserve(m);
        for (const TorusPoint& p : nodes) {
            std::vector<double> c(cls.d);
            for (int i = 0; i < cls.d; ++i)
                c[i] = p[i] + delta_target * cls.q * uniform_sym(rng);
            jittered.emplace_back(std::move(c));
        }
        std::vector<cx> w2(m);
        cx sum = 0.0;
        for (std::size_t j = 0; j < m; ++j) {
            w2[j] = weights[j] + 0.5 * delta_target * cls.c_min *
                                     cx(uniform_sym(rng), uniform_sym(rng));
            sum += w2[j];
        }
        if (std::abs(sum) < 1e-6)
            continue;
        for (cx& v : w2)
            v /= sum;
        bool ok = true;
        for (const cx& v : w2)
            if (std::abs(v) < cls.c_min)
                ok = false;
        if (!ok)
            continue;
        DiscreteMeasure mu2(NodeSet(std::move(jittered)), std::move(w2));
        if (m >= 2 && separation(mu2.nodes()) < cls.q)
            continue;
        return {std::move(mu1), std::move(mu2)};
    }
    fail(errc::budget_exhausted, "random_admissible_pair: jitter budget exhausted");
}

} // namespace pronylab
