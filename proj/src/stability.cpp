#include "pronylab/stability.hpp"

#include "pronylab/error.hpp"
#include "pronylab/localizer.hpp"
#include "pronylab/wasserstein.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

namespace pronylab {

namespace {
constexpr double pi = std::numbers::pi;
constexpr double inf = std::numeric_limits<double>::infinity();
} // namespace

MatchDecomposition match_and_decompose(const DiscreteMeasure& mu1, const DiscreteMeasure& mu2,
                                       double radius) {
    if (mu1.dim() != mu2.dim())
        fail(errc::dimension_mismatch, "match_and_decompose: dimension mismatch");
    const std::size_t n1 = mu1.size(), n2 = mu2.size();
    std::vector<int> cnt1(n1, 0), cnt2(n2, 0);
    std::vector<std::size_t> partner(n1, 0);
    for (std::size_t i = 0; i < n1; ++i)
        for (std::size_t j = 0; j < n2; ++j)
            if (torus_distance(mu1.nodes()[i], mu2.nodes()[j]) < radius) {
                ++cnt1[i];
                ++cnt2[j];
                partner[i] = j;
            }

    std::vector<std::size_t> order(n1);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return mu1.nodes()[a] < mu1.nodes()[b];
    });

    MatchDecomposition d;
    std::vector<char> matched2(n2, 0);
    for (std::size_t i : order) {
        if (cnt1[i] == 1 && cnt2[partner[i]] == 1) {
            d.y1.push_back(i);
            d.eta.push_back(partner[i]);
            matched2[partner[i]] = 1;
        } else {
            d.y3_from_mu1.push_back(i);
        }
    }
    for (std::size_t j = 0; j < n2; ++j)
        if (!matched2[j])
            d.y3_from_mu2.push_back(j);
    return d;
}

namespace {

struct LipschitzSetup {
    std::string name;
    int d = 1;
    BallNorm ball = BallNorm::l2;
    int n = 1;
    double sep_class = 0.0;
    double premise_bound = 0.0; ///< on ||mu1^ - mu2^||_2^2
    double match_radius = 0.0;
    std::optional<double> tight_radius;
    double node_coeff = 0.0;
    bool weighted_node = false; ///< weight pairs by |c1|^2 + |c2|^2 (else folded c_min^2)
    double weight_coeff = 0.0;
};

TheoremReport run_lipschitz(const DiscreteMeasure& mu1, const DiscreteMeasure& mu2,
                            const LipschitzSetup& s, double c_min) {
    TheoremReport rep;
    rep.theorem = s.name;
    if (mu1.dim() != s.d || mu2.dim() != s.d)
        fail(errc::dimension_mismatch, rep.theorem + ": dimension mismatch");

    const AdmissibilityClass cls{c_min, s.sep_class, s.d, s.n, s.ball};
    const bool class_ok = check_admissible(mu1, cls).ok && check_admissible(mu2, cls).ok;

    FrequencySet ball(s.d, s.n, s.ball);
    const MomentVector h1 = moment_map(mu1, ball);
    const MomentVector h2 = moment_map(mu2, ball);
    const double dist = moment_l2_distance(h1, h2);
    rep.lhs = dist * dist;
    const bool premise_moment = rep.lhs < s.premise_bound;
    rep.premise_holds = class_ok && premise_moment;
    rep.meta["moment_premise_bound"] = s.premise_bound;
    rep.meta["class_ok"] = class_ok ? 1.0 : 0.0;

    MatchDecomposition dec = match_and_decompose(mu1, mu2, s.match_radius);
    double node_term = 0.0, weight_term = 0.0, max_dist = 0.0;
    for (std::size_t k = 0; k < dec.y1.size(); ++k) {
        const std::size_t i = dec.y1[k], j = dec.eta[k];
        const double dd = torus_distance(mu1.nodes()[i], mu2.nodes()[j]);
        max_dist = std::max(max_dist, dd);
        const double w =
            s.weighted_node ? std::norm(mu1.weights()[i]) + std::norm(mu2.weights()[j]) : 1.0;
        node_term += w * dd * dd;
        weight_term += std::norm(mu1.weights()[i] - mu2.weights()[j]);
    }
    rep.rhs_terms.emplace_back("node_term", s.node_coeff * node_term);
    rep.rhs_terms.emplace_back("weight_term", s.weight_coeff * weight_term);

    bool structure_ok = dec.y3_size() == 0 && mu1.size() == mu2.size() &&
                        dec.y1.size() == mu1.size();
    rep.meta["y3"] = static_cast<double>(dec.y3_size());
    rep.meta["max_match_dist"] = max_dist;
    rep.meta["match_radius"] = s.match_radius;
    if (s.tight_radius) {
        rep.meta["tight_radius"] = *s.tight_radius;
        if (max_dist > *s.tight_radius + 1e-12)
            structure_ok = false;
    }
    rep.meta["structure_ok"] = structure_ok ? 1.0 : 0.0;
    finalize_inequality(rep, structure_ok);
    return rep;
}

} // namespace

TheoremReport check_univariate(const DiscreteMeasure& mu1, const DiscreteMeasure& mu2, int n,
                               double kappa, double c_min) {
    if (!(kappa > 1.0))
        fail(errc::invalid_argument, "check_univariate: kappa > 1 required");
    const double k2 = kappa * kappa;
    const double k3 = k2 * kappa, k5 = k2 * k3;
    const double nn = n;
    LipschitzSetup s;
    s.d = 1;
    s.ball = BallNorm::l2;
    s.n = n;
    s.sep_class = 2.0 * kappa / nn;
    s.premise_bound = (3.0 * k2 - 1.0) / (2.0 * k3) * nn * c_min * c_min;
    s.match_radius = kappa / nn;
    if (k2 >= 13.0 / 9.0) {
        s.name = "univariate";
        s.tight_radius = kappa / (2.0 * nn);
        s.node_coeff = 10.0 * (k2 - 1.0) / k5 * nn * nn * nn * c_min * c_min;
        s.weight_coeff = (k2 + 1.0) / (4.0 * k3) * nn;
    } else {
        s.name = "univariate-general";
        s.node_coeff = (15.0 / 4.0) * (k2 - 1.0) / k5 * nn * nn * nn * c_min * c_min;
        s.weight_coeff = 0.25 * (3.0 * k2 - 1.0) / (2.0 * k3) * nn;
    }
    TheoremReport rep = run_lipschitz(mu1, mu2, s, c_min);
    rep.meta["kappa"] = kappa;
    return rep;
}

TheoremReport check_diederichs_univariate(const DiscreteMeasure& mu1, const DiscreteMeasure& mu2,
                                          int n, double c_min) {
    const double np1 = n + 1.0;
    LipschitzSetup s;
    s.name = "diederichs1d";
    s.d = 1;
    s.ball = BallNorm::l2;
    s.n = n;
    s.sep_class = 3.0 / np1;
    s.premise_bound = (4.0 * np1 / 3.0) * c_min * c_min;
    s.match_radius = 3.0 / (2.0 * np1);
    s.node_coeff = 2.0 * pi * pi * np1 * np1 * np1 / 243.0;
    s.weighted_node = true;
    s.weight_coeff = np1 / 3.0;
    TheoremReport rep = run_lipschitz(mu1, mu2, s, c_min);
    // Weaker c_min form of the same estimate, kept as a diagnostic.
    rep.meta["cmin_node_coeff"] = 4.0 * pi * pi * np1 * np1 * np1 / 243.0 * c_min * c_min;
    return rep;
}

TheoremReport check_2d_l2(const DiscreteMeasure& mu1, const DiscreteMeasure& mu2, int n,
                          double c_min) {
    const double nn = n;
    LipschitzSetup s;
    s.name = "2d-l2";
    s.d = 2;
    s.ball = BallNorm::l2;
    s.n = n;
    s.sep_class = 2.0 * std::sqrt(2.0) / nn;
    s.premise_bound = 0.75 * nn * nn * c_min * c_min;
    s.match_radius = std::sqrt(2.0) / nn;
    s.tight_radius = 1.0 / (std::sqrt(2.0) * nn);
    s.node_coeff = 1.25 * nn * nn * nn * nn * c_min * c_min;
    s.weight_coeff = nn * nn / 16.0;
    return run_lipschitz(mu1, mu2, s, c_min);
}

TheoremReport check_2d_linf_diederichs(const DiscreteMeasure& mu1, const DiscreteMeasure& mu2,
                                       int n, double c_min) {
    const double np1 = n + 1.0;
    LipschitzSetup s;
    s.name = "2d-linf";
    s.d = 2;
    s.ball = BallNorm::linf;
    s.n = n;
    s.sep_class = 2.0 / np1;
    s.premise_bound = 1.25 * np1 * np1 * c_min * c_min;
    s.match_radius = 1.0 / np1;
    s.tight_radius = 1.0 / (2.0 * np1);
    s.node_coeff = (15.0 / 16.0) * np1 * np1 * np1 * np1;
    s.weighted_node = true;
    s.weight_coeff = 0.75 * np1 * np1;
    return run_lipschitz(mu1, mu2, s, c_min);
}

TheoremReport check_highd(const DiscreteMeasure& mu1, const DiscreteMeasure& mu2, int n, int d,
                          double c_min) {
    if (d < 2)
        fail(errc::invalid_argument, "check_highd: d >= 2 required");
    const double nn = n, dd = d;
    const double root_d = std::sqrt(dd);
    const double d_half = std::pow(dd, dd / 2.0);
    LipschitzSetup s;
    s.name = "highd";
    s.d = d;
    s.ball = BallNorm::l2;
    s.n = n;
    s.sep_class = 2.0 * root_d / nn;
    s.premise_bound = std::pow(1.5, dd - 1.0) * std::pow(nn, dd) * c_min * c_min / d_half;
    s.match_radius = root_d / nn;
    s.tight_radius = root_d / (2.0 * nn);
    s.node_coeff = 10.0 * std::pow(1.5, dd - 2.0) * (dd - 1.0) / (d_half * dd * dd) *
                   std::pow(nn, dd + 2.0) * c_min * c_min;
    s.weight_coeff = 2.0 / (std::pow(4.0, dd) * d_half) * std::pow(nn, dd);
    return run_lipschitz(mu1, mu2, s, c_min);
}

TheoremReport check_global_w1(const DiscreteMeasure& mu1, const DiscreteMeasure& mu2, int n,
                              int d, std::size_t m_cap, double c_min, int angles) {
    if (d < 2)
        fail(errc::invalid_argument, "check_global_w1: d >= 2 required");
    TheoremReport rep;
    rep.theorem = "global-w1";
    const double nn = n, dd = d;
    const AdmissibilityClass cls{c_min, 2.0 * std::sqrt(dd) / nn, d, n, BallNorm::l2};
    const bool class_ok = check_admissible(mu1, cls).ok && check_admissible(mu2, cls).ok &&
                          mu1.size() <= m_cap && mu2.size() <= m_cap;
    rep.premise_holds = class_ok;
    rep.meta["class_ok"] = class_ok ? 1.0 : 0.0;

    FrequencySet ball(d, n, BallNorm::l2);
    const double dist = moment_l2_distance(moment_map(mu1, ball), moment_map(mu2, ball));
    const double coeff = std::sqrt(3.0 * static_cast<double>(m_cap)) *
                         (1.0 + 3.0 / std::sqrt(2.0)) *
                         std::pow(2.0 / 3.0, dd / 2.0 - 0.5) * std::pow(dd, dd / 4.0) /
                         std::pow(nn, dd / 2.0);
    W1Result w1 = w1_complex(mu1, mu2, angles);

    rep.lhs = coeff * dist;
    rep.rhs_terms.emplace_back("w1", w1.value);
    rep.meta["moment_dist"] = dist;
    rep.meta["bound_simplified"] = 2.3 * dist;
    rep.meta["margin_simplified"] = 2.3 * dist - w1.value;
    rep.meta["w1_gap"] = w1.gap;
    rep.meta["w1_theta"] = w1.argmax_angle;
    const bool simplified_ok = 2.3 * dist - w1.value >= -report_slack(2.3 * dist, w1.value);
    finalize_inequality(rep, simplified_ok);
    return rep;
}

TheoremReport check_md_order(const DiscreteMeasure& mu1, const DiscreteMeasure& mu2, int n,
                             double c_min) {
    const double kappa = std::sqrt(5.0 / 3.0);
    const double k2 = 5.0 / 3.0, k3 = k2 * kappa;
    const double nn = n;
    TheoremReport rep;
    rep.theorem = "md-order";
    const AdmissibilityClass cls{c_min, 2.0 * kappa / nn, 1, n, BallNorm::l2};
    const bool class_ok = check_admissible(mu1, cls).ok && check_admissible(mu2, cls).ok;

    FrequencySet ball(1, n, BallNorm::l2);
    const MomentVector h1 = moment_map(mu1, ball);
    const MomentVector h2 = moment_map(mu2, ball);
    const double l2 = moment_l2_distance(h1, h2);
    const double linf = moment_linf_distance(h1, h2);
    const double premise_bound = (3.0 * k2 - 1.0) / (2.0 * k3) * nn * c_min * c_min;
    rep.premise_holds = class_ok && (l2 * l2 < premise_bound) && mu1.size() == mu2.size();
    rep.meta["class_ok"] = class_ok ? 1.0 : 0.0;
    rep.meta["moment_premise_bound"] = premise_bound;
    rep.meta["moment_l2_sq"] = l2 * l2;

    rep.lhs = std::sqrt(std::max(5.0 / (6.0 * c_min * c_min), 5.0)) *
              std::pow(5.0 / 3.0, 0.25) * linf / nn;
    double md = 0.0;
    if (mu1.size() == mu2.size())
        md = matching_distance(mu1.nodes(), mu2.nodes());
    rep.rhs_terms.emplace_back("matching_distance", md);
    finalize_inequality(rep, mu1.size() == mu2.size());
    return rep;
}

// --- clustered Vandermonde ----------------------------------------------------

ClusterDecomposition cluster_decompose(const NodeSet& y, int n, int d) {
    if (y.dim() != d)
        fail(errc::dimension_mismatch, "cluster_decompose: dimension mismatch");
    const double side = std::sqrt(static_cast<double>(d)) / n;
    const std::size_t m = y.size();

    // Connected components under distance <= side.
    std::vector<std::size_t> comp(m, static_cast<std::size_t>(-1));
    std::size_t n_comp = 0;
    for (std::size_t i = 0; i < m; ++i) {
        if (comp[i] != static_cast<std::size_t>(-1))
            continue;
        std::vector<std::size_t> stack{i};
        comp[i] = n_comp;
        while (!stack.empty()) {
            const std::size_t a = stack.back();
            stack.pop_back();
            for (std::size_t b = 0; b < m; ++b)
                if (comp[b] == static_cast<std::size_t>(-1) &&
                    torus_distance(y[a], y[b]) <= side) {
                    comp[b] = n_comp;
                    stack.push_back(b);
                }
        }
        ++n_comp;
    }

    ClusterDecomposition out;
    out.clusters.resize(n_comp);
    for (std::size_t i = 0; i < m; ++i)
        out.clusters[comp[i]].push_back(i);
    for (const auto& c : out.clusters)
        if (c.size() > 2)
            fail(errc::invalid_argument,
                 "cluster_decompose: cluster of three or more nodes within the cube side");

    out.delta = inf;
    for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = a + 1; b < m; ++b)
            if (comp[a] != comp[b])
                out.delta = std::min(out.delta, torus_distance(y[a], y[b]));
    out.tau = inf;
    for (const auto& c : out.clusters)
        if (c.size() == 2)
            out.tau = std::min(out.tau, torus_distance(y[c[0]], y[c[1]]));
    return out;
}

namespace {

// Dirichlet kernel sum_{k=-r..r} e^{2 pi i k x}.
double dirichlet(int r, double x) {
    const double s = std::sin(pi * x);
    if (std::fabs(s) < 1e-14)
        return 2.0 * r + 1.0;
    return std::sin((2.0 * r + 1.0) * pi * x) / s;
}

// Gram entry sum_{k in ball} e^{2 pi i k . delta}; even in every coordinate.
double ball_gram_entry(const std::vector<double>& delta, int n, int d, BallNorm norm) {
    if (norm == BallNorm::linf) {
        double prod = 1.0;
        for (int i = 0; i < d; ++i)
            prod *= dirichlet(n, delta[i]);
        return prod;
    }
    if (d == 1)
        return dirichlet(n, delta[0]);
    // Enumerate the tail coordinates of the l2 ball; Dirichlet on the first.
    const long long n2 = static_cast<long long>(n) * n;
    std::vector<int> k(d - 1, -n);
    double total = 0.0;
    while (true) {
        long long s = 0;
        for (int c : k)
            s += static_cast<long long>(c) * c;
        if (s <= n2) {
            double phase = 0.0;
            for (int i = 0; i < d - 1; ++i)
                phase += k[i] * delta[i + 1];
            // integer sqrt of n2 - s, guarded against float rounding
            int rr = static_cast<int>(std::sqrt(static_cast<double>(n2 - s)));
            while (static_cast<long long>(rr + 1) * (rr + 1) <= n2 - s)
                ++rr;
            while (static_cast<long long>(rr) * rr > n2 - s)
                --rr;
            total += std::cos(2.0 * pi * phase) * dirichlet(rr, delta[0]);
        }
        int axis = d - 2;
        while (axis >= 0 && k[axis] == n)
            k[axis--] = -n;
        if (axis < 0)
            break;
        ++k[axis];
    }
    return total;
}

} // namespace

double vandermonde_sigma_min(const NodeSet& y, int n, int d, BallNorm norm) {
    if (y.dim() != d)
        fail(errc::dimension_mismatch, "vandermonde_sigma_min: dimension mismatch");
    if (y.size() > 64)
        fail(errc::invalid_argument, "vandermonde_sigma_min: more than 64 nodes");
    const std::size_t m = y.size();
    CMatrix gram(m, m);
    for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = a; b < m; ++b) {
            std::vector<double> delta(d);
            for (int i = 0; i < d; ++i)
                delta[i] = wrap_abs(y[a][i] - y[b][i]);
            const double v = ball_gram_entry(delta, n, d, norm);
            gram(a, b) = v;
            gram(b, a) = v;
        }
    EigenResult e = hermitian_eigen(gram);
    return std::sqrt(std::max(0.0, e.values.front()));
}

TheoremReport check_pair_cluster_bound(const NodeSet& y, int n, int d) {
    if (d < 2)
        fail(errc::invalid_argument, "check_pair_cluster_bound: d >= 2 required");
    TheoremReport rep;
    rep.theorem = "vandermonde-pairs";
    const double nn = n, dd = d;
    const double q = std::sqrt(dd) / nn;

    ClusterDecomposition dec = cluster_decompose(y, n, d);
    const bool has_pair = std::isfinite(dec.tau);
    const bool premise = has_pair && dec.tau > 0.0 && dec.tau < q && dec.delta >= 2.0 * q;
    rep.premise_holds = premise;
    rep.meta["tau"] = dec.tau;
    rep.meta["delta"] = dec.delta;
    rep.meta["delta_required"] = 2.0 * q;

    const double sigma = vandermonde_sigma_min(y, n, d, BallNorm::l2);
    const double bound = has_pair
                             ? std::sqrt((dd - 0.5) / (3.0 * dd * dd)) * std::pow(1.5, dd / 2.0) *
                                   (nn * dec.tau) * std::pow(nn, dd / 2.0) * std::sqrt(2.0) /
                                   std::pow(dd, dd / 4.0)
                             : 0.0;
    rep.lhs = sigma;
    rep.rhs_terms.emplace_back("pair_cluster_bound", bound);
    rep.meta["ratio"] = bound > 0.0 ? sigma / bound : inf;

    // Nagel's full-grid variant for the comparison.
    const double nagel_required =
        has_pair ? (6.0 * dd / nn) * std::pow(2.0 / (dec.tau * nn), 1.0 / (dd + 1.0)) : inf;
    const bool nagel_premise = has_pair && dec.delta >= nagel_required;
    const double nagel_sigma = vandermonde_sigma_min(y, n, d, BallNorm::linf);
    const double nagel_bound =
        has_pair ? (nn * dec.tau) * std::pow(nn, dd / 2.0) * std::sqrt(2.0) /
                       (6.0 * std::pow(dd, dd / 4.0))
                 : 0.0;
    rep.meta["nagel_delta_required"] = nagel_required;
    rep.meta["nagel_premise"] = nagel_premise ? 1.0 : 0.0;
    rep.meta["nagel_sigma_min"] = nagel_sigma;
    rep.meta["nagel_bound"] = nagel_bound;
    rep.meta["nagel_margin"] = nagel_sigma - nagel_bound;

    finalize_inequality(rep);
    if (nagel_premise && nagel_sigma - nagel_bound < -report_slack(nagel_sigma, nagel_bound))
        rep.satisfied = false;
    return rep;
}

} // namespace pronylab
