#include "pronylab/wasserstein.hpp"

#include "pronylab/error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace pronylab {

namespace {
constexpr double pi = std::numbers::pi;
constexpr double atom_epsilon = 1e-13;

void require_probability_like(const DiscreteMeasure& mu, const char* who) {
    cx mass = 0.0;
    for (const cx& w : mu.weights())
        mass += w;
    if (std::abs(mass - 1.0) > mass_epsilon)
        fail(errc::invalid_argument, std::string(who) + ": measure is not probability-like");
}

} // namespace

std::vector<std::pair<TorusPoint, cx>> signed_difference(const DiscreteMeasure& mu1,
                                                         const DiscreteMeasure& mu2) {
    if (mu1.dim() != mu2.dim())
        fail(errc::dimension_mismatch, "signed_difference: dimension mismatch");
    std::vector<std::pair<TorusPoint, cx>> atoms;
    auto add = [&](const TorusPoint& t, cx w) {
        for (auto& [node, weight] : atoms)
            if (torus_distance(node, t) <= node_epsilon) {
                weight += w;
                return;
            }
        atoms.emplace_back(t, w);
    };
    for (std::size_t j = 0; j < mu1.size(); ++j)
        add(mu1.nodes()[j], mu1.weights()[j]);
    for (std::size_t j = 0; j < mu2.size(); ++j)
        add(mu2.nodes()[j], -mu2.weights()[j]);
    std::erase_if(atoms, [](const auto& a) { return std::abs(a.second) < atom_epsilon; });
    return atoms;
}

double total_variation(const std::vector<std::pair<TorusPoint, cx>>& atoms) {
    double s = 0.0;
    for (const auto& [node, w] : atoms)
        s += std::abs(w);
    return s;
}

namespace {

// Kantorovich-Rubinstein value of the real signed measure Re(e^{-i theta} diff).
TransportResult kr_at_angle(const std::vector<std::pair<TorusPoint, cx>>& atoms, double theta,
                            double* value) {
    const cx rot = std::polar(1.0, -theta);
    TransportProblem prob;
    for (const auto& [node, w] : atoms) {
        const double nu = (rot * w).real();
        if (nu > atom_epsilon) {
            prob.sources.push_back(node);
            prob.source_mass.push_back(nu);
        } else if (nu < -atom_epsilon) {
            prob.sinks.push_back(node);
            prob.sink_mass.push_back(-nu);
        }
    }
    if (prob.sources.empty() || prob.sinks.empty()) {
        *value = 0.0;
        return {};
    }
    // The two sides balance to roundoff because the difference has zero mass.
    double ta = 0.0, tb = 0.0;
    for (double v : prob.source_mass)
        ta += v;
    for (double v : prob.sink_mass)
        tb += v;
    const double t = std::min(ta, tb);
    if (std::fabs(ta - tb) > 1e-9 * std::max(1.0, t))
        fail(errc::numerical, "w1: rotated parts unexpectedly unbalanced");
    TransportResult r = min_cost_transport(prob);
    *value = r.cost;
    return r;
}

} // namespace

W1Result w1_complex(const DiscreteMeasure& mu1, const DiscreteMeasure& mu2, int angles) {
    if (mu1.dim() != mu2.dim())
        fail(errc::dimension_mismatch, "w1_complex: dimension mismatch");
    require_probability_like(mu1, "w1_complex");
    require_probability_like(mu2, "w1_complex");
    if (angles < 4)
        fail(errc::invalid_argument, "w1_complex: need at least 4 angles");

    W1Result out;
    const auto atoms = signed_difference(mu1, mu2);
    if (atoms.empty())
        return out;

    out.grid_profile.reserve(angles);
    double coarse_best = -1.0, coarse_theta = 0.0;
    for (int i = 0; i < angles; ++i) {
        const double theta = pi * i / angles;
        double val = 0.0;
        kr_at_angle(atoms, theta, &val);
        out.grid_profile.emplace_back(theta, val);
        if (val > coarse_best) {
            coarse_best = val;
            coarse_theta = theta;
        }
    }

    // Golden-section refinement one grid step around the incumbent.
    const double step = pi / angles;
    double lo = coarse_theta - step, hi = coarse_theta + step;
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
    double f1, f2;
    kr_at_angle(atoms, x1, &f1);
    kr_at_angle(atoms, x2, &f2);
    while (hi - lo > 1e-9 * std::max(1.0, std::fabs(coarse_theta)) && hi - lo > 1e-12) {
        if (f1 < f2) {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + gr * (hi - lo);
            kr_at_angle(atoms, x2, &f2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - gr * (hi - lo);
            kr_at_angle(atoms, x1, &f1);
        }
    }
    double refined_theta = 0.5 * (lo + hi);
    double refined = 0.0;
    TransportResult refined_plan = kr_at_angle(atoms, refined_theta, &refined);

    if (refined >= coarse_best) {
        out.value = refined;
        out.argmax_angle = refined_theta;
        out.plan = std::move(refined_plan);
    } else {
        out.value = coarse_best;
        out.argmax_angle = coarse_theta;
        double v = 0.0;
        out.plan = kr_at_angle(atoms, coarse_theta, &v);
    }
    if (out.argmax_angle < 0.0)
        out.argmax_angle += pi;
    out.gap = out.value - coarse_best;
    return out;
}

double w1_upper_bound_tv(const DiscreteMeasure& mu1, const DiscreteMeasure& mu2) {
    require_probability_like(mu1, "w1_upper_bound_tv");
    require_probability_like(mu2, "w1_upper_bound_tv");
    return total_variation(signed_difference(mu1, mu2)) / std::sqrt(2.0);
}

double w1_upper_bound_matched(const DiscreteMeasure& mu1, const DiscreteMeasure& mu2,
                              const std::vector<std::size_t>& eta) {
    if (mu1.size() != mu2.size() || eta.size() != mu1.size())
        fail(errc::invalid_argument, "w1_upper_bound_matched: eta must pair equal node counts");
    std::vector<char> hit(mu2.size(), 0);
    for (std::size_t j : eta) {
        if (j >= mu2.size() || hit[j])
            fail(errc::invalid_argument, "w1_upper_bound_matched: eta is not a bijection");
        hit[j] = 1;
    }
    double node_term = 0.0, weight_term = 0.0;
    for (std::size_t i = 0; i < mu1.size(); ++i) {
        const std::size_t j = eta[i];
        const double dist = torus_distance(mu1.nodes()[i], mu2.nodes()[j]);
        const double c2 = std::norm(mu1.weights()[i]) + std::norm(mu2.weights()[j]);
        node_term += c2 * dist * dist;
        weight_term += std::norm(mu1.weights()[i] - mu2.weights()[j]);
    }
    const double root_m = std::sqrt(static_cast<double>(mu1.size()));
    return root_m * (std::sqrt(node_term) + std::sqrt(weight_term) / std::sqrt(2.0));
}

} // namespace pronylab
