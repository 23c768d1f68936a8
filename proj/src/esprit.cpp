#include "pronylab/esprit.hpp"

#include "pronylab/error.hpp"
#include "pronylab/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace pronylab {

namespace {
constexpr double pi = std::numbers::pi;
} // namespace

EspritResult esprit_recover(const MomentVector& moments, const EspritConfig& cfg) {
    const FrequencySet& fs = moments.freqs();
    if (fs.dim() != 1)
        fail(errc::invalid_argument, "esprit: univariate moments required");
    if (fs.radius() != cfg.n)
        fail(errc::invalid_argument, "esprit: moment range does not match config");
    const int n = cfg.n;
    const int p = cfg.rows();
    const int q = cfg.cols();
    if (p < 1 || q < 1)
        fail(errc::invalid_argument, "esprit: degenerate pencil shape");
    const std::size_t m = cfg.m;
    if (m < 1 || m > static_cast<std::size_t>(std::min(p, q)))
        fail(errc::invalid_argument, "esprit: node count exceeds pencil size");

    // moments enumerated k = -N..N, so h(k) = values[k + N]
    const std::vector<cx>& h = moments.values();
    if (h.size() != static_cast<std::size_t>(2 * n + 1))
        fail(errc::invalid_argument, "esprit: moment vector not contiguous");

    CMatrix hank(p, q);
    for (int r = 0; r < p; ++r)
        for (int c = 0; c < q; ++c)
            hank(r, c) = h[r + c];

    SvdResult svd = subspace_svd(hank);
    double gap = std::numeric_limits<double>::infinity();
    if (m < svd.singular_values.size() && svd.singular_values[m] > 0.0)
        gap = svd.singular_values[m - 1] / svd.singular_values[m];
    const bool reliable = gap >= 10.0;

    // Shift invariance on the signal space: W_up Psi = W_low.
    CMatrix w_up(q - 1, m), w_low(q - 1, m);
    for (int r = 0; r + 1 < q; ++r)
        for (std::size_t c = 0; c < m; ++c) {
            w_up(r, c) = svd.right_vectors(r, c);
            w_low(r, c) = svd.right_vectors(r + 1, c);
        }
    CMatrix psi(m, m);
    for (std::size_t c = 0; c < m; ++c) {
        std::vector<cx> rhs(q - 1);
        for (int r = 0; r + 1 < q; ++r)
            rhs[r] = w_low(r, c);
        std::vector<cx> col = least_squares(w_up, rhs);
        for (std::size_t r = 0; r < m; ++r)
            psi(r, c) = col[r];
    }

    std::vector<cx> lambda = small_eigenvalues(psi);
    std::vector<double> nodes1d(m);
    for (std::size_t j = 0; j < m; ++j) {
        cx l = lambda[j];
        const double mod = std::abs(l);
        if (mod > 0.0)
            l /= mod; // noiseless theory puts the eigenvalues on the circle
        // With h(k) = sum c e^{-2pi i k t}, the right singular space is spanned
        // by (e^{+2pi i l t_j})_l, so the shift eigenvalue is e^{+2pi i t_j}.
        nodes1d[j] = wrap_unit(std::arg(l) / (2.0 * pi));
    }
    std::sort(nodes1d.begin(), nodes1d.end());

    std::vector<TorusPoint> pts;
    pts.reserve(m);
    for (double t : nodes1d)
        pts.emplace_back(std::vector<double>{t});
    NodeSet node_set(std::move(pts));

    CMatrix vand(2 * n + 1, m);
    for (int k = -n; k <= n; ++k)
        for (std::size_t j = 0; j < m; ++j)
            vand(k + n, j) = std::polar(1.0, -2.0 * pi * k * nodes1d[j]);
    std::vector<cx> weights = least_squares(vand, h);

    return {DiscreteMeasure(std::move(node_set), std::move(weights)), gap, reliable};
}

TheoremReport check_esprit_stability(const DiscreteMeasure& mu0, const std::vector<cx>& e,
                                     const EspritConfig& cfg, double c_min) {
    if (mu0.dim() != 1)
        fail(errc::invalid_argument, "check_esprit_stability: univariate only");
    if (e.size() != static_cast<std::size_t>(2 * cfg.n + 1))
        fail(errc::invalid_argument, "check_esprit_stability: perturbation length mismatch");

    TheoremReport rep;
    rep.theorem = "esprit";
    const double sep_class = 2.0 / (cfg.n + 1);
    const AdmissibilityClass cls{c_min, sep_class, 1, cfg.n, BallNorm::l2};
    const bool class_ok = check_admissible(mu0, cls).ok && mu0.size() == cfg.m;

    double e_inf = 0.0;
    for (const cx& v : e)
        e_inf = std::max(e_inf, std::abs(v));
    const bool perturbation_ok = e_inf < c_min / 60.0;
    rep.premise_holds = class_ok && perturbation_ok;
    rep.meta["e_inf"] = e_inf;
    rep.meta["e_gate"] = c_min / 60.0;
    rep.meta["class_ok"] = class_ok ? 1.0 : 0.0;

    FrequencySet ball(1, cfg.n, BallNorm::l2);
    MomentVector exact = moment_map(mu0, ball);
    std::vector<cx> perturbed_values = exact.values();
    for (std::size_t i = 0; i < perturbed_values.size(); ++i)
        perturbed_values[i] += e[i];
    MomentVector perturbed(ball, std::move(perturbed_values));

    EspritResult rec0 = esprit_recover(exact, cfg);
    EspritResult rec1 = esprit_recover(perturbed, cfg);
    const double md = matching_distance(rec0.measure.nodes(), rec1.measure.nodes());

    rep.lhs = 190.0 * static_cast<double>(cfg.m) / c_min * e_inf;
    rep.rhs_terms.emplace_back("matching_distance", md);
    rep.meta["singular_gap_exact"] = rec0.singular_gap;
    rep.meta["singular_gap_perturbed"] = rec1.singular_gap;
    finalize_inequality(rep);
    return rep;
}

} // namespace pronylab
