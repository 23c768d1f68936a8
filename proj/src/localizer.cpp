#include "pronylab/localizer.hpp"

#include "pronylab/error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string_view>

namespace pronylab {

namespace {
constexpr double pi = std::numbers::pi;
}

const char* to_string(WindowKind w) {
    switch (w) {
    case WindowKind::hann: return "hann";
    case WindowKind::parabolic: return "parabolic";
    case WindowKind::plain_cosine: return "cosine";
    }
    return "?";
}

std::optional<WindowKind> window_from_string(std::string_view name) {
    if (name == "hann")
        return WindowKind::hann;
    if (name == "parabolic")
        return WindowKind::parabolic;
    if (name == "cosine" || name == "plain-cosine")
        return WindowKind::plain_cosine;
    return std::nullopt;
}

double window_value(WindowKind w, double q, double x) {
    if (!(q > 0.0))
        fail(errc::invalid_argument, "window: q must be positive");
    const double ax = std::fabs(x);
    if (ax >= q / 2.0)
        return 0.0;
    switch (w) {
    case WindowKind::hann: {
        const double c = std::cos(pi * x / q);
        return c * c;
    }
    case WindowKind::parabolic: {
        const double u = 2.0 * x / q;
        return 1.0 - u * u;
    }
    case WindowKind::plain_cosine:
        return std::cos(pi * x / q);
    }
    return 0.0;
}

double hann_autocorr(double q, double x) {
    if (!(q > 0.0))
        fail(errc::invalid_argument, "autocorr: q must be positive");
    const double ax = std::fabs(x);
    if (ax >= q)
        return 0.0;
    return (q - ax) / 4.0 * (1.0 + 0.5 * std::cos(2.0 * pi * x / q)) +
           (3.0 / 8.0) * (q / (2.0 * pi)) * std::sin(2.0 * pi * ax / q);
}

namespace {

// (q/2pi) sin(2pi|x|/q) + q - |x|, the source term of the second derivative.
double source_term(double q, double x) {
    const double ax = std::fabs(x);
    if (ax >= q)
        return 0.0;
    return (q / (2.0 * pi)) * std::sin(2.0 * pi * ax / q) + q - ax;
}

} // namespace

double hann_autocorr_dd(double q, double x) {
    if (std::fabs(x) >= q)
        return 0.0;
    return -4.0 * pi * pi / (q * q) * hann_autocorr(q, x) +
           pi * pi / (q * q) * source_term(q, x);
}

double autocorr_by_quadrature(WindowKind w, double q, double x, int n) {
    if (n < 64)
        fail(errc::invalid_argument, "autocorr quadrature: need at least 64 panels");
    const double lo = std::max(-q / 2.0, x - q / 2.0);
    const double hi = std::min(q / 2.0, x + q / 2.0);
    if (hi <= lo)
        return 0.0;
    const double h = (hi - lo) / n;
    double s = 0.0;
    for (int i = 0; i < n; ++i) {
        const double a = lo + i * h;
        const double b = a + h;
        const double mid = 0.5 * (a + b);
        s += (h / 6.0) * (window_value(w, q, a) * window_value(w, q, x - a) +
                          4.0 * window_value(w, q, mid) * window_value(w, q, x - mid) +
                          window_value(w, q, b) * window_value(w, q, x - b));
    }
    return s;
}

double hann_transform(double q, double v) {
    if (!(q > 0.0))
        fail(errc::invalid_argument, "hann_transform: q must be positive");
    const double u = std::fabs(pi * q * v);
    // f(u) = sin(u) / (u (1 - u^2/pi^2)); phi_hat = (q/2) f. Rewriting around
    // the pole at u = pi avoids the 0/0 cancellation.
    double f;
    if (u < pi / 2.0) {
        double sinc;
        if (u < 1e-8)
            sinc = 1.0 - u * u / 6.0;
        else
            sinc = std::sin(u) / u;
        f = sinc / (1.0 - (u / pi) * (u / pi));
    } else {
        const double w = pi - u;
        double sincw;
        if (std::fabs(w) < 1e-8)
            sincw = 1.0 - w * w / 6.0;
        else
            sincw = std::sin(w) / w;
        f = pi * pi * sincw / (u * (pi + u));
    }
    return 0.5 * q * f;
}

namespace {

void require_hann(const LocalizerParams& p, const char* who) {
    if (p.window != WindowKind::hann)
        fail(errc::invalid_argument, std::string(who) + ": closed form available for the Hann window only");
    if (p.d < 1 || !(p.q > 0.0) || p.n < 1)
        fail(errc::invalid_argument, std::string(who) + ": invalid parameters");
}

} // namespace

double psi_value(const LocalizerParams& p, std::span<const double> x) {
    require_hann(p, "psi_value");
    if (static_cast<int>(x.size()) != p.d)
        fail(errc::dimension_mismatch, "psi_value: point dimension mismatch");
    const double q = p.q;
    for (double c : x)
        if (std::fabs(c) >= q)
            return 0.0;

    const double lead = (2.0 * pi * p.n) * (2.0 * pi * p.n) - 4.0 * p.d * pi * pi / (q * q);
    double prod = 1.0;
    for (double c : x)
        prod *= hann_autocorr(q, c);
    double sum = 0.0;
    for (int s = 0; s < p.d; ++s) {
        double rest = 1.0;
        for (int i = 0; i < p.d; ++i)
            if (i != s)
                rest *= hann_autocorr(q, x[i]);
        sum += source_term(q, x[s]) * rest;
    }
    return lead * prod + pi * pi / (q * q) * sum;
}

double psi_peak(const LocalizerParams& p) {
    std::vector<double> zero(p.d, 0.0);
    return psi_value(p, zero);
}

double psi_hat_value(const LocalizerParams& p, std::span<const double> v) {
    require_hann(p, "psi_hat_value");
    if (static_cast<int>(v.size()) != p.d)
        fail(errc::dimension_mismatch, "psi_hat_value: point dimension mismatch");
    double lead = (2.0 * pi * p.n) * (2.0 * pi * p.n);
    double prod = 1.0;
    for (double c : v) {
        lead -= (2.0 * pi * c) * (2.0 * pi * c);
        const double ph = hann_transform(p.q, c);
        prod *= ph * ph;
    }
    return lead * prod;
}

double psi_by_quadrature(WindowKind w, int n_freq, double q, double x1, double x2, int panels) {
    // The second difference of the |x|^3 component of w*w picks up a +b h/3
    // bias right at the kink, so h must stay well below the probe offsets.
    const double h = q * 1e-5;
    auto g = [&](double x) { return autocorr_by_quadrature(w, q, x, panels); };
    auto gdd = [&](double x) { return (g(x + h) - 2.0 * g(x) + g(x - h)) / (h * h); };
    const double g1 = g(x1), g2 = g(x2);
    const double lead = (2.0 * pi * n_freq) * (2.0 * pi * n_freq);
    return lead * g1 * g2 + gdd(x1) * g2 + g1 * gdd(x2);
}

double drop_lower_bound(const LocalizerParams& p, std::span<const double> x,
                        std::optional<double> kappa) {
    require_hann(p, "drop_lower_bound");
    if (static_cast<int>(x.size()) != p.d)
        fail(errc::dimension_mismatch, "drop_lower_bound: point dimension mismatch");
    const double q = p.q;
    double xi = 0.0;
    for (double c : x)
        xi = std::max(xi, std::fabs(c));
    if (xi > q * (1.0 + 1e-12))
        fail(errc::invalid_argument, "drop_lower_bound: point outside the support");

    if (p.d == 1) {
        if (!kappa || !(*kappa > 1.0))
            fail(errc::invalid_argument, "drop_lower_bound: d = 1 needs kappa > 1");
        const double k = *kappa;
        if (std::fabs(p.n * q - k) > 1e-9 * k)
            fail(errc::invalid_argument, "drop_lower_bound: d = 1 needs q = kappa/N");
        const double k2 = k * k;
        if (xi <= q / 2.0)
            return 5.0 * pi * pi * (k2 - 1.0) * xi * xi / (q * q * q);
        return (15.0 / 4.0) * pi * pi * (k2 - 1.0) * xi / (q * q);
    }

    if (std::fabs(p.n * q - std::sqrt(static_cast<double>(p.d))) > 1e-9)
        fail(errc::invalid_argument, "drop_lower_bound: d >= 2 needs q = sqrt(d)/N");
    const double d = p.d;
    const double shell = std::pow(3.0 * q / 8.0, d - 1.0);
    if (xi <= q / 2.0)
        return (10.0 / 3.0) * (d - 1.0) * shell * pi * pi * xi * xi / (q * q * q);
    return (d - 0.5) * shell * pi * pi * xi / (q * q);
}

std::vector<double> bound_sequence(int d, double q, int max_iter) {
    if (d < 2)
        fail(errc::invalid_argument, "bound_sequence: defined for d >= 2");
    if (max_iter < 1)
        fail(errc::invalid_argument, "bound_sequence: max_iter >= 1");
    std::vector<double> a{1.0};
    for (int k = 0; k < max_iter; ++k) {
        const double ak = a.back();
        if (ak <= 0.5 + 1e-9)
            break;
        const double m = (hann_autocorr(q, ak * q) - hann_autocorr(q, q / 2.0)) /
                         (ak * q - q / 2.0);
        double next = 3.0 * d / (5.0 * d - 2.0 - 8.0 * m * (d - 1.0));
        if (next < 0.5)
            next = 0.5;
        a.push_back(next);
    }
    return a;
}

GridMax psi_grid_max(const LocalizerParams& p, int points_per_axis) {
    require_hann(p, "psi_grid_max");
    if (points_per_axis < 2)
        fail(errc::invalid_argument, "psi_grid_max: resolution too small");

    auto scan = [&](const std::vector<double>& center, double half_width, int res) {
        // Tensor grid around center, clipped to the support box.
        const int npts = 2 * res + 1;
        std::vector<std::vector<double>> axis(p.d);
        for (int i = 0; i < p.d; ++i) {
            axis[i].resize(npts);
            for (int j = 0; j < npts; ++j) {
                double c = center[i] + half_width * (j - res) / res;
                axis[i][j] = std::clamp(c, -p.q, p.q);
            }
        }
        // Per-axis tables of the two factors keep the inner loop cheap.
        std::vector<std::vector<double>> gt(p.d, std::vector<double>(npts));
        std::vector<std::vector<double>> st(p.d, std::vector<double>(npts));
        for (int i = 0; i < p.d; ++i)
            for (int j = 0; j < npts; ++j) {
                gt[i][j] = hann_autocorr(p.q, axis[i][j]);
                st[i][j] = source_term(p.q, axis[i][j]);
            }
        const double lead =
            (2.0 * pi * p.n) * (2.0 * pi * p.n) - 4.0 * p.d * pi * pi / (p.q * p.q);
        const double coef = pi * pi / (p.q * p.q);

        GridMax best{center, -1e300};
        std::vector<int> idx(p.d, 0);
        while (true) {
            double prod = 1.0;
            for (int i = 0; i < p.d; ++i)
                prod *= gt[i][idx[i]];
            double sum = 0.0;
            for (int s = 0; s < p.d; ++s) {
                double rest = 1.0;
                for (int i = 0; i < p.d; ++i)
                    if (i != s)
                        rest *= gt[i][idx[i]];
                sum += st[s][idx[s]] * rest;
            }
            const double val = lead * prod + coef * sum;
            if (val > best.value) {
                best.value = val;
                for (int i = 0; i < p.d; ++i)
                    best.arg[i] = axis[i][idx[i]];
            }
            int ax = p.d - 1;
            while (ax >= 0 && idx[ax] == npts - 1)
                idx[ax--] = 0;
            if (ax < 0)
                break;
            ++idx[ax];
        }
        return best;
    };

    const int res = points_per_axis / 2;
    std::vector<double> origin(p.d, 0.0);
    GridMax coarse = scan(origin, p.q, res);
    // One refinement pass around the incumbent at 10x resolution.
    GridMax fine = scan(coarse.arg, p.q / res, 10);
    return (fine.value > coarse.value) ? fine : coarse;
}

} // namespace pronylab
