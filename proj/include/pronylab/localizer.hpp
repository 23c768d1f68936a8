#ifndef PRONYLAB_LOCALIZER_HPP
#define PRONYLAB_LOCALIZER_HPP

#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace pronylab {

/// Window function on [-q/2, q/2]. Only the Hann window yields a localizer
/// whose global maximum sits at the origin; the other two are kept as
/// counterexamples.
enum class WindowKind { hann, parabolic, plain_cosine };

const char* to_string(WindowKind w);
std::optional<WindowKind> window_from_string(std::string_view name);

/// Window value; zero outside [-q/2, q/2].
double window_value(WindowKind w, double q, double x);

/// Closed-form Hann autocorrelation (phi*phi)(x); zero for |x| >= q.
double hann_autocorr(double q, double x);

/// Closed-form second derivative of the Hann autocorrelation on (-q, q).
double hann_autocorr_dd(double q, double x);

/// Composite Simpson approximation of (w*w)(x) over the support overlap,
/// n panels (n >= 64).
double autocorr_by_quadrature(WindowKind w, double q, double x, int n);

/// Fourier transform of the Hann window, sin(pi q v) / (2 pi v (1 - q^2 v^2)),
/// with the removable singularities at v = 0 and v = +-1/q filled.
double hann_transform(double q, double v);

struct LocalizerParams {
    int d;
    int n; ///< frequency radius N
    double q;
    WindowKind window = WindowKind::hann;
};

/// The localizing function psi at x (Hann window, p = 2); exactly zero for
/// ||x||_inf >= q.
double psi_value(const LocalizerParams& p, std::span<const double> x);

/// psi(0).
double psi_peak(const LocalizerParams& p);

/// Fourier transform of psi at v: ((2 pi N)^2 - sum (2 pi v_s)^2) prod phi_hat(v_l)^2.
double psi_hat_value(const LocalizerParams& p, std::span<const double> v);

/// Bivariate psi built numerically from any window: quadrature
/// autocorrelation plus central-difference second derivatives
/// (step h = q * 1e-4). Used for the counterexample windows. The high
/// default panel count keeps the quadrature noise well below the h^-2
/// amplification of the difference quotient.
double psi_by_quadrature(WindowKind w, int n_freq, double q, double x1, double x2,
                         int panels = 8192);

/// Analytic lower bound for psi(0) - psi(x). d = 1 needs kappa > 1 with
/// q = kappa/N; d >= 2 needs q = sqrt(d)/N. Quadratic inside
/// ||x||_inf <= q/2, linear up to the support edge. Signals out-of-domain
/// beyond ||x||_inf = q.
double drop_lower_bound(const LocalizerParams& p, std::span<const double> x,
                        std::optional<double> kappa = std::nullopt);

/// Upper-bound tightening sequence a_0 = 1, a_{k+1} = 3d/(5d-2-8 m_k (d-1))
/// with m_k the secant slope of phi*phi between q/2 and a_k q. Stops once
/// a_k <= 1/2 + 1e-9 or after max_iter steps. d >= 2.
std::vector<double> bound_sequence(int d, double q, int max_iter);

struct GridMax {
    std::vector<double> arg;
    double value;
};

/// Deterministic grid search for the maximum of psi over [-q, q]^d at the
/// given per-axis resolution, with one local refinement pass.
GridMax psi_grid_max(const LocalizerParams& p, int points_per_axis);

} // namespace pronylab

#endif
