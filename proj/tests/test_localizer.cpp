#include "pronylab/error.hpp"
#include "pronylab/localizer.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace pronylab;

namespace {

constexpr double pi = std::numbers::pi;

double urand(std::mt19937_64& rng) { return (rng() >> 11) * 0x1.0p-53; }

} // namespace

TEST_SUITE_BEGIN("localizer");

TEST_CASE("window values") {
    const double q = 0.4;
    CHECK(window_value(WindowKind::hann, q, 0.0) == 1.0);
    CHECK(window_value(WindowKind::hann, q, q / 2) == 0.0);
    CHECK(window_value(WindowKind::hann, q, -q / 2) == 0.0);
    CHECK(window_value(WindowKind::parabolic, q, q / 4) == doctest::Approx(0.75));
    CHECK(window_value(WindowKind::plain_cosine, q, 0.0) == 1.0);
    CHECK(window_value(WindowKind::hann, q, 0.9 * q) == 0.0);
}

TEST_CASE("autocorrelation closed form vs quadrature") {
    const double q = 0.4;
    CHECK(hann_autocorr(q, 0.0) == doctest::Approx(3.0 * q / 8.0).epsilon(1e-15));
    CHECK(hann_autocorr(q, q / 2) == doctest::Approx(q / 16.0).epsilon(1e-14));
    CHECK(hann_autocorr(q, q) == 0.0);
    CHECK(hann_autocorr(q, 1.5 * q) == 0.0);

    std::mt19937_64 rng(31);
    for (int rep = 0; rep < 200; ++rep) {
        const double x = (2.0 * urand(rng) - 1.0) * 1.1 * q;
        CHECK(std::fabs(hann_autocorr(q, x) -
                        autocorr_by_quadrature(WindowKind::hann, q, x, 4096)) < 1e-10);
    }
    CHECK(autocorr_by_quadrature(WindowKind::parabolic, q, 0.0, 2048) ==
          doctest::Approx(8.0 * q / 15.0).epsilon(1e-10));
    CHECK(autocorr_by_quadrature(WindowKind::parabolic, q, q, 2048) == 0.0);
}

TEST_CASE("autocorrelation derivatives") {
    const double q = 0.7;
    const double h = 1e-5 * q;
    // derivative anchor at q/2
    const double slope =
        (hann_autocorr(q, q / 2 + h) - hann_autocorr(q, q / 2 - h)) / (2.0 * h);
    CHECK(slope == doctest::Approx(-0.5).epsilon(1e-6));

    // closed-form second derivative vs central differences away from kinks
    std::mt19937_64 rng(37);
    const double hh = 1e-4 * q;
    for (int rep = 0; rep < 200; ++rep) {
        double x = (2.0 * urand(rng) - 1.0) * q;
        if (std::fabs(x) < 1e-3 * q || std::fabs(std::fabs(x) - q) < 1e-3 * q)
            continue;
        const double fd =
            (hann_autocorr(q, x + hh) - 2.0 * hann_autocorr(q, x) + hann_autocorr(q, x - hh)) /
            (hh * hh);
        const double cf = hann_autocorr_dd(q, x);
        CHECK(std::fabs(fd - cf) <= 1e-6 * std::max(1.0, std::fabs(cf)));
    }
}

TEST_CASE("hann transform") {
    const double q = 0.35;
    // phi_hat(0) = q/2, against plain quadrature of the window integral
    double simpson = 0.0;
    const int n = 4096;
    for (int i = 0; i < n; ++i) {
        const double a = -q / 2 + q * i / n, b = a + q / n, m = 0.5 * (a + b);
        simpson += (q / n) / 6.0 *
                   (window_value(WindowKind::hann, q, a) +
                    4.0 * window_value(WindowKind::hann, q, m) +
                    window_value(WindowKind::hann, q, b));
    }
    CHECK(hann_transform(q, 0.0) == doctest::Approx(q / 2).epsilon(1e-14));
    CHECK(simpson == doctest::Approx(q / 2).epsilon(1e-12));

    // removable singularities: smooth across v = 1/q
    const double v0 = 1.0 / q;
    CHECK(hann_transform(q, v0) == doctest::Approx(q / 4).epsilon(1e-12));
    CHECK(hann_transform(q, v0 * (1 + 1e-9)) == doctest::Approx(q / 4).epsilon(1e-6));
    CHECK(hann_transform(q, -v0) == doctest::Approx(q / 4).epsilon(1e-12));

    // quadrature oracle at a few frequencies
    for (double v : {0.5, 2.0, 7.3, 12.0}) {
        double re = 0.0;
        for (int i = 0; i < n; ++i) {
            const double a = -q / 2 + q * i / n, b = a + q / n, m = 0.5 * (a + b);
            auto f = [&](double x) {
                return window_value(WindowKind::hann, q, x) * std::cos(2.0 * pi * v * x);
            };
            re += (q / n) / 6.0 * (f(a) + 4.0 * f(m) + f(b));
        }
        CHECK(hann_transform(q, v) == doctest::Approx(re).epsilon(1e-9));
    }
}

TEST_CASE("psi anchors") {
    const int n = 15;
    const double q = std::sqrt(2.0) / n;
    LocalizerParams p{2, n, q, WindowKind::hann};
    CHECK(psi_value(p, std::vector<double>{0.0, 0.0}) ==
          doctest::Approx(3.0 * pi * pi / 4.0).epsilon(1e-12));
    CHECK(psi_value(p, std::vector<double>{q / 2, q / 2}) ==
          doctest::Approx(pi * pi / 16.0).epsilon(1e-12));

    const double q3 = std::sqrt(3.0) / 8;
    LocalizerParams p3{3, 8, q3, WindowKind::hann};
    CHECK(psi_value(p3, std::vector<double>{q3 / 2, q3 / 2, q3 / 2}) ==
          doctest::Approx(8.0 * 3 * pi * pi / (q3 * q3) * std::pow(q3 / 16, 3)).epsilon(1e-12));

    // support: exactly zero outside the box
    std::mt19937_64 rng(41);
    for (int rep = 0; rep < 10000; ++rep) {
        std::vector<double> x{(2 * urand(rng) - 1), (2 * urand(rng) - 1)};
        const double inf = std::max(std::fabs(x[0]), std::fabs(x[1]));
        if (inf >= q)
            CHECK(psi_value(p, x) == 0.0);
    }

    CHECK_THROWS_AS(psi_value(LocalizerParams{2, n, q, WindowKind::parabolic},
                              std::vector<double>{0.0, 0.0}),
                    error);
}

TEST_CASE("psi hat anchors and sign pattern") {
    for (int d : {1, 2, 3}) {
        const int n = 8;
        const double q = std::sqrt(static_cast<double>(d)) / n;
        LocalizerParams p{d, n, q, WindowKind::hann};
        std::vector<double> zero(d, 0.0);
        CHECK(psi_hat_value(p, zero) ==
              doctest::Approx(4.0 * pi * pi * n * n * std::pow(q / 2, 2.0 * d))
                  .epsilon(1e-12));
    }

    const int n = 8;
    const double q = std::sqrt(2.0) / n;
    LocalizerParams p{2, n, q, WindowKind::hann};
    // exactly zero on the ball boundary
    CHECK(psi_hat_value(p, std::vector<double>{double(n), 0.0}) == 0.0);

    const double peak = psi_hat_value(p, std::vector<double>{0.0, 0.0});
    for (int k1 = -3 * n; k1 <= 3 * n; ++k1)
        for (int k2 = -3 * n; k2 <= 3 * n; ++k2) {
            const double v = psi_hat_value(p, std::vector<double>{double(k1), double(k2)});
            if (k1 * k1 + k2 * k2 <= n * n)
                CHECK(v >= -1e-12 * peak);
            else
                CHECK(v <= 1e-12 * peak);
        }
}

TEST_CASE("poisson summation consistency") {
    const int n = 8;
    const double q = std::sqrt(2.0) / n;
    LocalizerParams p{2, n, q, WindowKind::hann};
    const double peak = psi_peak(p);
    std::mt19937_64 rng(43);

    auto periodization = [&](double x1, double x2) {
        double s = 0.0;
        for (int l1 = -1; l1 <= 1; ++l1)
            for (int l2 = -1; l2 <= 1; ++l2)
                s += psi_value(p, std::vector<double>{x1 + l1, x2 + l2});
        return s;
    };
    auto fourier_side = [&](double x1, double x2, int cap) {
        // per-axis transform tables make the double sum cheap
        std::vector<double> ph(2 * cap + 1);
        for (int k = -cap; k <= cap; ++k)
            ph[k + cap] = hann_transform(q, k);
        double s = 0.0;
        for (int k1 = -cap; k1 <= cap; ++k1)
            for (int k2 = -cap; k2 <= cap; ++k2) {
                const double lead = (2 * pi * n) * (2 * pi * n) -
                                    (2 * pi * k1) * (2 * pi * k1) -
                                    (2 * pi * k2) * (2 * pi * k2);
                const double hat = lead * (ph[k1 + cap] * ph[k1 + cap]) *
                                   (ph[k2 + cap] * ph[k2 + cap]);
                s += hat * std::cos(2.0 * pi * (k1 * x1 + k2 * x2));
            }
        return s;
    };

    double worst64 = 0.0, worst128 = 0.0;
    for (int rep = 0; rep < 20; ++rep) {
        const double x1 = urand(rng), x2 = urand(rng);
        const double direct = periodization(x1, x2);
        worst64 = std::max(worst64, std::fabs(fourier_side(x1, x2, 64) - direct));
        worst128 = std::max(worst128, std::fabs(fourier_side(x1, x2, 128) - direct));
    }
    CHECK(worst64 <= 1e-3 * peak);
    CHECK(worst128 < worst64);
}

TEST_CASE("drop bounds inside the verified ranges") {
    // d = 1: quadratic branch on [0, q/2]
    const double kappa = std::sqrt(5.0 / 3.0);
    const int n1 = 24;
    const double q1 = kappa / n1;
    LocalizerParams p1{1, n1, q1, WindowKind::hann};
    const double peak1 = psi_peak(p1);
    for (int i = 0; i <= 100; ++i) {
        const double x = q1 / 2 * i / 100.0;
        const double drop = peak1 - psi_value(p1, std::vector<double>{x});
        CHECK(drop >= drop_lower_bound(p1, std::vector<double>{x}, kappa) - 1e-10);
    }
    CHECK(drop_lower_bound(p1, std::vector<double>{0.0}, kappa) == 0.0);

    // d = 2 and d = 3: full support box
    for (int d : {2, 3}) {
        const int n = 10;
        const double q = std::sqrt(static_cast<double>(d)) / n;
        LocalizerParams p{d, n, q, WindowKind::hann};
        const double peak = psi_peak(p);
        std::mt19937_64 rng(47 + d);
        for (int rep = 0; rep < 2000; ++rep) {
            std::vector<double> x(d);
            for (double& c : x)
                c = (2.0 * urand(rng) - 1.0) * q;
            const double drop = peak - psi_value(p, x);
            CHECK(drop >= drop_lower_bound(p, x) - 1e-10);
        }
        // the stated value at the support edge
        std::vector<double> edge(d, 0.0);
        edge[0] = q;
        CHECK(drop_lower_bound(p, edge) ==
              doctest::Approx((d - 0.5) * std::pow(3.0 * q / 8.0, d - 1.0) * pi * pi / q)
                  .epsilon(1e-12));
    }

    // d = 2 value at the half-width corner
    const int n = 16;
    const double q = std::sqrt(2.0) / n;
    LocalizerParams p{2, n, q, WindowKind::hann};
    CHECK(drop_lower_bound(p, std::vector<double>{q / 2, q / 2}) ==
          doctest::Approx(5.0 * pi * pi / 16.0).epsilon(1e-12));

    CHECK_THROWS_AS(drop_lower_bound(p, std::vector<double>{1.5 * q, 0.0}), error);
    CHECK_THROWS_AS(drop_lower_bound(p1, std::vector<double>{0.1}, std::nullopt), error);
}

TEST_CASE("bound tightening sequence") {
    const double q = std::sqrt(2.0) / 16;
    // m_0 = -1/8 gives a_1 = 2/3
    const double m0 = (hann_autocorr(q, q) - hann_autocorr(q, q / 2)) / (q - q / 2);
    CHECK(m0 == doctest::Approx(-0.125).epsilon(1e-13));
    auto a = bound_sequence(2, q, 50);
    REQUIRE(a.size() >= 2);
    CHECK(a[0] == 1.0);
    CHECK(a[1] == doctest::Approx(2.0 / 3.0).epsilon(1e-13));
    CHECK(std::fabs(a.back() - 0.5) <= 1e-6);
    for (double v : a) {
        CHECK(v >= 0.5 - 1e-12);
        CHECK(v <= 1.0 + 1e-12);
    }
    // monotone from above
    for (std::size_t i = 1; i < a.size(); ++i)
        CHECK(a[i] <= a[i - 1] + 1e-12);

    auto a3 = bound_sequence(3, std::sqrt(3.0) / 8, 50);
    for (double v : a3) {
        CHECK(v >= 0.5 - 1e-12);
        CHECK(v <= 1.0 + 1e-12);
    }
    CHECK(std::fabs(a3.back() - 0.5) <= 1e-6);
    CHECK_THROWS_AS(bound_sequence(1, q, 10), error);
}

TEST_CASE("maximality at the critical scaling") {
    for (int d : {1, 2, 3}) {
        const int n = 12;
        const double q =
            (d == 1 ? std::sqrt(5.0 / 3.0) : std::sqrt(static_cast<double>(d))) / n;
        LocalizerParams p{d, n, q, WindowKind::hann};
        auto gm = psi_grid_max(p, d == 3 ? 80 : 200);
        double a = 0.0;
        for (double c : gm.arg)
            a = std::max(a, std::fabs(c));
        CHECK(a == 0.0);
        CHECK(gm.value == doctest::Approx(psi_peak(p)));
    }
}

TEST_CASE("counterexample window slopes") {
    // q = 1 normalization; slopes from the quadrature evaluator
    const double q = 1.0;
    const int n = 2;
    const double eps = q / 1000.0;
    const double p0 = psi_by_quadrature(WindowKind::parabolic, n, q, 0.0, 0.0);
    const double pe = psi_by_quadrature(WindowKind::parabolic, n, q, eps, eps);
    CHECK(std::fabs((pe - p0) / eps - 256.0 / 15.0) <= 0.05 * 256.0 / 15.0);

    const double c0 = psi_by_quadrature(WindowKind::plain_cosine, n, q, 0.0, 0.0);
    const double ce = psi_by_quadrature(WindowKind::plain_cosine, n, q, eps, eps);
    CHECK(std::fabs((ce - c0) / eps - pi * pi / q) <= 0.05 * pi * pi / q);

    // the same slopes carry a 1/q scaling at a different support width
    const double q2 = 0.4;
    const double eps2 = q2 / 1000.0;
    const double s_par = (psi_by_quadrature(WindowKind::parabolic, n, q2, eps2, eps2) -
                          psi_by_quadrature(WindowKind::parabolic, n, q2, 0.0, 0.0)) /
                         eps2;
    CHECK(std::fabs(s_par - 256.0 / (15.0 * q2)) <= 0.05 * 256.0 / (15.0 * q2));

    // the accepted window loses value away from the origin under the same
    // evaluator
    const double qh = std::sqrt(2.0) / n;
    const double h0 = psi_by_quadrature(WindowKind::hann, n, qh, 0.0, 0.0);
    const double he = psi_by_quadrature(WindowKind::hann, n, qh, qh / 1000, qh / 1000);
    CHECK(he < h0);
}

TEST_SUITE_END();
