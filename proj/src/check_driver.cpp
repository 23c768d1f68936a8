#include "pronylab/check_driver.hpp"

#include "pronylab/error.hpp"
#include "pronylab/io.hpp"
#include "pronylab/stability.hpp"
#include "pronylab/wasserstein.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <ctime>
#include <functional>
#include <mutex>
#include <numbers>
#include <optional>
#include <random>
#include <thread>

namespace pronylab {

namespace {

double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::uint64_t mix(std::uint64_t seed, std::uint64_t salt) {
    std::uint64_t z = seed + salt * 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

int env_thread_cap() {
    const char* s = std::getenv("PRONYLAB_THREADS");
    if (!s)
        return 0;
    const int v = std::atoi(s);
    return v > 0 ? v : 1;
}

void parallel_trials(int count, int threads, const std::function<void(int)>& body) {
    int t = threads > 0 ? threads : static_cast<int>(std::thread::hardware_concurrency());
    if (const int cap = env_thread_cap(); cap > 0)
        t = std::min(t, cap);
    t = std::max(1, std::min(t, count));
    if (t == 1) {
        for (int i = 0; i < count; ++i)
            body(i);
        return;
    }
    std::atomic<int> next{0};
    std::exception_ptr err;
    std::mutex err_mutex;
    std::vector<std::thread> pool;
    for (int w = 0; w < t; ++w)
        pool.emplace_back([&] {
            for (;;) {
                const int i = next.fetch_add(1);
                if (i >= count)
                    return;
                try {
                    body(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(err_mutex);
                    if (!err)
                        err = std::current_exception();
                    return;
                }
            }
        });
    for (auto& th : pool)
        th.join();
    if (err)
        std::rethrow_exception(err);
}

struct TrialDraw {
    std::size_t m;
    double delta;
    std::uint64_t pair_seed;
    std::mt19937_64 rng;
};

TrialDraw draw_trial(const CheckConfig& cfg, std::uint64_t seed) {
    TrialDraw t{1, 0.0, mix(seed, 2), std::mt19937_64(mix(seed, 1))};
    t.m = 1 + static_cast<std::size_t>(t.rng() % static_cast<std::uint64_t>(cfg.max_nodes));
    const double lo = std::log(cfg.delta_min), hi = std::log(cfg.delta_max);
    t.delta = std::exp(lo + uniform01(t.rng) * (hi - lo));
    return t;
}

void stamp(TheoremReport& r, const CheckConfig& cfg, std::uint64_t seed, const TrialDraw& t) {
    r.meta["seed"] = static_cast<double>(seed);
    r.meta["N"] = cfg.n;
    r.meta["d"] = cfg.d;
    r.meta["M"] = static_cast<double>(t.m);
    r.meta["c_min"] = cfg.c_min;
    r.meta["delta_target"] = t.delta;
    if (cfg.kappa > 0.0)
        r.meta["kappa"] = cfg.kappa;
}

using TrialFn = std::function<TheoremReport(const CheckConfig&, std::uint64_t seed)>;

TheoremReport lipschitz_trial(const CheckConfig& cfg, std::uint64_t seed, double sep_class,
                              const std::function<TheoremReport(const DiscreteMeasure&,
                                                                const DiscreteMeasure&)>& check) {
    TrialDraw t = draw_trial(cfg, seed);
    const AdmissibilityClass cls{cfg.c_min, sep_class, cfg.d, cfg.n, BallNorm::l2};
    auto [mu1, mu2] = random_admissible_pair(cls, t.m, t.pair_seed, t.delta);
    TheoremReport r = check(mu1, mu2);
    stamp(r, cfg, seed, t);
    return r;
}

TheoremReport esprit_trial(const CheckConfig& cfg, std::uint64_t seed) {
    TrialDraw t = draw_trial(cfg, seed);
    const double sep_class = 2.0 / (cfg.n + 1);
    const AdmissibilityClass cls{cfg.c_min, sep_class, 1, cfg.n, BallNorm::l2};
    DiscreteMeasure mu0 = random_admissible_pair(cls, t.m, t.pair_seed, 0.0).first;

    // Perturbation with max modulus strictly inside the c_min/60 gate.
    const double scale_u = std::exp(std::log(1e-3) + uniform01(t.rng) * std::log(0.99 / 1e-3));
    std::vector<cx> e(2 * cfg.n + 1);
    double biggest = 0.0;
    for (cx& v : e) {
        v = cx(2.0 * uniform01(t.rng) - 1.0, 2.0 * uniform01(t.rng) - 1.0);
        biggest = std::max(biggest, std::abs(v));
    }
    const double target = scale_u * cfg.c_min / 60.0;
    for (cx& v : e)
        v *= target / biggest;

    EspritConfig ecfg{cfg.n, t.m, 0};
    TheoremReport r = check_esprit_stability(mu0, e, ecfg, cfg.c_min);
    stamp(r, cfg, seed, t);
    return r;
}

TheoremReport vandermonde_trial(const CheckConfig& cfg, std::uint64_t seed) {
    std::mt19937_64 rng(mix(seed, 3));
    const int d = cfg.d, n = cfg.n;
    const double q = std::sqrt(static_cast<double>(d)) / n;
    const double tau_n = 0.01 + uniform01(rng) * (0.9 * std::sqrt(static_cast<double>(d)) - 0.01);
    const double tau = tau_n / n;

    int n_pairs = 1 + static_cast<int>(rng() % 3);
    int n_singles = static_cast<int>(rng() % 3);

    auto try_build = [&](int pairs, int singles) -> std::optional<NodeSet> {
        for (int attempt = 0; attempt < 400; ++attempt) {
            std::vector<TorusPoint> centers;
            bool ok = true;
            for (int c = 0; c < pairs + singles && ok; ++c) {
                std::vector<double> x(d);
                for (int i = 0; i < d; ++i)
                    x[i] = uniform01(rng);
                TorusPoint p(std::move(x));
                for (const TorusPoint& prev : centers)
                    if (torus_distance(prev, p) < 2.0 * q + tau) {
                        ok = false;
                        break;
                    }
                if (ok)
                    centers.push_back(std::move(p));
            }
            if (!ok)
                continue;
            std::vector<TorusPoint> nodes;
            for (int c = 0; c < pairs; ++c) {
                std::vector<double> u(d);
                double s = 0.0;
                do {
                    for (int i = 0; i < d; ++i) {
                        u[i] = 2.0 * uniform01(rng) - 1.0;
                        s = std::max(s, std::fabs(u[i]));
                    }
                } while (s < 0.01);
                std::vector<double> a(d), b(d);
                for (int i = 0; i < d; ++i) {
                    const double off = 0.5 * tau * u[i] / s;
                    a[i] = centers[c][i] + off;
                    b[i] = centers[c][i] - off;
                }
                nodes.emplace_back(std::move(a));
                nodes.emplace_back(std::move(b));
            }
            for (int c = pairs; c < pairs + singles; ++c)
                nodes.push_back(centers[c]);
            NodeSet y(std::move(nodes));
            ClusterDecomposition dec = cluster_decompose(y, n, d);
            const bool pairing_ok =
                static_cast<int>(dec.clusters.size()) == pairs + singles &&
                std::fabs(dec.tau - tau) < 1e-12 && dec.delta >= 2.0 * q;
            if (pairing_ok)
                return y;
        }
        return std::nullopt;
    };

    std::optional<NodeSet> y = try_build(n_pairs, n_singles);
    if (!y)
        y = try_build(1, 0); // a lone pair always fits
    if (!y)
        fail(errc::budget_exhausted, "vandermonde trial: could not place clusters");

    TheoremReport r = check_pair_cluster_bound(*y, n, d);
    r.meta["seed"] = static_cast<double>(seed);
    r.meta["N"] = n;
    r.meta["d"] = d;
    r.meta["tau_n"] = tau_n;
    return r;
}

} // namespace

const std::vector<std::string>& known_theorems() {
    static const std::vector<std::string> ids = {
        "univariate", "diederichs1d", "2d-l2",    "2d-linf",         "highd",
        "global-w1",  "md-order",     "esprit",   "vandermonde-pairs"};
    return ids;
}

CheckConfig default_check_config(const std::string& theorem) {
    CheckConfig c;
    if (theorem == "univariate" || theorem == "md-order") {
        c.n = 32;
        c.d = 1;
        c.max_nodes = 6;
        c.c_min = 0.08;
        c.kappa = std::sqrt(5.0 / 3.0);
    } else if (theorem == "diederichs1d") {
        c.n = 32;
        c.d = 1;
        c.max_nodes = 6;
        c.c_min = 0.08;
    } else if (theorem == "2d-l2" || theorem == "2d-linf") {
        c.n = 16;
        c.d = 2;
        c.max_nodes = 4;
        c.c_min = 0.1;
    } else if (theorem == "highd") {
        c.n = 8;
        c.d = 3;
        c.max_nodes = 2;
        c.c_min = 0.2;
    } else if (theorem == "global-w1") {
        c.trials = 200;
        c.n = 16;
        c.d = 2;
        c.max_nodes = 4;
        c.c_min = 0.1;
        // theta-grid shortfall goes as (pi/angles)^2/8; the acceptance gate
        // wants the residual refinement gap below 1e-6 of the value
        c.angles = 2048;
    } else if (theorem == "esprit") {
        c.n = 32;
        c.d = 1;
        c.max_nodes = 6;
        c.c_min = 0.08;
    } else if (theorem == "vandermonde-pairs") {
        c.trials = 100;
        c.n = 16;
        c.d = 2;
        c.max_nodes = 8;
    } else {
        fail(errc::unknown_theorem, "unknown theorem id: " + theorem);
    }
    return c;
}

CheckSummary run_check(const std::string& theorem, const CheckConfig& cfg) {
    TrialFn fn;
    if (theorem == "univariate") {
        fn = [](const CheckConfig& c, std::uint64_t s) {
            return lipschitz_trial(c, s, 2.0 * c.kappa / c.n,
                                   [&](const DiscreteMeasure& a, const DiscreteMeasure& b) {
                                       return check_univariate(a, b, c.n, c.kappa, c.c_min);
                                   });
        };
    } else if (theorem == "diederichs1d") {
        fn = [](const CheckConfig& c, std::uint64_t s) {
            return lipschitz_trial(c, s, 3.0 / (c.n + 1),
                                   [&](const DiscreteMeasure& a, const DiscreteMeasure& b) {
                                       return check_diederichs_univariate(a, b, c.n, c.c_min);
                                   });
        };
    } else if (theorem == "2d-l2") {
        fn = [](const CheckConfig& c, std::uint64_t s) {
            return lipschitz_trial(c, s, 2.0 * std::sqrt(2.0) / c.n,
                                   [&](const DiscreteMeasure& a, const DiscreteMeasure& b) {
                                       return check_2d_l2(a, b, c.n, c.c_min);
                                   });
        };
    } else if (theorem == "2d-linf") {
        fn = [](const CheckConfig& c, std::uint64_t s) {
            return lipschitz_trial(c, s, 2.0 / (c.n + 1),
                                   [&](const DiscreteMeasure& a, const DiscreteMeasure& b) {
                                       return check_2d_linf_diederichs(a, b, c.n, c.c_min);
                                   });
        };
    } else if (theorem == "highd") {
        fn = [](const CheckConfig& c, std::uint64_t s) {
            return lipschitz_trial(c, s, 2.0 * std::sqrt(static_cast<double>(c.d)) / c.n,
                                   [&](const DiscreteMeasure& a, const DiscreteMeasure& b) {
                                       return check_highd(a, b, c.n, c.d, c.c_min);
                                   });
        };
    } else if (theorem == "global-w1") {
        fn = [](const CheckConfig& c, std::uint64_t s) {
            return lipschitz_trial(c, s, 2.0 * std::sqrt(static_cast<double>(c.d)) / c.n,
                                   [&](const DiscreteMeasure& a, const DiscreteMeasure& b) {
                                       return check_global_w1(a, b, c.n, c.d,
                                                              static_cast<std::size_t>(c.max_nodes),
                                                              c.c_min, c.angles);
                                   });
        };
    } else if (theorem == "md-order") {
        fn = [](const CheckConfig& c, std::uint64_t s) {
            return lipschitz_trial(c, s, 2.0 * std::sqrt(5.0 / 3.0) / c.n,
                                   [&](const DiscreteMeasure& a, const DiscreteMeasure& b) {
                                       return check_md_order(a, b, c.n, c.c_min);
                                   });
        };
    } else if (theorem == "esprit") {
        fn = esprit_trial;
    } else if (theorem == "vandermonde-pairs") {
        fn = vandermonde_trial;
    } else {
        fail(errc::unknown_theorem, "unknown theorem id: " + theorem);
    }

    CheckSummary out;
    out.reports.resize(cfg.trials);
    parallel_trials(cfg.trials, cfg.threads, [&](int i) {
        out.reports[i] = fn(cfg, cfg.seed0 + static_cast<std::uint64_t>(i));
    });
    for (const TheoremReport& r : out.reports) {
        if (r.premise_holds) {
            ++out.premise_trials;
            if (!r.satisfied)
                ++out.violations;
        }
    }
    return out;
}

std::string config_to_json(const std::string& theorem, const CheckConfig& cfg) {
    std::string s = "{\"config\":{\"theorem\":\"" + theorem + "\"";
    s += ",\"trials\":" + std::to_string(cfg.trials);
    s += ",\"seed0\":" + std::to_string(cfg.seed0);
    s += ",\"N\":" + std::to_string(cfg.n);
    s += ",\"d\":" + std::to_string(cfg.d);
    s += ",\"max_nodes\":" + std::to_string(cfg.max_nodes);
    s += ",\"c_min\":" + format_double(cfg.c_min);
    s += ",\"kappa\":" + format_double(cfg.kappa);
    s += ",\"delta_min\":" + format_double(cfg.delta_min);
    s += ",\"delta_max\":" + format_double(cfg.delta_max);
    s += ",\"angles\":" + std::to_string(cfg.angles);
    if (!cfg.deterministic)
        s += ",\"timestamp\":" + std::to_string(static_cast<long long>(std::time(nullptr)));
    s += ",\"seeds\":[";
    for (int i = 0; i < cfg.trials; ++i) {
        if (i)
            s += ",";
        s += std::to_string(cfg.seed0 + static_cast<std::uint64_t>(i));
    }
    s += "]}}";
    return s;
}

std::string check_to_jsonl(const std::string& theorem, const CheckConfig& cfg,
                           const CheckSummary& s) {
    std::string out = config_to_json(theorem, cfg) + "\n";
    for (const TheoremReport& r : s.reports)
        out += report_to_json(r) + "\n";
    return out;
}

std::string check_to_csv(const std::string& theorem, const CheckConfig& cfg,
                         const CheckSummary& s) {
    std::string out = "# " + config_to_json(theorem, cfg) + "\n";
    out += "seed,premise,satisfied,lhs,rhs_total,margin\n";
    for (const TheoremReport& r : s.reports) {
        const auto it = r.meta.find("seed");
        out += format_double(it != r.meta.end() ? it->second : 0.0);
        out += r.premise_holds ? ",1" : ",0";
        out += r.satisfied ? ",1" : ",0";
        out += "," + format_double(r.lhs);
        out += "," + format_double(r.rhs_total());
        out += "," + format_double(r.margin);
        out += "\n";
    }
    return out;
}

} // namespace pronylab
