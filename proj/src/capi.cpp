#include "pronylab.h"

#include "pronylab/check_driver.hpp"
#include "pronylab/error.hpp"
#include "pronylab/esprit.hpp"
#include "pronylab/io.hpp"
#include "pronylab/localizer.hpp"
#include "pronylab/stability.hpp"
#include "pronylab/wasserstein.hpp"

#include <cstring>
#include <limits>
#include <string>

using namespace pronylab;

namespace {

thread_local std::string g_last_error;

pronylab_status to_status(errc c) {
    switch (c) {
    case errc::invalid_argument: return PRONYLAB_ERR_INVALID_ARGUMENT;
    case errc::parse: return PRONYLAB_ERR_PARSE;
    case errc::io: return PRONYLAB_ERR_IO;
    case errc::dimension_mismatch: return PRONYLAB_ERR_DIMENSION_MISMATCH;
    case errc::numerical: return PRONYLAB_ERR_NUMERICAL;
    case errc::budget_exhausted: return PRONYLAB_ERR_BUDGET_EXHAUSTED;
    case errc::unknown_theorem: return PRONYLAB_ERR_UNKNOWN_THEOREM;
    }
    return PRONYLAB_ERR_NUMERICAL;
}

template <typename Fn>
pronylab_status guarded(Fn&& fn) {
    try {
        fn();
        g_last_error.clear();
        return PRONYLAB_OK;
    } catch (const error& e) {
        g_last_error = e.what();
        return to_status(e.code());
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return PRONYLAB_ERR_NUMERICAL;
    }
}

pronylab_status arg_error(const char* msg) {
    g_last_error = msg;
    return PRONYLAB_ERR_INVALID_ARGUMENT;
}

} // namespace

struct pronylab_measure {
    DiscreteMeasure value;
};

struct pronylab_moments {
    MomentVector value;
};

extern "C" {

const char* pronylab_status_name(pronylab_status s) {
    switch (s) {
    case PRONYLAB_OK: return "ok";
    case PRONYLAB_ERR_INVALID_ARGUMENT: return "invalid-argument";
    case PRONYLAB_ERR_PARSE: return "parse-error";
    case PRONYLAB_ERR_IO: return "io-error";
    case PRONYLAB_ERR_DIMENSION_MISMATCH: return "dimension-mismatch";
    case PRONYLAB_ERR_NUMERICAL: return "numerical-failure";
    case PRONYLAB_ERR_BUDGET_EXHAUSTED: return "budget-exhausted";
    case PRONYLAB_ERR_UNKNOWN_THEOREM: return "unknown-theorem";
    case PRONYLAB_ERR_THEOREM_VIOLATION: return "theorem-violation";
    }
    return "unknown-status";
}

const char* pronylab_last_error(void) { return g_last_error.c_str(); }

pronylab_status pronylab_measure_create(int d, size_t m, const double* nodes,
                                        const double* weights, pronylab_measure** out) {
    if (!nodes || !weights || !out)
        return arg_error("measure_create: null argument");
    return guarded([&] {
        std::vector<TorusPoint> pts;
        pts.reserve(m);
        for (size_t i = 0; i < m; ++i)
            pts.emplace_back(std::vector<double>(nodes + i * d, nodes + (i + 1) * d));
        std::vector<cx> w;
        w.reserve(m);
        for (size_t i = 0; i < m; ++i)
            w.emplace_back(weights[2 * i], weights[2 * i + 1]);
        *out = new pronylab_measure{DiscreteMeasure(NodeSet(std::move(pts)), std::move(w))};
    });
}

pronylab_status pronylab_measure_read_json(const char* path, pronylab_measure** out) {
    if (!path || !out)
        return arg_error("measure_read_json: null argument");
    return guarded([&] { *out = new pronylab_measure{read_measure_json(path)}; });
}

pronylab_status pronylab_measure_write_json(const pronylab_measure* mu, const char* path) {
    if (!mu || !path)
        return arg_error("measure_write_json: null argument");
    return guarded([&] { write_measure_json(mu->value, path); });
}

void pronylab_measure_free(pronylab_measure* mu) { delete mu; }

int pronylab_measure_dim(const pronylab_measure* mu) { return mu ? mu->value.dim() : 0; }

size_t pronylab_measure_size(const pronylab_measure* mu) { return mu ? mu->value.size() : 0; }

pronylab_status pronylab_measure_atom(const pronylab_measure* mu, size_t idx, double* node,
                                      double* w_re, double* w_im) {
    if (!mu || !node || !w_re || !w_im)
        return arg_error("measure_atom: null argument");
    if (idx >= mu->value.size())
        return arg_error("measure_atom: index out of range");
    for (int i = 0; i < mu->value.dim(); ++i)
        node[i] = mu->value.nodes()[idx][i];
    *w_re = mu->value.weights()[idx].real();
    *w_im = mu->value.weights()[idx].imag();
    return PRONYLAB_OK;
}

pronylab_status pronylab_measure_separation(const pronylab_measure* mu, double* out) {
    if (!mu || !out)
        return arg_error("measure_separation: null argument");
    return guarded([&] { *out = separation(mu->value.nodes()); });
}

pronylab_status pronylab_moments_compute(const pronylab_measure* mu, int n, int norm_p,
                                         pronylab_moments** out) {
    if (!mu || !out)
        return arg_error("moments_compute: null argument");
    if (norm_p != 2 && norm_p != 0)
        return arg_error("moments_compute: norm_p must be 2 or 0 (max norm)");
    return guarded([&] {
        FrequencySet fs(mu->value.dim(), n, norm_p == 2 ? BallNorm::l2 : BallNorm::linf);
        *out = new pronylab_moments{moment_map(mu->value, fs)};
    });
}

pronylab_status pronylab_moments_read_csv(const char* path, pronylab_moments** out) {
    if (!path || !out)
        return arg_error("moments_read_csv: null argument");
    return guarded([&] { *out = new pronylab_moments{read_moments_csv(path)}; });
}

pronylab_status pronylab_moments_write_csv(const pronylab_moments* m, const char* path) {
    if (!m || !path)
        return arg_error("moments_write_csv: null argument");
    return guarded([&] { write_moments_csv(m->value, path); });
}

void pronylab_moments_free(pronylab_moments* m) { delete m; }

size_t pronylab_moments_count(const pronylab_moments* m) { return m ? m->value.size() : 0; }

int pronylab_moments_dim(const pronylab_moments* m) {
    return m ? m->value.freqs().dim() : 0;
}

pronylab_status pronylab_esprit_recover(const pronylab_moments* m, size_t node_count,
                                        pronylab_measure** out, pronylab_esprit_diag* diag) {
    if (!m || !out)
        return arg_error("esprit_recover: null argument");
    return guarded([&] {
        EspritConfig cfg{m->value.freqs().radius(), node_count, 0};
        EspritResult r = esprit_recover(m->value, cfg);
        if (diag) {
            diag->singular_gap = r.singular_gap;
            diag->subspace_reliable = r.subspace_reliable ? 1 : 0;
        }
        *out = new pronylab_measure{std::move(r.measure)};
    });
}

pronylab_status pronylab_w1(const pronylab_measure* a, const pronylab_measure* b, int angles,
                            pronylab_w1_result* out) {
    if (!a || !b || !out)
        return arg_error("w1: null argument");
    return guarded([&] {
        W1Result r = w1_complex(a->value, b->value, angles > 0 ? angles : 360);
        out->value = r.value;
        out->theta = r.argmax_angle;
        out->gap = r.gap;
        out->tv_bound = w1_upper_bound_tv(a->value, b->value);
        out->has_matched_bound = a->value.size() == b->value.size() ? 1 : 0;
        out->matched_bound = 0.0;
        if (out->has_matched_bound) {
            std::vector<std::size_t> perm;
            matching_distance(a->value.nodes(), b->value.nodes(), perm);
            out->matched_bound = w1_upper_bound_matched(a->value, b->value, perm);
        }
    });
}

pronylab_status pronylab_psi_sample_csv(int d, int n, double q, const char* window, int grid,
                                        double lo, double hi, const char* out_path) {
    if (!window || !out_path)
        return arg_error("psi_sample_csv: null argument");
    return guarded([&] {
        const auto kind = window_from_string(window);
        if (!kind)
            fail(errc::invalid_argument, std::string("unknown window: ") + window);
        LocalizerParams p{d, n, q, *kind};
        write_psi_sample_csv(p, grid, lo, hi, out_path);
    });
}

pronylab_status pronylab_vandermonde_pairs(const pronylab_measure* nodes, int n,
                                           pronylab_vandermonde_result* out) {
    if (!nodes || !out)
        return arg_error("vandermonde_pairs: null argument");
    return guarded([&] {
        const TheoremReport r =
            check_pair_cluster_bound(nodes->value.nodes(), n, nodes->value.dim());
        out->sigma_min = r.lhs;
        out->bound = r.rhs_total();
        out->margin = r.margin;
        out->ratio = r.meta.at("ratio");
        out->tau = r.meta.at("tau");
        out->delta = r.meta.at("delta");
        out->delta_required = r.meta.at("delta_required");
        out->premise_ok = r.premise_holds ? 1 : 0;
        out->nagel_sigma_min = r.meta.at("nagel_sigma_min");
        out->nagel_bound = r.meta.at("nagel_bound");
        out->nagel_margin = r.meta.at("nagel_margin");
        out->nagel_delta_required = r.meta.at("nagel_delta_required");
        out->nagel_premise_ok = r.meta.at("nagel_premise") != 0.0 ? 1 : 0;
    });
}

pronylab_status pronylab_check_defaults(const char* theorem, pronylab_check_config* out) {
    if (!theorem || !out)
        return arg_error("check_defaults: null argument");
    return guarded([&] {
        const CheckConfig c = default_check_config(theorem);
        out->trials = c.trials;
        out->seed0 = c.seed0;
        out->n = c.n;
        out->d = c.d;
        out->max_nodes = c.max_nodes;
        out->c_min = c.c_min;
        out->kappa = c.kappa;
        out->delta_min = c.delta_min;
        out->delta_max = c.delta_max;
        out->angles = c.angles;
        out->threads = c.threads;
        out->deterministic = c.deterministic ? 1 : 0;
    });
}

pronylab_status pronylab_check_run(const char* theorem, const pronylab_check_config* cfg,
                                   const char* jsonl_path, const char* csv_path,
                                   int* premise_trials, int* violations) {
    if (!theorem || !cfg)
        return arg_error("check_run: null argument");
    int viols = 0;
    const pronylab_status st = guarded([&] {
        CheckConfig c;
        c.trials = cfg->trials;
        c.seed0 = cfg->seed0;
        c.n = cfg->n;
        c.d = cfg->d;
        c.max_nodes = cfg->max_nodes;
        c.c_min = cfg->c_min;
        c.kappa = cfg->kappa;
        c.delta_min = cfg->delta_min;
        c.delta_max = cfg->delta_max;
        c.angles = cfg->angles;
        c.threads = cfg->threads;
        c.deterministic = cfg->deterministic != 0;
        const CheckSummary s = run_check(theorem, c);
        if (jsonl_path)
            write_text_file(jsonl_path, check_to_jsonl(theorem, c, s));
        if (csv_path)
            write_text_file(csv_path, check_to_csv(theorem, c, s));
        if (premise_trials)
            *premise_trials = s.premise_trials;
        if (violations)
            *violations = s.violations;
        viols = s.violations;
    });
    if (st != PRONYLAB_OK)
        return st;
    if (viols > 0) {
        g_last_error = "a premise-holding trial violated its inequality";
        return PRONYLAB_ERR_THEOREM_VIOLATION;
    }
    return PRONYLAB_OK;
}

} // extern "C"
