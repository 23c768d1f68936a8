// Command-line front end; everything goes through the C API in pronylab.h.

#include "pronylab.h"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <memory>
#include <string>

namespace {

constexpr int exit_usage = 1;
constexpr int exit_numerical = 2;
constexpr int exit_violation = 3;

int exit_code_for(pronylab_status st) {
    switch (st) {
    case PRONYLAB_OK:
        return 0;
    case PRONYLAB_ERR_NUMERICAL:
        return exit_numerical;
    case PRONYLAB_ERR_THEOREM_VIOLATION:
        return exit_violation;
    default:
        return exit_usage;
    }
}

int report_failure(pronylab_status st, const char* what) {
    std::fprintf(stderr, "pronylab: %s: %s (%s)\n", what, pronylab_last_error(),
                 pronylab_status_name(st));
    return exit_code_for(st);
}

std::string f17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

struct MeasureHandle {
    pronylab_measure* p = nullptr;
    ~MeasureHandle() { pronylab_measure_free(p); }
};

struct MomentsHandle {
    pronylab_moments* p = nullptr;
    ~MomentsHandle() { pronylab_moments_free(p); }
};

int cmd_moments(const std::string& in, int n, int p, const std::string& out) {
    MeasureHandle mu;
    if (auto st = pronylab_measure_read_json(in.c_str(), &mu.p); st != PRONYLAB_OK)
        return report_failure(st, in.c_str());
    MomentsHandle m;
    if (auto st = pronylab_moments_compute(mu.p, n, p == 2 ? 2 : 0, &m.p); st != PRONYLAB_OK)
        return report_failure(st, "moments");
    if (auto st = pronylab_moments_write_csv(m.p, out.c_str()); st != PRONYLAB_OK)
        return report_failure(st, out.c_str());
    std::printf("wrote %zu moments (d=%d) to %s\n", pronylab_moments_count(m.p),
                pronylab_moments_dim(m.p), out.c_str());
    return 0;
}

int cmd_esprit(const std::string& in, std::size_t m_nodes, const std::string& out) {
    MomentsHandle m;
    if (auto st = pronylab_moments_read_csv(in.c_str(), &m.p); st != PRONYLAB_OK)
        return report_failure(st, in.c_str());
    MeasureHandle rec;
    pronylab_esprit_diag diag{};
    if (auto st = pronylab_esprit_recover(m.p, m_nodes, &rec.p, &diag); st != PRONYLAB_OK)
        return report_failure(st, "esprit");
    if (auto st = pronylab_measure_write_json(rec.p, out.c_str()); st != PRONYLAB_OK)
        return report_failure(st, out.c_str());
    std::printf("recovered %zu nodes; singular gap %.6g (%s)\n", pronylab_measure_size(rec.p),
                diag.singular_gap, diag.subspace_reliable ? "reliable" : "UNRELIABLE");
    return 0;
}

int cmd_psi_sample(int d, int n, double q, const std::string& window, int grid, double lo,
                   double hi, const std::string& out) {
    if (q <= 0.0)
        q = std::sqrt(static_cast<double>(d)) / n;
    if (hi <= lo) {
        lo = -q;
        hi = q;
    }
    if (auto st = pronylab_psi_sample_csv(d, n, q, window.c_str(), grid, lo, hi, out.c_str());
        st != PRONYLAB_OK)
        return report_failure(st, "psi-sample");
    std::printf("wrote psi samples to %s\n", out.c_str());
    return 0;
}

int cmd_w1(const std::string& a, const std::string& b, int angles, const std::string& out) {
    MeasureHandle ma, mb;
    if (auto st = pronylab_measure_read_json(a.c_str(), &ma.p); st != PRONYLAB_OK)
        return report_failure(st, a.c_str());
    if (auto st = pronylab_measure_read_json(b.c_str(), &mb.p); st != PRONYLAB_OK)
        return report_failure(st, b.c_str());
    pronylab_w1_result r{};
    if (auto st = pronylab_w1(ma.p, mb.p, angles, &r); st != PRONYLAB_OK)
        return report_failure(st, "w1");
    std::string json = "{\"w1\": " + f17(r.value) + ", \"theta\": " + f17(r.theta) +
                       ", \"tv_bound\": " + f17(r.tv_bound) + ", \"matched_bound\": " +
                       (r.has_matched_bound ? f17(r.matched_bound) : std::string("null")) +
                       "}\n";
    if (out.empty()) {
        std::fputs(json.c_str(), stdout);
    } else {
        std::ofstream f(out, std::ios::binary);
        f << json;
        if (!f) {
            std::fprintf(stderr, "pronylab: cannot write %s\n", out.c_str());
            return exit_usage;
        }
    }
    return 0;
}

int cmd_vandermonde(const std::string& nodes, int n, const std::string& out) {
    MeasureHandle mu;
    if (auto st = pronylab_measure_read_json(nodes.c_str(), &mu.p); st != PRONYLAB_OK)
        return report_failure(st, nodes.c_str());
    pronylab_vandermonde_result r{};
    if (auto st = pronylab_vandermonde_pairs(mu.p, n, &r); st != PRONYLAB_OK)
        return report_failure(st, "vandermonde");
    std::string json = std::string("{\"sigma_min\": ") + f17(r.sigma_min) +
                       ", \"bound\": " + f17(r.bound) + ", \"margin\": " + f17(r.margin) +
                       ", \"ratio\": " + f17(r.ratio) + ", \"tau\": " + f17(r.tau) +
                       ", \"delta\": " + f17(r.delta) +
                       ", \"premise\": " + (r.premise_ok ? "true" : "false") +
                       ", \"nagel\": {\"sigma_min\": " + f17(r.nagel_sigma_min) +
                       ", \"bound\": " + f17(r.nagel_bound) +
                       ", \"margin\": " + f17(r.nagel_margin) +
                       ", \"delta_required\": " + f17(r.nagel_delta_required) +
                       ", \"premise\": " + (r.nagel_premise_ok ? "true" : "false") + "}}\n";
    if (out.empty()) {
        std::fputs(json.c_str(), stdout);
    } else {
        std::ofstream f(out, std::ios::binary);
        f << json;
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"stability laboratory for trigonometric moment problems on the torus"};
    app.require_subcommand(1);

    // moments
    std::string in_path, out_path;
    int n_freq = 16, norm_p = 2;
    auto* moments = app.add_subcommand("moments", "trigonometric moments of a measure");
    moments->add_option("--in", in_path, "measure JSON")->required();
    moments->add_option("--N", n_freq, "frequency radius")->required();
    moments->add_option("--p", norm_p, "ball norm: 2 or 0 for the full grid")
        ->default_val(2);
    moments->add_option("--out", out_path, "output CSV")->required();

    // esprit
    std::string es_in, es_out;
    std::size_t es_m = 1;
    auto* esprit = app.add_subcommand("esprit", "recover a measure from univariate moments");
    esprit->add_option("--in", es_in, "moment CSV")->required();
    esprit->add_option("--M", es_m, "number of nodes")->required();
    esprit->add_option("--out", es_out, "output measure JSON")->required();

    // psi-sample
    int ps_d = 2, ps_n = 15, ps_grid = 201;
    double ps_q = 0.0, ps_lo = 0.0, ps_hi = 0.0;
    std::string ps_window = "hann", ps_out;
    auto* psis = app.add_subcommand("psi-sample", "sample the localizing function and transform");
    psis->add_option("--d", ps_d, "dimension")->default_val(2);
    psis->add_option("--N", ps_n, "frequency radius")->default_val(15);
    psis->add_option("--q", ps_q, "support parameter (default sqrt(d)/N)");
    psis->add_option("--window", ps_window, "hann | parabolic | cosine")->default_val("hann");
    psis->add_option("--grid", ps_grid, "points per axis")->default_val(201);
    psis->add_option("--lo", ps_lo, "range start (default -q)");
    psis->add_option("--hi", ps_hi, "range end (default q)");
    psis->add_option("--out", ps_out, "output CSV")->required();

    // w1
    std::string w1_a, w1_b, w1_out;
    int w1_angles = 360;
    auto* w1 = app.add_subcommand("w1", "Wasserstein distance between two measures");
    w1->add_option("--a", w1_a, "first measure JSON")->required();
    w1->add_option("--b", w1_b, "second measure JSON")->required();
    w1->add_option("--angles", w1_angles, "theta grid size")->default_val(360);
    w1->add_option("--out", w1_out, "output JSON (stdout if omitted)");

    // vandermonde
    std::string vd_nodes, vd_out;
    int vd_n = 16;
    auto* vd = app.add_subcommand("vandermonde", "pair-cluster singular value bounds");
    vd->add_option("--nodes", vd_nodes, "node set as measure JSON")->required();
    vd->add_option("--N", vd_n, "frequency radius")->required();
    vd->add_option("--out", vd_out, "output JSON (stdout if omitted)");

    // check
    std::string ck_theorem, ck_jsonl, ck_csv, ck_config;
    int ck_trials = -1, ck_n = -1, ck_d = -1, ck_m = -1, ck_angles = -1, ck_threads = -1;
    std::uint64_t ck_seed0 = 0;
    bool ck_seed0_set = false, ck_deterministic = false;
    double ck_cmin = -1.0, ck_kappa = -1.0, ck_dmin = -1.0, ck_dmax = -1.0;
    auto* ck = app.add_subcommand("check", "Monte-Carlo certification of one theorem");
    ck->add_option("--theorem", ck_theorem,
                   "univariate | diederichs1d | 2d-l2 | 2d-linf | highd | global-w1 | "
                   "md-order | esprit | vandermonde-pairs")
        ->required();
    ck->add_option("--trials", ck_trials, "trial count");
    ck->add_option("--seed0", ck_seed0, "first seed")->each([&](const std::string&) {
        ck_seed0_set = true;
    });
    ck->add_option("--N", ck_n, "frequency radius");
    ck->add_option("--d", ck_d, "dimension");
    ck->add_option("--M", ck_m, "max node count");
    ck->add_option("--c-min", ck_cmin, "minimal weight modulus");
    ck->add_option("--kappa", ck_kappa, "separation factor (univariate)");
    ck->add_option("--delta-min", ck_dmin, "jitter range low");
    ck->add_option("--delta-max", ck_dmax, "jitter range high");
    ck->add_option("--angles", ck_angles, "theta grid (global-w1)");
    ck->add_option("--threads", ck_threads, "worker threads (0 = all)");
    ck->add_option("--config", ck_config, "JSON config file (flags override it)");
    ck->add_flag("--deterministic", ck_deterministic, "omit timestamps from outputs");
    ck->add_option("--out-jsonl", ck_jsonl, "JSON-lines report path");
    ck->add_option("--out-csv", ck_csv, "CSV summary path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : exit_usage;
    }

    if (moments->parsed())
        return cmd_moments(in_path, n_freq, norm_p, out_path);
    if (esprit->parsed())
        return cmd_esprit(es_in, es_m, es_out);
    if (psis->parsed())
        return cmd_psi_sample(ps_d, ps_n, ps_q, ps_window, ps_grid, ps_lo, ps_hi, ps_out);
    if (w1->parsed())
        return cmd_w1(w1_a, w1_b, w1_angles, w1_out);
    if (vd->parsed())
        return cmd_vandermonde(vd_nodes, vd_n, vd_out);

    // check: defaults <- config file <- explicit flags
    pronylab_check_config cfg{};
    if (auto st = pronylab_check_defaults(ck_theorem.c_str(), &cfg); st != PRONYLAB_OK)
        return report_failure(st, ck_theorem.c_str());
    if (!ck_config.empty()) {
        std::ifstream f(ck_config);
        if (!f) {
            std::fprintf(stderr, "pronylab: cannot open config %s\n", ck_config.c_str());
            return exit_usage;
        }
        nlohmann::json j;
        try {
            f >> j;
        } catch (const std::exception& e) {
            std::fprintf(stderr, "pronylab: config %s: %s\n", ck_config.c_str(), e.what());
            return exit_usage;
        }
        if (j.contains("trials")) cfg.trials = j["trials"].get<int>();
        if (j.contains("seed0")) cfg.seed0 = j["seed0"].get<std::uint64_t>();
        if (j.contains("N")) cfg.n = j["N"].get<int>();
        if (j.contains("d")) cfg.d = j["d"].get<int>();
        if (j.contains("max_nodes")) cfg.max_nodes = j["max_nodes"].get<int>();
        if (j.contains("c_min")) cfg.c_min = j["c_min"].get<double>();
        if (j.contains("kappa")) cfg.kappa = j["kappa"].get<double>();
        if (j.contains("delta_min")) cfg.delta_min = j["delta_min"].get<double>();
        if (j.contains("delta_max")) cfg.delta_max = j["delta_max"].get<double>();
        if (j.contains("angles")) cfg.angles = j["angles"].get<int>();
        if (j.contains("threads")) cfg.threads = j["threads"].get<int>();
        if (j.contains("deterministic")) cfg.deterministic = j["deterministic"].get<bool>() ? 1 : 0;
    }
    if (ck_trials >= 0) cfg.trials = ck_trials;
    if (ck_seed0_set) cfg.seed0 = ck_seed0;
    if (ck_n >= 0) cfg.n = ck_n;
    if (ck_d >= 0) cfg.d = ck_d;
    if (ck_m >= 0) cfg.max_nodes = ck_m;
    if (ck_cmin >= 0.0) cfg.c_min = ck_cmin;
    if (ck_kappa >= 0.0) cfg.kappa = ck_kappa;
    if (ck_dmin >= 0.0) cfg.delta_min = ck_dmin;
    if (ck_dmax >= 0.0) cfg.delta_max = ck_dmax;
    if (ck_angles >= 0) cfg.angles = ck_angles;
    if (ck_threads >= 0) cfg.threads = ck_threads;
    if (ck_deterministic) cfg.deterministic = 1;

    int premise = 0, violations = 0;
    const pronylab_status st = pronylab_check_run(
        ck_theorem.c_str(), &cfg, ck_jsonl.empty() ? nullptr : ck_jsonl.c_str(),
        ck_csv.empty() ? nullptr : ck_csv.c_str(), &premise, &violations);
    if (st != PRONYLAB_OK && st != PRONYLAB_ERR_THEOREM_VIOLATION)
        return report_failure(st, "check");
    std::printf("%s: %d trials, %d with premise, %d violations\n", ck_theorem.c_str(),
                cfg.trials, premise, violations);
    return st == PRONYLAB_OK ? 0 : exit_violation;
}
