#include "pronylab.h"

#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <string>

namespace {

std::string tmp_path(const std::string& name) {
    return std::string("capi_") + name;
}

std::string slurp(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    REQUIRE(f.good());
    return std::string(std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>());
}

} // namespace

TEST_SUITE_BEGIN("capi");

TEST_CASE("status names and error text") {
    CHECK(std::string(pronylab_status_name(PRONYLAB_OK)) == "ok");
    CHECK(std::string(pronylab_status_name(PRONYLAB_ERR_PARSE)) == "parse-error");
    pronylab_measure* mu = nullptr;
    CHECK(pronylab_measure_read_json("does-not-exist.json", &mu) == PRONYLAB_ERR_IO);
    CHECK(std::string(pronylab_last_error()).size() > 0);
}

TEST_CASE("measure round trip and accessors") {
    const double nodes[4] = {0.2, 0.3, 0.7, 0.9};
    const double weights[4] = {0.5, 0.0, 0.5, 0.0};
    pronylab_measure* mu = nullptr;
    REQUIRE(pronylab_measure_create(2, 2, nodes, weights, &mu) == PRONYLAB_OK);
    CHECK(pronylab_measure_dim(mu) == 2);
    CHECK(pronylab_measure_size(mu) == 2);
    double node[2], re, im;
    REQUIRE(pronylab_measure_atom(mu, 1, node, &re, &im) == PRONYLAB_OK);
    CHECK(node[0] == doctest::Approx(0.7));
    CHECK(re == doctest::Approx(0.5));
    double sep = 0.0;
    REQUIRE(pronylab_measure_separation(mu, &sep) == PRONYLAB_OK);
    CHECK(sep == doctest::Approx(0.5));

    const std::string path = tmp_path("measure.json");
    REQUIRE(pronylab_measure_write_json(mu, path.c_str()) == PRONYLAB_OK);
    pronylab_measure* back = nullptr;
    REQUIRE(pronylab_measure_read_json(path.c_str(), &back) == PRONYLAB_OK);
    const std::string path2 = tmp_path("measure2.json");
    REQUIRE(pronylab_measure_write_json(back, path2.c_str()) == PRONYLAB_OK);
    CHECK(slurp(path) == slurp(path2));
    pronylab_measure_free(mu);
    pronylab_measure_free(back);
}

TEST_CASE("malformed measure JSON is a parse error with a message") {
    const std::string path = tmp_path("bad.json");
    std::ofstream(path) << "{\"d\": 1, \"nodes\": [[0.1]], \"weights\": [[1.0]]}";
    pronylab_measure* mu = nullptr;
    CHECK(pronylab_measure_read_json(path.c_str(), &mu) == PRONYLAB_ERR_PARSE);
    CHECK(std::string(pronylab_last_error()).find("weight") != std::string::npos);

    std::ofstream(path) << "this is not json";
    CHECK(pronylab_measure_read_json(path.c_str(), &mu) == PRONYLAB_ERR_PARSE);
}

TEST_CASE("moments round trip and esprit through the C surface") {
    const double nodes[2] = {0.2, 0.7};
    const double weights[4] = {0.5, 0.0, 0.5, 0.0};
    pronylab_measure* mu = nullptr;
    REQUIRE(pronylab_measure_create(1, 2, nodes, weights, &mu) == PRONYLAB_OK);

    pronylab_moments* m = nullptr;
    REQUIRE(pronylab_moments_compute(mu, 16, 2, &m) == PRONYLAB_OK);
    CHECK(pronylab_moments_count(m) == 33);
    CHECK(pronylab_moments_dim(m) == 1);

    const std::string csv = tmp_path("moments.csv");
    REQUIRE(pronylab_moments_write_csv(m, csv.c_str()) == PRONYLAB_OK);
    pronylab_moments* m2 = nullptr;
    REQUIRE(pronylab_moments_read_csv(csv.c_str(), &m2) == PRONYLAB_OK);
    CHECK(pronylab_moments_count(m2) == 33);

    pronylab_measure* rec = nullptr;
    pronylab_esprit_diag diag{};
    REQUIRE(pronylab_esprit_recover(m2, 2, &rec, &diag) == PRONYLAB_OK);
    CHECK(diag.subspace_reliable == 1);
    double node[1], re, im;
    REQUIRE(pronylab_measure_atom(rec, 0, node, &re, &im) == PRONYLAB_OK);
    CHECK(node[0] == doctest::Approx(0.2).epsilon(1e-8));

    pronylab_measure_free(mu);
    pronylab_measure_free(rec);
    pronylab_moments_free(m);
    pronylab_moments_free(m2);

    // malformed CSV
    const std::string bad = tmp_path("bad.csv");
    std::ofstream(bad) << "k_1,re,im\n0,1.0\n";
    pronylab_moments* mb = nullptr;
    CHECK(pronylab_moments_read_csv(bad.c_str(), &mb) == PRONYLAB_ERR_PARSE);
}

TEST_CASE("w1 through the C surface") {
    const double n1[1] = {0.0};
    const double w1v[2] = {1.0, 0.0};
    const double n2[1] = {0.3};
    pronylab_measure *a = nullptr, *b = nullptr;
    REQUIRE(pronylab_measure_create(1, 1, n1, w1v, &a) == PRONYLAB_OK);
    REQUIRE(pronylab_measure_create(1, 1, n2, w1v, &b) == PRONYLAB_OK);
    pronylab_w1_result r{};
    REQUIRE(pronylab_w1(a, b, 360, &r) == PRONYLAB_OK);
    CHECK(r.value == doctest::Approx(0.3).epsilon(1e-9));
    CHECK(r.tv_bound == doctest::Approx(2.0 / std::sqrt(2.0)).epsilon(1e-12));
    CHECK(r.has_matched_bound == 1);
    CHECK(r.matched_bound == doctest::Approx(0.3 * std::sqrt(2.0)).epsilon(1e-12));
    CHECK(r.gap <= 1e-6 * r.value);

    // different node counts: no matched-pair bound
    const double n3[2] = {0.1, 0.6};
    const double w3[4] = {0.5, 0.0, 0.5, 0.0};
    pronylab_measure* c = nullptr;
    REQUIRE(pronylab_measure_create(1, 2, n3, w3, &c) == PRONYLAB_OK);
    pronylab_w1_result r2{};
    REQUIRE(pronylab_w1(a, c, 180, &r2) == PRONYLAB_OK);
    CHECK(r2.has_matched_bound == 0);
    CHECK(r2.value > 0.0);
    pronylab_measure_free(a);
    pronylab_measure_free(b);
    pronylab_measure_free(c);
}

TEST_CASE("psi sample file") {
    const std::string path = tmp_path("psi.csv");
    REQUIRE(pronylab_psi_sample_csv(2, 15, std::sqrt(2.0) / 15, "hann", 11, -0.1, 0.1,
                                    path.c_str()) == PRONYLAB_OK);
    const std::string text = slurp(path);
    CHECK(text.rfind("x_1,x_2,psi,psi_hat\n", 0) == 0);
    CHECK(pronylab_psi_sample_csv(2, 15, 0.1, "nope", 11, -0.1, 0.1, path.c_str()) ==
          PRONYLAB_ERR_INVALID_ARGUMENT);
    CHECK(pronylab_psi_sample_csv(2, 15, 0.1, "hann", 5000, -0.1, 0.1, path.c_str()) ==
          PRONYLAB_ERR_INVALID_ARGUMENT);
}

TEST_CASE("vandermonde pair report through the C surface") {
    const int n = 16;
    const double q = std::sqrt(2.0) / n;
    const double tau = 0.3 * q;
    const double nodes[8] = {0.2, 0.2, 0.2 + tau, 0.2, 0.7, 0.7, 0.7 + tau, 0.7};
    double weights[8];
    for (int i = 0; i < 4; ++i) {
        weights[2 * i] = 0.25;
        weights[2 * i + 1] = 0.0;
    }
    pronylab_measure* y = nullptr;
    REQUIRE(pronylab_measure_create(2, 4, nodes, weights, &y) == PRONYLAB_OK);
    pronylab_vandermonde_result r{};
    REQUIRE(pronylab_vandermonde_pairs(y, n, &r) == PRONYLAB_OK);
    CHECK(r.premise_ok == 1);
    CHECK(r.ratio >= 1.0);
    CHECK(r.sigma_min >= r.bound);
    CHECK(r.nagel_delta_required > r.delta_required);
    pronylab_measure_free(y);
}

TEST_CASE("check driver through the C surface") {
    pronylab_check_config cfg{};
    CHECK(pronylab_check_defaults("no-such-theorem", &cfg) == PRONYLAB_ERR_UNKNOWN_THEOREM);
    REQUIRE(pronylab_check_defaults("univariate", &cfg) == PRONYLAB_OK);
    CHECK(cfg.n == 32);
    cfg.trials = 4;
    cfg.deterministic = 1;
    const std::string jsonl = tmp_path("check.jsonl");
    const std::string csv = tmp_path("check.csv");
    int premise = -1, violations = -1;
    REQUIRE(pronylab_check_run("univariate", &cfg, jsonl.c_str(), csv.c_str(), &premise,
                               &violations) == PRONYLAB_OK);
    CHECK(violations == 0);
    CHECK(premise >= 0);
    const std::string text = slurp(jsonl);
    CHECK(text.find("\"config\"") != std::string::npos);
    CHECK(text.find("\"theorem\":\"univariate\"") != std::string::npos);
    const std::string csvtext = slurp(csv);
    CHECK(csvtext.find("seed,premise,satisfied,lhs,rhs_total,margin") != std::string::npos);
}

TEST_SUITE_END();
