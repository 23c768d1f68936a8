#include "pronylab/io.hpp"

#include "pronylab/error.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace pronylab {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        fail(errc::io, "cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        fail(errc::io, "cannot write " + path);
    out << text;
    if (!out)
        fail(errc::io, "write failed for " + path);
}

DiscreteMeasure parse_measure_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        fail(errc::parse, std::string("measure JSON: ") + e.what());
    }
    try {
        const int d = j.at("d").get<int>();
        const auto& nodes = j.at("nodes");
        const auto& weights = j.at("weights");
        if (!nodes.is_array() || !weights.is_array() || nodes.size() != weights.size())
            fail(errc::parse, "measure JSON: nodes/weights must be arrays of equal length");
        std::vector<TorusPoint> pts;
        std::vector<cx> w;
        for (std::size_t i = 0; i < nodes.size(); ++i) {
            const auto& nd = nodes[i];
            if (!nd.is_array() || static_cast<int>(nd.size()) != d)
                fail(errc::parse, "measure JSON: node " + std::to_string(i) +
                                      " does not have " + std::to_string(d) + " coordinates");
            std::vector<double> c(d);
            for (int k = 0; k < d; ++k)
                c[k] = nd[k].get<double>();
            pts.emplace_back(std::move(c));
            const auto& wt = weights[i];
            if (!wt.is_array() || wt.size() != 2)
                fail(errc::parse,
                     "measure JSON: weight " + std::to_string(i) + " must be [re, im]");
            w.emplace_back(wt[0].get<double>(), wt[1].get<double>());
        }
        return DiscreteMeasure(NodeSet(std::move(pts)), std::move(w));
    } catch (const nlohmann::json::exception& e) {
        fail(errc::parse, std::string("measure JSON: ") + e.what());
    }
}

DiscreteMeasure read_measure_json(const std::string& path) {
    return parse_measure_json(read_text_file(path));
}

std::string measure_to_json(const DiscreteMeasure& mu) {
    std::string s = "{\"d\": " + std::to_string(mu.dim()) + ",\n \"nodes\": [";
    for (std::size_t i = 0; i < mu.size(); ++i) {
        s += (i ? ",\n   [" : "[");
        for (int k = 0; k < mu.dim(); ++k) {
            if (k)
                s += ", ";
            s += format_double(mu.nodes()[i][k]);
        }
        s += "]";
    }
    s += "],\n \"weights\": [";
    for (std::size_t i = 0; i < mu.size(); ++i) {
        if (i)
            s += ",\n   ";
        s += "[" + format_double(mu.weights()[i].real()) + ", " +
             format_double(mu.weights()[i].imag()) + "]";
    }
    s += "]}\n";
    return s;
}

void write_measure_json(const DiscreteMeasure& mu, const std::string& path) {
    write_text_file(path, measure_to_json(mu));
}

void write_moments_csv(const MomentVector& m, const std::string& path) {
    std::string s;
    const int d = m.freqs().dim();
    for (int i = 0; i < d; ++i)
        s += "k_" + std::to_string(i + 1) + ",";
    s += "re,im\n";
    for (std::size_t i = 0; i < m.size(); ++i) {
        for (int k = 0; k < d; ++k)
            s += std::to_string(m.freqs().members()[i][k]) + ",";
        s += format_double(m.values()[i].real()) + "," + format_double(m.values()[i].imag()) +
             "\n";
    }
    write_text_file(path, s);
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur.push_back(c);
        }
    }
    out.push_back(cur);
    return out;
}

bool numeric_token(const std::string& s) {
    char* end = nullptr;
    if (s.empty())
        return false;
    std::strtod(s.c_str(), &end);
    return end == s.c_str() + s.size();
}

} // namespace

void write_psi_sample_csv(const LocalizerParams& p, int grid, double lo, double hi,
                          const std::string& path) {
    if (grid < 1 || (p.d <= 2 && grid > 2001))
        fail(errc::invalid_argument, "psi sample: grid must be 1..2001 per axis");
    if (!(hi >= lo))
        fail(errc::invalid_argument, "psi sample: empty range");

    std::string s;
    for (int i = 0; i < p.d; ++i)
        s += "x_" + std::to_string(i + 1) + ",";
    s += "psi,psi_hat\n";

    auto coord = [&](int j) {
        return grid == 1 ? lo : lo + (hi - lo) * j / (grid - 1);
    };
    auto emit = [&](const std::vector<double>& x) {
        for (double c : x)
            s += format_double(c) + ",";
        s += format_double(psi_value(p, x)) + "," + format_double(psi_hat_value(p, x)) + "\n";
    };

    if (p.d <= 2) {
        std::vector<int> idx(p.d, 0);
        std::vector<double> x(p.d);
        while (true) {
            for (int i = 0; i < p.d; ++i)
                x[i] = coord(idx[i]);
            emit(x);
            int axis = p.d - 1;
            while (axis >= 0 && idx[axis] == grid - 1)
                idx[axis--] = 0;
            if (axis < 0)
                break;
            ++idx[axis];
        }
    } else {
        for (int axis = 0; axis < p.d; ++axis)
            for (int j = 0; j < grid; ++j) {
                std::vector<double> x(p.d, 0.0);
                x[axis] = coord(j);
                emit(x);
            }
        for (int j = 0; j < grid; ++j) {
            std::vector<double> x(p.d, coord(j));
            emit(x);
        }
    }
    write_text_file(path, s);
}

MomentVector read_moments_csv(const std::string& path) {
    std::istringstream in(read_text_file(path));
    std::string line;
    std::vector<std::vector<int>> freqs;
    std::vector<cx> values;
    int d = -1;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line == "\r")
            continue;
        std::vector<std::string> tok = split_csv_line(line);
        if (lineno == 1 && !tok.empty() && !numeric_token(tok[0]))
            continue; // header
        if (static_cast<int>(tok.size()) < 3)
            fail(errc::parse, path + ": line " + std::to_string(lineno) + ": expected at least 3 columns");
        const int dd = static_cast<int>(tok.size()) - 2;
        if (d < 0)
            d = dd;
        else if (d != dd)
            fail(errc::parse, path + ": line " + std::to_string(lineno) + ": inconsistent column count");
        std::vector<int> k(d);
        for (int i = 0; i < d; ++i) {
            if (!numeric_token(tok[i]))
                fail(errc::parse, path + ": line " + std::to_string(lineno) + ": field " +
                                      std::to_string(i + 1) + " is not a number");
            const double v = std::strtod(tok[i].c_str(), nullptr);
            k[i] = static_cast<int>(std::llround(v));
            if (std::fabs(v - k[i]) > 1e-9)
                fail(errc::parse, path + ": line " + std::to_string(lineno) + ": frequency not an integer");
        }
        for (int i = d; i < d + 2; ++i)
            if (!numeric_token(tok[i]))
                fail(errc::parse, path + ": line " + std::to_string(lineno) + ": field " +
                                      std::to_string(i + 1) + " is not a number");
        freqs.push_back(std::move(k));
        values.emplace_back(std::strtod(tok[d].c_str(), nullptr),
                            std::strtod(tok[d + 1].c_str(), nullptr));
    }
    if (freqs.empty())
        fail(errc::parse, path + ": no moment rows");

    // Infer the ball: try l2 first, fall back to the full grid.
    int n = 0;
    for (const auto& k : freqs)
        for (int c : k)
            n = std::max(n, std::abs(c));
    for (BallNorm p : {BallNorm::l2, BallNorm::linf}) {
        FrequencySet fs(d, n, p);
        if (fs.size() != freqs.size())
            continue;
        // Reorder values into enumeration order; fail on mismatch.
        std::vector<cx> ordered(fs.size());
        std::vector<char> seen(fs.size(), 0);
        bool ok = true;
        for (std::size_t row = 0; row < freqs.size() && ok; ++row) {
            bool placed = false;
            for (std::size_t i = 0; i < fs.size(); ++i)
                if (!seen[i] && fs.members()[i] == freqs[row]) {
                    ordered[i] = values[row];
                    seen[i] = 1;
                    placed = true;
                    break;
                }
            ok = placed;
        }
        if (ok)
            return MomentVector(std::move(fs), std::move(ordered));
    }
    fail(errc::parse, path + ": rows do not form a complete frequency ball");
}

} // namespace pronylab
