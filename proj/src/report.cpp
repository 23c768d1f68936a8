#include "pronylab/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace pronylab {

double report_slack(double lhs, double rhs_total) {
    return 1e-10 * std::max({std::fabs(lhs), std::fabs(rhs_total), 1e-300});
}

void finalize_inequality(TheoremReport& r, bool structure_ok) {
    const double rhs = r.rhs_total();
    r.margin = r.lhs - rhs;
    if (!r.premise_holds) {
        r.satisfied = true;
        r.meta["conclusion_holds_anyway"] =
            (structure_ok && r.margin >= -report_slack(r.lhs, rhs)) ? 1.0 : 0.0;
        return;
    }
    r.satisfied = structure_ok && r.margin >= -report_slack(r.lhs, rhs);
}

namespace {

std::string f17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    // JSON needs inf/nan spelled as something parseable; they only occur in
    // diagnostic meta fields.
    if (std::isinf(v))
        return v > 0 ? "1e308" : "-1e308";
    if (std::isnan(v))
        return "null";
    return buf;
}

std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\')
            out.push_back('\\');
        out.push_back(c);
    }
    return out;
}

} // namespace

std::string report_to_json(const TheoremReport& r) {
    std::string s = "{\"theorem\":\"" + escape(r.theorem) + "\"";
    s += ",\"premise\":";
    s += r.premise_holds ? "true" : "false";
    s += ",\"lhs\":" + f17(r.lhs);
    s += ",\"rhs_terms\":{";
    bool first = true;
    for (const auto& [name, v] : r.rhs_terms) {
        if (!first)
            s += ",";
        first = false;
        s += "\"" + escape(name) + "\":" + f17(v);
    }
    s += "},\"margin\":" + f17(r.margin);
    s += ",\"satisfied\":";
    s += r.satisfied ? "true" : "false";
    s += ",\"meta\":{";
    first = true;
    for (const auto& [name, v] : r.meta) {
        if (!first)
            s += ",";
        first = false;
        s += "\"" + escape(name) + "\":" + f17(v);
    }
    for (const auto& [name, v] : r.meta_text) {
        if (!first)
            s += ",";
        first = false;
        s += "\"" + escape(name) + "\":\"" + escape(v) + "\"";
    }
    s += "}}";
    return s;
}

} // namespace pronylab
