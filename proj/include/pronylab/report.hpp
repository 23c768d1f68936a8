#ifndef PRONYLAB_REPORT_HPP
#define PRONYLAB_REPORT_HPP

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace pronylab {

/// Outcome of one checked inequality. The checked statement is
/// lhs >= sum of rhs_terms; margin is the slack. Reports from inputs
/// outside a theorem's admissibility class carry premise_holds = false and
/// are never counted as violations.
struct TheoremReport {
    std::string theorem;
    bool premise_holds = false;
    double lhs = 0.0;
    std::vector<std::pair<std::string, double>> rhs_terms;
    double margin = 0.0;
    bool satisfied = true; ///< premise_holds implies inequality + structure
    std::map<std::string, double> meta;
    std::map<std::string, std::string> meta_text;

    double rhs_total() const {
        double s = 0.0;
        for (const auto& [name, v] : rhs_terms)
            s += v;
        return s;
    }
};

/// Roundoff slack for inequality assertions.
double report_slack(double lhs, double rhs_total);

/// Fills margin/satisfied from lhs and rhs_terms under the standard slack.
void finalize_inequality(TheoremReport& r, bool structure_ok = true);

/// One-line JSON rendering (17 significant digits on every float).
std::string report_to_json(const TheoremReport& r);

} // namespace pronylab

#endif
