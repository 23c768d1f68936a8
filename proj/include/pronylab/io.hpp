#ifndef PRONYLAB_IO_HPP
#define PRONYLAB_IO_HPP

#include "pronylab/localizer.hpp"
#include "pronylab/measure.hpp"

#include <string>

namespace pronylab {

/// Measure file format:
/// {"d": int, "nodes": [[f64;d]...], "weights": [[re,im]...]}
DiscreteMeasure read_measure_json(const std::string& path);
DiscreteMeasure parse_measure_json(const std::string& text);
std::string measure_to_json(const DiscreteMeasure& mu);
void write_measure_json(const DiscreteMeasure& mu, const std::string& path);

/// Moment file format: CSV with columns k_1..k_d, re, im (header line).
void write_moments_csv(const MomentVector& m, const std::string& path);
MomentVector read_moments_csv(const std::string& path);

/// 17-significant-digit float rendering used by every writer.
std::string format_double(double v);

/// Samples psi and psi_hat on [lo, hi]^d into CSV columns x_1..x_d, psi,
/// psi_hat. Full tensor grid for d <= 2 (grid <= 2001 per axis); axes and
/// the main diagonal only for d >= 3.
void write_psi_sample_csv(const LocalizerParams& p, int grid, double lo, double hi,
                          const std::string& path);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

} // namespace pronylab

#endif
