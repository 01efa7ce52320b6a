#pragma once

#include <string>
#include <vector>

namespace tfinv {

/* Byte-stable number formatting for reports: fixed "%.12g", with negative
 * zero normalized and non-finite values spelled "inf"/"-inf"/"nan" so CSV
 * output is identical across runs and worker counts. */
std::string fmt_g(double v);

/* One CSV line from already-formatted cells (no quoting needed: cells are
 * identifiers and fmt_g numbers by construction). */
std::string csv_line(const std::vector<std::string>& cells);

} // namespace tfinv
