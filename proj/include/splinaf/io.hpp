#pragma once

#include <string>
#include <utility>
#include <vector>

#include "splinaf/sysid.hpp"

namespace splinaf {

// Full-precision decimal rendering of a double (round-trips exactly).
std::string format_double(double v);

// CSV with header "iter,<value_name>", one row per element.
void write_trace_csv(const std::string& path, const std::string& value_name,
                     const std::vector<double>& values);

// CSV with header "setting,sim_emse_db,pred_emse_db".
void write_theory_csv(const std::string& path,
                      const std::vector<TheoryPoint>& points);

// CSV with header "iter,reference,residual".
void write_waveform_csv(const std::string& path,
                        const std::vector<double>& reference,
                        const std::vector<double>& residual);

// "key = value" lines in the given order.
void write_summary(const std::string& path,
                   const std::vector<std::pair<std::string, std::string>>& kv);

// Minimal standalone SVG: axes, tick labels at the extremes, one polyline.
void write_svg(const std::string& path, const std::vector<double>& ys,
               const std::string& x_label, const std::string& y_label);

}  // namespace splinaf
