#include "splinaf/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <stdexcept>

namespace splinaf {

std::string format_double(double v) {
  // shortest decimal form that parses back to the same bits
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);  // binary: stable newlines
  if (!out) throw std::runtime_error("cannot write " + path);
  return out;
}

}  // namespace

void write_trace_csv(const std::string& path, const std::string& value_name,
                     const std::vector<double>& values) {
  auto out = open_out(path);
  out << "iter," << value_name << "\n";
  for (std::size_t k = 0; k < values.size(); ++k)
    out << k << "," << format_double(values[k]) << "\n";
}

void write_theory_csv(const std::string& path,
                      const std::vector<TheoryPoint>& points) {
  auto out = open_out(path);
  out << "setting,sim_emse_db,pred_emse_db\n";
  for (const TheoryPoint& p : points)
    out << p.setting << "," << format_double(p.sim_emse_db) << ","
        << format_double(p.pred_emse_db) << "\n";
}

void write_waveform_csv(const std::string& path,
                        const std::vector<double>& reference,
                        const std::vector<double>& residual) {
  if (reference.size() != residual.size())
    throw std::invalid_argument("waveform lengths differ");
  auto out = open_out(path);
  out << "iter,reference,residual\n";
  for (std::size_t k = 0; k < reference.size(); ++k)
    out << k << "," << format_double(reference[k]) << ","
        << format_double(residual[k]) << "\n";
}

void write_summary(const std::string& path,
                   const std::vector<std::pair<std::string, std::string>>& kv) {
  auto out = open_out(path);
  for (const auto& [k, v] : kv) out << k << " = " << v << "\n";
}

void write_svg(const std::string& path, const std::vector<double>& ys,
               const std::string& x_label, const std::string& y_label) {
  const double width = 840.0, height = 520.0, margin = 60.0;
  double lo = 0.0, hi = 1.0;
  bool any = false;
  for (double y : ys) {
    if (!std::isfinite(y)) continue;
    if (!any) {
      lo = hi = y;
      any = true;
    } else {
      lo = std::min(lo, y);
      hi = std::max(hi, y);
    }
  }
  if (!any) {
    lo = 0.0;
    hi = 1.0;
  }
  if (hi == lo) hi = lo + 1.0;

  auto sx = [&](std::size_t k) {
    double t = ys.size() > 1 ? double(k) / double(ys.size() - 1) : 0.0;
    return margin + t * (width - 2.0 * margin);
  };
  auto sy = [&](double y) {
    double t = (y - lo) / (hi - lo);
    return height - margin - t * (height - 2.0 * margin);
  };

  auto out = open_out(path);
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
      << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << " "
      << height << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  // axes
  out << "<line x1=\"" << margin << "\" y1=\"" << height - margin
      << "\" x2=\"" << width - margin << "\" y2=\"" << height - margin
      << "\" stroke=\"black\"/>\n";
  out << "<line x1=\"" << margin << "\" y1=\"" << margin << "\" x2=\""
      << margin << "\" y2=\"" << height - margin << "\" stroke=\"black\"/>\n";
  // extreme tick labels
  out << "<text x=\"" << margin << "\" y=\"" << height - margin + 20.0
      << "\" font-size=\"12\">0</text>\n";
  out << "<text x=\"" << width - margin - 10.0 << "\" y=\""
      << height - margin + 20.0 << "\" font-size=\"12\">"
      << (ys.empty() ? 0 : ys.size() - 1) << "</text>\n";
  out << "<text x=\"" << 8.0 << "\" y=\"" << height - margin
      << "\" font-size=\"12\">" << format_double(lo) << "</text>\n";
  out << "<text x=\"" << 8.0 << "\" y=\"" << margin + 4.0
      << "\" font-size=\"12\">" << format_double(hi) << "</text>\n";
  // axis names
  out << "<text x=\"" << width / 2.0 << "\" y=\"" << height - 12.0
      << "\" font-size=\"14\" text-anchor=\"middle\">" << x_label
      << "</text>\n";
  out << "<text x=\"16\" y=\"" << height / 2.0
      << "\" font-size=\"14\" text-anchor=\"middle\" transform=\"rotate(-90 "
      << 16.0 << " " << height / 2.0 << ")\">" << y_label << "</text>\n";

  out << "<polyline fill=\"none\" stroke=\"#1f6fb2\" stroke-width=\"1\" "
         "points=\"";
  bool pen_down = false;
  for (std::size_t k = 0; k < ys.size(); ++k) {
    if (!std::isfinite(ys[k])) {
      pen_down = false;
      continue;
    }
    if (pen_down) out << ' ';
    out << sx(k) << ',' << sy(ys[k]);
    pen_down = true;
  }
  out << "\"/>\n</svg>\n";
}

}  // namespace splinaf
