#include "splinaf/spline.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

#include "splinaf/errors.hpp"

namespace splinaf {

namespace {

void check_dims(std::size_t q, double dx) {
  if (q < 5 || q % 2 == 0)
    throw std::invalid_argument("table size must be odd and >= 5");
  if (!(dx > 0.0)) throw std::invalid_argument("knot spacing must be > 0");
}

}  // namespace

SplineLut::SplineLut(std::size_t q, double dx) : z_(q), dx_(dx) {
  check_dims(q, dx);
  // y = s needs the value at abscissa m*dx stored one slot past the segment
  // base, i.e. z_k = dx*(k - (q+1)/2).
  double mid = double((q + 1) / 2);
  for (std::size_t k = 0; k < q; ++k) z_[k] = dx * (double(k) - mid);
}

SplineLut::SplineLut(std::vector<double> z, double dx)
    : z_(std::move(z)), dx_(dx) {
  check_dims(z_.size(), dx);
}

SplinePoint SplineLut::locate(double s) const {
  double t = s / dx_;
  if (!std::isfinite(t)) throw SpanOutOfRange("non-finite spline input");
  double fl = std::floor(t);
  double u = t - fl;
  long i = long(fl) + long((z_.size() - 1) / 2);
  if (i < 0 || i > long(z_.size()) - 4)
    throw SpanOutOfRange("spline input " + std::to_string(s) +
                         " outside the table span");
  return SplinePoint{i, u,
                     {u * u * u, u * u, u, 1.0},
                     {3.0 * u * u, 2.0 * u, 1.0, 0.0}};
}

double SplineLut::interpolate(const SplinePoint& p) const {
  const double* z = z_.data() + p.i;
  double y = 0.0;
  for (int r = 0; r < 4; ++r) {
    const auto& row = kBasis[r];
    double mix = row[0] * z[0] + row[1] * z[1] + row[2] * z[2] + row[3] * z[3];
    y += p.u_vec[r] * mix;
  }
  return y;
}

double SplineLut::derivative(const SplinePoint& p) const {
  const double* z = z_.data() + p.i;
  double d = 0.0;
  for (int r = 0; r < 3; ++r) {  // du_vec[3] is always 0
    const auto& row = kBasis[r];
    double mix = row[0] * z[0] + row[1] * z[1] + row[2] * z[2] + row[3] * z[3];
    d += p.du_vec[r] * mix;
  }
  return d;
}

std::array<double, 4> SplineLut::segment(const SplinePoint& p) const {
  return {z_[p.i], z_[p.i + 1], z_[p.i + 2], z_[p.i + 3]};
}

void SplineLut::add_to_segment(const SplinePoint& p,
                               const std::array<double, 4>& d) {
  for (int j = 0; j < 4; ++j) z_[p.i + j] += d[j];
}

std::array<double, 4> basis_mix(const std::array<double, 4>& v) {
  std::array<double, 4> out{};
  for (int j = 0; j < 4; ++j) {
    out[j] = SplineLut::kBasis[0][j] * v[0] + SplineLut::kBasis[1][j] * v[1] +
             SplineLut::kBasis[2][j] * v[2] + SplineLut::kBasis[3][j] * v[3];
  }
  return out;
}

}  // namespace splinaf
