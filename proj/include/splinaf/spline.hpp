#pragma once

#include <array>
#include <cstddef>
#include <vector>

namespace splinaf {

// Local coordinates of a point on the spline: the active control segment
// starts at index i, u in [0,1) is the position inside the span, and the
// power vectors are cached for reuse by interpolation and the update laws.
struct SplinePoint {
  long i;
  double u;
  std::array<double, 4> u_vec;   // [u^3, u^2, u, 1]
  std::array<double, 4> du_vec;  // [3u^2, 2u, 1, 0]
};

// Uniform Catmull-Rom lookup table. q control points z_0..z_{q-1} at knot
// spacing dx; the curve through segment i blends z_i..z_{i+3}. Inputs whose
// segment would leave the table raise SpanOutOfRange; callers size tables so
// the operating range stays inside.
class SplineLut {
 public:
  // Blending matrix; y(u) = u_vec^T * kBasis * [z_i..z_{i+3}].
  static constexpr std::array<std::array<double, 4>, 4> kBasis = {{
      {-0.5, 1.5, -1.5, 0.5},
      {1.0, -2.5, 2.0, -0.5},
      {-0.5, 0.0, 0.5, 0.0},
      {0.0, 1.0, 0.0, 0.0},
  }};

  static constexpr std::array<double, 4> basis_row(int r) { return kBasis[r]; }

  // Identity initialization: the table that reproduces y = s exactly.
  SplineLut(std::size_t q, double dx);
  // Explicit table; q = z.size().
  SplineLut(std::vector<double> z, double dx);

  std::size_t size() const { return z_.size(); }
  double dx() const { return dx_; }
  const std::vector<double>& table() const { return z_; }
  double knot(std::size_t k) const { return z_[k]; }
  void set_knot(std::size_t k, double v) { z_[k] = v; }

  // Maps s to its segment and local coordinate: u = s/dx - floor(s/dx),
  // i = floor(s/dx) + (q-1)/2.
  SplinePoint locate(double s) const;

  double interpolate(const SplinePoint& p) const;
  // Slope with respect to u; divide by dx for the slope in s.
  double derivative(const SplinePoint& p) const;

  std::array<double, 4> segment(const SplinePoint& p) const;
  void add_to_segment(const SplinePoint& p, const std::array<double, 4>& d);

 private:
  std::vector<double> z_;
  double dx_;
};

// C^T v: the coefficient vector multiplying the active control points, used
// by the control-point update law.
std::array<double, 4> basis_mix(const std::array<double, 4>& v);

}  // namespace splinaf
