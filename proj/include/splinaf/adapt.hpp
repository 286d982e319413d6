#pragma once

#include <limits>
#include <vector>

#include "splinaf/criteria.hpp"
#include "splinaf/signal.hpp"
#include "splinaf/spline.hpp"

namespace splinaf {

// Wiener cascade under adaptation: FIR weights feeding a spline table.
struct SafModel {
  std::vector<double> w;
  DelayLine x_line;
  SplineLut lut;

  SafModel(std::vector<double> w0, SplineLut lut0)
      : w(std::move(w0)), x_line(w.size()), lut(std::move(lut0)) {}
};

struct StepSizes {
  double eta_w;
  double eta_z;
};

// Everything the update laws need from one forward pass.
struct StepRecord {
  double s;          // combiner output
  SplinePoint at;    // active segment / local coordinate
  double y;          // spline output
  double phi_prime;  // spline slope at the point, in u units
  double e = std::numeric_limits<double>::quiet_NaN();  // set by the update
};

// Pushes x, evaluates the cascade, fills the record.
StepRecord forward(SafModel& m, double x);

// Per-tap entry of the instantaneous gradient regressor, phi'(u) * x_k / dx.
// Shared with the filtered update path so the two match bit for bit.
inline double gradient_tap(const StepRecord& rec, double xk, double dx) {
  return rec.phi_prime * xk / dx;
}

// One stochastic-gradient step on weights and active control points:
//   w   += eta_w f(e) phi'(u) x / dx
//   z_i += eta_z f(e) C^T u_vec
// Both halves read the pre-update state. Returns e = d - y and stores it in
// the record.
double update_gmbz(SafModel& m, StepRecord& rec, double d, StepSizes steps,
                   const Criterion& crit);

// Curvature factor of the local error recursion,
// g(e) = |e|^(alpha-2) exp(-lambda|e|^alpha) / (exp(-lambda|e|^alpha)+gamma).
// Throws SingularAtZero at e = 0 where the factor is undefined.
double gmbz_error_shape(const GmbzParams& p, double e);

struct StepBounds {
  double eta_w_max;
  double eta_z_max;
};

// Largest locally contractive steps at the recorded operating point
// (diagnostic): eta_w_max = 2 / [g(e) phi'^2 ||x||^2 / dx^2],
// eta_z_max = 2 / [g(e) ||C^T u_vec||^2]. Infinite when the factor vanishes.
StepBounds step_bounds(const StepRecord& rec, double x_norm_sq,
                       const GmbzParams& p, double dx);

// One-step multiplier of the local error recursion for a candidate eta_w:
// 1 - eta_w g(e) phi'^2 ||x||^2 / dx^2. Magnitude <= 1 iff eta_w is within
// the weight step bound.
double contraction_factor(const StepRecord& rec, double x_norm_sq,
                          double eta_w, const GmbzParams& p, double dx);

// Sum of squares of the model's current input window.
double window_norm_sq(const SafModel& m);

}  // namespace splinaf
