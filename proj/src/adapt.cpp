#include "splinaf/adapt.hpp"

#include <cmath>
#include <limits>

#include "splinaf/errors.hpp"

namespace splinaf {

StepRecord forward(SafModel& m, double x) {
  m.x_line.push(x);
  double s = 0.0;
  for (std::size_t k = 0; k < m.w.size(); ++k) s += m.w[k] * m.x_line[k];
  StepRecord rec;
  rec.s = s;
  rec.at = m.lut.locate(s);
  rec.y = m.lut.interpolate(rec.at);
  rec.phi_prime = m.lut.derivative(rec.at);
  return rec;
}

double update_gmbz(SafModel& m, StepRecord& rec, double d, StepSizes steps,
                   const Criterion& crit) {
  double e = d - rec.y;
  rec.e = e;
  double fe = crit.influence(e);
  double dx = m.lut.dx();
  double sw = steps.eta_w * fe;
  for (std::size_t k = 0; k < m.w.size(); ++k)
    m.w[k] += sw * gradient_tap(rec, m.x_line[k], dx);
  double sz = steps.eta_z * fe;
  auto mix = basis_mix(rec.at.u_vec);
  m.lut.add_to_segment(rec.at,
                       {sz * mix[0], sz * mix[1], sz * mix[2], sz * mix[3]});
  return e;
}

double gmbz_error_shape(const GmbzParams& p, double e) {
  if (e == 0.0)
    throw SingularAtZero("error-shape factor undefined at zero error");
  double ae = std::abs(e);
  double k = std::exp(-p.lambda * std::pow(ae, p.alpha));
  if (k == 0.0) return 0.0;  // fully redescended
  return std::pow(ae, p.alpha - 2.0) * k / (k + p.gamma);
}

namespace {

double weight_curvature(const StepRecord& rec, double x_norm_sq,
                        const GmbzParams& p, double dx) {
  double g = gmbz_error_shape(p, rec.e);
  return g * rec.phi_prime * rec.phi_prime * x_norm_sq / (dx * dx);
}

}  // namespace

StepBounds step_bounds(const StepRecord& rec, double x_norm_sq,
                       const GmbzParams& p, double dx) {
  double inf = std::numeric_limits<double>::infinity();
  double dw = weight_curvature(rec, x_norm_sq, p, dx);
  auto mix = basis_mix(rec.at.u_vec);
  double ctu2 = mix[0] * mix[0] + mix[1] * mix[1] + mix[2] * mix[2] +
                mix[3] * mix[3];
  double dz = gmbz_error_shape(p, rec.e) * ctu2;
  return {dw > 0.0 ? 2.0 / dw : inf, dz > 0.0 ? 2.0 / dz : inf};
}

double contraction_factor(const StepRecord& rec, double x_norm_sq,
                          double eta_w, const GmbzParams& p, double dx) {
  return 1.0 - eta_w * weight_curvature(rec, x_norm_sq, p, dx);
}

double window_norm_sq(const SafModel& m) {
  double s = 0.0;
  for (std::size_t k = 0; k < m.x_line.size(); ++k)
    s += m.x_line[k] * m.x_line[k];
  return s;
}

}  // namespace splinaf
