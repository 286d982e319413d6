#include "splinaf/criteria.hpp"

#include <cmath>
#include <stdexcept>

#include "splinaf/errors.hpp"

namespace splinaf {

namespace {

double sign_of(double e) { return e > 0.0 ? 1.0 : (e < 0.0 ? -1.0 : 0.0); }

}  // namespace

InfluenceDerivs Criterion::influence_derivs(double e) const {
  return fd_influence_derivs(*this, e);
}

InfluenceDerivs fd_influence_derivs(const Criterion& c, double e) {
  double h = 1e-5 * std::max(1.0, std::abs(e));
  double f_p2 = c.influence(e + h), f_m2 = c.influence(e - h);
  double f_p1 = c.influence(e + 0.5 * h), f_m1 = c.influence(e - 0.5 * h);
  double f_0 = c.influence(e);
  // one Richardson level on the central differences
  double d_h = (f_p2 - f_m2) / (2.0 * h);
  double d_h2 = (f_p1 - f_m1) / h;
  double s_h = (f_p2 - 2.0 * f_0 + f_m2) / (h * h);
  double s_h2 = (f_p1 - 2.0 * f_0 + f_m1) / (0.25 * h * h);
  return {(4.0 * d_h2 - d_h) / 3.0, (4.0 * s_h2 - s_h) / 3.0};
}

double Sign::cost(double e) const { return std::abs(e); }

double Sign::influence(double e) const { return sign_of(e); }

Mcc::Mcc(double sigma) : sigma_(sigma) {
  if (!(sigma > 0.0)) throw std::invalid_argument("kernel width must be > 0");
}

double Mcc::cost(double e) const {
  double s2 = sigma_ * sigma_;
  return s2 * (1.0 - std::exp(-e * e / (2.0 * s2)));
}

double Mcc::influence(double e) const {
  return e * std::exp(-e * e / (2.0 * sigma_ * sigma_));
}

Gmcc::Gmcc(double shape, double kernel) : shape_(shape), kernel_(kernel) {
  if (!(shape > 0.0)) throw std::invalid_argument("shape must be > 0");
  if (!(kernel > 0.0)) throw std::invalid_argument("kernel must be > 0");
}

double Gmcc::cost(double e) const {
  double k = std::exp(-kernel_ * std::pow(std::abs(e), shape_));
  return (1.0 - k) / (shape_ * kernel_);
}

double Gmcc::influence(double e) const {
  if (e == 0.0) {
    if (shape_ < 1.0)
      throw SingularAtZero("influence undefined at zero error for shape < 1");
    return 0.0;
  }
  double ae = std::abs(e);
  double k = std::exp(-kernel_ * std::pow(ae, shape_));
  if (k == 0.0) return 0.0;  // fully redescended, avoid inf * 0
  return k * std::pow(ae, shape_ - 1.0) * sign_of(e);
}

Gmbz::Gmbz(GmbzParams p) : p_(p) {
  if (!(p.alpha > 0.0)) throw std::invalid_argument("alpha must be > 0");
  if (!(p.lambda > 0.0)) throw std::invalid_argument("lambda must be > 0");
  if (!(p.gamma > 0.0)) throw std::invalid_argument("gamma must be > 0");
}

double Gmbz::cost(double e) const {
  double u = p_.lambda * std::pow(std::abs(e), p_.alpha);
  // log((1+g)/(exp(-u)+g)) arranged so the value is exactly 0 at e = 0 and
  // free of cancellation for small errors
  return std::log1p(-std::expm1(-u) / (std::exp(-u) + p_.gamma));
}

double Gmbz::influence(double e) const {
  if (e == 0.0) {
    if (p_.alpha < 1.0)
      throw SingularAtZero("influence undefined at zero error for alpha < 1");
    return 0.0;
  }
  double ae = std::abs(e);
  double k = std::exp(-p_.lambda * std::pow(ae, p_.alpha));
  if (k == 0.0) return 0.0;  // fully redescended, avoid inf * 0
  return std::pow(ae, p_.alpha - 1.0) * k / (k + p_.gamma) * sign_of(e);
}

InfluenceDerivs Gmbz::influence_derivs(double e) const {
  if (p_.alpha != 2.0) return fd_influence_derivs(*this, e);
  // closed form at alpha = 2: f = e k/(k+g), k = exp(-l e^2)
  double l = p_.lambda, g = p_.gamma;
  double k = std::exp(-l * e * e);
  double den = k + g;
  double gp = -2.0 * l * g * e * k / (den * den);
  double hp = (k - 2.0 * l * e * e * k) / (den * den) +
              4.0 * l * e * e * k * k / (den * den * den);
  double d1 = k / den + e * gp;
  double d2 = 2.0 * gp + e * (-2.0 * l * g * hp);
  return {d1, d2};
}

}  // namespace splinaf
