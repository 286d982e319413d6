#pragma once

#include <memory>
#include <string>

namespace splinaf {

struct InfluenceDerivs {
  double d1;
  double d2;
};

// Error criterion: a nonnegative cost J(e) with J(0) = 0 and its influence
// function f(e). Stochastic-gradient updates move along f(e); step_fold() is
// the factor turning a raw gradient step mu into the update step eta, so that
// dJ/de = step_fold() * f(e).
class Criterion {
 public:
  virtual ~Criterion() = default;

  virtual double cost(double e) const = 0;
  virtual double influence(double e) const = 0;
  // f'(e), f''(e); the default route is Richardson-extrapolated central
  // differences on influence(). Overridden where a closed form is cheap.
  virtual InfluenceDerivs influence_derivs(double e) const;
  virtual double step_fold() const { return 1.0; }
  virtual std::string name() const = 0;
};

// Finite-difference derivative route, exposed so analytic overrides can be
// cross-validated against it.
InfluenceDerivs fd_influence_derivs(const Criterion& c, double e);

// Quadratic cost: J = e^2/2, f(e) = e.
class Lms final : public Criterion {
 public:
  double cost(double e) const override { return 0.5 * e * e; }
  double influence(double e) const override { return e; }
  InfluenceDerivs influence_derivs(double) const override { return {1.0, 0.0}; }
  std::string name() const override { return "lms"; }
};

// Absolute cost: J = |e|, f(e) = sign(e).
class Sign final : public Criterion {
 public:
  double cost(double e) const override;
  double influence(double e) const override;
  std::string name() const override { return "sign"; }
};

// Correntropy-induced cost with Gaussian kernel of width sigma:
// J = sigma^2 (1 - exp(-e^2/(2 sigma^2))), f(e) = e exp(-e^2/(2 sigma^2)).
class Mcc final : public Criterion {
 public:
  explicit Mcc(double sigma);
  double cost(double e) const override;
  double influence(double e) const override;
  std::string name() const override { return "mcc"; }
  double sigma() const { return sigma_; }

 private:
  double sigma_;
};

// Generalized kernel cost: J = (1 - exp(-kernel |e|^shape))/(shape*kernel),
// f(e) = exp(-kernel |e|^shape) |e|^(shape-1) sign(e).
class Gmcc final : public Criterion {
 public:
  Gmcc(double shape, double kernel);
  double cost(double e) const override;
  double influence(double e) const override;
  std::string name() const override { return "gmcc"; }
  double shape() const { return shape_; }
  double kernel() const { return kernel_; }

 private:
  double shape_;
  double kernel_;
};

struct GmbzParams {
  double alpha;   // error exponent, > 0
  double lambda;  // kernel parameter, > 0
  double gamma;   // floor offset, > 0
};

// Bounded smooth cost J = log(1+gamma) - log(exp(-lambda |e|^alpha) + gamma)
// with redescending influence
//   f(e) = |e|^(alpha-1) exp(-lambda|e|^alpha) sign(e)
//          / (exp(-lambda|e|^alpha) + gamma),
// dJ/de = lambda*alpha*f(e). For alpha < 1 the influence has no finite value
// at e = 0 (SingularAtZero); for alpha >= 1, f(0) = 0.
class Gmbz final : public Criterion {
 public:
  explicit Gmbz(GmbzParams p);
  double cost(double e) const override;
  double influence(double e) const override;
  // Closed form at alpha == 2, finite differences otherwise.
  InfluenceDerivs influence_derivs(double e) const override;
  double step_fold() const override { return p_.lambda * p_.alpha; }
  std::string name() const override { return "gmbz"; }
  const GmbzParams& params() const { return p_; }

 private:
  GmbzParams p_;
};

}  // namespace splinaf
