#include "splinaf/noisegen.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace splinaf {

NoiseSpec NoiseSpec::gaussian(double var) {
  NoiseSpec s;
  s.kind = Kind::Gaussian;
  s.var = var;
  return s;
}

NoiseSpec NoiseSpec::laplace(double var) {
  NoiseSpec s;
  s.kind = Kind::Laplace;
  s.var = var;
  return s;
}

NoiseSpec NoiseSpec::ggd(double shape, double var) {
  NoiseSpec s;
  s.kind = Kind::Ggd;
  s.shape = shape;
  s.var = var;
  return s;
}

NoiseSpec NoiseSpec::binary(double amplitude, double p_neg) {
  NoiseSpec s;
  s.kind = Kind::Binary;
  s.amplitude = amplitude;
  s.p_neg = p_neg;
  return s;
}

NoiseSpec NoiseSpec::uniform(double lo, double hi) {
  NoiseSpec s;
  s.kind = Kind::Uniform;
  s.lo = lo;
  s.hi = hi;
  return s;
}

NoiseSpec NoiseSpec::alpha_stable(double char_exp, double skew, double scale,
                                  double location) {
  NoiseSpec s;
  s.kind = Kind::AlphaStable;
  s.char_exp = char_exp;
  s.skew = skew;
  s.scale = scale;
  s.location = location;
  return s;
}

const char* kind_name(NoiseSpec::Kind k) {
  switch (k) {
    case NoiseSpec::Kind::Gaussian: return "gaussian";
    case NoiseSpec::Kind::Laplace: return "laplace";
    case NoiseSpec::Kind::Ggd: return "ggd";
    case NoiseSpec::Kind::Binary: return "binary";
    case NoiseSpec::Kind::Uniform: return "uniform";
    case NoiseSpec::Kind::AlphaStable: return "alpha_stable";
  }
  return "?";
}

void validate(const NoiseSpec& s) {
  switch (s.kind) {
    case NoiseSpec::Kind::Gaussian:
    case NoiseSpec::Kind::Laplace:
      if (!(s.var > 0.0)) throw std::invalid_argument("variance must be > 0");
      break;
    case NoiseSpec::Kind::Ggd:
      if (!(s.var > 0.0)) throw std::invalid_argument("variance must be > 0");
      if (!(s.shape > 0.0)) throw std::invalid_argument("shape must be > 0");
      break;
    case NoiseSpec::Kind::Binary:
      if (!(s.amplitude > 0.0))
        throw std::invalid_argument("amplitude must be > 0");
      if (!(s.p_neg >= 0.0 && s.p_neg <= 1.0))
        throw std::invalid_argument("p_neg must be in [0, 1]");
      break;
    case NoiseSpec::Kind::Uniform:
      if (!(s.lo < s.hi)) throw std::invalid_argument("need lo < hi");
      break;
    case NoiseSpec::Kind::AlphaStable:
      if (!(s.char_exp > 0.0 && s.char_exp <= 2.0))
        throw std::invalid_argument("char_exp must be in (0, 2]");
      if (!(s.skew >= -1.0 && s.skew <= 1.0))
        throw std::invalid_argument("skew must be in [-1, 1]");
      if (!(s.scale > 0.0)) throw std::invalid_argument("scale must be > 0");
      break;
  }
}

double ggd_scale(double shape, double var) {
  return std::sqrt(var) *
         std::exp(0.5 * (std::lgamma(1.0 / shape) - std::lgamma(3.0 / shape)));
}

namespace {

// Chambers-Mallows-Stuck sampler for the standard stable law (scale 1,
// location 0); characteristic function exp(-|t|^a) at skew = 0.
double stable_standard(double a, double skew, Rng& rng) {
  constexpr double half_pi = std::numbers::pi / 2.0;
  double v = rng.uniform(-half_pi, half_pi);
  double w = rng.exponential();
  if (a == 1.0) {
    double t = half_pi + skew * v;
    return (t * std::tan(v) -
            skew * std::log(half_pi * w * std::cos(v) / t)) /
           half_pi;
  }
  double ta = std::tan(half_pi * a);
  double b = std::atan(skew * ta) / a;
  double s = std::pow(1.0 + skew * skew * ta * ta, 0.5 / a);
  return s * std::sin(a * (v + b)) / std::pow(std::cos(v), 1.0 / a) *
         std::pow(std::cos(v - a * (v + b)) / w, (1.0 - a) / a);
}

}  // namespace

double sample_one(const NoiseSpec& s, Rng& rng) {
  switch (s.kind) {
    case NoiseSpec::Kind::Gaussian:
      return std::sqrt(s.var) * rng.normal();
    case NoiseSpec::Kind::Laplace: {
      double mag = std::sqrt(s.var / 2.0) * rng.exponential();
      return rng.uniform() < 0.5 ? -mag : mag;
    }
    case NoiseSpec::Kind::Ggd: {
      // |x| = beta * G^(1/shape), G ~ Gamma(1/shape, 1)
      double g = rng.gamma(1.0 / s.shape);
      double mag = ggd_scale(s.shape, s.var) * std::pow(g, 1.0 / s.shape);
      return rng.uniform() < 0.5 ? -mag : mag;
    }
    case NoiseSpec::Kind::Binary:
      return rng.uniform() < s.p_neg ? -s.amplitude : s.amplitude;
    case NoiseSpec::Kind::Uniform:
      return rng.uniform(s.lo, s.hi);
    case NoiseSpec::Kind::AlphaStable: {
      double x = stable_standard(s.char_exp, s.skew, rng);
      if (s.char_exp == 1.0 && s.scale != 1.0)
        return s.scale * x +
               2.0 / std::numbers::pi * s.skew * s.scale *
                   std::log(s.scale) +
               s.location;
      return s.scale * x + s.location;
    }
  }
  return 0.0;
}

std::vector<double> sample_noise(const NoiseSpec& s, std::size_t n,
                                 std::uint64_t seed) {
  validate(s);
  Rng rng(seed);
  std::vector<double> out(n);
  for (auto& v : out) v = sample_one(s, rng);
  return out;
}

double ggd_pdf(double x, double shape, double var) {
  double beta = ggd_scale(shape, var);
  double norm = shape / (2.0 * beta * std::tgamma(1.0 / shape));
  return norm * std::exp(-std::pow(std::abs(x) / beta, shape));
}

double gammainc_lower_reg(double a, double x) {
  if (!(a > 0.0)) throw std::invalid_argument("a must be > 0");
  if (x <= 0.0) return 0.0;
  double lg = std::lgamma(a);
  if (x < a + 1.0) {
    // series expansion
    double ap = a, sum = 1.0 / a, del = sum;
    for (int it = 0; it < 500; ++it) {
      ap += 1.0;
      del *= x / ap;
      sum += del;
      if (std::abs(del) < std::abs(sum) * 1e-16) break;
    }
    return sum * std::exp(-x + a * std::log(x) - lg);
  }
  // continued fraction for the upper tail
  double tiny = 1e-300;
  double b = x + 1.0 - a, c = 1.0 / tiny, d = 1.0 / b, h = d;
  for (int it = 1; it < 500; ++it) {
    double an = -double(it) * (double(it) - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < 1e-16) break;
  }
  double q = std::exp(-x + a * std::log(x) - lg) * h;
  return 1.0 - q;
}

double ggd_cdf(double x, double shape, double var) {
  double beta = ggd_scale(shape, var);
  double p = gammainc_lower_reg(1.0 / shape, std::pow(std::abs(x) / beta, shape));
  return x >= 0.0 ? 0.5 + 0.5 * p : 0.5 - 0.5 * p;
}

bool has_density(const NoiseSpec& s) {
  return s.kind != NoiseSpec::Kind::Binary &&
         s.kind != NoiseSpec::Kind::AlphaStable;
}

double noise_pdf(const NoiseSpec& s, double x) {
  switch (s.kind) {
    case NoiseSpec::Kind::Gaussian:
      return std::exp(-x * x / (2.0 * s.var)) /
             std::sqrt(2.0 * std::numbers::pi * s.var);
    case NoiseSpec::Kind::Laplace: {
      double b = std::sqrt(s.var / 2.0);
      return std::exp(-std::abs(x) / b) / (2.0 * b);
    }
    case NoiseSpec::Kind::Ggd:
      return ggd_pdf(x, s.shape, s.var);
    case NoiseSpec::Kind::Uniform:
      return (x >= s.lo && x <= s.hi) ? 1.0 / (s.hi - s.lo) : 0.0;
    default:
      throw std::invalid_argument(std::string("no closed-form density for ") +
                                  kind_name(s.kind));
  }
}

NoiseSpec scaled_to_power(const NoiseSpec& s, double power) {
  if (!(power > 0.0)) throw std::invalid_argument("power must be > 0");
  NoiseSpec out = s;
  switch (s.kind) {
    case NoiseSpec::Kind::Gaussian:
    case NoiseSpec::Kind::Laplace:
    case NoiseSpec::Kind::Ggd:
      out.var = power;  // zero mean: power = variance
      return out;
    case NoiseSpec::Kind::Binary:
      out.amplitude = std::sqrt(power);  // E[x^2] = amplitude^2
      return out;
    case NoiseSpec::Kind::Uniform: {
      // E[x^2] = (lo^2 + lo*hi + hi^2)/3 under pure scaling of the support
      double raw = (s.lo * s.lo + s.lo * s.hi + s.hi * s.hi) / 3.0;
      if (!(raw > 0.0)) throw std::invalid_argument("degenerate support");
      double g = std::sqrt(power / raw);
      out.lo = s.lo * g;
      out.hi = s.hi * g;
      return out;
    }
    case NoiseSpec::Kind::AlphaStable:
      if (s.char_exp == 2.0 && s.location == 0.0) {
        out.scale = std::sqrt(power / 2.0);  // variance = 2 scale^2
        return out;
      }
      throw std::invalid_argument(
          "alpha-stable noise has no finite power to scale");
  }
  return out;
}

double spec_power(const NoiseSpec& s) {
  switch (s.kind) {
    case NoiseSpec::Kind::Gaussian:
    case NoiseSpec::Kind::Laplace:
    case NoiseSpec::Kind::Ggd:
      return s.var;
    case NoiseSpec::Kind::Binary:
      return s.amplitude * s.amplitude;
    case NoiseSpec::Kind::Uniform:
      return (s.lo * s.lo + s.lo * s.hi + s.hi * s.hi) / 3.0;
    case NoiseSpec::Kind::AlphaStable:
      if (s.char_exp == 2.0)
        return 2.0 * s.scale * s.scale + s.location * s.location;
      return std::numeric_limits<double>::infinity();
  }
  return 0.0;
}

}  // namespace splinaf
