#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "splinaf/rng.hpp"

namespace splinaf {

// Tagged description of a noise family. Only the fields of the active kind
// are meaningful.
struct NoiseSpec {
  enum class Kind { Gaussian, Laplace, Ggd, Binary, Uniform, AlphaStable };

  Kind kind = Kind::Gaussian;
  double var = 1.0;        // Gaussian / Laplace / Ggd target variance
  double shape = 2.0;      // Ggd exponent alpha
  double amplitude = 1.0;  // Binary level
  double p_neg = 0.5;      // Binary probability of the negative level
  double lo = 0.0;         // Uniform support
  double hi = 1.0;
  double char_exp = 2.0;   // AlphaStable characteristic exponent (0, 2]
  double skew = 0.0;       // AlphaStable skewness [-1, 1]
  double scale = 1.0;      // AlphaStable scale > 0
  double location = 0.0;   // AlphaStable shift

  static NoiseSpec gaussian(double var);
  static NoiseSpec laplace(double var);
  static NoiseSpec ggd(double shape, double var);
  static NoiseSpec binary(double amplitude, double p_neg);
  static NoiseSpec uniform(double lo, double hi);
  static NoiseSpec alpha_stable(double char_exp, double skew, double scale,
                                double location);
};

// Throws std::invalid_argument on out-of-range parameters.
void validate(const NoiseSpec& spec);

const char* kind_name(NoiseSpec::Kind k);

// One draw using the caller's generator.
double sample_one(const NoiseSpec& spec, Rng& rng);

// Block of n draws from a fresh generator; same (spec, seed, n) gives the
// same bits.
std::vector<double> sample_noise(const NoiseSpec& spec, std::size_t n,
                                 std::uint64_t seed);

// Generalized Gaussian scale beta for a target variance:
// beta = sigma * sqrt(Gamma(1/shape) / Gamma(3/shape)).
double ggd_scale(double shape, double var);

// Density and CDF of the zero-mean generalized Gaussian.
double ggd_pdf(double x, double shape, double var);
double ggd_cdf(double x, double shape, double var);

// True when the distribution has a usable closed-form density (everything except
// Binary and AlphaStable).
bool has_density(const NoiseSpec& spec);

// Closed-form density where available; throws std::invalid_argument
// otherwise.
double noise_pdf(const NoiseSpec& spec, double x);

// Rescales the distribution parameters so E[x^2] equals `power` (shape preserved).
// Throws std::invalid_argument for AlphaStable with char_exp < 2 (no finite
// power) or degenerate supports.
NoiseSpec scaled_to_power(const NoiseSpec& spec, double power);

// Analytic E[x^2] of the distribution; +infinity for AlphaStable with char_exp < 2.
double spec_power(const NoiseSpec& spec);

// Regularized lower incomplete gamma P(a, x); series/continued-fraction
// evaluation, exposed for test oracles.
double gammainc_lower_reg(double a, double x);

}  // namespace splinaf
