#pragma once

#include <cstddef>
#include <cstdint>

#include "splinaf/adapt.hpp"
#include "splinaf/criteria.hpp"
#include "splinaf/noisegen.hpp"

namespace splinaf {

// Expectations of the influence function against the noise density:
// ef2 = E[f^2(v)], efp = E[f'(v)], ecurv = E[f(v) f''(v) + f'(v)^2].
struct NoiseMoments {
  double ef2;
  double efp;
  double ecurv;
};

// Steady-state expectations over the driven reference cascade:
// phi2x2 = E[phi'^2(u) ||x||^2], phi_ratio = E[phi'(u) / (c3 . z_i)],
// ctu2 = E[||C^T u_vec||^2].
struct RegressorMoments {
  double phi2x2;
  double phi_ratio;
  double ctu2;
};

struct EmsePrediction {
  double tau_w;
  double tau_z;
  double tau;    // tau_w + tau_z; meaningful only when stable
  bool stable;   // both denominators strictly positive
};

// Noise moments by adaptive panel quadrature for densities, an exact atom
// sum for Binary, and a stabilized Monte-Carlo estimate for AlphaStable
// (throws UnstableEstimate when half-sample estimates disagree beyond 2%).
NoiseMoments noise_moments(const Criterion& crit, const NoiseSpec& noise);

// Monte-Carlo route, exposed for cross-validation of the quadrature and used
// internally for AlphaStable. Sharded; shard partial sums fold in fixed
// order, so the result does not depend on the thread count.
NoiseMoments noise_moments_mc(const Criterion& crit, const NoiseSpec& noise,
                              std::size_t n, std::uint64_t seed,
                              int threads = 0, bool parallel = true);

// Streams AR(1)-colored input through the reference cascade and averages the
// regressor statistics. Samples with |c3 . z_i| < 1e-9 are excluded; more
// than 0.1% exclusions raise RatioBlowup. n >= 1e5 recommended.
RegressorMoments regressor_moments(const SafModel& system, double zeta,
                                   std::size_t n, std::uint64_t seed,
                                   int threads = 0, bool parallel = true);

// Steady-state excess mean-square error split into the weight and
// control-point contributions:
//   tau_w = eta_w phi2x2 ef2 / (2 dx^2 phi_ratio efp - eta_w phi2x2 ecurv)
//   tau_z = eta_z ctu2  ef2 / (2 efp            - eta_z ctu2  ecurv)
// stable iff both denominators are strictly positive. Mean-square error in
// linear power is tau + noise variance.
EmsePrediction predict_emse(StepSizes steps, const NoiseMoments& nm,
                            const RegressorMoments& rm, double dx);

}  // namespace splinaf
