#include "splinaf/theory.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <utility>
#include <vector>

#include "splinaf/errors.hpp"
#include "splinaf/parallel.hpp"
#include "splinaf/rng.hpp"
#include "splinaf/signal.hpp"
#include "splinaf/spline.hpp"

namespace splinaf {

namespace {

constexpr int kGlOrder = 20;

struct GlRule {
  std::array<double, kGlOrder> x;
  std::array<double, kGlOrder> w;
};

// Gauss-Legendre nodes on [-1,1] by Newton iteration on the recurrence.
GlRule make_gl_rule() {
  GlRule r;
  const int n = kGlOrder;
  for (int k = 0; k < n; ++k) {
    double x = std::cos(std::numbers::pi * (double(k) + 0.75) /
                        (double(n) + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int j = 1; j < n; ++j) {
        double p2 = ((2.0 * j + 1.0) * x * p1 - double(j) * p0) / (j + 1.0);
        p0 = p1;
        p1 = p2;
      }
      dp = double(n) * (x * p1 - p0) / (x * x - 1.0);
      double step = p1 / dp;
      x -= step;
      if (std::abs(step) < 1e-15) break;
    }
    r.x[std::size_t(k)] = x;
    r.w[std::size_t(k)] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  return r;
}

const GlRule& gl_rule() {
  static const GlRule r = make_gl_rule();
  return r;
}

struct MomentSums {
  double ef2 = 0.0;
  double efp = 0.0;
  double ecurv = 0.0;
  // Mean absolute integrands; the redescending criteria cancel heavily in
  // efp/ecurv, so stabilization tolerances must scale with these instead of
  // the (possibly near-zero) signed means.
  double ef2_abs = 0.0;
  double efp_abs = 0.0;
  double ecurv_abs = 0.0;

  void add(double weight, const Criterion& crit, double v) {
    double f = crit.influence(v);
    auto d = crit.influence_derivs(v);
    double curv = f * d.d2 + d.d1 * d.d1;
    ef2 += weight * f * f;
    efp += weight * d.d1;
    ecurv += weight * curv;
    double aw = std::abs(weight);
    ef2_abs += aw * f * f;
    efp_abs += aw * std::abs(d.d1);
    ecurv_abs += aw * std::abs(curv);
  }
};

// Composite Gauss-Legendre over [a,b] with panels graded geometrically toward
// the endpoint nearer zero, where both the criterion and an impulsive density
// may have kinks.
void integrate_interval(MomentSums& acc, const Criterion& crit,
                        const NoiseSpec& noise, double a, double b,
                        int n_panels) {
  const GlRule& gl = gl_rule();
  const double ratio = 0.75;
  bool toward_a = std::abs(a) <= std::abs(b);
  double len = b - a;

  // Panel offsets from the graded endpoint, smallest first.
  std::vector<double> bounds(std::size_t(n_panels) + 1);
  bounds[0] = 0.0;
  for (int j = 0; j < n_panels; ++j)
    bounds[std::size_t(n_panels - j)] = len * std::pow(ratio, j);

  for (int p = 0; p < n_panels; ++p) {
    double lo_off = bounds[std::size_t(p)];
    double hi_off = bounds[std::size_t(p) + 1];
    double lo = toward_a ? a + lo_off : b - hi_off;
    double hi = toward_a ? a + hi_off : b - lo_off;
    double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
    for (int k = 0; k < kGlOrder; ++k) {
      double v = mid + half * gl.x[std::size_t(k)];
      double wt = half * gl.w[std::size_t(k)] * noise_pdf(noise, v);
      if (wt == 0.0) continue;
      acc.add(wt, crit, v);
    }
  }
}

// Support intervals split at zero so no kink sits inside a panel interior.
std::vector<std::pair<double, double>> support_intervals(
    const NoiseSpec& noise) {
  if (noise.kind == NoiseSpec::Kind::Uniform) {
    if (noise.lo < 0.0 && noise.hi > 0.0)
      return {{noise.lo, 0.0}, {0.0, noise.hi}};
    return {{noise.lo, noise.hi}};
  }
  // Symmetric unbounded families: cut where the mass beyond is negligible
  // even against quadratically growing integrands.
  double shape, var = noise.var;
  switch (noise.kind) {
    case NoiseSpec::Kind::Gaussian: shape = 2.0; break;
    case NoiseSpec::Kind::Laplace: shape = 1.0; break;
    case NoiseSpec::Kind::Ggd: shape = noise.shape; break;
    default:
      throw std::invalid_argument("no quadrature support for this family");
  }
  double t0 = 60.0 * std::max(1.0, 0.3 / shape);
  double cut = ggd_scale(shape, var) * std::pow(t0, 1.0 / shape);
  return {{-cut, 0.0}, {0.0, cut}};
}

NoiseMoments moments_by_quadrature(const Criterion& crit,
                                   const NoiseSpec& noise) {
  auto run = [&](int n_panels) {
    MomentSums acc;
    for (auto [a, b] : support_intervals(noise))
      integrate_interval(acc, crit, noise, a, b, n_panels);
    return acc;
  };
  MomentSums coarse = run(160);
  MomentSums fine = run(240);
  auto close = [](double c, double f) {
    return std::abs(c - f) <= 1e-5 * std::max(1e-9, std::abs(f));
  };
  if (!close(coarse.ef2, fine.ef2) || !close(coarse.efp, fine.efp) ||
      !close(coarse.ecurv, fine.ecurv))
    throw UnstableEstimate(
        "noise-moment quadrature failed to converge (likely a non-integrable "
        "criterion singularity against this density)");
  if (!std::isfinite(fine.ef2) || !std::isfinite(fine.efp) ||
      !std::isfinite(fine.ecurv))
    throw UnstableEstimate("noise-moment quadrature produced non-finite values");
  return {fine.ef2, fine.efp, fine.ecurv};
}

NoiseMoments moments_by_atoms(const Criterion& crit, const NoiseSpec& noise) {
  MomentSums acc;
  acc.add(noise.p_neg, crit, -noise.amplitude);
  acc.add(1.0 - noise.p_neg, crit, noise.amplitude);
  return {acc.ef2, acc.efp, acc.ecurv};
}

}  // namespace

NoiseMoments noise_moments_mc(const Criterion& crit, const NoiseSpec& noise,
                              std::size_t n, std::uint64_t seed, int threads,
                              bool parallel) {
  validate(noise);
  if (n == 0) throw std::invalid_argument("need n > 0");
  const std::size_t shard_size = 250000;
  const std::size_t n_shards = (n + shard_size - 1) / shard_size;
  std::vector<MomentSums> partial(n_shards);
  std::vector<std::size_t> counts(n_shards);

  for_each_index(n_shards, threads, parallel, [&](std::size_t s) {
    std::size_t lo = s * shard_size;
    std::size_t hi = std::min(n, lo + shard_size);
    Rng rng(derive_seed(seed, s));
    MomentSums acc;
    for (std::size_t k = lo; k < hi; ++k)
      acc.add(1.0, crit, sample_one(noise, rng));
    partial[s] = acc;
    counts[s] = hi - lo;
  });

  // Fold halves separately (in shard order) for the stabilization check.
  MomentSums first, second;
  std::size_t n_first = 0, n_second = 0;
  for (std::size_t s = 0; s < n_shards; ++s) {
    MomentSums& dst = (s < (n_shards + 1) / 2) ? first : second;
    std::size_t& cnt = (s < (n_shards + 1) / 2) ? n_first : n_second;
    dst.ef2 += partial[s].ef2;
    dst.efp += partial[s].efp;
    dst.ecurv += partial[s].ecurv;
    dst.ef2_abs += partial[s].ef2_abs;
    dst.efp_abs += partial[s].efp_abs;
    dst.ecurv_abs += partial[s].ecurv_abs;
    cnt += counts[s];
  }
  MomentSums total = first;
  total.ef2 += second.ef2;
  total.efp += second.efp;
  total.ecurv += second.ecurv;
  total.ef2_abs += second.ef2_abs;
  total.efp_abs += second.efp_abs;
  total.ecurv_abs += second.ecurv_abs;
  double inv = 1.0 / double(n_first + n_second);
  NoiseMoments out{total.ef2 * inv, total.efp * inv, total.ecurv * inv};

  if (n_second > 0) {
    // A moment with a finite-variance integrand has half-sample means within
    // a vanishing fraction of the mean |integrand|; a nonexistent moment is
    // dominated by its largest samples and the halves stay ~100% apart on
    // that same scale no matter how large n grows.
    auto stable = [&](double a, double b, std::size_t na, std::size_t nb,
                      double abs_total) {
      double ma = a / double(na), mb = b / double(nb);
      return std::abs(ma - mb) <= 0.02 * abs_total * inv + 1e-12;
    };
    if (!stable(first.ef2, second.ef2, n_first, n_second, total.ef2_abs) ||
        !stable(first.efp, second.efp, n_first, n_second, total.efp_abs) ||
        !stable(first.ecurv, second.ecurv, n_first, n_second,
                total.ecurv_abs))
      throw UnstableEstimate(
          "half-sample noise-moment estimates disagree beyond 2% of the "
          "integrand magnitude; the criterion/noise pair has no reliable "
          "finite moments");
  }
  if (!std::isfinite(out.ef2) || !std::isfinite(out.efp) ||
      !std::isfinite(out.ecurv))
    throw UnstableEstimate("Monte-Carlo noise moments are non-finite");
  return out;
}

NoiseMoments noise_moments(const Criterion& crit, const NoiseSpec& noise) {
  validate(noise);
  switch (noise.kind) {
    case NoiseSpec::Kind::Binary:
      return moments_by_atoms(crit, noise);
    case NoiseSpec::Kind::AlphaStable:
      if (noise.char_exp == 2.0 && noise.location == 0.0)
        return moments_by_quadrature(
            crit, NoiseSpec::gaussian(2.0 * noise.scale * noise.scale));
      // No closed-form density: stabilized Monte Carlo.
      return noise_moments_mc(crit, noise, 10000000, 0x6d6f6d656e747331ull);
    default:
      return moments_by_quadrature(crit, noise);
  }
}

RegressorMoments regressor_moments(const SafModel& system, double zeta,
                                   std::size_t n, std::uint64_t seed,
                                   int threads, bool parallel) {
  if (n < 1000) throw std::invalid_argument("need n >= 1000 samples");
  if (!(std::abs(zeta) < 1.0))
    throw std::invalid_argument("|zeta| must be < 1");

  const std::size_t shard_size = 100000;
  const std::size_t n_shards = (n + shard_size - 1) / shard_size;
  struct Shard {
    double phi2x2 = 0.0, phi_ratio = 0.0, ctu2 = 0.0;
    std::size_t included = 0, flat = 0;
  };
  std::vector<Shard> partial(n_shards);
  const double color = std::sqrt(1.0 - zeta * zeta);

  for_each_index(n_shards, threads, parallel, [&](std::size_t si) {
    std::size_t lo = si * shard_size;
    std::size_t hi = std::min(n, lo + shard_size);
    Rng rng(derive_seed(seed, si));
    SafModel m = system;
    m.x_line.reset();
    Shard acc;
    double prev = 0.0;
    const std::size_t burn = 1000;
    for (std::size_t k = 0; k < burn + (hi - lo); ++k) {
      prev = zeta * prev + color * rng.normal();
      StepRecord rec;
      try {
        rec = forward(m, prev);
      } catch (const SpanOutOfRange&) {
        continue;  // off-table sample carries no regressor statistics
      }
      if (k < burn) continue;
      double c3z = 0.5 * (m.lut.knot(std::size_t(rec.at.i) + 2) -
                          m.lut.knot(std::size_t(rec.at.i)));
      if (std::abs(c3z) < 1e-9) {
        acc.flat += 1;
        continue;
      }
      double x2 = window_norm_sq(m);
      auto mix = basis_mix(rec.at.u_vec);
      double cu2 = 0.0;
      for (double c : mix) cu2 += c * c;
      acc.phi2x2 += rec.phi_prime * rec.phi_prime * x2;
      acc.phi_ratio += rec.phi_prime / c3z;
      acc.ctu2 += cu2;
      acc.included += 1;
    }
    partial[si] = acc;
  });

  Shard total;
  for (const Shard& s : partial) {
    total.phi2x2 += s.phi2x2;
    total.phi_ratio += s.phi_ratio;
    total.ctu2 += s.ctu2;
    total.included += s.included;
    total.flat += s.flat;
  }
  if (total.flat * 1000 > n)
    throw RatioBlowup(
        "flat spline region on more than 0.1% of samples; the slope ratio "
        "moment is ill-conditioned for this system");
  if (total.included == 0) throw RatioBlowup("no usable samples");
  double inv = 1.0 / double(total.included);
  return {total.phi2x2 * inv, total.phi_ratio * inv, total.ctu2 * inv};
}

EmsePrediction predict_emse(StepSizes steps, const NoiseMoments& nm,
                            const RegressorMoments& rm, double dx) {
  double den_w = 2.0 * dx * dx * rm.phi_ratio * nm.efp -
                 steps.eta_w * rm.phi2x2 * nm.ecurv;
  double den_z = 2.0 * nm.efp - steps.eta_z * rm.ctu2 * nm.ecurv;
  EmsePrediction out;
  out.stable = den_w > 0.0 && den_z > 0.0;
  out.tau_w = steps.eta_w * rm.phi2x2 * nm.ef2 / den_w;
  out.tau_z = steps.eta_z * rm.ctu2 * nm.ef2 / den_z;
  out.tau = out.tau_w + out.tau_z;
  return out;
}

}  // namespace splinaf
