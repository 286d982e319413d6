#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cmath>
#include <vector>

#include "splinaf/adapt.hpp"
#include "splinaf/errors.hpp"
#include "splinaf/rng.hpp"

using namespace splinaf;

namespace {

// Independent single-step evaluation of the update laws, written against the
// formulas directly (own basis matrix, own indexing).
struct BruteStep {
  std::vector<double> w;
  std::vector<double> z;
  double y, e;
};

const double kC[4][4] = {{-0.5, 1.5, -1.5, 0.5},
                         {1.0, -2.5, 2.0, -0.5},
                         {-0.5, 0.0, 0.5, 0.0},
                         {0.0, 1.0, 0.0, 0.0}};

BruteStep brute_force_step(std::vector<double> w, std::vector<double> z,
                           double dx, const std::vector<double>& xwin,
                           double d, double eta_w, double eta_z,
                           const Criterion& crit) {
  std::size_t q = z.size();
  double s = 0.0;
  for (std::size_t k = 0; k < w.size(); ++k) s += w[k] * xwin[k];
  double t = s / dx;
  double fl = std::floor(t);
  double u = t - fl;
  long i = long(fl) + long((q - 1) / 2);
  double uv[4] = {u * u * u, u * u, u, 1.0};
  double duv[4] = {3.0 * u * u, 2.0 * u, 1.0, 0.0};
  double y = 0.0, phip = 0.0;
  for (int r = 0; r < 4; ++r) {
    double mix = 0.0;
    for (int j = 0; j < 4; ++j) mix += kC[r][j] * z[std::size_t(i) + j];
    y += uv[r] * mix;
    phip += duv[r] * mix;
  }
  double e = d - y;
  double fe = crit.influence(e);
  for (std::size_t k = 0; k < w.size(); ++k)
    w[k] += eta_w * fe * phip * xwin[k] / dx;
  for (int j = 0; j < 4; ++j) {
    double cj = 0.0;
    for (int r = 0; r < 4; ++r) cj += kC[r][j] * uv[r];
    z[std::size_t(i) + j] += eta_z * fe * cj;
  }
  return {std::move(w), std::move(z), y, e};
}

}  // namespace

TEST_CASE("forward through the identity cascade") {
  SafModel m({1.0}, SplineLut(23, 0.2));
  auto rec = forward(m, 0.3);
  CHECK(rec.s == doctest::Approx(0.3).epsilon(1e-15));
  CHECK(rec.y == doctest::Approx(0.3).epsilon(1e-12));
  CHECK(rec.at.i == 12);
  CHECK(rec.at.u == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(rec.phi_prime == doctest::Approx(0.2).epsilon(1e-12));

  SafModel z0({0.0, 0.0, 0.0}, SplineLut(23, 0.2));
  auto r0 = forward(z0, 1.7);
  CHECK(r0.s == 0.0);
  CHECK(r0.y == 0.0);
  CHECK(r0.at.i == 11);
}

TEST_CASE("forward raises on span escape") {
  SafModel m({1.0}, SplineLut(5, 0.2));
  CHECK_THROWS_AS(forward(m, 100.0), SpanOutOfRange);
}

TEST_CASE("single update step matches the brute-force oracle") {
  Rng r(2024);
  Gmbz gmbz({2.0, 0.09, 0.1});
  Lms lms;
  for (int inst = 0; inst < 100; ++inst) {
    std::size_t n = 1 + std::size_t(r.uniform(0.0, 4.0));  // N <= 4
    std::size_t q = 7;
    double dx = 0.5;
    std::vector<double> w(n), z(q);
    for (auto& v : w) v = r.uniform(-0.1, 0.1);
    for (std::size_t k = 0; k < q; ++k)
      z[k] = dx * (double(k) - double((q + 1) / 2)) + r.uniform(-0.2, 0.2);
    const Criterion& crit =
        (inst % 2 == 0) ? (const Criterion&)gmbz : (const Criterion&)lms;
    double eta_w = r.uniform(0.0, 0.2), eta_z = r.uniform(0.0, 0.5);

    SafModel m(w, SplineLut(z, dx));
    std::vector<double> xs(n + 2);
    for (auto& v : xs) v = r.uniform(-1.0, 1.0);
    for (std::size_t k = 0; k + 1 < xs.size(); ++k) m.x_line.push(xs[k]);

    // oracle works on the post-push window
    std::vector<double> xwin(n);
    {
      DelayLine tmp(n);
      for (double v : xs) tmp.push(v);
      for (std::size_t k = 0; k < n; ++k) xwin[k] = tmp[k];
    }
    double d = r.uniform(-1.0, 1.0);
    auto want = brute_force_step(w, z, dx, xwin, d, eta_w, eta_z, crit);

    auto rec = forward(m, xs.back());
    double e = update_gmbz(m, rec, d, {eta_w, eta_z}, crit);
    CHECK(std::abs(rec.y - want.y) < 1e-12);
    CHECK(std::abs(e - want.e) < 1e-12);
    CHECK(rec.e == e);
    for (std::size_t k = 0; k < n; ++k)
      CHECK(std::abs(m.w[k] - want.w[k]) < 1e-12);
    for (std::size_t k = 0; k < q; ++k)
      CHECK(std::abs(m.lut.knot(k) - want.z[k]) < 1e-12);
  }
}

TEST_CASE("update with zero error leaves the model unchanged") {
  Gmbz crit({2.0, 0.09, 0.1});
  SafModel m({1.0, -0.5}, SplineLut(23, 0.2));
  m.x_line.push(0.4);
  auto rec = forward(m, 0.2);
  auto w_before = m.w;
  auto z_before = m.lut.table();
  double e = update_gmbz(m, rec, rec.y, {0.1, 0.1}, crit);
  CHECK(e == 0.0);
  CHECK(m.w == w_before);
  CHECK(m.lut.table() == z_before);
}

TEST_CASE("identical seeds give identical trajectories") {
  auto run = [] {
    Rng r(99);
    Gmbz crit({2.0, 0.09, 0.1});
    SafModel m({1.0, 0.0, 0.0}, SplineLut(31, 0.2));
    for (int k = 0; k < 200; ++k) {
      auto rec = forward(m, 0.8 * r.normal());
      update_gmbz(m, rec, 0.5 * r.normal(), {0.01, 0.05}, crit);
    }
    return std::pair(m.w, m.lut.table());
  };
  auto a = run();
  auto b = run();
  CHECK(a.first == b.first);
  CHECK(a.second == b.second);
}

TEST_CASE("step bounds match independently computed golden values") {
  // alpha=2, lambda=0.09, gamma=0.1, e=0.5, phi'=1, ||x||^2=4, dx=0.2, u=0
  GmbzParams p{2.0, 0.09, 0.1};
  StepRecord rec;
  rec.phi_prime = 1.0;
  rec.at = SplinePoint{0, 0.0, {0.0, 0.0, 0.0, 1.0}, {0.0, 0.0, 1.0, 0.0}};
  rec.e = 0.5;
  auto b = step_bounds(rec, 4.0, p, 0.2);
  CHECK(b.eta_w_max ==
        doctest::Approx(0.0220455100683288918).epsilon(1e-13));
  CHECK(b.eta_z_max == doctest::Approx(2.20455100683288918).epsilon(1e-13));
}

TEST_CASE("step bounds are undefined at zero error") {
  GmbzParams p{2.0, 0.09, 0.1};
  StepRecord rec;
  rec.phi_prime = 1.0;
  rec.at = SplinePoint{0, 0.0, {0.0, 0.0, 0.0, 1.0}, {0.0, 0.0, 1.0, 0.0}};
  rec.e = 0.0;
  CHECK_THROWS_AS(step_bounds(rec, 4.0, p, 0.2), SingularAtZero);
  CHECK_THROWS_AS(gmbz_error_shape(p, 0.0), SingularAtZero);
}

TEST_CASE("flat spline slope makes the weight bound unconstraining") {
  GmbzParams p{2.0, 0.09, 0.1};
  StepRecord rec;
  rec.phi_prime = 0.0;
  rec.at = SplinePoint{0, 0.5, {0.125, 0.25, 0.5, 1.0}, {0.75, 1.0, 1.0, 0.0}};
  rec.e = 0.5;
  auto b = step_bounds(rec, 4.0, p, 0.2);
  CHECK(std::isinf(b.eta_w_max));
  CHECK(contraction_factor(rec, 4.0, 123.0, p, 0.2) == 1.0);
}

TEST_CASE("contraction factor is consistent with the weight bound") {
  Rng r(7);
  GmbzParams p{2.0, 0.09, 0.1};
  for (int t = 0; t < 100; ++t) {
    double u = r.uniform();
    StepRecord rec;
    rec.phi_prime = r.uniform(0.1, 2.0);
    rec.at = SplinePoint{0, u,
                         {u * u * u, u * u, u, 1.0},
                         {3 * u * u, 2 * u, 1.0, 0.0}};
    rec.e = r.uniform(0.05, 3.0);
    double x2 = r.uniform(0.5, 10.0);
    double dx = 0.2;
    auto b = step_bounds(rec, x2, p, dx);
    CHECK(std::abs(contraction_factor(rec, x2, b.eta_w_max, p, dx) + 1.0) <
          1e-10);
    for (double frac : {0.1, 0.5, 0.9, 1.0}) {
      double f = contraction_factor(rec, x2, frac * b.eta_w_max, p, dx);
      CHECK(std::abs(f) <= 1.0 + 1e-10);
    }
    double beyond = contraction_factor(rec, x2, 1.01 * b.eta_w_max, p, dx);
    CHECK(std::abs(beyond) > 1.0 + 1e-10);
  }
}

TEST_CASE("window norm helper") {
  SafModel m({1.0, 2.0, 3.0}, SplineLut(23, 0.2));
  m.x_line.push(1.0);
  m.x_line.push(-2.0);
  CHECK(window_norm_sq(m) == doctest::Approx(5.0));
}
