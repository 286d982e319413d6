#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "splinaf/criteria.hpp"
#include "splinaf/errors.hpp"
#include "splinaf/rng.hpp"

using namespace splinaf;

TEST_CASE("gmbz cost and influence match independently computed values") {
  // frozen from a 30-digit evaluation of the closed forms
  Gmbz c({2.0, 0.09, 0.1});
  CHECK(c.cost(1.0) == doctest::Approx(0.0814751415622765469).epsilon(1e-14));
  CHECK(c.influence(1.0) ==
        doctest::Approx(0.901373977393495553).epsilon(1e-14));
  CHECK(c.cost(0.5) == doctest::Approx(0.0204334972189476722).epsilon(1e-14));
  CHECK(c.influence(0.5) ==
        doctest::Approx(0.453607104984440332).epsilon(1e-14));

  Gmbz c15({1.5, 0.09, 0.1});
  CHECK(c15.cost(-2.0) == doctest::Approx(0.228545907919690089).epsilon(1e-14));
  CHECK(c15.influence(-2.0) ==
        doctest::Approx(-1.252636934782038003).epsilon(1e-14));
}

TEST_CASE("gmbz gradient consistency: dJ/de = lambda*alpha*f(e)") {
  for (double alpha : {1.5, 2.0, 3.0}) {
    Gmbz c({alpha, 0.09, 0.1});
    double fold = 0.09 * alpha;
    CHECK(c.step_fold() == doctest::Approx(fold).epsilon(1e-15));
    for (int k = 0; k < 200; ++k) {
      double e = -5.0 + 10.0 * (k + 0.5) / 200.0;  // grid excludes 0
      double h = 1e-6;
      double fd = (c.cost(e + h) - c.cost(e - h)) / (2.0 * h);
      double an = fold * c.influence(e);
      CHECK(std::abs(fd - an) <= 1e-5 * std::max(std::abs(an), 1e-8));
    }
  }
}

TEST_CASE("costs are nonnegative, zero at zero, symmetric") {
  Gmbz g({2.0, 0.09, 0.1});
  Lms l;
  Sign s;
  Mcc m(1.5);
  Gmcc gm(2.0, 3.0);
  const Criterion* cs[] = {&g, &l, &s, &m, &gm};
  Rng r(3);
  for (const Criterion* c : cs) {
    CHECK(c->cost(0.0) == 0.0);
    CHECK(c->influence(0.0) == 0.0);
    for (int k = 0; k < 100; ++k) {
      double e = r.uniform(-8.0, 8.0);
      CHECK(c->cost(e) >= 0.0);
      CHECK(c->cost(-e) == doctest::Approx(c->cost(e)).epsilon(1e-13));
      CHECK(c->influence(-e) ==
            doctest::Approx(-c->influence(e)).epsilon(1e-13));
    }
  }
}

TEST_CASE("baseline influences take their defining forms") {
  Lms l;
  CHECK(l.influence(0.7) == 0.7);
  CHECK(l.cost(2.0) == 2.0);
  auto ld = l.influence_derivs(1.3);
  CHECK(ld.d1 == 1.0);
  CHECK(ld.d2 == 0.0);

  Sign s;
  CHECK(s.influence(0.3) == 1.0);
  CHECK(s.influence(-0.3) == -1.0);
  CHECK(s.cost(-0.3) == doctest::Approx(0.3));

  Mcc m(1.5);
  CHECK(m.influence(1.5) ==
        doctest::Approx(0.9097959895689501).epsilon(1e-14));  // 1.5*exp(-1/2)
  // kernel peak at |e| = sigma
  CHECK(m.influence(1.5) > m.influence(1.4));
  CHECK(m.influence(1.5) > m.influence(1.6));

  Gmcc gc(2.0, 3.0);
  double e = 0.4;
  CHECK(gc.influence(e) ==
        doctest::Approx(std::exp(-3.0 * e * e) * e).epsilon(1e-14));
  // gradient of its cost equals the influence (fold = 1)
  double h = 1e-6;
  double fd = (gc.cost(e + h) - gc.cost(e - h)) / (2.0 * h);
  CHECK(fd == doctest::Approx(gc.influence(e)).epsilon(1e-6));
  CHECK(gc.step_fold() == 1.0);
}

TEST_CASE("gmbz small-error slope is 1/(1+gamma) and redescends") {
  Gmbz c({2.0, 0.09, 0.1});
  auto d0 = c.influence_derivs(0.0);
  CHECK(d0.d1 == doctest::Approx(1.0 / 1.1).epsilon(1e-12));
  CHECK(std::abs(d0.d2) < 1e-9);
  // rises to a mode then falls
  CHECK(std::abs(c.influence(2.0)) > std::abs(c.influence(1.0)));
  CHECK(std::abs(c.influence(8.0)) < std::abs(c.influence(3.0)));
}

TEST_CASE("gmbz analytic derivatives at alpha=2 match the FD route") {
  Gmbz c({2.0, 0.09, 0.1});
  // frozen closed-form values at e = 0.7
  auto a = c.influence_derivs(0.7);
  CHECK(a.d1 == doctest::Approx(0.897824093925229968).epsilon(1e-12));
  CHECK(a.d2 == doctest::Approx(-0.0331540399018280019).epsilon(1e-9));
  for (int k = 0; k <= 60; ++k) {
    double e = -3.0 + 6.0 * k / 60.0;
    auto an = c.influence_derivs(e);
    auto fd = fd_influence_derivs(c, e);
    CHECK(std::abs(an.d1 - fd.d1) <= 1e-6 * std::max(1.0, std::abs(an.d1)));
    CHECK(std::abs(an.d2 - fd.d2) <= 2e-5 * std::max(1.0, std::abs(an.d2)));
  }
}

TEST_CASE("influences stay bounded over a huge dynamic range") {
  Gmbz g({3.0, 0.09, 0.1});
  Mcc m(1.5);
  Gmcc gc(2.0, 3.0);
  Sign s;
  for (int k = 0; k <= 60; ++k) {
    double e = std::pow(10.0, -3.0 + 9.0 * k / 60.0);
    const Criterion* all[] = {&g, &m, &gc, &s};
    for (const Criterion* c : all) {
      double f = c->influence(e);
      CHECK(std::isfinite(f));
      CHECK(std::abs(f) < 10.0);
    }
  }
  // far tail must underflow cleanly to zero, not NaN
  CHECK(g.influence(1e200) == 0.0);
  CHECK(g.influence(-1e200) == 0.0);
}

TEST_CASE("sub-linear exponents are singular at zero error") {
  Gmbz g({0.8, 0.09, 0.1});
  CHECK_THROWS_AS(g.influence(0.0), SingularAtZero);
  Gmcc gc(0.8, 3.0);
  CHECK_THROWS_AS(gc.influence(0.0), SingularAtZero);
  // alpha = 1 is fine: sign(0) = 0
  Gmbz g1({1.0, 0.09, 0.1});
  CHECK(g1.influence(0.0) == 0.0);
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(Gmbz({0.0, 0.09, 0.1}), std::invalid_argument);
  CHECK_THROWS_AS(Gmbz({2.0, 0.0, 0.1}), std::invalid_argument);
  CHECK_THROWS_AS(Gmbz({2.0, 0.09, 0.0}), std::invalid_argument);
  CHECK_THROWS_AS(Mcc(0.0), std::invalid_argument);
  CHECK_THROWS_AS(Gmcc(0.0, 3.0), std::invalid_argument);
  CHECK_THROWS_AS(Gmcc(2.0, 0.0), std::invalid_argument);
}
