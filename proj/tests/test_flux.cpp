#include <cmath>

#include "degen/flux.hpp"
#include "degen/problems.hpp"
#include "doctest.h"

using namespace degen;

namespace {

// Brute-force composite midpoint rule, independent of the adaptive path.
double midpoint_integral(const std::function<double(double)>& f, double a,
                         double b, int n = 200000) {
  const double h = (b - a) / n;
  double s = 0.0;
  for (int i = 0; i < n; ++i) s += f(a + (i + 0.5) * h);
  return s * h;
}

ProblemModel burgers() { return burgers_riemann(1.0, -1.0); }

}  // namespace

TEST_CASE("model validation") {
  for (const auto& key : catalog_keys())
    CHECK_NOTHROW(validate_model(model_by_key(key)));

  ProblemModel bad = heat_smooth();
  bad.A = [](double w) { return w + 1.0; };  // A(0) != 0
  CHECK_THROWS_AS(validate_model(bad), ModelError);

  ProblemModel decreasing = heat_smooth();
  decreasing.A = [](double w) { return -w; };
  decreasing.A_prime = [](double) { return -1.0; };
  CHECK_THROWS_AS(validate_model(decreasing), ModelError);
}

TEST_CASE("eval_flux consistency and Burgers values") {
  ProblemModel m = burgers();
  SplitFlux eo = engquist_osher(m);
  for (double w : {-0.7, 0.0, 0.3, 1.0})
    CHECK(eval_flux(eo, w, w) == doctest::Approx(m.f(w)).epsilon(1e-12));
  CHECK(eval_flux(eo, 1.0, 0.0) == doctest::Approx(0.5));
  CHECK(eval_flux(eo, 1.0, -1.0) == doctest::Approx(1.0));
}

TEST_CASE("engquist_osher closed forms") {
  ProblemModel adv = linear_advection();
  SplitFlux up = engquist_osher(adv);
  CHECK(up.F1(0.7) == doctest::Approx(0.7));
  CHECK(up.F2(0.7) == doctest::Approx(0.0));

  ProblemModel neg = adv;
  neg.f = [](double w) { return -w; };
  neg.f_prime = [](double) { return -1.0; };
  neg.eo_closed_form.reset();
  SplitFlux dn = engquist_osher(neg);
  CHECK(dn.F1(0.7) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(dn.F2(0.7) == doctest::Approx(-0.7));
}

TEST_CASE("engquist_osher quadrature path matches closed forms") {
  ProblemModel m = burgers();
  SplitFlux closed = engquist_osher(m);
  SplitFlux quad = engquist_osher_quadrature(m);
  for (int i = 0; i < 256; ++i) {
    const double u = -1.0 + 2.0 * i / 255.0;
    CHECK(std::abs(closed.F1(u) - quad.F1(u)) < 1e-10);
    CHECK(std::abs(closed.F2(u) - quad.F2(u)) < 1e-10);
  }
  ProblemModel adv = linear_advection();
  SplitFlux aq = engquist_osher_quadrature(adv);
  for (int i = 0; i < 256; ++i) {
    const double u = -1.0 + 2.0 * i / 255.0;
    CHECK(std::abs(aq.F1(u) - u) < 1e-10);
    CHECK(std::abs(aq.F2(u)) < 1e-10);
  }
}

TEST_CASE("affine split flux") {
  ProblemModel adv = linear_advection();
  SplitFlux upwind = affine_split_flux(1.0, 0.0, adv);
  CHECK(eval_flux(upwind, 0.3, 0.9) == doctest::Approx(adv.f(0.3)));

  // Lax-Friedrichs-type for Burgers on [-1,1] with b = max|f'| = 1
  ProblemModel m = burgers();
  SplitFlux lf = affine_split_flux(0.5, 1.0, m);
  for (double u : {-0.8, 0.1, 0.9})
    for (double v : {-0.5, 0.4}) {
      const double expect = 0.5 * (m.f(u) + m.f(v)) + (u - v);
      CHECK(eval_flux(lf, u, v) == doctest::Approx(expect).epsilon(1e-12));
    }

  // a=1/2, b=0 for nonmonotone f: precondition fails
  CHECK_THROWS_AS(affine_split_flux(0.5, 0.0, m), FluxError);
}

TEST_CASE("split flux invariants") {
  ProblemModel m = burgers();
  for (SplitFlux s : {engquist_osher(m), affine_split_flux(0.5, 1.0, m)})
    CHECK_NOTHROW(validate_split(s, m));
}

TEST_CASE("eval_flux monotone in each argument") {
  ProblemModel m = burgers();
  SplitFlux eo = engquist_osher(m);
  const int n = 33;
  for (int i = 0; i + 1 < n; ++i) {
    const double u1 = -1.0 + 2.0 * i / (n - 1), u2 = -1.0 + 2.0 * (i + 1) / (n - 1);
    for (int j = 0; j + 1 < n; ++j) {
      const double v1 = -1.0 + 2.0 * j / (n - 1), v2 = -1.0 + 2.0 * (j + 1) / (n - 1);
      CHECK(eval_flux(eo, u2, v1) >= eval_flux(eo, u1, v1) - 1e-14);
      CHECK(eval_flux(eo, u1, v2) <= eval_flux(eo, u1, v1) + 1e-14);
    }
  }
}

TEST_CASE("numerical entropy flux") {
  ProblemModel m = burgers();
  SplitFlux eo = engquist_osher(m);

  auto one = [](double) { return 1.0; };
  CHECK(numerical_entropy_flux(eo, one, 0.3, 0.3, 0.3) == doctest::Approx(0.0));
  // psi' == 1 reduces to flux differences
  const double expect =
      eo.F1(0.8) - eo.F1(0.2) + eo.F2(-0.5) - eo.F2(0.2);
  CHECK(numerical_entropy_flux(eo, one, 0.2, 0.8, -0.5) ==
        doctest::Approx(expect).epsilon(1e-10));

  // Kruzkov-type psi'(z) = sign(z - c) at c=0, (u,v) = (1,-1); expected
  // value frozen from the independent midpoint-rule oracle.
  auto kruzkov = [](double z) { return z > 0.0 ? 1.0 : (z < 0.0 ? -1.0 : 0.0); };
  const double oracle =
      midpoint_integral([&](double z) { return kruzkov(z) * eo.F1_prime(z); },
                        0.0, 1.0) +
      midpoint_integral([&](double z) { return kruzkov(z) * eo.F2_prime(z); },
                        0.0, -1.0, 200000);
  // directly: int_0^1 z dz = 1/2 and the directed int_0^{-1} (-z) dz = -1/2
  CHECK(oracle == doctest::Approx(0.0).epsilon(1e-6));
  CHECK(numerical_entropy_flux(eo, kruzkov, 0.0, 1.0, -1.0) ==
        doctest::Approx(0.0).scale(1.0).epsilon(1e-10));
}

TEST_CASE("check_monotone") {
  ProblemModel m = burgers();
  CHECK(check_monotone(engquist_osher(m), -1.0, 1.0, 256).pass);
  auto bad = affine_split_flux(1.0, 0.0, linear_advection());
  // reuse the upwind split against Burgers' f' (F1' = f' = u < 0 for u < 0)
  SplitFlux upwind_burgers;
  upwind_burgers.F1 = m.f;
  upwind_burgers.F2 = [](double) { return 0.0; };
  upwind_burgers.F1_prime = m.f_prime;
  upwind_burgers.F2_prime = [](double) { return 0.0; };
  auto rep = check_monotone(upwind_burgers, -1.0, 1.0, 256);
  CHECK(!rep.pass);
  CHECK(rep.worst_point < 0.0);
  CHECK(check_monotone(bad, -1.0, 1.0, 64).pass);
  CHECK_THROWS_AS(check_monotone(bad, -1.0, 1.0, 1), FluxError);
}
