#include "degen/problems.hpp"

#include <cmath>

namespace degen {

namespace {

SplitFlux burgers_eo_closed_form() {
  SplitFlux s;
  s.F1 = [](double u) { double p = std::max(u, 0.0); return 0.5 * p * p; };
  s.F2 = [](double v) { double q = std::min(v, 0.0); return 0.5 * q * q; };
  s.F1_prime = [](double u) { return std::max(u, 0.0); };
  s.F2_prime = [](double v) { return std::min(v, 0.0); };
  return s;
}

SplitFlux upwind_closed_form() {
  SplitFlux s;
  s.F1 = [](double u) { return u; };
  s.F2 = [](double) { return 0.0; };
  s.F1_prime = [](double) { return 1.0; };
  s.F2_prime = [](double) { return 0.0; };
  return s;
}

SplitFlux zero_flux_closed_form() {
  SplitFlux s;
  s.F1 = [](double) { return 0.0; };
  s.F2 = [](double) { return 0.0; };
  s.F1_prime = [](double) { return 0.0; };
  s.F2_prime = [](double) { return 0.0; };
  return s;
}

double ipow(double x, int p) {
  double r = 1.0;
  for (int i = 0; i < p; ++i) r *= x;
  return r;
}

}  // namespace

ProblemModel burgers_riemann(double u_left, double u_right) {
  if (u_left == u_right)
    throw ModelError("burgers_riemann: equal left/right states");
  ProblemModel m;
  m.key = u_left > u_right ? "burgers_shock" : "burgers_rarefaction";
  m.f = [](double w) { return 0.5 * w * w; };
  m.f_prime = [](double w) { return w; };
  m.A = [](double) { return 0.0; };
  m.A_prime = [](double) { return 0.0; };
  m.u0 = [u_left, u_right](double x) { return x < 0.0 ? u_left : u_right; };
  m.range_min = std::min(u_left, u_right);
  m.range_max = std::max(u_left, u_right);
  m.final_time = 0.5;
  m.x_left = -2.0;
  m.x_right = 2.0;
  m.boundary = Boundary::Extrapolate;
  m.eo_closed_form = burgers_eo_closed_form();
  if (u_left > u_right) {
    const double s = 0.5 * (u_left + u_right);  // Rankine-Hugoniot
    m.exact = [u_left, u_right, s](double x, double t) {
      return x < s * t ? u_left : u_right;
    };
  } else {
    m.exact = [u_left, u_right](double x, double t) {
      if (t <= 0.0) return x < 0.0 ? u_left : u_right;
      if (x <= u_left * t) return u_left;
      if (x >= u_right * t) return u_right;
      return x / t;
    };
  }
  return m;
}

ProblemModel heat_smooth() {
  ProblemModel m;
  m.key = "heat";
  m.f = [](double) { return 0.0; };
  m.f_prime = [](double) { return 0.0; };
  m.A = [](double w) { return w; };
  m.A_prime = [](double) { return 1.0; };
  m.u0 = [](double x) { return std::sin(2.0 * M_PI * x); };
  m.range_min = -1.0;
  m.range_max = 1.0;
  m.final_time = 0.05;
  m.x_left = 0.0;
  m.x_right = 1.0;
  m.boundary = Boundary::Periodic;
  m.eo_closed_form = zero_flux_closed_form();
  m.exact = [](double x, double t) {
    return std::exp(-4.0 * M_PI * M_PI * t) * std::sin(2.0 * M_PI * x);
  };
  return m;
}

ProblemModel porous_medium_barenblatt(int m_exp) {
  if (m_exp < 2 || m_exp > 4)
    throw ModelError("porous_medium_barenblatt: m must be in {2,3,4}");
  ProblemModel m;
  m.key = "pme" + std::to_string(m_exp);
  m.f = [](double) { return 0.0; };
  m.f_prime = [](double) { return 0.0; };
  m.A = [m_exp](double w) {
    return ipow(std::max(w, 0.0), m_exp + 1) / (m_exp + 1);
  };
  m.A_prime = [m_exp](double w) { return ipow(std::max(w, 0.0), m_exp); };
  // Self-similar profile of u_t = (u^m u_x)_x started at t0:
  //   u(x,t) = s^{-a} (C - (m a / 2) xi^2)_+^{1/m},  xi = x s^{-a},
  //   s = t + t0, a = 1/(m+2).
  const double t0 = 0.1;
  const double C = 0.1;
  const double a = 1.0 / (m_exp + 2);
  auto profile = [t0, C, a, m_exp](double x, double t) {
    const double s = t + t0;
    const double sa = std::pow(s, -a);
    const double xi = x * sa;
    const double val = C - 0.5 * m_exp * a * xi * xi;
    return val > 0.0 ? sa * std::pow(val, 1.0 / m_exp) : 0.0;
  };
  m.exact = profile;
  m.u0 = [profile](double x) { return profile(x, 0.0); };
  m.range_min = 0.0;
  m.range_max = std::pow(t0, -a) * std::pow(C, 1.0 / m_exp);
  m.final_time = 0.5;
  m.x_left = -1.5;
  m.x_right = 1.5;
  m.boundary = Boundary::Extrapolate;
  m.eo_closed_form = zero_flux_closed_form();
  return m;
}

ProblemModel strongly_degenerate_benchmark() {
  ProblemModel m;
  m.key = "sd_bench";
  m.f = [](double w) { return 0.5 * w * w; };
  m.f_prime = [](double w) { return w; };
  // A' = 0 on [-1/2, 1/2], A' = 2(|w| - 1/2) outside; A(0) = 0.
  m.A = [](double w) {
    const double aw = std::abs(w);
    if (aw <= 0.5) return 0.0;
    const double v = (aw - 0.5) * (aw - 0.5);
    return w > 0.0 ? v : -v;
  };
  m.A_prime = [](double w) {
    const double aw = std::abs(w);
    return aw <= 0.5 ? 0.0 : 2.0 * (aw - 0.5);
  };
  m.u0 = [](double x) {
    if (x >= -0.5 && x < 0.0) return 1.0;
    if (x > 0.0 && x <= 0.5) return -1.0;
    return 0.0;
  };
  m.range_min = -1.0;
  m.range_max = 1.0;
  m.final_time = 0.25;
  m.x_left = -2.0;
  m.x_right = 2.0;
  m.boundary = Boundary::Extrapolate;
  m.eo_closed_form = burgers_eo_closed_form();
  return m;
}

ProblemModel linear_advection() {
  ProblemModel m;
  m.key = "advection";
  m.f = [](double w) { return w; };
  m.f_prime = [](double) { return 1.0; };
  m.A = [](double) { return 0.0; };
  m.A_prime = [](double) { return 0.0; };
  m.u0 = [](double x) { return std::sin(2.0 * M_PI * x); };
  m.range_min = -1.0;
  m.range_max = 1.0;
  m.final_time = 0.5;
  m.x_left = 0.0;
  m.x_right = 1.0;
  m.boundary = Boundary::Periodic;
  m.eo_closed_form = upwind_closed_form();
  m.exact = [](double x, double t) { return std::sin(2.0 * M_PI * (x - t)); };
  return m;
}

ProblemModel regularize(const ProblemModel& model, double eta) {
  if (!(eta > 0.0)) throw ModelError("regularize: eta must be positive");
  ProblemModel m = model;
  auto A = model.A;
  auto Ap = model.A_prime;
  m.A = [A, eta](double w) { return A(w) + eta * w; };
  m.A_prime = [Ap, eta](double w) { return Ap(w) + eta; };
  m.exact = nullptr;
  m.key = model.key + "_reg";
  return m;
}

ProblemModel model_by_key(const std::string& key) {
  if (key == "burgers_shock") return burgers_riemann(1.0, 0.0);
  if (key == "burgers_rarefaction") return burgers_riemann(0.0, 1.0);
  if (key == "heat") return heat_smooth();
  if (key == "pme2") return porous_medium_barenblatt(2);
  if (key == "pme3") return porous_medium_barenblatt(3);
  if (key == "pme4") return porous_medium_barenblatt(4);
  if (key == "sd_bench") return strongly_degenerate_benchmark();
  if (key == "advection") return linear_advection();
  throw ModelError("unknown model key: " + key);
}

std::vector<std::string> catalog_keys() {
  return {"burgers_shock", "burgers_rarefaction", "heat", "pme2",
          "pme3",          "pme4",                "sd_bench", "advection"};
}

}  // namespace degen
