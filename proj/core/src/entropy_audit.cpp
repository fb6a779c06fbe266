#include "degen/entropy_audit.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "degen/quadrature.hpp"

namespace degen {

double sign_eps(double sigma, double eps) {
  if (sigma >= eps) return 1.0;
  if (sigma <= -eps) return -1.0;
  return std::sin(M_PI * sigma / (2.0 * eps));
}

double sign_eps_prime(double sigma, double eps) {
  if (std::abs(sigma) >= eps) return 0.0;
  return M_PI / (2.0 * eps) * std::cos(M_PI * sigma / (2.0 * eps));
}

double abs_eps(double sigma, double eps) {
  const double as = std::abs(sigma);
  if (as >= eps) return as - eps + 2.0 * eps / M_PI;
  return 2.0 * eps / M_PI * (1.0 - std::cos(M_PI * sigma / (2.0 * eps)));
}

namespace {

constexpr double kQuadTol = 1e-12;

struct Band {
  double lo = 0.0, hi = 0.0;
  bool empty = true;
};

// Preimage of (A(c)-eps, A(c)+eps) under nondecreasing A, clipped to [lo,hi].
Band find_band(const ProblemModel& m, double c, double eps, double lo,
               double hi) {
  Band band;
  const double target = m.A(c);
  if (m.A(hi) <= target - eps || m.A(lo) >= target + eps) return band;
  auto bisect = [&](double threshold, bool lower_edge) {
    // lower_edge: smallest z with A(z) > threshold; else largest z with
    // A(z) < threshold.
    double a = lo, b = hi;
    for (int i = 0; i < 80; ++i) {
      const double mid = 0.5 * (a + b);
      const bool above = m.A(mid) > threshold;
      if (lower_edge) {
        (above ? b : a) = mid;
      } else {
        (m.A(mid) < threshold ? a : b) = mid;
      }
    }
    return lower_edge ? b : a;
  };
  band.lo = m.A(lo) > target - eps ? lo : bisect(target - eps, true);
  band.hi = m.A(hi) < target + eps ? hi : bisect(target + eps, false);
  band.empty = !(band.lo < band.hi);
  if (band.empty) {
    band.lo = band.hi = 0.5 * (band.lo + band.hi);
  }
  return band;
}

// int_a^b g(z) sign_eps(A(z)-A(c)) dz, split at the band edges so the
// adaptive rule never misses the smoothing region.
double integrate_signed(const std::function<double(double)>& g,
                        const ProblemModel& m, double c, double eps, double a,
                        double b) {
  if (a == b) return 0.0;
  double sign = 1.0;
  if (a > b) {
    std::swap(a, b);
    sign = -1.0;
  }
  Band band = find_band(m, c, eps, std::min(a, c), std::max(b, c));
  auto integrand = [&](double z) {
    return g(z) * sign_eps(m.A(z) - m.A(c), eps);
  };
  std::vector<double> cuts = {a, b};
  if (!band.empty) {
    if (band.lo > a && band.lo < b) cuts.push_back(band.lo);
    if (band.hi > a && band.hi < b) cuts.push_back(band.hi);
  }
  std::sort(cuts.begin(), cuts.end());
  double total = 0.0;
  for (size_t i = 0; i + 1 < cuts.size(); ++i)
    total += adaptive_simpson(integrand, cuts[i], cuts[i + 1], kQuadTol, 40);
  return sign * total;
}

// int_a^b psi_eps''(z,c) g(z) dz where psi'' = sign_eps'(A(z)-A(c)) A'(z);
// the integrand vanishes outside the band.
double integrate_psi_dd(const std::function<double(double)>& g,
                        const ProblemModel& m, double c, double eps, double a,
                        double b) {
  if (a == b) return 0.0;
  double sign = 1.0;
  if (a > b) {
    std::swap(a, b);
    sign = -1.0;
  }
  Band band = find_band(m, c, eps, a, b);
  if (band.empty) return 0.0;
  const double lo = std::max(a, band.lo), hi = std::min(b, band.hi);
  if (!(lo < hi)) return 0.0;
  auto integrand = [&](double z) {
    return g(z) * sign_eps_prime(m.A(z) - m.A(c), eps) * m.A_prime(z);
  };
  return sign * adaptive_simpson(integrand, lo, hi, kQuadTol, 40);
}

}  // namespace

double psi_eps(double u, double c, const ProblemModel& model, double eps) {
  if (!(eps > 0.0)) throw AuditError("psi_eps: eps must be positive");
  return integrate_signed([](double) { return 1.0; }, model, c, eps, c, u);
}

double q_eps(double u, double c, const ProblemModel& model, double eps) {
  if (!(eps > 0.0)) throw AuditError("q_eps: eps must be positive");
  return integrate_signed(model.f_prime, model, c, eps, c, u);
}

double q_split(double u, double v, double c, const SplitFlux& split,
               const ProblemModel& model, double eps) {
  if (!(eps > 0.0)) throw AuditError("q_split: eps must be positive");
  return integrate_signed(split.F1_prime, model, c, eps, c, u) +
         integrate_signed(split.F2_prime, model, c, eps, c, v);
}

double default_eps(const ProblemModel& model) {
  const double width = model.A(model.range_max) - model.A(model.range_min);
  const double fallback = model.range_max - model.range_min;
  return 1e-4 * (width > 0.0 ? width : (fallback > 0.0 ? fallback : 1.0));
}

std::vector<double> default_constants(const ProblemModel& model, int k) {
  std::vector<double> cs(k);
  for (int i = 0; i < k; ++i)
    cs[i] = model.range_min +
            (model.range_max - model.range_min) * (i + 0.5) / k;
  return cs;
}

namespace {

enum class TimeTerm { SemiDiscrete, Backward, Forward };

// Shared evaluator for the three cell entropy inequalities. u_spatial is
// the state the spatial terms and the right-hand side are evaluated at;
// the time term depends on the variant.
ResidualReport entropy_residual_impl(
    TimeTerm variant, const GridFunction& u_spatial,
    const GridFunction* u_other, double dt, const SplitFlux& split,
    const ProblemModel& model, double eps, const std::vector<double>& constants,
    double tolerance) {
  const int n = u_spatial.size();
  const double dx = u_spatial.grid.dx, dx2 = dx * dx;

  GridFunction rhs =
      variant == TimeTerm::SemiDiscrete
          ? spatial_rhs(u_spatial, split, model)
          : GridFunction(u_spatial.grid, std::vector<double>(n, 0.0));

  // D_-D_+ A(u) for the explicit variant's extra term.
  std::vector<double> ddA(n, 0.0);
  if (variant == TimeTerm::Forward) {
    for (int j = 0; j < n; ++j)
      ddA[j] = (model.A(u_spatial.at(j + 1)) - 2.0 * model.A(u_spatial.at(j)) +
                model.A(u_spatial.at(j - 1))) /
               dx2;
  }

  ResidualReport rep;
  rep.constants_tested = constants;
  rep.tolerance_used = tolerance;
  rep.per_cell_max.assign(n, 0.0);

  for (double c : constants) {
    const double Ac = model.A(c);
    std::vector<double> Q1(n), Q2(n), absA(n), psiP(n);
    for (int j = 0; j < n; ++j) {
      const double uj = u_spatial.values[j];
      Q1[j] = integrate_signed(split.F1_prime, model, c, eps, c, uj);
      Q2[j] = integrate_signed(split.F2_prime, model, c, eps, c, uj);
      absA[j] = abs_eps(model.A(uj) - Ac, eps);
      psiP[j] = sign_eps(model.A(uj) - Ac, eps);
    }
    auto atv = [&](const std::vector<double>& v, int j) {
      if (j >= 0 && j < n) return v[j];
      if (u_spatial.grid.boundary == Boundary::Periodic)
        return v[(j % n + n) % n];
      return j < 0 ? v.front() : v.back();
    };

    ConstantRecord rec;
    rec.c = c;
    for (int j = 0; j < n; ++j) {
      const double uj = u_spatial.values[j];
      const double ujm = u_spatial.at(j - 1), ujp = u_spatial.at(j + 1);

      double time_term;
      switch (variant) {
        case TimeTerm::SemiDiscrete:
          time_term = psiP[j] * rhs.values[j];
          break;
        case TimeTerm::Backward:  // u_other = previous state
        case TimeTerm::Forward:   // u_other = next state
        {
          const double psi_here = psi_eps(uj, c, model, eps);
          const double psi_other =
              psi_eps(u_other->values[j], c, model, eps);
          time_term = variant == TimeTerm::Backward
                          ? (psi_here - psi_other) / dt
                          : (psi_other - psi_here) / dt;
          break;
        }
      }

      const double q_right = Q1[j] + atv(Q2, j + 1);
      const double q_left = atv(Q1, j - 1) + Q2[j];
      const double dd_abs =
          (atv(absA, j + 1) - 2.0 * absA[j] + atv(absA, j - 1)) / dx2;
      const double lhs = time_term + (q_right - q_left) / dx - dd_abs;

      auto a_shift = [&](double ref) {
        return [&model, ref](double z) { return model.A(z) - model.A(ref); };
      };
      double rhs_bound =
          -(integrate_psi_dd(a_shift(ujp), model, c, eps, ujp, uj) +
            integrate_psi_dd(a_shift(ujm), model, c, eps, ujm, uj)) /
          dx2;
      if (variant == TimeTerm::Forward) {
        // int_{u^n}^{u^{n+1}} psi'' dz = psi'(u^{n+1}) - psi'(u^n).
        const double dpsiP =
            sign_eps(model.A(u_other->values[j]) - Ac, eps) - psiP[j];
        rhs_bound += dpsiP * ddA[j];
      }

      const double violation = lhs - rhs_bound;
      if (violation > rep.per_cell_max[j]) rep.per_cell_max[j] = violation;
      if (violation > rec.worst_value) {
        rec.worst_value = violation;
        rec.worst_cell = j;
      }
      if (violation > rep.worst_violation) {
        rep.worst_violation = violation;
        rep.worst_cell = j;
        rep.worst_constant = c;
      }
    }
    rep.per_constant.push_back(rec);
  }
  rep.pass = rep.worst_violation <= tolerance;
  return rep;
}

}  // namespace

ResidualReport semidiscrete_entropy_residual(
    const GridFunction& u, const SplitFlux& split, const ProblemModel& model,
    double eps, const std::vector<double>& constants, double tolerance) {
  return entropy_residual_impl(TimeTerm::SemiDiscrete, u, nullptr, 0.0, split,
                               model, eps, constants, tolerance);
}

ResidualReport implicit_entropy_residual(
    const GridFunction& u_prev, const GridFunction& u_next, double dt,
    const SplitFlux& split, const ProblemModel& model, double eps,
    const std::vector<double>& constants, double tolerance) {
  return entropy_residual_impl(TimeTerm::Backward, u_next, &u_prev, dt, split,
                               model, eps, constants, tolerance);
}

ResidualReport explicit_entropy_residual(
    const GridFunction& u_n, const GridFunction& u_np1, double dt,
    const SplitFlux& split, const ProblemModel& model, double eps,
    const std::vector<double>& constants, double tolerance) {
  const double dx = u_n.grid.dx;
  for (int i = 0; i < 256; ++i) {
    const double z = model.range_min + (model.range_max - model.range_min) *
                                           static_cast<double>(i) / 255;
    if (1.0 - dt / dx * (split.F1_prime(z) - split.F2_prime(z)) < -1e-12)
      throw AuditError(
          "explicit_entropy_residual: convective CFL condition violated");
  }
  return entropy_residual_impl(TimeTerm::Forward, u_n, &u_np1, dt, split,
                               model, eps, constants, tolerance);
}

FluxDiffReport flux_diff_audit(const SolveTrace& trace, const SplitFlux& split,
                               const ProblemModel& model, double slack) {
  FluxDiffReport rep;
  auto flux_diff = [&](const GridFunction& u) {
    std::vector<double> v(u.size());
    for (int j = 0; j < u.size(); ++j)
      v[j] = eval_flux(split, u.values[j], u.at(j + 1)) -
             (model.A(u.at(j + 1)) - model.A(u.values[j])) / u.grid.dx;
    return GridFunction(u.grid, std::move(v));
  };
  GridFunction v0 = flux_diff(trace.states.front());
  rep.initial_linf = norm_linf(v0);
  rep.initial_bv = bv_seminorm(v0);
  for (size_t s = 1; s < trace.states.size(); ++s) {
    GridFunction v = flux_diff(trace.states[s]);
    rep.worst_linf_excess =
        std::max(rep.worst_linf_excess, norm_linf(v) - rep.initial_linf);
    rep.worst_bv_excess =
        std::max(rep.worst_bv_excess, bv_seminorm(v) - rep.initial_bv);
  }
  rep.pass = rep.worst_linf_excess <= slack && rep.worst_bv_excess <= slack;
  return rep;
}

HolderReport time_holder_audit(const SolveTrace& trace,
                               const ProblemModel& model) {
  HolderReport rep;
  const size_t ns = trace.states.size();
  if (ns < 2) return rep;
  std::vector<std::vector<double>> dpa(ns);
  const double dx = trace.states.front().grid.dx;
  for (size_t s = 0; s < ns; ++s) {
    const GridFunction& u = trace.states[s];
    dpa[s].resize(u.size());
    for (int j = 0; j < u.size(); ++j)
      dpa[s][j] = (model.A(u.at(j + 1)) - model.A(u.values[j])) / dx;
  }
  for (size_t m = 1; m < ns; ++m) {
    for (size_t n = 0; n < m; ++n) {
      const double gap = trace.times[m] - trace.times[n];
      if (!(gap > 0.0)) continue;
      double h = 0.0;
      for (size_t j = 0; j < dpa[m].size(); ++j)
        h += std::abs(dpa[m][j] - dpa[n][j]);
      h *= dx;
      rep.fitted_L = std::max(rep.fitted_L, h / std::sqrt(gap));
      ++rep.pairs_checked;
    }
  }
  return rep;
}

void write_residual_csv(const ResidualReport& report, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("write_residual_csv: cannot open " + path);
  char buf[256];
  out << "c,worst_cell_index,worst_value,pass\n";
  for (const auto& rec : report.per_constant) {
    std::snprintf(buf, sizeof buf, "%.17g,%d,%.17g,%d\n", rec.c,
                  rec.worst_cell, rec.worst_value,
                  rec.worst_value <= report.tolerance_used ? 1 : 0);
    out << buf;
  }
  std::snprintf(buf, sizeof buf, "# worst_violation=%.17g\n",
                report.worst_violation);
  out << buf;
  std::snprintf(buf, sizeof buf, "# tolerance=%.17g\n", report.tolerance_used);
  out << buf;
  out << "# pass=" << (report.pass ? 1 : 0) << "\n";
}

}  // namespace degen
