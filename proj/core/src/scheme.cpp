#include "degen/scheme.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace degen {

namespace {

int left_of(int j, int n, Boundary bc) {
  if (j > 0) return j - 1;
  return bc == Boundary::Periodic ? n - 1 : 0;
}
int right_of(int j, int n, Boundary bc) {
  if (j < n - 1) return j + 1;
  return bc == Boundary::Periodic ? 0 : n - 1;
}

// Scratch buffers shared across steps of one run.
struct RhsWorkspace {
  std::vector<double> F1v, F2v, Av;

  void compute(const std::vector<double>& u, std::vector<double>& out,
               const SplitFlux& s, const ProblemModel& m, double dx,
               Boundary bc) {
    const int n = static_cast<int>(u.size());
    F1v.resize(n);
    F2v.resize(n);
    Av.resize(n);
    out.resize(n);
    for (int j = 0; j < n; ++j) {
      F1v[j] = s.F1(u[j]);
      F2v[j] = s.F2(u[j]);
      Av[j] = m.A(u[j]);
    }
    const double inv_dx = 1.0 / dx, inv_dx2 = inv_dx * inv_dx;
    for (int j = 0; j < n; ++j) {
      const int l = left_of(j, n, bc), r = right_of(j, n, bc);
      const double flux_right = F1v[j] + F2v[r];
      const double flux_left = F1v[l] + F2v[j];
      out[j] = -(flux_right - flux_left) * inv_dx +
               (Av[r] - 2.0 * Av[j] + Av[l]) * inv_dx2;
    }
  }
};

double l1_scaled(const std::vector<double>& v, double dx) {
  double s = 0.0;
  for (double x : v) s += std::abs(x);
  return dx * s;
}

void thomas_solve(std::vector<double>& a, std::vector<double>& b,
                  std::vector<double>& c, std::vector<double>& d) {
  const int n = static_cast<int>(b.size());
  for (int i = 1; i < n; ++i) {
    const double w = a[i] / b[i - 1];
    b[i] -= w * c[i - 1];
    d[i] -= w * d[i - 1];
  }
  d[n - 1] /= b[n - 1];
  for (int i = n - 2; i >= 0; --i) d[i] = (d[i] - c[i] * d[i + 1]) / b[i];
}

// Cyclic tridiagonal by Sherman-Morrison; corner_tl = entry (0,n-1),
// corner_br = entry (n-1,0).
void cyclic_tridiag_solve(std::vector<double> a, std::vector<double> b,
                          std::vector<double> c, double corner_tl,
                          double corner_br, std::vector<double>& d) {
  const int n = static_cast<int>(b.size());
  const double gamma = -b[0];
  std::vector<double> bb = b;
  bb[0] = b[0] - gamma;
  bb[n - 1] = b[n - 1] - corner_tl * corner_br / gamma;
  std::vector<double> u(n, 0.0);
  u[0] = gamma;
  u[n - 1] = corner_br;
  std::vector<double> x = d, z = u;
  {
    std::vector<double> a1 = a, b1 = bb, c1 = c;
    thomas_solve(a1, b1, c1, x);
  }
  {
    std::vector<double> a2 = a, b2 = bb, c2 = c;
    thomas_solve(a2, b2, c2, z);
  }
  const double vx = x[0] + corner_tl / gamma * x[n - 1];
  const double vz = z[0] + corner_tl / gamma * z[n - 1];
  const double factor = vx / (1.0 + vz);
  for (int i = 0; i < n; ++i) d[i] = x[i] - factor * z[i];
}

void record(SolveTrace& trace, double t, const Grid1D& grid,
            const std::vector<double>& u) {
  trace.times.push_back(t);
  trace.states.emplace_back(grid, u);
}

}  // namespace

GridFunction spatial_rhs(const GridFunction& u, const SplitFlux& split,
                         const ProblemModel& model) {
  RhsWorkspace ws;
  std::vector<double> out;
  ws.compute(u.values, out, split, model, u.grid.dx, u.grid.boundary);
  return GridFunction(u.grid, std::move(out));
}

double cfl_max_dt(double lo, double hi, const SplitFlux& split,
                  const ProblemModel& model, double dx,
                  const SchemeConfig& config) {
  double sup_conv = 0.0, sup_diff = 0.0;
  const int n = 512;
  for (int i = 0; i < n; ++i) {
    const double z = lo + (hi - lo) * static_cast<double>(i) / (n - 1);
    const double conv = split.F1_prime(z) - split.F2_prime(z);
    const double diff = model.A_prime(z);
    if (!std::isfinite(conv) || !std::isfinite(diff) || conv < -1e-12 ||
        diff < -1e-12)
      throw SolverError("cfl_max_dt: invalid derivative sample at z=" +
                        std::to_string(z));
    sup_conv = std::max(sup_conv, conv);
    sup_diff = std::max(sup_diff, diff);
  }
  const double denom = dx * sup_conv + 2.0 * sup_diff;
  double dt = denom > 0.0 ? config.cfl_safety * dx * dx / denom
                          : model.final_time;
  if (config.strengthened_cfl) dt = std::min(dt, std::pow(dx, 8.0 / 3.0));
  return dt;
}

GridFunction explicit_step(const GridFunction& u, double dt,
                           const SplitFlux& split, const ProblemModel& model) {
  RhsWorkspace ws;
  std::vector<double> rhs;
  ws.compute(u.values, rhs, split, model, u.grid.dx, u.grid.boundary);
  std::vector<double> out(u.values);
  for (size_t j = 0; j < out.size(); ++j) out[j] += dt * rhs[j];
  return GridFunction(u.grid, std::move(out));
}

namespace {

// One damped Newton solve of the implicit update. Returns iterations used;
// throws NewtonFailure.
int newton_solve(std::vector<double>& u, const std::vector<double>& u_prev,
                 double dt, const SplitFlux& s, const ProblemModel& m,
                 double dx, Boundary bc, const SchemeConfig& cfg,
                 RhsWorkspace& ws) {
  const int n = static_cast<int>(u.size());
  const double inv_dx = 1.0 / dx, inv_dx2 = inv_dx * inv_dx;
  std::vector<double> rhs, res(n), sub(n), diag(n), sup(n), delta(n), trial(n),
      res_trial(n);

  auto residual = [&](const std::vector<double>& v, std::vector<double>& out) {
    ws.compute(v, rhs, s, m, dx, bc);
    out.resize(n);
    for (int j = 0; j < n; ++j) out[j] = v[j] - u_prev[j] - dt * rhs[j];
  };

  residual(u, res);
  double rn = l1_scaled(res, dx);
  const double target = cfg.newton_tol * (1.0 + l1_scaled(u_prev, dx));
  for (int it = 0; it <= cfg.newton_max_iters; ++it) {
    if (rn <= target) return it;
    if (it == cfg.newton_max_iters) break;

    double corner_tl = 0.0, corner_br = 0.0;
    for (int j = 0; j < n; ++j) {
      const int l = left_of(j, n, bc), r = right_of(j, n, bc);
      const double d_sub = -dt * (s.F1_prime(u[l]) * inv_dx +
                                  m.A_prime(u[l]) * inv_dx2);
      const double d_sup = dt * (s.F2_prime(u[r]) * inv_dx -
                                 m.A_prime(u[r]) * inv_dx2);
      diag[j] = 1.0 + dt * ((s.F1_prime(u[j]) - s.F2_prime(u[j])) * inv_dx +
                            2.0 * m.A_prime(u[j]) * inv_dx2);
      sub[j] = 0.0;
      sup[j] = 0.0;
      if (l == j) {
        diag[j] += d_sub;  // extrapolated ghost folds into the diagonal
      } else if (j == 0 && l == n - 1) {
        corner_tl = d_sub;
      } else {
        sub[j] = d_sub;
      }
      if (r == j) {
        diag[j] += d_sup;
      } else if (j == n - 1 && r == 0) {
        corner_br = d_sup;
      } else {
        sup[j] = d_sup;
      }
    }

    for (int j = 0; j < n; ++j) delta[j] = -res[j];
    if (bc == Boundary::Periodic) {
      cyclic_tridiag_solve(sub, diag, sup, corner_tl, corner_br, delta);
    } else {
      std::vector<double> a = sub, b = diag, c = sup;
      thomas_solve(a, b, c, delta);
    }

    double lambda = 1.0;
    bool accepted = false;
    for (int h = 0; h < 40; ++h) {
      for (int j = 0; j < n; ++j) trial[j] = u[j] + lambda * delta[j];
      residual(trial, res_trial);
      const double rn_trial = l1_scaled(res_trial, dx);
      if (rn_trial < rn) {
        u = trial;
        res = res_trial;
        rn = rn_trial;
        accepted = true;
        break;
      }
      lambda *= 0.5;
    }
    if (!accepted)
      throw NewtonFailure("implicit_step: damping failed to reduce residual",
                          rn);
  }
  throw NewtonFailure("implicit_step: newton_max_iters exceeded", rn);
}

}  // namespace

GridFunction implicit_step(const GridFunction& u_prev, double dt,
                           const SplitFlux& split, const ProblemModel& model,
                           const SchemeConfig& config, int* iters_out) {
  if (!(dt > 0.0)) throw SolverError("implicit_step: dt must be positive");
  std::vector<double> u = u_prev.values;
  RhsWorkspace ws;
  const int iters = newton_solve(u, u_prev.values, dt, split, model,
                                 u_prev.grid.dx, u_prev.grid.boundary, config,
                                 ws);
  if (iters_out) *iters_out = iters;
  return GridFunction(u_prev.grid, std::move(u));
}

SolveTrace semi_discrete_solve(const ProblemModel& model,
                               const SplitFlux& split, const Grid1D& grid,
                               const SchemeConfig& config) {
  GridFunction u0g = cell_average_project(model.u0, grid);
  const auto [lo_it, hi_it] =
      std::minmax_element(u0g.values.begin(), u0g.values.end());
  const double lo = *lo_it, hi = *hi_it;
  double dt = config.fixed_dt
                  ? *config.fixed_dt
                  : config.rk_substep_factor *
                        cfl_max_dt(lo, hi, split, model, grid.dx, config);
  if (dt < 1e-14 * model.final_time)
    throw SolverError("semi_discrete_solve: dt degenerated");

  SolveTrace trace;
  record(trace, 0.0, grid, u0g.values);
  std::vector<double> u = u0g.values, k(u.size()), s1(u.size()), s2(u.size());
  RhsWorkspace ws;
  double t = 0.0;
  const double T = model.final_time;
  while (t < T - 1e-14 * std::max(T, 1.0)) {
    const double h = std::min(dt, T - t);
    ws.compute(u, k, split, model, grid.dx, grid.boundary);
    for (size_t j = 0; j < u.size(); ++j) s1[j] = u[j] + h * k[j];
    ws.compute(s1, k, split, model, grid.dx, grid.boundary);
    for (size_t j = 0; j < u.size(); ++j)
      s2[j] = 0.75 * u[j] + 0.25 * (s1[j] + h * k[j]);
    ws.compute(s2, k, split, model, grid.dx, grid.boundary);
    for (size_t j = 0; j < u.size(); ++j)
      u[j] = u[j] / 3.0 + 2.0 / 3.0 * (s2[j] + h * k[j]);
    t += h;
    ++trace.step_count;
    if (trace.step_count % config.save_every == 0 || t >= T - 1e-14)
      record(trace, std::min(t, T), grid, u);
  }
  if (trace.times.back() != T) {
    trace.times.back() = T;  // absorb roundoff in the final clip
  }
  return trace;
}

SolveTrace run_to_time(const ProblemModel& model, const SplitFlux& split,
                       const Grid1D& grid, const SchemeConfig& config) {
  if (config.kind == SchemeKind::SemiDiscrete)
    return semi_discrete_solve(model, split, grid, config);

  GridFunction u0g = cell_average_project(model.u0, grid);
  SolveTrace trace;
  record(trace, 0.0, grid, u0g.values);
  const double T = model.final_time;
  if (T <= 0.0) return trace;

  const auto [lo_it, hi_it] =
      std::minmax_element(u0g.values.begin(), u0g.values.end());
  const double lo = *lo_it, hi = *hi_it;

  std::vector<double> u = u0g.values, rhs(u.size());
  RhsWorkspace ws;
  double t = 0.0;

  if (config.kind == SchemeKind::Explicit) {
    auto mono = check_monotone(split, model.range_min, model.range_max, 256);
    if (!mono.pass)
      throw SolverError("run_to_time: explicit scheme requires a monotone "
                        "flux (" + mono.detail + ")");
    const double dt =
        config.fixed_dt ? *config.fixed_dt
                        : cfl_max_dt(lo, hi, split, model, grid.dx, config);
    if (dt < 1e-14 * T) throw SolverError("run_to_time: dt degenerated");
    while (t < T - 1e-14 * std::max(T, 1.0)) {
      const double h = std::min(dt, T - t);
      ws.compute(u, rhs, split, model, grid.dx, grid.boundary);
      for (size_t j = 0; j < u.size(); ++j) u[j] += h * rhs[j];
      t += h;
      ++trace.step_count;
      if (trace.step_count % config.save_every == 0 || t >= T - 1e-14)
        record(trace, std::min(t, T), grid, u);
    }
  } else {  // Implicit
    double dt = config.fixed_dt ? *config.fixed_dt : grid.dx;
    GridFunction cur(grid, u);
    while (t < T - 1e-14 * std::max(T, 1.0)) {
      const double h = std::min(dt, T - t);
      int iters = 0;
      bool done = false;
      double h_try = h;
      for (int halvings = 0; halvings <= 10; ++halvings) {
        try {
          GridFunction next =
              implicit_step(cur, h_try, split, model, config, &iters);
          cur = std::move(next);
          t += h_try;
          done = true;
          break;
        } catch (const NewtonFailure&) {
          h_try *= 0.5;
        }
      }
      if (!done) {
        std::ostringstream os;
        os << "run_to_time: implicit step failed at t=" << t << " (step "
           << trace.step_count << ") after 10 dt halvings";
        throw SolverError(os.str());
      }
      ++trace.step_count;
      trace.newton_iter_histogram[trace.step_count] = iters;
      if (trace.step_count % config.save_every == 0 || t >= T - 1e-14)
        record(trace, std::min(t, T), grid, cur.values);
    }
  }
  if (trace.times.back() != T) trace.times.back() = T;
  return trace;
}

}  // namespace degen
