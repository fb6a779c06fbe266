#include "degen/harness.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <future>
#include <limits>
#include <stdexcept>

#include "degen/problems.hpp"

namespace degen {

double l1_error(const GridFunction& numeric, const ProblemModel& model,
                double t) {
  if (!model.has_exact())
    throw std::invalid_argument(
        "l1_error: model has no exact solution; use reference_error");
  auto exact_t = [&](double x) { return model.exact(x, t); };
  GridFunction proj = cell_average_project(exact_t, numeric.grid);
  double s = 0.0;
  for (int j = 0; j < numeric.size(); ++j)
    s += std::abs(numeric.values[j] - proj.values[j]);
  return numeric.grid.dx * s;
}

double reference_error(const GridFunction& numeric,
                       const GridFunction& reference) {
  const int n = numeric.size(), nr = reference.size();
  if (nr % n != 0)
    throw std::invalid_argument("reference_error: grids not nested");
  int k = nr / n;
  if ((k & (k - 1)) != 0)
    throw std::invalid_argument("reference_error: refinement not a power of 2");
  if (std::abs(numeric.grid.x_left - reference.grid.x_left) > 1e-12 ||
      std::abs(numeric.grid.length() - reference.grid.length()) > 1e-12)
    throw std::invalid_argument("reference_error: domains differ");
  double s = 0.0;
  for (int j = 0; j < n; ++j) {
    double avg = 0.0;
    for (int i = 0; i < k; ++i) avg += reference.values[j * k + i];
    avg /= k;
    s += std::abs(numeric.values[j] - avg);
  }
  return numeric.grid.dx * s;
}

double estimate_rate(const std::vector<std::pair<double, double>>& pairs) {
  if (pairs.size() < 2)
    throw std::invalid_argument("estimate_rate: need >= 2 pairs");
  double mx = 0.0, my = 0.0;
  std::vector<double> lx(pairs.size()), ly(pairs.size());
  for (size_t i = 0; i < pairs.size(); ++i) {
    if (!(pairs[i].first > 0.0) || !(pairs[i].second > 0.0))
      throw std::invalid_argument("estimate_rate: nonpositive entry");
    lx[i] = std::log(pairs[i].first);
    ly[i] = std::log(pairs[i].second);
    mx += lx[i];
    my += ly[i];
  }
  mx /= pairs.size();
  my /= pairs.size();
  double num = 0.0, den = 0.0;
  for (size_t i = 0; i < pairs.size(); ++i) {
    num += (lx[i] - mx) * (ly[i] - my);
    den += (lx[i] - mx) * (lx[i] - mx);
  }
  return num / den;
}

const GridFunction& ReferenceCache::get(const ProblemModel& model,
                                        int n_cells) {
  std::lock_guard<std::mutex> lock(mu_);
  auto key = std::make_pair(model.key, n_cells);
  auto it = cache_.find(key);
  if (it != cache_.end()) return it->second;
  SchemeConfig cfg;
  cfg.kind = SchemeKind::Explicit;
  cfg.save_every = std::numeric_limits<int>::max();
  SplitFlux split = engquist_osher(model);
  SolveTrace trace = run_to_time(model, split, model.make_grid(n_cells), cfg);
  auto [ins, ok] = cache_.emplace(key, trace.final_state());
  return ins->second;
}

namespace {

SchemeConfig level_config(const SchemeConfig& base, double dx, DtSpec dt) {
  SchemeConfig cfg = base;
  cfg.save_every = std::numeric_limits<int>::max();
  switch (dt.rule) {
    case DtRule::CflBound:
      cfg.fixed_dt.reset();
      break;
    case DtRule::DtEqDx:
      cfg.fixed_dt = dx;
      break;
    case DtRule::DtEqDxHalfPow:
      cfg.fixed_dt = std::pow(dx, dt.value);
      break;
    case DtRule::Fixed:
      cfg.fixed_dt = dt.value;
      break;
  }
  return cfg;
}

}  // namespace

ConvergenceStudy run_study(const ProblemModel& model, SchemeConfig scheme,
                           const std::vector<double>& dx_ladder, DtSpec dt_rule,
                           ReferenceCache* ref_cache) {
  if (dx_ladder.size() < 3)
    throw std::invalid_argument("run_study: need >= 3 ladder levels");
  for (size_t i = 1; i < dx_ladder.size(); ++i)
    if (std::abs(dx_ladder[i] - 0.5 * dx_ladder[i - 1]) >
        1e-12 * dx_ladder[i - 1])
      throw std::invalid_argument("run_study: ladder must halve dx");

  const double L = model.domain_length();
  SplitFlux split = engquist_osher(model);

  ReferenceCache local_cache;
  ReferenceCache& cache = ref_cache ? *ref_cache : local_cache;
  const GridFunction* reference = nullptr;
  if (!model.has_exact()) {
    const int n_finest =
        static_cast<int>(std::lround(L / dx_ladder.back()));
    reference = &cache.get(model, 4 * n_finest);
  }

  struct LevelResult {
    StudyLevel level;
  };
  std::vector<std::future<LevelResult>> jobs;
  for (double dx : dx_ladder) {
    jobs.push_back(std::async(std::launch::async, [&, dx]() {
      const int n = static_cast<int>(std::lround(L / dx));
      SchemeConfig cfg = level_config(scheme, dx, dt_rule);
      SolveTrace trace = run_to_time(model, split, model.make_grid(n), cfg);
      StudyLevel lvl;
      lvl.dx = L / n;
      lvl.n_cells = n;
      lvl.dt = trace.step_count > 0 ? model.final_time / trace.step_count : 0.0;
      lvl.l1_error = model.has_exact()
                         ? l1_error(trace.final_state(), model,
                                    model.final_time)
                         : reference_error(trace.final_state(), *reference);
      return LevelResult{lvl};
    }));
  }

  ConvergenceStudy study;
  study.model_key = model.key;
  for (auto& job : jobs) study.ladder.push_back(job.get().level);

  std::vector<std::pair<double, double>> pairs;
  for (const auto& lvl : study.ladder)
    pairs.emplace_back(lvl.dx, lvl.l1_error);
  study.fitted_rate = estimate_rate(pairs);
  for (size_t k = 0; k + 1 < study.ladder.size(); ++k)
    study.pairwise_rates.push_back(std::log2(
        study.ladder[k].l1_error / study.ladder[k + 1].l1_error));
  double min_err = study.ladder.front().l1_error;
  for (const auto& lvl : study.ladder) min_err = std::min(min_err, lvl.l1_error);
  study.preasymptotic = study.ladder.back().l1_error > min_err;
  return study;
}

ViscosityStudy viscosity_rate_study(const ProblemModel& model,
                                    const std::vector<double>& eta_ladder,
                                    const Grid1D& grid,
                                    const SchemeConfig& scheme) {
  if (eta_ladder.size() < 3)
    throw std::invalid_argument("viscosity_rate_study: need >= 3 eta levels");
  SchemeConfig cfg = scheme;
  cfg.save_every = std::numeric_limits<int>::max();

  SolveTrace base =
      run_to_time(model, engquist_osher(model), grid, cfg);

  std::vector<std::future<double>> jobs;
  for (double eta : eta_ladder) {
    jobs.push_back(std::async(std::launch::async, [&, eta]() {
      ProblemModel reg = regularize(model, eta);
      SolveTrace t = run_to_time(reg, engquist_osher(reg), grid, cfg);
      double s = 0.0;
      for (int j = 0; j < grid.n_cells; ++j)
        s += std::abs(t.final_state().values[j] -
                      base.final_state().values[j]);
      return grid.dx * s;
    }));
  }

  ViscosityStudy vs;
  vs.model_key = model.key;
  for (size_t i = 0; i < eta_ladder.size(); ++i)
    vs.eta_errors.emplace_back(eta_ladder[i], jobs[i].get());
  vs.fitted_rate = estimate_rate(vs.eta_errors);
  for (size_t i = 0; i + 1 < vs.eta_errors.size(); ++i)
    if (vs.eta_errors[i].second < vs.eta_errors[i + 1].second - 1e-14)
      vs.monotone_in_eta = false;  // expects eta ladder sorted decreasing
  return vs;
}

void write_study_csv(const ConvergenceStudy& study, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("write_study_csv: cannot open " + path);
  char buf[512];
  out << "dx,dt,n_cells,l1_error,pairwise_rate\n";
  for (size_t k = 0; k < study.ladder.size(); ++k) {
    const auto& lvl = study.ladder[k];
    if (k == 0) {
      std::snprintf(buf, sizeof buf, "%.17g,%.17g,%d,%.17g,\n", lvl.dx,
                    lvl.dt, lvl.n_cells, lvl.l1_error);
    } else {
      std::snprintf(buf, sizeof buf, "%.17g,%.17g,%d,%.17g,%.17g\n", lvl.dx,
                    lvl.dt, lvl.n_cells, lvl.l1_error,
                    study.pairwise_rates[k - 1]);
    }
    out << buf;
  }
  std::snprintf(buf, sizeof buf, "# fitted_rate=%.17g\n", study.fitted_rate);
  out << buf;
}

}  // namespace degen
