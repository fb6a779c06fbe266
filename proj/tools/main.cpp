// Command-line front end: single solves, convergence studies, entropy
// audits, and the viscous-regularization rate study. All artifacts are CSV.
//
// Exit codes: 0 pass, 1 solver failure, 2 usage/precondition error,
// 3 convergence rate below guarantee, 4 audit violation, 5 viscosity-rate
// failure.

#include <cmath>
#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "degen/csv.hpp"
#include "degen/entropy_audit.hpp"
#include "degen/harness.hpp"
#include "degen/problems.hpp"

namespace {

using namespace degen;

constexpr int kExitOk = 0;
constexpr int kExitSolver = 1;
constexpr int kExitUsage = 2;
constexpr int kExitRate = 3;
constexpr int kExitAudit = 4;
constexpr int kExitViscosity = 5;

SchemeKind parse_scheme(const std::string& s) {
  if (s == "semi") return SchemeKind::SemiDiscrete;
  if (s == "implicit") return SchemeKind::Implicit;
  if (s == "explicit") return SchemeKind::Explicit;
  throw CLI::ValidationError("--scheme", "expected semi|implicit|explicit");
}

SplitFlux parse_flux(const std::string& spec, const ProblemModel& model) {
  if (spec == "eo") return engquist_osher(model);
  if (spec.rfind("ab:", 0) == 0) {
    double a, b;
    if (std::sscanf(spec.c_str() + 3, "%lf,%lf", &a, &b) != 2)
      throw CLI::ValidationError("--flux", "expected ab:<a>,<b>");
    return affine_split_flux(a, b, model);
  }
  throw CLI::ValidationError("--flux", "expected eo or ab:<a>,<b>");
}

DtSpec parse_dt_rule(const std::string& s) {
  if (s == "cfl") return {DtRule::CflBound, 0.0};
  if (s == "dx") return {DtRule::DtEqDx, 0.0};
  if (s == "dx23") return {DtRule::DtEqDxHalfPow, 2.0 / 3.0};
  throw CLI::ValidationError("--dt-rule", "expected cfl|dx|dx23");
}

std::vector<double> parse_list(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) out.push_back(std::stod(tok));
  return out;
}

int cmd_solve(const std::string& model_key, const std::string& scheme_name,
              int cells, double dt, const std::string& dt_rule_name,
              bool strengthened, const std::string& flux_spec,
              const std::string& out_dir, int save_every) {
  ProblemModel model = model_by_key(model_key);
  validate_model(model);
  SplitFlux split = parse_flux(flux_spec, model);

  SchemeConfig cfg;
  cfg.kind = parse_scheme(scheme_name);
  cfg.strengthened_cfl = strengthened;
  cfg.save_every = save_every;
  if (dt > 0.0) {
    cfg.fixed_dt = dt;
  } else if (!dt_rule_name.empty()) {
    DtSpec rule = parse_dt_rule(dt_rule_name);
    const double dx = model.domain_length() / cells;
    if (rule.rule == DtRule::DtEqDx) cfg.fixed_dt = dx;
    if (rule.rule == DtRule::DtEqDxHalfPow)
      cfg.fixed_dt = std::pow(dx, rule.value);
  }

  SolveTrace trace = run_to_time(model, split, model.make_grid(cells), cfg);
  write_trace(trace, out_dir);
  const GridFunction& fin = trace.final_state();
  std::printf("RESULT t=%.17g l1=%.17g linf=%.17g bv=%.17g steps=%ld\n",
              trace.times.back(), norm_l1(fin), norm_linf(fin),
              bv_seminorm(fin), trace.step_count);
  return kExitOk;
}

int cmd_converge(const std::string& model_key, const std::string& scheme_name,
                 int levels, int coarsest_cells,
                 const std::string& dt_rule_name, bool strengthened,
                 const std::string& out_csv,
                 const std::string& synthetic_errors) {
  ConvergenceStudy study;
  if (!synthetic_errors.empty()) {
    // Test hook: fit a rate to injected errors without solving.
    std::vector<double> errs = parse_list(synthetic_errors);
    double dx = 1.0;
    std::vector<std::pair<double, double>> pairs;
    for (double e : errs) {
      StudyLevel lvl;
      lvl.dx = dx;
      lvl.l1_error = e;
      study.ladder.push_back(lvl);
      pairs.emplace_back(dx, e);
      dx *= 0.5;
    }
    study.model_key = model_key;
    study.fitted_rate = estimate_rate(pairs);
    for (size_t k = 0; k + 1 < errs.size(); ++k)
      study.pairwise_rates.push_back(std::log2(errs[k] / errs[k + 1]));
  } else {
    ProblemModel model = model_by_key(model_key);
    validate_model(model);
    SchemeConfig cfg;
    cfg.kind = parse_scheme(scheme_name);
    cfg.strengthened_cfl = strengthened;
    std::vector<double> ladder;
    double dx = model.domain_length() / coarsest_cells;
    for (int k = 0; k < levels; ++k, dx *= 0.5) ladder.push_back(dx);
    DtSpec rule = dt_rule_name.empty() ? DtSpec{DtRule::CflBound, 0.0}
                                       : parse_dt_rule(dt_rule_name);
    study = run_study(model, cfg, ladder, rule);
  }
  if (!out_csv.empty()) write_study_csv(study, out_csv);
  std::printf("RESULT fitted_rate=%.17g\n", study.fitted_rate);
  for (double r : study.pairwise_rates)
    if (r < 1.0 / 3.0 - 0.03) {
      std::printf("RESULT rate below theoretical guarantee (pairwise %.4f)\n",
                  r);
      return kExitRate;
    }
  return kExitOk;
}

int cmd_audit(const std::string& model_key, const std::string& scheme_name,
              int cells, double eps_flag, int n_constants, double dt,
              const std::string& out_csv) {
  ProblemModel model = model_by_key(model_key);
  validate_model(model);
  SplitFlux split = engquist_osher(model);
  const double eps = eps_flag > 0.0 ? eps_flag : default_eps(model);
  std::vector<double> constants = default_constants(model, n_constants);

  SchemeConfig cfg;
  cfg.kind = parse_scheme(scheme_name);
  cfg.save_every = 1;
  const double dx = model.domain_length() / cells;
  if (dt > 0.0) {
    cfg.fixed_dt = dt;
    if (cfg.kind == SchemeKind::Explicit) {
      // Refuse up front when the forced dt breaks the convective CFL
      // hypothesis of the explicit cell entropy inequality.
      for (int i = 0; i < 256; ++i) {
        const double z =
            model.range_min +
            (model.range_max - model.range_min) * static_cast<double>(i) / 255;
        if (1.0 - dt / dx * (split.F1_prime(z) - split.F2_prime(z)) < -1e-12) {
          std::cerr << "audit: forced dt violates the convective CFL "
                       "condition\n";
          return kExitUsage;
        }
      }
    }
  }

  SolveTrace trace = run_to_time(model, split, model.make_grid(cells), cfg);
  ResidualReport rep;
  if (cfg.kind == SchemeKind::SemiDiscrete) {
    rep = semidiscrete_entropy_residual(trace.final_state(), split, model, eps,
                                        constants);
  } else {
    if (trace.states.size() < 2) {
      std::cerr << "audit: trace has no step pair\n";
      return kExitUsage;
    }
    const GridFunction& prev = trace.states[trace.states.size() - 2];
    const GridFunction& next = trace.states.back();
    const double step_dt =
        trace.times.back() - trace.times[trace.times.size() - 2];
    if (cfg.kind == SchemeKind::Implicit) {
      rep = implicit_entropy_residual(prev, next, step_dt, split, model, eps,
                                      constants,
                                      1e-8 + cfg.newton_tol / step_dt);
    } else {
      rep = explicit_entropy_residual(prev, next, step_dt, split, model, eps,
                                      constants);
    }
  }
  if (!out_csv.empty()) write_residual_csv(rep, out_csv);
  std::printf("RESULT audit worst_violation=%.6g tolerance=%.6g pass=%d\n",
              rep.worst_violation, rep.tolerance_used, rep.pass ? 1 : 0);
  return rep.pass ? kExitOk : kExitAudit;
}

int cmd_viscosity(const std::string& model_key, const std::string& etas,
                  int cells) {
  ProblemModel model = model_by_key(model_key);
  validate_model(model);
  std::vector<double> eta_ladder = parse_list(etas);
  SchemeConfig cfg;
  cfg.kind = SchemeKind::Explicit;
  ViscosityStudy vs =
      viscosity_rate_study(model, eta_ladder, model.make_grid(cells), cfg);
  for (const auto& [eta, err] : vs.eta_errors)
    std::printf("RESULT eta=%.17g l1_distance=%.17g\n", eta, err);
  std::printf("RESULT viscosity_rate=%.17g\n", vs.fitted_rate);
  return vs.fitted_rate >= 0.4 ? kExitOk : kExitViscosity;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Monotone difference schemes for degenerate "
               "convection-diffusion equations"};
  app.require_subcommand(1);

  std::string model_key, scheme_name = "explicit", flux_spec = "eo";
  std::string out_path, dt_rule_name, synthetic_errors, etas;
  int cells = 128, save_every = 1, levels = 4, coarsest_cells = 64;
  int n_constants = 9;
  double dt = 0.0, eps = 0.0;
  bool strengthened = false;

  auto* solve = app.add_subcommand("solve", "run one solve, write the trace");
  solve->add_option("--model", model_key)->required();
  solve->add_option("--scheme", scheme_name);
  solve->add_option("--cells", cells);
  solve->add_option("--dt", dt);
  solve->add_option("--dt-rule", dt_rule_name);
  solve->add_flag("--strengthened-cfl", strengthened);
  solve->add_option("--flux", flux_spec);
  solve->add_option("--out", out_path)->required();
  solve->add_option("--save-every", save_every);

  auto* conv = app.add_subcommand("converge", "run a refinement study");
  conv->add_option("--model", model_key)->required();
  conv->add_option("--scheme", scheme_name);
  conv->add_option("--levels", levels);
  conv->add_option("--coarsest-cells", coarsest_cells);
  conv->add_option("--dt-rule", dt_rule_name);
  conv->add_flag("--strengthened-cfl", strengthened);
  conv->add_option("--out", out_path);
  conv->add_option("--synthetic-errors", synthetic_errors)
      ->description("test hook: comma list of injected errors");

  auto* audit = app.add_subcommand("audit", "entropy residual audit");
  audit->add_option("--model", model_key)->required();
  audit->add_option("--scheme", scheme_name);
  audit->add_option("--cells", cells);
  audit->add_option("--eps", eps);
  audit->add_option("--constants", n_constants);
  audit->add_option("--dt", dt);
  audit->add_option("--out", out_path);

  auto* visc = app.add_subcommand("viscosity", "viscous-regularization rate");
  visc->add_option("--model", model_key)->required();
  visc->add_option("--etas", etas)->required();
  visc->add_option("--cells", cells);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (solve->parsed())
      return cmd_solve(model_key, scheme_name, cells, dt, dt_rule_name,
                       strengthened, flux_spec, out_path, save_every);
    if (conv->parsed())
      return cmd_converge(model_key, scheme_name, levels, coarsest_cells,
                          dt_rule_name, strengthened, out_path,
                          synthetic_errors);
    if (audit->parsed())
      return cmd_audit(model_key, scheme_name, cells, eps, n_constants, dt,
                       out_path);
    if (visc->parsed()) return cmd_viscosity(model_key, etas, cells);
  } catch (const ModelError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const FluxError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const AuditError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const SolverError& e) {
    std::cerr << "solver failure: " << e.what() << "\n";
    return kExitSolver;
  } catch (const std::exception& e) {
    std::cerr << "failure: " << e.what() << "\n";
    return kExitSolver;
  }
  return kExitUsage;
}
