#ifndef DEGEN_SCHEME_HPP
#define DEGEN_SCHEME_HPP

#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "degen/flux.hpp"
#include "degen/grid.hpp"

namespace degen {

enum class SchemeKind { SemiDiscrete, Implicit, Explicit };

struct SchemeConfig {
  SchemeKind kind = SchemeKind::Explicit;
  double cfl_safety = 0.9;        // in (0,1]
  bool strengthened_cfl = false;  // additionally cap dt at dx^{8/3}
  double newton_tol = 1e-12;      // l1-scaled
  int newton_max_iters = 50;
  double rk_substep_factor = 0.25;  // semi-discrete only
  std::optional<double> fixed_dt;
  int save_every = 1;  // trace thinning; first and last always kept
};

struct SolveTrace {
  std::vector<double> times;
  std::vector<GridFunction> states;
  long step_count = 0;
  std::map<long, int> newton_iter_histogram;  // implicit only

  const GridFunction& final_state() const { return states.back(); }
};

struct SolverError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NewtonFailure : SolverError {
  double residual_norm;
  NewtonFailure(const std::string& what, double rn)
      : SolverError(what), residual_norm(rn) {}
};

// Right-hand side of the method-of-lines system:
//   rhs_j = -D_- F(u_j, u_{j+1}) + D_-D_+ A(u_j).
GridFunction spatial_rhs(const GridFunction& u, const SplitFlux& split,
                         const ProblemModel& model);

// Largest dt satisfying
//   1 - (dt/dx)(F1'(z) - F2'(z)) - 2 (dt/dx^2) A'(w) >= 0
// over 512 samples of [lo,hi], scaled by cfl_safety. Capped at
// model.final_time when the derivative suprema vanish, and at dx^{8/3}
// under config.strengthened_cfl.
double cfl_max_dt(double lo, double hi, const SplitFlux& split,
                  const ProblemModel& model, double dx,
                  const SchemeConfig& config);

GridFunction explicit_step(const GridFunction& u, double dt,
                           const SplitFlux& split, const ProblemModel& model);

// Solves u - u_prev + dt (D_- F(u_j,u_{j+1}) - D_-D_+ A(u_j)) = 0 by damped
// Newton with a (cyclic-)tridiagonal Jacobian. Throws NewtonFailure when
// newton_max_iters is exceeded. iters_out, when given, receives the count.
GridFunction implicit_step(const GridFunction& u_prev, double dt,
                           const SplitFlux& split, const ProblemModel& model,
                           const SchemeConfig& config,
                           int* iters_out = nullptr);

// SSP-RK3 integration of the semi-discrete system with
// dt = rk_substep_factor * cfl_max_dt (from the initial data's range).
SolveTrace semi_discrete_solve(const ProblemModel& model,
                               const SplitFlux& split, const Grid1D& grid,
                               const SchemeConfig& config);

// Driver: projects u0, selects the stepper from config.kind, clips the last
// step to land exactly on final_time.
SolveTrace run_to_time(const ProblemModel& model, const SplitFlux& split,
                       const Grid1D& grid, const SchemeConfig& config);

}  // namespace degen

#endif
