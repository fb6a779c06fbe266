#ifndef DEGEN_ENTROPY_AUDIT_HPP
#define DEGEN_ENTROPY_AUDIT_HPP

#include <string>
#include <vector>

#include "degen/scheme.hpp"

namespace degen {

struct AuditError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Smoothed sign: sin(pi sigma / 2 eps) inside |sigma| < eps, +-1 outside.
double sign_eps(double sigma, double eps);
double sign_eps_prime(double sigma, double eps);
// abs_eps(sigma) = int_0^sigma sign_eps(z) dz (closed form).
double abs_eps(double sigma, double eps);

// Entropy pair: psi_eps(u,c) = int_c^u sign_eps(A(z)-A(c)) dz and
// q_eps(u,c) = int_c^u sign_eps(A(z)-A(c)) f'(z) dz.
double psi_eps(double u, double c, const ProblemModel& model, double eps);
double q_eps(double u, double c, const ProblemModel& model, double eps);

// Q^c(u,v) = int_c^u psi_eps'(z,c) F1'(z) dz + int_c^v psi_eps'(z,c) F2'(z) dz.
double q_split(double u, double v, double c, const SplitFlux& split,
               const ProblemModel& model, double eps);

// Default smoothing width: 1e-4 times the range of A over the value range
// (falls back to the value-range width when A is constant).
double default_eps(const ProblemModel& model);
// 9-point uniform grid of Kruzkov constants over the value range.
std::vector<double> default_constants(const ProblemModel& model, int k = 9);

struct ConstantRecord {
  double c = 0.0;
  int worst_cell = -1;
  double worst_value = 0.0;  // max over cells of positive part of LHS - RHS
};

struct ResidualReport {
  std::vector<double> constants_tested;
  std::vector<ConstantRecord> per_constant;
  double worst_violation = 0.0;
  int worst_cell = -1;
  double worst_constant = 0.0;
  std::vector<double> per_cell_max;
  double tolerance_used = 0.0;
  bool pass = true;
};

// Cell entropy inequality for the semi-discrete scheme; the time term is
// evaluated by the chain rule psi_eps'(u_j,c) * spatial_rhs_j.
ResidualReport semidiscrete_entropy_residual(
    const GridFunction& u, const SplitFlux& split, const ProblemModel& model,
    double eps, const std::vector<double>& constants, double tolerance = 1e-8);

// Same inequality with the backward time difference of a genuine implicit
// step (u_prev, u_next, dt); tolerance should absorb newton_tol/dt.
ResidualReport implicit_entropy_residual(
    const GridFunction& u_prev, const GridFunction& u_next, double dt,
    const SplitFlux& split, const ProblemModel& model, double eps,
    const std::vector<double>& constants, double tolerance);

// Forward-difference version for an explicit step; requires the convective
// CFL condition 1 - (dt/dx)(F1'-F2') >= 0 (throws AuditError otherwise).
// The right-hand side includes the extra (int psi_eps'' dz) D_-D_+ A term.
ResidualReport explicit_entropy_residual(
    const GridFunction& u_n, const GridFunction& u_np1, double dt,
    const SplitFlux& split, const ProblemModel& model, double eps,
    const std::vector<double>& constants, double tolerance = 1e-8);

struct FluxDiffReport {
  double initial_linf = 0.0, initial_bv = 0.0;
  double worst_linf_excess = 0.0, worst_bv_excess = 0.0;
  bool pass = true;
};

// Checks sup-norm and BV seminorm of v_j = F(u_j,u_{j+1}) - D_+ A(u_j)
// nonincreasing along the trace relative to the initial state.
FluxDiffReport flux_diff_audit(const SolveTrace& trace, const SplitFlux& split,
                               const ProblemModel& model, double slack = 1e-8);

struct HolderReport {
  double fitted_L = 0.0;  // smallest L with H(m,n) <= L sqrt(t_m - t_n)
  int pairs_checked = 0;
};

// H(m,n) = dx sum_j |D_+ A(u_j^m) - D_+ A(u_j^n)| over saved state pairs.
HolderReport time_holder_audit(const SolveTrace& trace,
                               const ProblemModel& model);

void write_residual_csv(const ResidualReport& report, const std::string& path);

}  // namespace degen

#endif
