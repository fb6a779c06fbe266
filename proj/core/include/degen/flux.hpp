#ifndef DEGEN_FLUX_HPP
#define DEGEN_FLUX_HPP

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>

#include "degen/grid.hpp"

namespace degen {

using ScalarFn = std::function<double(double)>;

struct ModelError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct FluxError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Monotone two-point numerical flux in split form F(u,v) = F1(u) + F2(v),
// with F1' >= 0 >= F2' and F1' + F2' = f' on the working range.
struct SplitFlux {
  ScalarFn F1, F2, F1_prime, F2_prime;
};

// One PDE instance u_t + f(u)_x = A(u)_xx on [x_left, x_right] up to
// final_time, with A(0) = 0 and A nondecreasing.
struct ProblemModel {
  std::string key;
  ScalarFn f, f_prime;
  ScalarFn A, A_prime;
  ScalarFn u0;
  double range_min = 0.0, range_max = 1.0;  // closed interval containing u0
  std::function<double(double, double)> exact;  // (x,t); empty if none
  double final_time = 1.0;
  double x_left = 0.0, x_right = 1.0;
  Boundary boundary = Boundary::Periodic;
  // Closed-form Engquist-Osher splitting, when one is known for f.
  std::optional<SplitFlux> eo_closed_form;

  bool has_exact() const { return static_cast<bool>(exact); }
  double domain_length() const { return x_right - x_left; }
  Grid1D make_grid(int n_cells) const {
    return Grid1D(x_left, domain_length() / n_cells, n_cells, boundary);
  }
};

// Checks A(0)=0, A' >= 0 on the range, and finite-difference consistency
// of f_prime / A_prime (64 samples, relative tolerance 1e-6). Throws
// ModelError on violation.
void validate_model(const ProblemModel& model);

double eval_flux(const SplitFlux& split, double u, double v);

// Engquist-Osher splitting: F1(u) = f(0) + int_0^u max(f',0),
// F2(v) = int_0^v min(f',0). Uses the model's registered closed form when
// present, otherwise adaptive quadrature (abs tol 1e-12).
SplitFlux engquist_osher(const ProblemModel& model);
// Quadrature route regardless of any registered closed form (oracle hook).
SplitFlux engquist_osher_quadrature(const ProblemModel& model);

// F1(u) = a f(u) + b u, F2(v) = (1-a) f(v) - b v. Throws FluxError when
// the monotonicity precondition fails on the sampled range.
SplitFlux affine_split_flux(double a, double b, const ProblemModel& model);

// Q^c(u,v) = int_c^u psi'(z) F1'(z) dz + int_c^v psi'(z) F2'(z) dz.
double numerical_entropy_flux(const SplitFlux& split, const ScalarFn& psi_prime,
                              double c, double u, double v);

struct MonotoneReport {
  bool pass = true;
  double worst_point = 0.0;
  double worst_value = 0.0;  // most negative F1' or most positive F2'
  std::string detail;
};

MonotoneReport check_monotone(const SplitFlux& split, double lo, double hi,
                              int n_samples);

// Consistency invariants F1+F2 = f and F1'+F2' = f' at 256 samples.
void validate_split(const SplitFlux& split, const ProblemModel& model);

}  // namespace degen

#endif
