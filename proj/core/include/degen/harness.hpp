#ifndef DEGEN_HARNESS_HPP
#define DEGEN_HARNESS_HPP

#include <map>
#include <mutex>
#include <string>
#include <vector>

#include "degen/scheme.hpp"

namespace degen {

struct StudyLevel {
  double dx = 0.0;
  double dt = 0.0;  // dt actually used (0 means CFL-chosen per step)
  int n_cells = 0;
  double l1_error = 0.0;
};

struct ConvergenceStudy {
  std::string model_key;
  std::vector<StudyLevel> ladder;  // sorted by decreasing dx, halving
  double fitted_rate = 0.0;
  std::vector<double> pairwise_rates;  // log2(e_k / e_{k+1})
  bool preasymptotic = false;  // finest error not the smallest
};

enum class DtRule { CflBound, DtEqDx, DtEqDxHalfPow, Fixed };

struct DtSpec {
  DtRule rule = DtRule::CflBound;
  double value = 0.0;  // exponent p for DtEqDxHalfPow, dt for Fixed
};

// dx * sum_j |u_j - cell_average(exact(.,t))_j|. Requires model.exact.
double l1_error(const GridFunction& numeric, const ProblemModel& model,
                double t);

// l1 distance against a 2^k-fold nested refinement, restricted by exact
// cell averaging.
double reference_error(const GridFunction& numeric,
                       const GridFunction& reference);

// Least-squares slope of log e against log h.
double estimate_rate(const std::vector<std::pair<double, double>>& pairs);

// Memo for fine-grid reference solutions, keyed by (model key, n_cells).
// Shared across studies so the expensive explicit reference run happens once.
class ReferenceCache {
 public:
  const GridFunction& get(const ProblemModel& model, int n_cells);

 private:
  std::map<std::pair<std::string, int>, GridFunction> cache_;
  std::mutex mu_;
};

// Solves at each dx level, measures the L1 error at final_time (exact
// solution, or finest-level x4 explicit reference when absent), fits the
// rate. Levels run concurrently.
ConvergenceStudy run_study(const ProblemModel& model, SchemeConfig scheme,
                           const std::vector<double>& dx_ladder, DtSpec dt_rule,
                           ReferenceCache* ref_cache = nullptr);

struct ViscosityStudy {
  std::string model_key;
  std::vector<std::pair<double, double>> eta_errors;  // (eta, l1 distance)
  double fitted_rate = 0.0;
  bool monotone_in_eta = true;
};

// Distances between the eta-regularized and unregularized solutions on one
// fine grid, with the fitted rate in eta.
ViscosityStudy viscosity_rate_study(const ProblemModel& model,
                                    const std::vector<double>& eta_ladder,
                                    const Grid1D& grid,
                                    const SchemeConfig& scheme);

void write_study_csv(const ConvergenceStudy& study, const std::string& path);

}  // namespace degen

#endif
