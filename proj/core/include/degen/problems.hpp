#ifndef DEGEN_PROBLEMS_HPP
#define DEGEN_PROBLEMS_HPP

#include <string>
#include <vector>

#include "degen/flux.hpp"

namespace degen {

// Catalog of PDE instances. Keys: burgers_shock, burgers_rarefaction,
// heat, pme2, pme3, pme4, sd_bench, advection.

ProblemModel burgers_riemann(double u_left, double u_right);
ProblemModel heat_smooth();
ProblemModel porous_medium_barenblatt(int m);
ProblemModel strongly_degenerate_benchmark();
ProblemModel linear_advection();

// A replaced by A + eta*id (exact solution dropped).
ProblemModel regularize(const ProblemModel& model, double eta);

ProblemModel model_by_key(const std::string& key);
std::vector<std::string> catalog_keys();

}  // namespace degen

#endif
