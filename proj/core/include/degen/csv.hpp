#ifndef DEGEN_CSV_HPP
#define DEGEN_CSV_HPP

#include <string>

#include "degen/scheme.hpp"

namespace degen {

// CSV with header `x,u`, one row per cell center, 17 significant digits.
void write_grid_function_csv(const GridFunction& u, const std::string& path);

// Writes state_t<k>.csv per saved state plus manifest.csv listing
// `time,file` rows. Returns the manifest path.
std::string write_trace(const SolveTrace& trace, const std::string& out_dir);

}  // namespace degen

#endif
