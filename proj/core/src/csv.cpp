#include "degen/csv.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>

namespace degen {

void write_grid_function_csv(const GridFunction& u, const std::string& path) {
  std::ofstream out(path);
  if (!out)
    throw std::runtime_error("write_grid_function_csv: cannot open " + path);
  out << "x,u\n";
  char buf[128];
  for (int j = 0; j < u.size(); ++j) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", u.grid.cell_center(j),
                  u.values[j]);
    out << buf;
  }
}

std::string write_trace(const SolveTrace& trace, const std::string& out_dir) {
  namespace fs = std::filesystem;
  fs::create_directories(out_dir);
  const std::string manifest_path = (fs::path(out_dir) / "manifest.csv").string();
  std::ofstream manifest(manifest_path);
  if (!manifest)
    throw std::runtime_error("write_trace: cannot open " + manifest_path);
  manifest << "time,file\n";
  char buf[160];
  for (size_t i = 0; i < trace.states.size(); ++i) {
    std::snprintf(buf, sizeof buf, "state_t%.10g.csv", trace.times[i]);
    const std::string fname = buf;
    write_grid_function_csv(trace.states[i],
                            (fs::path(out_dir) / fname).string());
    std::snprintf(buf, sizeof buf, "%.17g,", trace.times[i]);
    manifest << buf << fname << "\n";
  }
  return manifest_path;
}

}  // namespace degen
