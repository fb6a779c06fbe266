#include "degen/grid.hpp"

#include <cmath>

namespace degen {

Grid1D::Grid1D(double xl, double h, int n, Boundary b)
    : x_left(xl), dx(h), n_cells(n), boundary(b) {
  if (!(dx > 0.0)) throw std::invalid_argument("Grid1D: dx must be positive");
  if (n_cells < 3) throw std::invalid_argument("Grid1D: need at least 3 cells");
}

GridFunction::GridFunction(Grid1D g, std::vector<double> v)
    : grid(g), values(std::move(v)) {
  if (static_cast<int>(values.size()) != grid.n_cells)
    throw std::invalid_argument("GridFunction: value count != n_cells");
  for (double x : values)
    if (!std::isfinite(x))
      throw std::invalid_argument("GridFunction: non-finite value");
}

double GridFunction::at(int j) const {
  const int n = grid.n_cells;
  if (j >= 0 && j < n) return values[j];
  if (grid.boundary == Boundary::Periodic) {
    int k = j % n;
    if (k < 0) k += n;
    return values[k];
  }
  return j < 0 ? values.front() : values.back();
}

namespace {
// 5-point Gauss-Legendre on [-1,1].
constexpr double kGLNode[5] = {-0.9061798459386640, -0.5384693101056831, 0.0,
                               0.5384693101056831, 0.9061798459386640};
constexpr double kGLWeight[5] = {0.2369268850561891, 0.4786286704993665,
                                 0.5688888888888889, 0.4786286704993665,
                                 0.2369268850561891};
}  // namespace

GridFunction cell_average_project(const std::function<double(double)>& u0,
                                  const Grid1D& grid) {
  std::vector<double> vals(grid.n_cells);
  for (int j = 0; j < grid.n_cells; ++j) {
    const double xm = grid.cell_center(j);
    const double half = 0.5 * grid.dx;
    double s = 0.0;
    for (int q = 0; q < 5; ++q) s += kGLWeight[q] * u0(xm + half * kGLNode[q]);
    s *= 0.5;  // divide by cell width after scaling to [-1,1]
    if (!std::isfinite(s))
      throw std::invalid_argument("cell_average_project: non-finite average");
    vals[j] = s;
  }
  return GridFunction(grid, std::move(vals));
}

GridFunction d_plus(const GridFunction& v) {
  std::vector<double> out(v.size());
  for (int j = 0; j < v.size(); ++j)
    out[j] = (v.at(j + 1) - v.values[j]) / v.grid.dx;
  return GridFunction(v.grid, std::move(out));
}

GridFunction d_minus(const GridFunction& v) {
  std::vector<double> out(v.size());
  for (int j = 0; j < v.size(); ++j)
    out[j] = (v.values[j] - v.at(j - 1)) / v.grid.dx;
  return GridFunction(v.grid, std::move(out));
}

GridFunction d_minus_d_plus(const GridFunction& v) {
  std::vector<double> out(v.size());
  const double dx2 = v.grid.dx * v.grid.dx;
  for (int j = 0; j < v.size(); ++j)
    out[j] = (v.at(j + 1) - 2.0 * v.values[j] + v.at(j - 1)) / dx2;
  return GridFunction(v.grid, std::move(out));
}

double norm_l1(const GridFunction& v) {
  double s = 0.0;
  for (double x : v.values) s += std::abs(x);
  return v.grid.dx * s;
}

double bv_seminorm(const GridFunction& v) {
  double s = 0.0;
  for (int j = 0; j + 1 < v.size(); ++j)
    s += std::abs(v.values[j + 1] - v.values[j]);
  if (v.grid.boundary == Boundary::Periodic)
    s += std::abs(v.values.front() - v.values.back());
  return s;
}

double norm_linf(const GridFunction& v) {
  double s = 0.0;
  for (double x : v.values) s = std::max(s, std::abs(x));
  return s;
}

}  // namespace degen
