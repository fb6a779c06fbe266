#ifndef DEGEN_GRID_HPP
#define DEGEN_GRID_HPP

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace degen {

enum class Boundary { Periodic, Extrapolate };

// Uniform 1D mesh of cells I_j = (x_{j-1/2}, x_{j+1/2}], cell width dx.
struct Grid1D {
  double x_left = 0.0;
  double dx = 1.0;
  int n_cells = 3;
  Boundary boundary = Boundary::Periodic;

  Grid1D() = default;
  Grid1D(double xl, double h, int n, Boundary b);

  double cell_center(int j) const { return x_left + (j + 0.5) * dx; }
  double face_left(int j) const { return x_left + j * dx; }
  double length() const { return dx * n_cells; }

  bool operator==(const Grid1D&) const = default;
};

// Piecewise-constant profile {u_j} on a Grid1D.
struct GridFunction {
  Grid1D grid;
  std::vector<double> values;

  GridFunction() = default;
  GridFunction(Grid1D g, std::vector<double> v);

  int size() const { return grid.n_cells; }

  // Neighbor lookup honoring the boundary policy; j may be -1 or n_cells.
  double at(int j) const;
};

// Cell averages of u0 by 5-point Gauss-Legendre per cell.
GridFunction cell_average_project(const std::function<double(double)>& u0,
                                  const Grid1D& grid);

GridFunction d_plus(const GridFunction& v);
GridFunction d_minus(const GridFunction& v);
GridFunction d_minus_d_plus(const GridFunction& v);

double norm_l1(const GridFunction& v);
double bv_seminorm(const GridFunction& v);
double norm_linf(const GridFunction& v);

}  // namespace degen

#endif
