#ifndef DEGEN_QUADRATURE_HPP
#define DEGEN_QUADRATURE_HPP

#include <functional>
#include <stdexcept>

namespace degen {

struct QuadratureError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Adaptive Simpson on [a,b] (a > b allowed, sign flips). Throws
// QuadratureError if the requested absolute tolerance is not met
// within max_depth bisection levels.
double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double b, double abs_tol = 1e-12, int max_depth = 30);

}  // namespace degen

#endif
