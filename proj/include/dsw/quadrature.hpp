#pragma once

#include <functional>
#include <vector>

namespace dsw {

struct GaussRule {
  std::vector<double> nodes;    // on [-1, 1], ascending
  std::vector<double> weights;
};

/// n-point Gauss-Legendre rule (Newton on the Legendre recurrence).
const GaussRule& gauss_legendre(int n);

/// Fixed composite rule: `panels` equal panels of an n-point rule.
double composite_gauss(const std::function<double(double)>& f, double a, double b,
                       int panels, int order = 8);

struct QuadResult {
  double value;
  double error_estimate;
  int panels;
};

/// Composite Gauss-Legendre with the panel count doubled until two
/// successive values agree to `tol` (absolute-or-relative).
QuadResult integrate(const std::function<double(double)>& f, double a, double b,
                     double tol = 1e-11, int order = 8, int max_panels = 1 << 16);

}  // namespace dsw
