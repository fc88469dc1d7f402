#include "dsw/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

#include "dsw/errors.hpp"

namespace dsw {

namespace {

GaussRule make_rule(int n) {
  GaussRule r;
  r.nodes.resize(n);
  r.weights.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    if (n == 1) dp = 1.0;
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    r.nodes[i] = -x;
    r.nodes[n - 1 - i] = x;
    r.weights[i] = w;
    r.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) r.nodes[n / 2] = 0.0;
  return r;
}

}  // namespace

const GaussRule& gauss_legendre(int n) {
  if (n < 2 || n > 256) throw DomainError("gauss_legendre: order must be in [2, 256]");
  static std::mutex m;
  static std::map<int, GaussRule> cache;
  std::lock_guard lock(m);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, make_rule(n)).first;
  return it->second;
}

double composite_gauss(const std::function<double(double)>& f, double a, double b,
                       int panels, int order) {
  const GaussRule& r = gauss_legendre(order);
  const double h = (b - a) / panels;
  double sum = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double mid = a + (p + 0.5) * h;
    double s = 0.0;
    for (int i = 0; i < order; ++i) s += r.weights[i] * f(mid + 0.5 * h * r.nodes[i]);
    sum += 0.5 * h * s;
  }
  return sum;
}

QuadResult integrate(const std::function<double(double)>& f, double a, double b, double tol,
                     int order, int max_panels) {
  int panels = 4;
  double prev = composite_gauss(f, a, b, panels, order);
  while (panels < max_panels) {
    panels *= 2;
    const double cur = composite_gauss(f, a, b, panels, order);
    const double err = std::abs(cur - prev);
    if (!std::isfinite(cur)) throw NumericalFailure("integrate: non-finite integrand");
    if (err <= tol * std::max(1.0, std::abs(cur))) return {cur, err, panels};
    prev = cur;
  }
  throw NumericalFailure("integrate: panel doubling did not converge");
}

}  // namespace dsw
