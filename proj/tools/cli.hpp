#pragma once

#include <functional>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "dsw/spectral.hpp"

namespace dsw::cli {

/// Shortest round-trip decimal form of x.
std::string fmt(double x);

/// The (L, kappa) rows of the reference theta table.
const std::vector<std::pair<double, double>>& default_theta_pairs();

/// Parses "L:kappa,L:kappa,..." (empty string gives an empty list).
std::vector<std::pair<double, double>> parse_pairs(const std::string& s);

/// Runs fn(i) for i in [0, n) on up to `threads` workers; results are
/// returned in index order.
std::vector<std::string> parallel_rows(std::size_t n, unsigned threads,
                                       const std::function<std::string(std::size_t)>& fn);

/// Smooth random data: modes 1..4 with 1/k^2 weights, scaled so that
/// int (u^2 + v^2) = 1.
std::pair<GridFunction, GridFunction> smooth_random_fields(std::size_t N, double L, unsigned long seed);

/// Entry point. Returns the process exit status: 0 on success, 1 when a
/// module error occurred, 2 on a usage error.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace dsw::cli
