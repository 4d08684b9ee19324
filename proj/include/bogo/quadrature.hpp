#pragma once

#include <vector>

namespace bogo {

struct GaussRule {
  std::vector<double> nodes;    // on [-1, 1]
  std::vector<double> weights;
};

// Cached; safe to call from several threads.
const GaussRule& gauss_legendre(int points);

// Nodes and weights mapped onto [a, b].
GaussRule gauss_legendre(int points, double a, double b);

}  // namespace bogo
