#pragma once

// Double-exponential quadrature rules.
//
// A rule is a list of (abscissa, weight) pairs for a fixed step h.  The
// transforms cluster nodes at the endpoints so that integrable algebraic and
// logarithmic endpoint singularities are absorbed into the weights.

#include <cmath>
#include <vector>

#include "ohno/complex.hpp"

namespace ohno::de {

struct Node {
  double x;
  double w;
};

/// exp-sinh rule on (0, inf): x = exp(pi/2 sinh t), t in [t_lo, t_hi].
/// t_lo / t_hi are snapped outward to the grid k*h.
inline std::vector<Node> exp_sinh(double h, double t_lo, double t_hi) {
  std::vector<Node> nodes;
  const long k_lo = static_cast<long>(std::floor(t_lo / h));
  const long k_hi = static_cast<long>(std::ceil(t_hi / h));
  nodes.reserve(static_cast<std::size_t>(k_hi - k_lo + 1));
  for (long k = k_lo; k <= k_hi; ++k) {
    const double t = k * h;
    const double x = std::exp(0.5 * pi * std::sinh(t));
    nodes.push_back({x, h * 0.5 * pi * std::cosh(t) * x});
  }
  return nodes;
}

/// t-range of exp_sinh covering x in [x_min, x_max].
inline double exp_sinh_t(double x) { return std::asinh(std::log(x) / (0.5 * pi)); }

/// tanh-sinh rule on (0, 1).  Stores both x and 1 - x so callers near the upper
/// endpoint can avoid cancellation.
struct UnitNode {
  double x;
  double one_minus_x;
  double w;
};

inline std::vector<UnitNode> tanh_sinh(double h, double t_max) {
  std::vector<UnitNode> nodes;
  const long k_max = static_cast<long>(std::ceil(t_max / h));
  for (long k = -k_max; k <= k_max; ++k) {
    const double t = k * h;
    const double u = 0.5 * pi * std::sinh(t);
    const double cu = std::cosh(u);
    // x = (1 + tanh u)/2 = 1/(1 + e^{-2u}); complement = 1/(1 + e^{2u})
    const double x = 1.0 / (1.0 + std::exp(-2.0 * u));
    const double xc = 1.0 / (1.0 + std::exp(2.0 * u));
    const double w = h * 0.25 * pi * std::cosh(t) / (cu * cu);
    if (x <= 0.0 || xc <= 0.0 || w == 0.0) continue;
    nodes.push_back({x, xc, w});
  }
  return nodes;
}

}  // namespace ohno::de
