#pragma once

// Divided differences of f(x) = x^{-a} on nodes in the right half plane.
//
// The Ohno summand contains sum_i n_i^{-s-1} prod_{j!=i} 1/(n_j - n_i), which is
// (-1)^{r-1} f[n_1, ..., n_r] for f(x) = x^{-s-1}.  The partial-fraction form
// cancels badly when the nodes cluster relative to their size; here clustered
// nodes go through a Taylor expansion about their mean instead:
//
//   f[x_1..x_r] = sum_{p>=0} binom(-a, r-1+p) c^{-a-r+1-p} h_p(x - c)
//
// with h_p the complete homogeneous symmetric polynomial of degree p.

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <span>

#include "ohno/complex.hpp"

namespace ohno {

namespace detail {

inline constexpr double kTaylorSpread = 0.3;
inline constexpr int kMaxTaylorTerms = 400;
inline constexpr std::size_t kMaxNodes = 8;

inline cplx dd_power_taylor(std::span<const cplx> x, cplx a) {
  const std::size_t r = x.size();
  cplx c = 0.0;
  for (cplx v : x) c += v;
  c /= static_cast<double>(r);
  std::array<cplx, kMaxNodes> y{};
  for (std::size_t i = 0; i < r; ++i) y[i] = (x[i] - c) / c;  // scaled by 1/c

  // coefficient of the order-(r-1) term: binom(-a, r-1) c^{-a-r+1}
  cplx binom = 1.0;
  for (std::size_t q = 1; q < r; ++q) binom *= (-a - static_cast<double>(q) + 1.0) / static_cast<double>(q);
  const cplx scale = cpow(c, -a - static_cast<double>(r - 1));

  // h_p of the scaled offsets, built incrementally: H_i[p] = H_{i-1}[p] + y_i H_i[p-1]
  // Only the current degree is needed, so keep one running value per variable.
  std::array<cplx, kMaxNodes> hp{};  // hp[i] = h_p(y_1..y_{i+1})
  for (std::size_t i = 0; i < r; ++i) hp[i] = 1.0;

  cplx sum = 0.0;
  double quiet = 0;
  for (int p = 0; p < kMaxTaylorTerms; ++p) {
    if (p > 0) {
      // advance binomial to q = r-1+p
      const double q = static_cast<double>(r - 1 + p);
      binom *= (-a - q + 1.0) / q;
      hp[0] *= y[0];
      for (std::size_t i = 1; i < r; ++i) hp[i] = hp[i - 1] + y[i] * hp[i];
    }
    const cplx term = binom * hp[r - 1];
    sum += term;
    const double mag = std::abs(term);
    if (mag <= 1e-17 * std::abs(sum) || mag == 0.0) {
      if (++quiet >= 2) break;
    } else {
      quiet = 0;
    }
  }
  return scale * sum;
}

}  // namespace detail

/// f[x_1, ..., x_r] for f(x) = x^{-a}.  Nodes must lie in Re x > 0; coincident
/// nodes are allowed (confluent limit).
inline cplx divided_difference_power(std::span<const cplx> x, cplx a) {
  const std::size_t r = x.size();
  if (r == 1) return cpow(x[0], -a);
  cplx c = 0.0;
  for (cplx v : x) c += v;
  c /= static_cast<double>(r);
  double spread = 0.0;
  for (cplx v : x) spread = std::max(spread, std::abs(v - c));
  if (spread <= detail::kTaylorSpread * std::abs(c)) return detail::dd_power_taylor(x, a);
  if (r == 2) return (cpow(x[1], -a) - cpow(x[0], -a)) / (x[1] - x[0]);
  // Newton recursion on the extreme nodes; nodes are assumed sorted by real part.
  return (divided_difference_power(x.subspan(1), a) - divided_difference_power(x.first(r - 1), a)) /
         (x[r - 1] - x[0]);
}

}  // namespace ohno
