#pragma once

// The Ohno function I_k(s) from its Dirichlet series, from Ohno sums at
// nonnegative integers, and from the Mellin-type representation.
//
// Series summand for n_1 < ... < n_r:
//
//   sum_i n_1^{-k_1} ... n_r^{-k_r} n_i^{-s} prod_{j!=i} n_j / (n_j - n_i)
//     = prod_j n_j^{1-k_j} * (-1)^{r-1} f[n_1, ..., n_r],   f(x) = x^{-s-1},
//
// with f[...] the divided difference.  The full series is summed in gap
// variables n_j = m_1 + ... + m_j by the lattice engine.

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <span>
#include <string>
#include <vector>

#include "ohno/compensated.hpp"
#include "ohno/complex.hpp"
#include "ohno/divided_difference.hpp"
#include "ohno/error.hpp"
#include "ohno/eval_result.hpp"
#include "ohno/index.hpp"
#include "ohno/lattice_sum.hpp"
#include "ohno/options.hpp"
#include "ohno/zeta.hpp"

namespace ohno {

namespace detail {

struct OhnoSummand {
  std::vector<double> k;
  cplx s;

  cplx operator()(std::span<const cplx> gaps) const {
    const std::size_t r = gaps.size();
    std::array<cplx, kMaxNodes> n{};
    cplx acc = 0.0, pre = 1.0;
    for (std::size_t j = 0; j < r; ++j) {
      acc += gaps[j];
      n[j] = acc;
      if (k[j] != 1.0) pre *= cpow(acc, cplx(1.0 - k[j]));
    }
    const cplx dd = divided_difference_power(std::span<const cplx>(n.data(), r), s + 1.0);
    return (r % 2 == 1 ? 1.0 : -1.0) * pre * dd;
  }
};

/// Decay exponent alpha_j of the level-j inner sum, g_j(x) ~ x^{-1-alpha_j}.
/// Large gap m_j moves n_j..n_r together; the divided-difference terms with i >= j
/// give sum_{l>=j} k_l + s - (r - 2j + 2), those with i < j give sum_{l>=j} k_l - (r - j + 1).
inline std::vector<cplx> ohno_decay(const Index& k, cplx s) {
  const int r = k.depth();
  std::vector<cplx> out(static_cast<std::size_t>(r));
  double suffix = 0.0;
  for (int j = r; j >= 1; --j) {
    suffix += k[static_cast<std::size_t>(j - 1)];
    cplx alpha = suffix + s - static_cast<double>(r - 2 * j + 2);
    if (j >= 2) {
      const double other = suffix - static_cast<double>(r - j + 1);
      if (other < alpha.real()) alpha = other;
    }
    out[static_cast<std::size_t>(j - 1)] = alpha;
  }
  return out;
}

inline void require_series_depth(const Index& k, const char* what) {
  if (k.depth() > kMaxSeriesDepth)
    throw error(errc::unsupported, std::string(what) + " supports depth <= 3; got (" + k.str() + ")");
}

}  // namespace detail

/// I_k(s) from the Dirichlet series; requires Re(s) > abscissa(k) + margin.
inline EvalResult series_eval(const Index& k, cplx s, const SeriesOptions& opt = {}) {
  const RegionInfo region = abscissa(k);
  detail::require_series_depth(k, "series evaluation");
  if (!is_finite(s)) throw error(errc::invalid_input, "s must be finite");
  if (!(s.real() > region.abscissa + opt.margin))
    throw error(errc::outside_region,
                "series for (" + k.str() + ") needs Re(s) > abscissa + margin = " + format_real(region.abscissa) +
                    " + " + format_real(opt.margin) + "; got Re(s) = " + format_real(s.real()),
                region.abscissa);
  detail::OhnoSummand f{{}, s};
  for (int part : k.parts()) f.k.push_back(part);
  const auto decay = detail::ohno_decay(k, s);
  const bool real = s.imag() == 0.0;
  const auto res = lattice_sum_adaptive(k.depth(), f, std::span<const cplx>(decay), real, opt.tol, opt.max_terms,
                                        LatticeOptions{.threads = opt.threads});
  cplx v = res.value;
  if (real) v.imag(0.0);
  return {v, res.err_est, Method::series, res.evaluations, 0, std::nullopt};
}

/// Truncated series over 0 < n_1 < ... < n_r <= N, summed tuple by tuple in the
/// partial-fraction form.  err_est is the rounding guard only (eps * max|term|
/// per tuple); the truncation error is not included.
inline EvalResult series_partial_sum(const Index& k, cplx s, int N) {
  require_admissible(k);
  detail::require_series_depth(k, "partial sums");
  if (N < 1) throw error(errc::invalid_input, "partial sums need N >= 1");
  const int r = k.depth();
  // tables of n^{-s} and n^{-k_j}
  std::vector<cplx> ns(static_cast<std::size_t>(N) + 1);
  std::vector<std::vector<double>> nk(static_cast<std::size_t>(r), std::vector<double>(static_cast<std::size_t>(N) + 1));
  for (int n = 1; n <= N; ++n) {
    ns[static_cast<std::size_t>(n)] = cpow(cplx(n), -s);
    for (int j = 0; j < r; ++j)
      nk[static_cast<std::size_t>(j)][static_cast<std::size_t>(n)] = std::pow(double(n), -k[static_cast<std::size_t>(j)]);
  }
  compensated_csum total;
  double guard = 0.0;
  std::int64_t tuples = 0;
  std::array<int, detail::kMaxSeriesDepth> n{};
  std::array<cplx, detail::kMaxSeriesDepth> terms{};
  auto visit = [&]() {
    double base = 1.0;
    for (int j = 0; j < r; ++j) base *= nk[static_cast<std::size_t>(j)][static_cast<std::size_t>(n[static_cast<std::size_t>(j)])];
    for (int i = 0; i < r; ++i) {
      cplx t = base * ns[static_cast<std::size_t>(n[static_cast<std::size_t>(i)])];
      for (int j = 0; j < r; ++j)
        if (j != i) t *= double(n[static_cast<std::size_t>(j)]) / double(n[static_cast<std::size_t>(j)] - n[static_cast<std::size_t>(i)]);
      terms[static_cast<std::size_t>(i)] = t;
    }
    std::sort(terms.begin(), terms.begin() + r, [](cplx a, cplx b) { return std::abs(a) < std::abs(b); });
    compensated_csum tuple;
    for (int i = 0; i < r; ++i) tuple += terms[static_cast<std::size_t>(i)];
    total += tuple.value();
    guard += detail::kEps * std::abs(terms[static_cast<std::size_t>(r - 1)]);
    ++tuples;
  };
  auto rec = [&](auto&& self, int j, int lo) -> void {
    if (j == r) {
      visit();
      return;
    }
    for (int v = lo; v <= N - (r - 1 - j); ++v) {
      n[static_cast<std::size_t>(j)] = v;
      self(self, j + 1, v + 1);
    }
  };
  rec(rec, 0, 1);
  const cplx v = total.value();
  return {v, guard + 4 * detail::kEps * total.abs_total(), Method::partial_sum, tuples, 0, std::nullopt};
}

/// I_k(m) = sum_{|e| = m} zeta(k + e).
inline EvalResult ohno_sum_integer(const Index& k, int m) {
  require_admissible(k);
  if (m < 0) throw error(errc::invalid_input, "Ohno sum needs m >= 0");
  EvalResult out{0.0, 0.0, Method::ohno_sum, 0, 0, std::nullopt};
  compensated_sum acc;
  for (const auto& e : compositions(m, k.depth())) {
    const EvalResult z = mzv(k.plus(e));
    acc.add(z.value.real());
    out.err_est += z.err_est;
    out.terms_used += z.terms_used;
  }
  out.value = acc.value();
  return out;
}

namespace detail {

inline constexpr double kMellinStep = 0.4;
inline constexpr double kMellinReach = 32.0;  // in log w beyond the node range

/// Per-tuple Mellin integral J(n) = int_0^inf w^{-s-1} / prod (w + n_i) dw,
/// trapezoid rule in x = log w on a grid shared by all tuples.
class MellinSummand {
 public:
  MellinSummand(const Index& k, cplx s) : s_(s), r_(k.depth()) {
    for (int part : k.parts()) k_.push_back(part);
    lo_ = static_cast<long>(std::floor(-(kMellinReach + 1.0) / kMellinStep));
    hi_ = static_cast<long>(std::ceil((std::log(1e33) + kMellinReach + 1.0) / kMellinStep));
    for (long q = lo_; q <= hi_; ++q) {
      const double x = q * kMellinStep;
      emx_.push_back(std::exp(-x));
      decay_.push_back(std::exp(-(s + static_cast<double>(r_)) * x));
    }
  }

  cplx operator()(std::span<const cplx> gaps) const {
    std::array<cplx, kMaxNodes> n{};
    cplx acc = 0.0, pre = 1.0, prod_n = 1.0;
    for (int j = 0; j < r_; ++j) {
      acc += gaps[static_cast<std::size_t>(j)];
      n[static_cast<std::size_t>(j)] = acc;
      prod_n *= acc;
      if (k_[static_cast<std::size_t>(j)] != 1.0) pre *= cpow(acc, cplx(1.0 - k_[static_cast<std::size_t>(j)]));
    }
    const double x_lo = std::log(std::abs(n[0])) - kMellinReach;
    const double x_hi = std::log(std::abs(n[static_cast<std::size_t>(r_ - 1)])) + kMellinReach;
    const long q_lo = std::max(lo_, static_cast<long>(std::floor(x_lo / kMellinStep)));
    const long q_hi = std::min(hi_, static_cast<long>(std::ceil(x_hi / kMellinStep)));
    cplx sum = 0.0;
    auto integrand = [&](long q) {
      const std::size_t i = static_cast<std::size_t>(q - lo_);
      cplx den = 1.0;
      for (int j = 0; j < r_; ++j) den *= 1.0 + n[static_cast<std::size_t>(j)] * emx_[i];
      return decay_[i] / den;
    };
    nodes_.fetch_add(q_hi - q_lo + 1, std::memory_order_relaxed);
    for (long q = q_lo; q <= q_hi; ++q) sum += integrand(q);
    // Continue the trapezoid sum to +-inf with the asymptotic forms
    // e^{-s x}/prod n (below) and e^{-(s+r) x} (above): both geometric.
    const double h = kMellinStep;
    const double a = q_lo * h, b = q_hi * h;
    const cplx lo_ratio = std::exp(s_ * h);
    const cplx hi_ratio = std::exp(-(s_ + static_cast<double>(r_)) * h);
    sum += std::exp(-s_ * a) / prod_n * lo_ratio / (1.0 - lo_ratio);
    sum += std::exp(-(s_ + static_cast<double>(r_)) * b) * hi_ratio / (1.0 - hi_ratio);
    sum *= h;
    return pre * sum;
  }

  std::int64_t nodes_used() const { return nodes_.load(); }

 private:
  mutable std::atomic<std::int64_t> nodes_{0};
  cplx s_;
  int r_;
  std::vector<double> k_;
  long lo_, hi_;
  std::vector<double> emx_;
  std::vector<cplx> decay_;
};

}  // namespace detail

/// I_k(s) = -sin(pi s)/pi * sum_{n_1<...<n_r} prod n_j^{1-k_j} J(n) on the strip
/// max(abscissa, -r) < Re(s) < 0.
inline EvalResult mellin_eval(const Index& k, cplx s, const SeriesOptions& opt = {}) {
  const RegionInfo region = abscissa(k);
  detail::require_series_depth(k, "Mellin evaluation");
  const int r = k.depth();
  const double lower = std::max(region.abscissa, -static_cast<double>(r));
  if (!(s.real() > lower && s.real() < 0.0))
    throw error(errc::outside_strip,
                "Mellin representation of (" + k.str() + ") needs " + format_real(lower) + " < Re(s) < 0; got Re(s) = " +
                    format_real(s.real()),
                region.abscissa);
  const cplx prefactor = -sinpi(s) / pi;
  if (prefactor == cplx(0.0)) return {0.0, 0.0, Method::mellin, 0, 0, std::nullopt};
  detail::MellinSummand f(k, s);
  const auto decay = detail::ohno_decay(k, s);
  const bool real = s.imag() == 0.0;
  const auto res = lattice_sum_adaptive(r, f, std::span<const cplx>(decay), real, opt.tol / std::abs(prefactor),
                                        opt.max_terms, LatticeOptions{.threads = opt.threads});
  cplx v = prefactor * res.value;
  if (real) v.imag(0.0);
  return {v, std::abs(prefactor) * res.err_est, Method::mellin, res.evaluations, f.nodes_used(), std::nullopt};
}

}  // namespace ohno
