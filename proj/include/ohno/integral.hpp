#pragma once

// Iterated-integral representations of I_k(s) and related quadrature checks.
//
// The simplex 0 < t_1 < ... < t_{2d} < 1 is parameterized by log gaps
//
//   g_j = log(t_{j+1} / t_j) (j < 2d),   g_{2d} = -log t_{2d},
//
// which maps it onto (0, inf)^{2d} with unit Jacobian in the measure
// dt_{2i-1}/(1-t_{2i-1}) dt_{2i}/t_{2i} = dG_{2i-1}/expm1(G_{2i-1}) dG_{2i},
// G_j = g_j + ... + g_{2d} = -log t_j.  The weight then reads
//
//   prod_i L_i^{a_i-1} g_{2i}^{b_i-1} / expm1(G_{2i-1}) * (sum_i g_{2i-1})^s,
//   L_i = log((1-t_{2i-1})/(1-t_{2i})) = log1p(-expm1(-g_{2i-1}) / expm1(G_{2i})).
//
// Each g is integrated by an exp-sinh rule (tensor product) or, in higher
// dimension, by randomized QMC through g = (v/(1-v))^p.

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include "ohno/compensated.hpp"
#include "ohno/complex.hpp"
#include "ohno/double_exponential.hpp"
#include "ohno/error.hpp"
#include "ohno/eval_result.hpp"
#include "ohno/index.hpp"
#include "ohno/options.hpp"
#include "ohno/sobol.hpp"
#include "ohno/zeta.hpp"

namespace ohno {

namespace detail {

inline constexpr int kMaxTensorDim = 6;
inline constexpr double kAxisUpper = 50.0;  // e^{-50} below double resolution of the total
inline constexpr double kAxisLower = 1e-16;

inline constexpr double kAxisFloor = 1e-150;  // keeps x^sigma / x finite for sigma > -1

/// Lower cut for an axis carrying x^sigma near 0: the dropped mass x^{1+sigma} stays below 1e-16
/// unless the floor binds.
inline double singular_axis_lower(double sigma) {
  if (sigma >= 0.0) return kAxisLower;
  return std::max(kAxisFloor, std::pow(kAxisLower, 1.0 / (1.0 + sigma)));
}

/// Relative mass lost below the cut x^{1+sigma}/(1+sigma), per axis.
inline double cut_loss(double lower, double sigma) {
  const double e = 1.0 + std::min(0.0, sigma);
  return std::pow(lower, e) / e;
}

struct Axis {
  double lower = kAxisLower;
  double upper = kAxisUpper;
};

struct TensorPass {
  cplx value;
  double abs_total;
  std::int64_t evals;
};

template <class F>
TensorPass tensor_pass(std::span<const Axis> axes, double h, const F& f, unsigned threads) {
  const std::size_t D = axes.size();
  std::vector<std::vector<de::Node>> rules;
  for (const Axis& ax : axes) {
    auto rule = de::exp_sinh(h, de::exp_sinh_t(ax.lower), de::exp_sinh_t(ax.upper));
    // the grid snaps outward; drop nodes below the cut
    std::erase_if(rule, [&](const de::Node& nd) { return nd.x < ax.lower; });
    rules.push_back(std::move(rule));
  }
  const std::size_t outer = rules[0].size();
  std::vector<cplx> partial(outer);
  std::vector<double> partial_abs(outer);

  auto slice = [&](std::size_t i0) {
    std::array<double, kMaxTensorDim> g{};
    std::array<std::size_t, kMaxTensorDim> idx{};
    g[0] = rules[0][i0].x;
    compensated_csum acc;
    double abs_acc = 0.0;
    if (D == 1) {
      const cplx v = rules[0][i0].w * f(std::span<const double>(g.data(), 1));
      partial[i0] = v;
      partial_abs[i0] = std::abs(v);
      return;
    }
    // odometer over the remaining axes
    for (std::size_t d = 1; d < D; ++d) g[d] = rules[d][0].x;
    while (true) {
      double w = rules[0][i0].w;
      for (std::size_t d = 1; d < D; ++d) w *= rules[d][idx[d]].w;
      const cplx v = w * f(std::span<const double>(g.data(), D));
      acc += v;
      abs_acc += std::abs(v);
      std::size_t d = D - 1;
      while (true) {
        if (++idx[d] < rules[d].size()) {
          g[d] = rules[d][idx[d]].x;
          break;
        }
        idx[d] = 0;
        g[d] = rules[d][0].x;
        if (--d == 0) break;
      }
      if (d == 0) break;
    }
    partial[i0] = acc.value();
    partial_abs[i0] = abs_acc;
  };

  const unsigned workers = threads ? threads : std::max(1u, std::thread::hardware_concurrency());
  if (workers > 1 && D > 1) {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w)
      pool.emplace_back([&] {
        for (std::size_t i; (i = next.fetch_add(1)) < outer;) slice(i);
      });
    for (auto& t : pool) t.join();
  } else {
    for (std::size_t i = 0; i < outer; ++i) slice(i);
  }

  TensorPass out{0.0, 0.0, 1};
  compensated_csum total;
  for (std::size_t i = 0; i < outer; ++i) {
    total += partial[i];
    out.abs_total += partial_abs[i];
  }
  out.value = total.value();
  for (const auto& r : rules) out.evals *= static_cast<std::int64_t>(r.size());
  return out;
}

struct TensorResult {
  cplx value;
  double err_est;
  std::int64_t evals;
};

/// Halve h from 1/2 down to 2^-max_level until successive passes agree to tol
/// or the next pass would exceed max_evals; return the pass with least error.
/// `sigma` is the exponent of the algebraic singularity at the cuts (for the
/// truncation term of the error estimate).
template <class F>
TensorResult tensor_adaptive(std::span<const Axis> axes, const F& f, double sigma, double tol, int max_level,
                             std::int64_t max_evals, unsigned threads) {
  double h = 0.5;
  TensorPass prev = tensor_pass(axes, h, f, threads);
  std::int64_t used = prev.evals;
  TensorResult best{prev.value, std::numeric_limits<double>::infinity(), used};
  for (int level = 2; level <= std::max(1, max_level); ++level) {
    const std::int64_t next_cost = prev.evals << axes.size();
    if (used + next_cost > max_evals) break;
    h *= 0.5;
    TensorPass cur = tensor_pass(axes, h, f, threads);
    used += cur.evals;
    const double err = std::abs(cur.value - prev.value) + 64.0 * kEps * cur.abs_total;
    if (err < best.err_est) best = {cur.value, err, used};
    prev = cur;
    if (err <= tol) break;
  }
  best.evals = used;
  if (!std::isfinite(best.err_est)) best.err_est = std::abs(prev.value);
  double loss = 0.0;
  for (const Axis& ax : axes) loss += cut_loss(ax.lower, sigma);
  best.err_est += loss * std::abs(best.value);
  return best;
}

/// Randomized QMC over (0,inf)^D through g = (v/(1-v))^p per axis.
template <class F>
EvalResult rqmc(std::span<const double> powers, const F& f, const QuadratureOptions& opt) {
  const int D = static_cast<int>(powers.size());
  constexpr int kReplicates = 8;
  std::array<cplx, kReplicates> means{};
  auto replicate = [&](int rep) {
    Sobol sobol(D);
    sobol.shift(replicate_seed(opt.seed, static_cast<std::uint64_t>(rep)));
    compensated_csum acc;
    std::array<double, kMaxTensorDim> g{};
    sobol.generate(opt.qmc_points, [&](std::span<const double> v) {
      double jac = 1.0;
      for (int d = 0; d < D; ++d) {
        const double p = powers[static_cast<std::size_t>(d)];
        const double x = v[static_cast<std::size_t>(d)], q = x / (1.0 - x);
        g[static_cast<std::size_t>(d)] = std::pow(q, p);
        jac *= p * std::pow(q, p - 1.0) / ((1.0 - x) * (1.0 - x));
      }
      const cplx val = f(std::span<const double>(g.data(), static_cast<std::size_t>(D)));
      if (is_finite(val) && std::isfinite(jac)) acc += jac * val;
    });
    means[static_cast<std::size_t>(rep)] = acc.value() / static_cast<double>(opt.qmc_points);
  };
  const unsigned workers = opt.threads ? opt.threads : std::max(1u, std::thread::hardware_concurrency());
  if (workers > 1) {
    std::vector<std::thread> pool;
    std::atomic<int> next{0};
    for (unsigned w = 0; w < std::min<unsigned>(workers, kReplicates); ++w)
      pool.emplace_back([&] {
        for (int rep; (rep = next.fetch_add(1)) < kReplicates;) replicate(rep);
      });
    for (auto& t : pool) t.join();
  } else {
    for (int rep = 0; rep < kReplicates; ++rep) replicate(rep);
  }
  cplx mean = 0.0;
  for (cplx m : means) mean += m;
  mean /= static_cast<double>(kReplicates);
  double var = 0.0;
  for (cplx m : means) var += std::norm(m - mean);
  var /= kReplicates - 1;
  EvalResult out{mean, std::sqrt(var), Method::integral_qmc, 0, opt.qmc_points * kReplicates, opt.seed};
  return out;
}

inline double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

inline void require_integral_domain(cplx s, const char* what) {
  if (!is_finite(s)) throw error(errc::invalid_input, "s must be finite");
  if (!(s.real() > -1.0))
    throw error(errc::outside_domain,
                std::string(what) + " needs Re(s) > -1; got Re(s) = " + format_real(s.real()));
}

struct IteratedIntegrand {
  std::vector<ABPair> pairs;
  cplx s;

  cplx operator()(std::span<const double> g) const {
    const std::size_t n = g.size();
    std::array<double, kMaxTensorDim + 1> G{};
    for (std::size_t j = n; j-- > 0;) G[j] = g[j] + G[j + 1];
    double w = 1.0, odd = 0.0;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      const std::size_t o = 2 * i, e = 2 * i + 1;
      w /= std::expm1(G[o]);
      if (pairs[i].a > 1) {
        const double L = std::log1p(-std::expm1(-g[o]) / std::expm1(G[e]));
        w *= std::pow(L, pairs[i].a - 1);
      }
      if (pairs[i].b > 1) w *= std::pow(g[e], pairs[i].b - 1);
      odd += g[o];
    }
    if (w == 0.0) return 0.0;
    return w * cpow(cplx(odd), s);
  }
};

}  // namespace detail

/// I_k(s) from the iterated integral over the 2d-simplex; Re(s) > -1, d <= 3.
inline EvalResult integral_eval(const Index& k, cplx s, const QuadratureOptions& opt = {}) {
  const ABDecomposition ab = ab_decompose(k);
  detail::require_integral_domain(s, "integral representation");
  const int d = static_cast<int>(ab.pairs.size());
  if (d > 3)
    throw error(errc::unsupported, "integral representation supports d <= 3 entries >= 2; got d = " + std::to_string(d));
  double norm = 1.0;
  for (auto [a, b] : ab.pairs) norm *= detail::factorial(a - 1) * detail::factorial(b - 1);
  const cplx gamma_s1 = detail::gamma_value(s + 1.0);
  detail::IteratedIntegrand f{ab.pairs, s};
  const double sigma = s.real();
  EvalResult out;
  if (d <= 2 && !opt.force_qmc) {
    // the corner factor g_{2i-1}^sigma / (g_{2i-1} + g_{2i}) needs both axes cut at the same depth
    std::vector<detail::Axis> axes(static_cast<std::size_t>(2 * d));
    for (auto& ax : axes) ax.lower = detail::singular_axis_lower(sigma);
    const auto res = detail::tensor_adaptive(std::span<const detail::Axis>(axes), f, sigma, opt.tol, opt.nodes,
                                             opt.max_evals, opt.threads);
    out = {res.value, res.err_est, Method::integral_tensor, 0, res.evals, std::nullopt};
  } else {
    std::vector<double> powers(static_cast<std::size_t>(2 * d), 2.0);
    for (int i = 0; i < d; ++i)
      powers[static_cast<std::size_t>(2 * i)] = std::max(2.0, 1.5 / (1.0 + std::min(0.0, sigma)));
    out = detail::rqmc(std::span<const double>(powers), f, opt);
  }
  const cplx scale = 1.0 / (norm * gamma_s1);
  out.value *= scale;
  out.err_est *= std::abs(scale);
  if (s.imag() == 0.0) out.value.imag(0.0);
  return out;
}

/// T-interpolated integral for a = (1^{a-1}, 2):
/// weight (log((1-t_1)/(1-t_2)) + T log(t_2/t_1))^{a-1} (log(t_2/t_1))^s.
inline EvalResult t_integral_eval(int a, double T, cplx s, const QuadratureOptions& opt = {}) {
  if (a < 1) throw error(errc::invalid_input, "t_integral_eval needs a >= 1");
  if (!std::isfinite(T)) throw error(errc::invalid_input, "T must be finite");
  detail::require_integral_domain(s, "T-interpolated integral");
  auto f = [a, T, s](std::span<const double> g) -> cplx {
    const double w0 = 1.0 / std::expm1(g[0] + g[1]);
    if (w0 == 0.0) return 0.0;
    double w = w0;
    if (a > 1) {
      const double L = std::log1p(-std::expm1(-g[0]) / std::expm1(g[1]));
      w *= std::pow(L + T * g[0], a - 1);
    }
    return w * cpow(cplx(g[0]), s);
  };
  std::array<detail::Axis, 2> axes{};
  for (auto& ax : axes) ax.lower = detail::singular_axis_lower(s.real());
  const auto res = detail::tensor_adaptive(std::span<const detail::Axis>(axes), f, s.real(), opt.tol, opt.nodes, opt.max_evals,
                                           opt.threads);
  const cplx scale = 1.0 / (detail::factorial(a - 1) * detail::gamma_value(s + 1.0));
  cplx v = res.value * scale;
  if (s.imag() == 0.0) v.imag(0.0);
  return {v, res.err_est * std::abs(scale), Method::integral_tensor, 0, res.evals, std::nullopt};
}

struct ExpIntegralCheck {
  cplx lhs;
  cplx rhs;
  double diff;
  double rhs_err;
};

/// Partial-fraction sum against the exponential integral it equals.
inline ExpIntegralCheck exponential_integral_check(std::span<const double> c, cplx s, const QuadratureOptions& opt = {}) {
  const std::size_t r = c.size();
  if (r < 1 || r > 3) throw error(errc::unsupported, "lemma check supports 1 to 3 parameters");
  for (double ci : c)
    if (!(ci > 0.0) || !std::isfinite(ci)) throw error(errc::invalid_input, "parameters c_i must be positive");
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = i + 1; j < r; ++j)
      if (c[i] == c[j]) throw error(errc::degenerate, "parameters c_i must be pairwise distinct");
  detail::require_integral_domain(s, "exponential integral");

  compensated_csum lhs;
  for (std::size_t i = 0; i < r; ++i) {
    cplx term = cpow(cplx(c[i]), -s - 1.0);
    for (std::size_t j = 0; j < r; ++j)
      if (j != i) term /= c[j] - c[i];
    lhs += term;
  }
  // x_i = z_i / c_i
  double prod_c = 1.0;
  for (double ci : c) prod_c *= ci;
  std::array<double, 3> inv{};
  for (std::size_t i = 0; i < r; ++i) inv[i] = 1.0 / c[i];
  auto f = [&](std::span<const double> z) -> cplx {
    double sum_z = 0.0, x = 0.0;
    for (std::size_t i = 0; i < r; ++i) {
      sum_z += z[i];
      x += z[i] * inv[i];
    }
    const double e = std::exp(-sum_z);
    if (e == 0.0) return 0.0;
    return e * cpow(cplx(x), s);
  };
  std::vector<detail::Axis> axes(r);
  for (auto& ax : axes) ax.lower = detail::singular_axis_lower(s.real());
  const auto res = detail::tensor_adaptive(std::span<const detail::Axis>(axes), f, s.real(), opt.tol, opt.nodes + 2,
                                           opt.max_evals, opt.threads);
  const cplx scale = 1.0 / (prod_c * detail::gamma_value(s + 1.0));
  ExpIntegralCheck out{lhs.value(), res.value * scale, 0.0, res.err_est * std::abs(scale)};
  out.diff = std::abs(out.lhs - out.rhs);
  return out;
}

struct UlanskiiCheck {
  std::vector<double> u;
  bool monotone;
  double jacobian_ratio;
  double log_ratio_diff;
  /// |log| of the ratio of the paired log-factor weights (t side over u side)
  double weight_diff;
};

namespace detail {

/// The change of variables on the 2d-simplex; u_{2d} is fixed by t_1, t_2 and
/// the rest follow by alternating the two defining relations.
inline std::vector<double> ulanskii_map(std::span<const double> t) {
  const std::size_t n = t.size();
  std::vector<double> u(n);
  // 1-based: u_{2d} = (1-t_2)/(1-t_1), then for l = 1..d:
  //   1 - u_{2p-1} = (1 - u_{2p}) t_{2l+1}/t_{2l},  u_{2p-2} = u_{2p-1} (1-t_{2l+2})/(1-t_{2l+1}),  p = d-l+1
  auto T = [&](std::size_t i) { return i == n + 1 ? 1.0 : t[i - 1]; };
  u[n - 1] = (1.0 - T(2)) / (1.0 - T(1));
  const std::size_t d = n / 2;
  for (std::size_t l = 1; l <= d; ++l) {
    const std::size_t p = d - l + 1;
    const double one_minus = (1.0 - u[2 * p - 1]) * T(2 * l + 1) / T(2 * l);
    u[2 * p - 2] = 1.0 - one_minus;
    if (p >= 2) u[2 * p - 3] = u[2 * p - 2] * (1.0 - T(2 * l + 2)) / (1.0 - T(2 * l + 1));
  }
  return u;
}

inline double density(std::span<const double> t) {
  double w = 1.0;
  for (std::size_t i = 0; i < t.size(); i += 2) w /= (1.0 - t[i]) * t[i + 1];
  return w;
}

inline double log_even_odd_ratio(std::span<const double> t) {
  double s = 0.0;
  for (std::size_t i = 0; i < t.size(); i += 2) s += std::log(t[i + 1] / t[i]);
  return s;
}

/// Determinant by Gaussian elimination with partial pivoting.
inline double determinant(std::vector<double> m, std::size_t n) {
  double det = 1.0;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < n; ++r)
      if (std::fabs(m[r * n + c]) > std::fabs(m[piv * n + c])) piv = r;
    if (m[piv * n + c] == 0.0) return 0.0;
    if (piv != c) {
      for (std::size_t k = 0; k < n; ++k) std::swap(m[c * n + k], m[piv * n + k]);
      det = -det;
    }
    det *= m[c * n + c];
    for (std::size_t r = c + 1; r < n; ++r) {
      const double f = m[r * n + c] / m[c * n + c];
      for (std::size_t k = c; k < n; ++k) m[r * n + k] -= f * m[c * n + k];
    }
  }
  return det;
}

}  // namespace detail

/// Numerical check of the simplex change of variables at one point.
/// a, b (length d, entries >= 1) select the exponents of the paired log factors.
inline UlanskiiCheck ulanskii_check(std::span<const double> t, std::span<const int> a = {},
                                    std::span<const int> b = {}) {
  const std::size_t n = t.size();
  if (n < 2 || n % 2 != 0) throw error(errc::invalid_input, "simplex point must have even length 2d >= 2");
  if (n > 2 * static_cast<std::size_t>(detail::kMaxTensorDim))
    throw error(errc::unsupported, "simplex point too long");
  for (std::size_t i = 0; i < n; ++i) {
    const double lo = i == 0 ? 0.0 : t[i - 1];
    if (!(t[i] > lo && t[i] < 1.0))
      throw error(errc::outside_domain, "t must satisfy 0 < t_1 < ... < t_2d < 1");
  }
  const std::size_t d = n / 2;
  if ((!a.empty() && a.size() != d) || (!b.empty() && b.size() != d))
    throw error(errc::invalid_input, "a and b must have length d");

  UlanskiiCheck out;
  out.u = detail::ulanskii_map(t);
  out.monotone = true;
  for (std::size_t i = 0; i < n; ++i) {
    const double lo = i == 0 ? 0.0 : out.u[i - 1];
    if (!(out.u[i] > lo && out.u[i] < 1.0)) out.monotone = false;
  }

  // central differences, step scaled to the local gaps
  std::vector<double> jac(n * n);
  std::vector<double> tp(t.begin(), t.end());
  for (std::size_t j = 0; j < n; ++j) {
    const double below = j == 0 ? t[0] : t[j] - t[j - 1];
    const double above = j + 1 == n ? 1.0 - t[j] : t[j + 1] - t[j];
    const double step = std::min(1e-6, 0.01 * std::min(below, above));
    tp[j] = t[j] + step;
    const auto up = detail::ulanskii_map(tp);
    tp[j] = t[j] - step;
    const auto dn = detail::ulanskii_map(tp);
    tp[j] = t[j];
    for (std::size_t i = 0; i < n; ++i) jac[i * n + j] = (up[i] - dn[i]) / (2.0 * step);
  }
  const double det = std::fabs(detail::determinant(jac, n));
  out.jacobian_ratio = det * detail::density(out.u) / detail::density(t);
  out.log_ratio_diff = std::fabs(detail::log_even_odd_ratio(t) - detail::log_even_odd_ratio(out.u));

  // paired log factors: t side (log((1-t_{2i-1})/(1-t_{2i})), log(t_{2i+1}/t_{2i}))
  // against u side (log(u_{2p+1}/u_{2p}), log((1-u_{2p-1})/(1-u_{2p}))), p = d-i+1
  auto T = [&](std::size_t i) { return i == n + 1 ? 1.0 : t[i - 1]; };
  auto U = [&](std::size_t i) { return i == n + 1 ? 1.0 : out.u[i - 1]; };
  double log_t = 0.0, log_u = 0.0;
  for (std::size_t i = 1; i <= d; ++i) {
    const std::size_t p = d - i + 1;
    const int ea = a.empty() ? 1 : a[i - 1] - 1;
    const int eb = b.empty() ? 1 : b[i - 1] - 1;
    log_t += ea * std::log(std::log((1.0 - T(2 * i - 1)) / (1.0 - T(2 * i))));
    log_t += eb * std::log(std::log(T(2 * i + 1) / T(2 * i)));
    log_u += ea * std::log(std::log(U(2 * p + 1) / U(2 * p)));
    log_u += eb * std::log(std::log((1.0 - U(2 * p - 1)) / (1.0 - U(2 * p))));
  }
  out.weight_diff = std::fabs(log_t - log_u);
  return out;
}

}  // namespace ohno
