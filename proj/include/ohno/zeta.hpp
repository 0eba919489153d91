#pragma once

// Scalar kernels: complex gamma, Riemann zeta, multiple zeta values (real and
// with one complex-shifted exponent), generalized binomial coefficients.

#include <array>
#include <cmath>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "ohno/complex.hpp"
#include "ohno/error.hpp"
#include "ohno/eval_result.hpp"
#include "ohno/index.hpp"
#include "ohno/lattice_sum.hpp"
#include "ohno/options.hpp"

namespace ohno {

namespace detail {

inline constexpr double kEps = std::numeric_limits<double>::epsilon();

// Lanczos approximation, g = 7, n = 9.
inline constexpr double kLanczosG = 7.0;
inline constexpr std::array<double, 9> kLanczosCoef = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};

/// log Gamma(z) for Re z >= 0.5.
inline cplx log_gamma_right(cplx z) {
  z -= 1.0;
  cplx acc = kLanczosCoef[0];
  for (std::size_t i = 1; i < kLanczosCoef.size(); ++i) acc += kLanczosCoef[i] / (z + static_cast<double>(i));
  const cplx t = z + kLanczosG + 0.5;
  return 0.5 * std::log(2.0 * pi) + (z + 0.5) * std::log(t) - t + std::log(acc);
}

inline cplx gamma_value(cplx s) {
  if (is_nonpositive_integer(s)) throw error(errc::pole, "gamma has a pole at s = " + format_complex(s));
  if (s.real() < 0.5) return pi / (sinpi(s) * std::exp(log_gamma_right(1.0 - s)));
  return std::exp(log_gamma_right(s));
}

// B_{2j} for j = 1..13
inline constexpr std::array<double, 13> kBernoulli = {
    1.0 / 6,          -1.0 / 30,        1.0 / 42,           -1.0 / 30,       5.0 / 66,
    -691.0 / 2730,    7.0 / 6,          -3617.0 / 510,      43867.0 / 798,   -174611.0 / 330,
    854513.0 / 138,   -236364091.0 / 2730, 8553103.0 / 6};

inline constexpr int kZetaCut = 64;
inline constexpr int kZetaBernoulliTerms = 12;

/// Euler-Maclaurin for Re s >= -0.5, s != 1.  Returns {value, |first omitted term|}.
inline std::pair<cplx, double> zeta_euler_maclaurin(cplx s) {
  const double N = kZetaCut;
  cplx sum = 0.0;
  for (int n = kZetaCut - 1; n >= 1; --n) sum += cpow(cplx(n), -s);
  const cplx Ns = cpow(cplx(N), -s);
  sum += N * Ns / (s - 1.0) + 0.5 * Ns;
  // T_j = B_2j/(2j)! * s(s+1)...(s+2j-2) * N^{-s-2j+1}
  cplx rising = s;  // s(s+1)...(s+2j-2)
  cplx npow = Ns / N;
  double fact = 2.0;  // (2j)!
  double omitted = 0.0;
  for (int j = 1; j <= kZetaBernoulliTerms + 1; ++j) {
    const cplx term = kBernoulli[static_cast<std::size_t>(j - 1)] / fact * rising * npow;
    if (j <= kZetaBernoulliTerms) sum += term;
    else omitted = std::abs(term);
    rising *= (s + (2.0 * j - 1.0)) * (s + 2.0 * j);
    npow /= N * N;
    fact *= (2.0 * j + 1.0) * (2.0 * j + 2.0);
  }
  return {sum, omitted};
}

inline std::vector<int> word_to_exponents(std::span<const int> word) {
  std::vector<int> exps;
  for (int letter : word) {
    if (letter == 1) exps.push_back(1);
    else ++exps.back();
  }
  return exps;
}

/// sum_{n_1 < ... < n_q} (1/2)^{n_q} / prod n_j^{a_j}
inline double polylog_half(std::span<const int> a) {
  if (a.empty()) return 1.0;
  constexpr int N = 110;  // terms beyond decay like 2^-N
  const std::size_t q = a.size();
  // prefix[n] = sum over n_1 < ... < n_j <= n of the first j factors
  std::vector<double> prefix(N + 1, 1.0), next(N + 1);
  for (std::size_t j = 0; j + 1 < q; ++j) {
    next[0] = 0.0;
    for (int n = 1; n <= N; ++n) next[n] = next[n - 1] + prefix[n - 1] * std::pow(double(n), -a[j]);
    prefix.swap(next);
  }
  double sum = 0.0;
  for (int n = N; n >= 1; --n) sum += std::ldexp(prefix[n - 1] * std::pow(double(n), -a[q - 1]), -n);
  return sum;
}

}  // namespace detail

inline EvalResult gamma(cplx s) {
  const cplx v = detail::gamma_value(s);
  if (!is_finite(v)) throw error(errc::unsupported, "gamma overflows at s = " + format_complex(s));
  return {v, 1e-14 * std::abs(v), Method::lanczos, 0, 0, std::nullopt};
}

inline EvalResult riemann_zeta(cplx s) {
  if (s == cplx(1.0)) throw error(errc::pole, "riemann zeta has a pole at s = 1");
  if (!(s.real() > -10.0))
    throw error(errc::unsupported, "riemann zeta supports Re(s) > -10; got s = " + format_complex(s));
  EvalResult out{0.0, 0.0, Method::euler_maclaurin, detail::kZetaCut + detail::kZetaBernoulliTerms, 0, std::nullopt};
  if (s.real() >= -0.5) {
    auto [v, omitted] = detail::zeta_euler_maclaurin(s);
    out.value = v;
    out.err_est = omitted + 64 * detail::kEps * std::abs(v);
    return out;
  }
  // zeta(s) = 2^s pi^{s-1} sin(pi s/2) Gamma(1-s) zeta(1-s)
  auto [v1, omitted] = detail::zeta_euler_maclaurin(1.0 - s);
  const cplx factor = cpow(cplx(2.0), s) * cpow(cplx(pi), s - 1.0) * sinpi(0.5 * s) * detail::gamma_value(1.0 - s);
  out.value = factor * v1;
  out.err_est = std::abs(factor) * omitted + 1e-13 * std::abs(out.value);
  return out;
}

/// prod_{j=1..i} (s + j) / j
inline cplx gen_binomial(cplx s, int i) {
  if (i < 0) throw error(errc::invalid_input, "gen_binomial needs i >= 0");
  cplx out = 1.0;
  for (int j = 1; j <= i; ++j) out *= (s + static_cast<double>(j)) / static_cast<double>(j);
  return out;
}

inline constexpr int kMaxMzvDepth = 4;

/// zeta(k_1, ..., k_r) = sum_{n_1 < ... < n_r} prod n_j^{-k_j}.
inline EvalResult mzv(const Index& k) {
  if (!k.admissible())
    throw error(errc::divergent, "multiple zeta series diverges for non-admissible index (" + k.str() + ")");
  if (k.depth() > kMaxMzvDepth)
    throw error(errc::unsupported, "mzv supports depth <= " + std::to_string(kMaxMzvDepth) + "; got (" + k.str() + ")");
  // iterated-integral word, letters from t = 0 upward: 1 0^{k_1-1} 1 0^{k_2-1} ...
  std::vector<int> word;
  for (int part : k.parts()) {
    word.push_back(1);
    word.insert(word.end(), static_cast<std::size_t>(part - 1), 0);
  }
  // I(0;w;1) = sum_j I(0; w_1..w_j; 1/2) I(1/2; w_{j+1}..w_n; 1), the second
  // factor equal to I(0; reversed and 0<->1 swapped suffix; 1/2).
  double sum = 0.0;
  const std::size_t n = word.size();
  for (std::size_t j = 0; j <= n; ++j) {
    std::vector<int> suffix;
    for (std::size_t i = n; i-- > j;) suffix.push_back(1 - word[i]);
    const auto head = detail::word_to_exponents(std::span<const int>(word.data(), j));
    const auto tail = detail::word_to_exponents(suffix);
    sum += detail::polylog_half(head) * detail::polylog_half(tail);
  }
  const auto words = static_cast<std::int64_t>(n + 1);
  return {sum, 64 * detail::kEps * sum, Method::holder, words * 110 * k.depth(), 0, std::nullopt};
}

namespace detail {

struct ShiftedSummand {
  std::vector<cplx> sigma;
  cplx operator()(std::span<const cplx> gaps) const {
    cplx n = 0.0, out = 1.0;
    for (std::size_t j = 0; j < gaps.size(); ++j) {
      n += gaps[j];
      out *= cpow(n, -sigma[j]);
    }
    return out;
  }
};

inline constexpr int kMaxSeriesDepth = 3;

}  // namespace detail

/// sum_{n_1 < ... < n_r} n_1^{-k_1} ... n_l^{-k_l-s} ... n_r^{-k_r}, l 1-based.
inline EvalResult mzv_shifted(const Index& k, int l, cplx s, const SeriesOptions& opt = {}) {
  const int r = k.depth();
  if (l < 1 || l > r) throw error(errc::invalid_input, "shift position l must lie in 1.." + std::to_string(r));
  if (r > detail::kMaxSeriesDepth)
    throw error(errc::unsupported, "shifted mzv supports depth <= 3; got (" + k.str() + ")");
  detail::ShiftedSummand f;
  for (int j = 0; j < r; ++j) f.sigma.push_back(static_cast<double>(k[static_cast<std::size_t>(j)]));
  f.sigma[static_cast<std::size_t>(l - 1)] += s;
  std::vector<cplx> decay(static_cast<std::size_t>(r));
  cplx suffix = 0.0;
  for (int j = r; j >= 1; --j) {
    suffix += f.sigma[static_cast<std::size_t>(j - 1)];
    const double need = r - j + 1;
    if (!(suffix.real() > need))
      throw error(errc::divergent, "shifted mzv diverges: Re(sigma_" + std::to_string(j) + " + ... + sigma_" +
                                       std::to_string(r) + ") = " + format_real(suffix.real()) + " must exceed " +
                                       format_real(need));
    decay[static_cast<std::size_t>(j - 1)] = suffix - need;
  }
  const auto res = lattice_sum_adaptive(r, f, std::span<const cplx>(decay), s.imag() == 0.0, opt.tol, opt.max_terms,
                                        LatticeOptions{.threads = opt.threads});
  cplx v = res.value;
  if (s.imag() == 0.0) v.imag(0.0);
  return {v, res.err_est, Method::nested_sum, res.evaluations, 0, std::nullopt};
}

}  // namespace ohno
