#pragma once

// Checkable numerical instances of the identities satisfied by I_k(s), and the
// batch suites that drive them.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "ohno/complex.hpp"
#include "ohno/error.hpp"
#include "ohno/eval_result.hpp"
#include "ohno/index.hpp"
#include "ohno/integral.hpp"
#include "ohno/options.hpp"
#include "ohno/series.hpp"
#include "ohno/zeta.hpp"

namespace ohno {

enum class RelationId {
  ohno_integer,
  ohno_interpolated,
  sum_formula_T,
  linear_relation,
  zero_at_negative_integer,
  hypothesis_check,
  lemma_integral,
  change_of_variables,
  cross_method,
};

inline const char* to_string(RelationId id) {
  switch (id) {
    case RelationId::ohno_integer: return "ohno_integer";
    case RelationId::ohno_interpolated: return "ohno_interpolated";
    case RelationId::sum_formula_T: return "sum_formula_T";
    case RelationId::linear_relation: return "linear_relation";
    case RelationId::zero_at_negative_integer: return "zero_at_negative_integer";
    case RelationId::hypothesis_check: return "hypothesis_check";
    case RelationId::lemma_integral: return "lemma_integral";
    case RelationId::change_of_variables: return "change_of_variables";
    case RelationId::cross_method: return "cross_method";
  }
  return "unknown";
}

/// Input parameters, in insertion order, already rendered as text.
using ReportInputs = std::vector<std::pair<std::string, std::string>>;

struct RelationReport {
  RelationId relation_id;
  ReportInputs inputs;
  cplx lhs;
  cplx rhs;
  double lhs_err = 0.0;
  double rhs_err = 0.0;
  double abs_diff = 0.0;
  double tolerance = 0.0;
  bool pass = false;

  /// Recompute pass from the other fields.
  bool consistent() const { return pass == (abs_diff <= tolerance + lhs_err + rhs_err); }
};

inline RelationReport make_report(RelationId id, ReportInputs inputs, cplx lhs, double lhs_err, cplx rhs,
                                  double rhs_err, double tol) {
  RelationReport r{id, std::move(inputs), lhs, rhs, lhs_err, rhs_err, std::abs(lhs - rhs), tol, false};
  r.pass = r.abs_diff <= r.tolerance + r.lhs_err + r.rhs_err;
  return r;
}

inline constexpr double kMzvTolerance = 1e-7;
inline constexpr double kCrossTolerance = 1e-4;

enum class EvalMethod { automatic, series, integral, mellin };

inline const char* to_string(EvalMethod m) {
  switch (m) {
    case EvalMethod::automatic: return "auto";
    case EvalMethod::series: return "series";
    case EvalMethod::integral: return "integral";
    case EvalMethod::mellin: return "mellin";
  }
  return "unknown";
}

inline EvalMethod parse_method(std::string_view text) {
  if (text == "auto") return EvalMethod::automatic;
  if (text == "series") return EvalMethod::series;
  if (text == "integral") return EvalMethod::integral;
  if (text == "mellin") return EvalMethod::mellin;
  throw error(errc::invalid_input, "unknown method '" + std::string(text) + "' (expected auto, series, integral, mellin)");
}

struct EngineOptions {
  SeriesOptions series;
  QuadratureOptions quadrature;
};

/// Representation chosen by "auto": series if Re(s) > abscissa + margin, else
/// the integral if Re(s) > -1 and d <= 3, else Mellin inside its strip.
inline EvalMethod resolve_method(const Index& k, cplx s, EvalMethod m, const EngineOptions& opt) {
  if (m != EvalMethod::automatic) return m;
  const RegionInfo region = abscissa(k);
  if (s.real() > region.abscissa + opt.series.margin && k.depth() <= detail::kMaxSeriesDepth) return EvalMethod::series;
  if (s.real() > -1.0 && k.height() <= 3) return EvalMethod::integral;
  const double lower = std::max(region.abscissa, -static_cast<double>(k.depth()));
  if (s.real() > lower && s.real() < 0.0 && k.depth() <= detail::kMaxSeriesDepth) return EvalMethod::mellin;
  throw error(errc::outside_region,
              "no representation of I_(" + k.str() + ")(s) converges at s = " + format_complex(s) +
                  " (series needs Re(s) > " + format_real(region.abscissa + opt.series.margin) +
                  ", integral needs Re(s) > -1, Mellin needs " + format_real(lower) + " < Re(s) < 0)",
              region.abscissa);
}

/// I_k(s) by the requested representation.
inline EvalResult evaluate(const Index& k, cplx s, EvalMethod m, const EngineOptions& opt = {}) {
  require_admissible(k);
  switch (resolve_method(k, s, m, opt)) {
    case EvalMethod::series: return series_eval(k, s, opt.series);
    case EvalMethod::integral: return integral_eval(k, s, opt.quadrature);
    case EvalMethod::mellin: return mellin_eval(k, s, opt.series);
    case EvalMethod::automatic: break;
  }
  throw error(errc::invalid_input, "unresolved method");
}

namespace detail {

template <class Fn>
EvalResult with_side(const char* side, Fn&& fn) {
  try {
    return fn();
  } catch (const error& e) {
    throw error(e.code(), std::string(side) + ": " + e.what(), e.abscissa());
  }
}

inline std::string int_list(std::span<const int> v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + std::to_string(v[i]);
  return out;
}

}  // namespace detail

inline RelationReport verify_ohno_integer(const Index& k, int m, double tol = kMzvTolerance) {
  const Index kd = dual(k);
  const EvalResult lhs = detail::with_side("lhs", [&] { return ohno_sum_integer(k, m); });
  const EvalResult rhs = detail::with_side("rhs", [&] { return ohno_sum_integer(kd, m); });
  return make_report(RelationId::ohno_integer, {{"k", k.str()}, {"dual", kd.str()}, {"m", std::to_string(m)}},
                     lhs.value, lhs.err_est, rhs.value, rhs.err_est, tol);
}

inline RelationReport verify_ohno(const Index& k, cplx s, EvalMethod method = EvalMethod::automatic,
                                  double tol = kCrossTolerance, const EngineOptions& opt = {}) {
  const Index kd = dual(k);
  const EvalResult lhs = detail::with_side("lhs", [&] { return evaluate(k, s, method, opt); });
  const EvalResult rhs = detail::with_side("rhs", [&] { return evaluate(kd, s, method, opt); });
  return make_report(RelationId::ohno_interpolated,
                     {{"k", k.str()},
                      {"dual", kd.str()},
                      {"s", format_complex(s)},
                      {"lhs_method", to_string(lhs.method)},
                      {"rhs_method", to_string(rhs.method)}},
                     lhs.value, lhs.err_est, rhs.value, rhs.err_est, tol);
}

/// sum_{i<a} binom(s+i, i) T^i zeta(s+a+1)
inline EvalResult sum_formula_rhs(int a, double T, cplx s) {
  cplx poly = 0.0;
  double Ti = 1.0;
  for (int i = 0; i < a; ++i) {
    poly += gen_binomial(s, i) * Ti;
    Ti *= T;
  }
  const EvalResult z = riemann_zeta(s + static_cast<double>(a) + 1.0);
  return {poly * z.value, std::abs(poly) * z.err_est + 1e-15 * std::abs(poly * z.value), Method::exact, 0, 0,
          std::nullopt};
}

inline RelationReport verify_sum_formula(int a, double T, cplx s, double tol = kCrossTolerance,
                                         const QuadratureOptions& opt = {}) {
  const EvalResult lhs = detail::with_side("lhs", [&] { return t_integral_eval(a, T, s, opt); });
  const EvalResult rhs = detail::with_side("rhs", [&] { return sum_formula_rhs(a, T, s); });
  return make_report(RelationId::sum_formula_T,
                     {{"a", std::to_string(a)}, {"T", format_real(T)}, {"s", format_complex(s)}}, lhs.value,
                     lhs.err_est, rhs.value, rhs.err_est, tol);
}

struct HypothesisWitness {
  int m;
  int j;
  std::vector<int> e;
  int value;  // r - 2j + 2 - sum_{i>=j} (k_i + e_i), maximized over j and e
};

struct HypothesisResult {
  bool pass;
  /// The tightest case: largest value + m over all m.
  HypothesisWitness worst;
  /// Maximizer for each m = 0..r-1.
  std::vector<HypothesisWitness> per_m;
};

/// Checks max_{j, e} r - 2j + 2 - sum_{i>=j}(k_i + e_i) < -m for m = 0..r-1,
/// e ranging over 0/1 vectors with |e| = m and e_l = 0.
inline HypothesisResult hypothesis_check(const Index& k, int l) {
  require_admissible(k);
  const int r = k.depth();
  if (l < 1 || l > r) throw error(errc::invalid_input, "position l must lie in 1.." + std::to_string(r));
  HypothesisResult out{true, {0, 0, {}, 0}, {}};
  bool have_worst = false;
  for (int m = 0; m < r; ++m) {
    std::optional<HypothesisWitness> best;
    for (const auto& e : compositions(m, r, 1, {l})) {
      int suffix = 0;
      for (int j = r; j >= 1; --j) {
        suffix += k[static_cast<std::size_t>(j - 1)] + e[static_cast<std::size_t>(j - 1)];
        const int v = r - 2 * j + 2 - suffix;
        if (!best || v > best->value) best = HypothesisWitness{m, j, e, v};
      }
    }
    if (!best) continue;  // no admissible e for this m
    out.per_m.push_back(*best);
    if (!(best->value < -m)) out.pass = false;
    if (!have_worst || best->value + m > out.worst.value + out.worst.m) {
      out.worst = *best;
      have_worst = true;
    }
  }
  return out;
}

/// Hypothesis as a report: lhs = max(0, value + m + 1) over the worst case
/// (0 iff the strict integer inequality holds), rhs = 0, tolerance 0.
inline RelationReport hypothesis_report(const Index& k, int l) {
  const HypothesisResult h = hypothesis_check(k, l);
  const int violation = std::max(0, h.worst.value + h.worst.m + 1);
  return make_report(RelationId::hypothesis_check,
                     {{"k", k.str()},
                      {"l", std::to_string(l)},
                      {"worst_m", std::to_string(h.worst.m)},
                      {"worst_j", std::to_string(h.worst.j)},
                      {"worst_e", detail::int_list(h.worst.e)},
                      {"worst_value", std::to_string(h.worst.value)}},
                     violation, 0.0, 0.0, 0.0, 0.0);
}

inline RelationReport verify_linear_relation(const Index& k, int l, cplx s, double tol = kCrossTolerance,
                                             const SeriesOptions& opt = {}) {
  const HypothesisResult h = hypothesis_check(k, l);
  if (!h.pass)
    throw error(errc::outside_region, "linear relation hypothesis fails for (" + k.str() + "), l = " +
                                          std::to_string(l) + ": at m = " + std::to_string(h.worst.m) + ", j = " +
                                          std::to_string(h.worst.j) + ", e = (" + detail::int_list(h.worst.e) +
                                          ") the value " + std::to_string(h.worst.value) + " is not < " +
                                          std::to_string(-h.worst.m));
  const int r = k.depth();
  compensated_csum acc;
  double lhs_err = 0.0;
  std::string terms;
  for (int j = 0; j < r; ++j) {
    for (const auto& e : compositions(j, r, 1, {l})) {
      const Index ke = k.plus(e);
      const cplx sj = s - static_cast<double>(j);
      const EvalResult v = detail::with_side("lhs", [&] { return series_eval(ke, sj, opt); });
      acc += (j % 2 == 0 ? 1.0 : -1.0) * v.value;
      lhs_err += v.err_est;
      terms += (terms.empty() ? "" : (j % 2 == 0 ? " + " : " - ")) + std::string("I(") + ke.str() + ")(" +
               format_complex(sj) + ")";
    }
  }
  const EvalResult rhs = detail::with_side("rhs", [&] { return mzv_shifted(k, l, s, opt); });
  return make_report(RelationId::linear_relation,
                     {{"k", k.str()}, {"l", std::to_string(l)}, {"s", format_complex(s)}, {"lhs_terms", terms}},
                     acc.value(), lhs_err, rhs.value, rhs.err_est, tol);
}

inline RelationReport verify_zero(const Index& k, int n, double tol = kCrossTolerance, const SeriesOptions& opt = {}) {
  const RegionInfo region = abscissa(k);
  if (!(n < 0 && n > region.abscissa))
    throw error(errc::outside_region,
                "forced zero needs abscissa < n < 0, i.e. " + format_real(region.abscissa) + " < " +
                    std::to_string(n) + " < 0",
                region.abscissa);
  const EvalResult lhs = detail::with_side("lhs", [&] { return series_eval(k, static_cast<double>(n), opt); });
  return make_report(RelationId::zero_at_negative_integer, {{"k", k.str()}, {"n", std::to_string(n)}}, lhs.value,
                     lhs.err_est, 0.0, 0.0, tol);
}

inline RelationReport verify_cross_method(const Index& k, cplx s, EvalMethod a, EvalMethod b,
                                          double tol = kCrossTolerance, const EngineOptions& opt = {}) {
  const EvalResult lhs = detail::with_side("lhs", [&] { return evaluate(k, s, a, opt); });
  const EvalResult rhs = detail::with_side("rhs", [&] { return evaluate(k, s, b, opt); });
  return make_report(RelationId::cross_method,
                     {{"k", k.str()},
                      {"s", format_complex(s)},
                      {"lhs_method", to_string(lhs.method)},
                      {"rhs_method", to_string(rhs.method)}},
                     lhs.value, lhs.err_est, rhs.value, rhs.err_est, tol);
}

inline RelationReport lemma_report(std::span<const double> c, cplx s, double tol = 1e-5,
                                   const QuadratureOptions& opt = {}) {
  const ExpIntegralCheck chk = exponential_integral_check(c, s, opt);
  std::string cs;
  for (std::size_t i = 0; i < c.size(); ++i) cs += (i ? "," : "") + format_real(c[i]);
  return make_report(RelationId::lemma_integral, {{"c", cs}, {"s", format_complex(s)}}, chk.lhs, 0.0, chk.rhs,
                     chk.rhs_err, tol);
}

/// Three reports per point: density ratio (tol 1e-6), log-ratio identity
/// (tol 1e-12), and monotonicity of u (violation count, tol 0).
inline std::vector<RelationReport> ulanskii_reports(std::span<const double> t) {
  const UlanskiiCheck chk = ulanskii_check(t);
  std::string ts;
  for (std::size_t i = 0; i < t.size(); ++i) ts += (i ? "," : "") + format_real(t[i]);
  std::vector<RelationReport> out;
  out.push_back(make_report(RelationId::change_of_variables, {{"t", ts}, {"property", "measure"}},
                            chk.jacobian_ratio, 0.0, 1.0, 0.0, 1e-6));
  out.push_back(make_report(RelationId::change_of_variables, {{"t", ts}, {"property", "log_ratio"}},
                            chk.log_ratio_diff, 0.0, 0.0, 0.0, 1e-12));
  out.push_back(make_report(RelationId::change_of_variables, {{"t", ts}, {"property", "monotone"}},
                            chk.monotone ? 0.0 : 1.0, 0.0, 0.0, 0.0, 0.0));
  return out;
}

// ---------------------------------------------------------------------------
// Suites

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"ohno-integer", "ohno-interpolated", "sum-formula", "linear",
                                                 "zeros",        "lemma31",           "ulanskii",    "cross-method"};
  return names;
}

struct SuiteOptions {
  EngineOptions engine;
  std::uint64_t seed = 20240917;
};

namespace detail {

inline const std::vector<Index>& interpolated_indices() {
  static const std::vector<Index> ks = {Index{1, 2}, Index{2, 3}, Index{1, 1, 2}, Index{2, 2}};
  return ks;
}
inline const std::vector<double>& interpolated_points() {
  static const std::vector<double> ss = {0.0, 0.5, 1.0, -0.25};
  return ss;
}

/// Uniform draws from a seeded engine without distribution-object variance across
/// standard libraries.
class Draw {
 public:
  explicit Draw(std::uint64_t seed) : rng_(seed) {}
  double uniform(double lo, double hi) { return lo + (hi - lo) * (static_cast<double>(rng_() >> 11) * 0x1p-53); }
  int integer(int lo, int hi) { return lo + static_cast<int>(rng_() % static_cast<std::uint64_t>(hi - lo + 1)); }

 private:
  std::mt19937_64 rng_;
};

}  // namespace detail

/// Random (c, s) draws for the exponential-integral identity; r in {1,2,3},
/// c_i in [0.2, 5] separated by at least 0.05, Re(s) in (-0.5, 2), every other draw complex.
struct LemmaDraw {
  std::vector<double> c;
  cplx s;
};
inline std::vector<LemmaDraw> lemma_draws(std::uint64_t seed, int count = 50) {
  detail::Draw draw(seed);
  std::vector<LemmaDraw> out;
  for (int i = 0; i < count; ++i) {
    const int r = 1 + i % 3;
    std::vector<double> c;
    while (static_cast<int>(c.size()) < r) {
      const double v = draw.uniform(0.2, 5.0);
      if (std::all_of(c.begin(), c.end(), [&](double x) { return std::fabs(x - v) >= 0.05; })) c.push_back(v);
    }
    const double re = draw.uniform(-0.49, 1.99);
    const double im = i % 2 ? draw.uniform(-1.0, 1.0) : 0.0;
    out.push_back({c, cplx(re, im)});
  }
  return out;
}

/// Random strictly increasing points of (0,1)^{2d}: sorted uniforms.
inline std::vector<std::vector<double>> simplex_draws(std::uint64_t seed, int d, int count = 100) {
  detail::Draw draw(seed ^ (0x9e3779b97f4a7c15ull * static_cast<std::uint64_t>(d)));
  std::vector<std::vector<double>> out;
  while (static_cast<int>(out.size()) < count) {
    std::vector<double> t(static_cast<std::size_t>(2 * d));
    for (auto& x : t) x = draw.uniform(0.0, 1.0);
    std::sort(t.begin(), t.end());
    bool ok = t.front() > 0.0 && t.back() < 1.0;
    for (std::size_t i = 1; i < t.size(); ++i) ok = ok && t[i] > t[i - 1];
    if (ok) out.push_back(std::move(t));  // ties are redrawn
  }
  return out;
}

/// Runs a named suite; reports are ordered by the suite's parameter grid.
inline std::vector<RelationReport> run_suite(const std::string& name, const SuiteOptions& opt = {}) {
  std::vector<RelationReport> out;
  const EngineOptions& eng = opt.engine;
  if (name == "ohno-integer") {
    for (int w = 2; w <= 5; ++w)
      for (const Index& k : admissible_indices(w))
        for (int m = 0; m <= 2; ++m) out.push_back(verify_ohno_integer(k, m));
  } else if (name == "ohno-interpolated") {
    for (const Index& k : detail::interpolated_indices())
      for (double s : detail::interpolated_points()) out.push_back(verify_ohno(k, s, EvalMethod::automatic, kCrossTolerance, eng));
  } else if (name == "sum-formula") {
    for (int a = 1; a <= 3; ++a)
      for (double T : {0.0, 0.5, 1.0})
        for (double s : detail::interpolated_points()) out.push_back(verify_sum_formula(a, T, s, kCrossTolerance, eng.quadrature));
  } else if (name == "linear") {
    for (int l : {2, 1}) {
      out.push_back(hypothesis_report(Index{2, 3}, l));
      out.push_back(verify_linear_relation(Index{2, 3}, l, -0.5, kCrossTolerance, eng.series));
    }
  } else if (name == "zeros") {
    out.push_back(verify_zero(Index{2, 3}, -1, kCrossTolerance, eng.series));
    out.push_back(verify_zero(Index{2, 3}, -2, kCrossTolerance, eng.series));
    out.push_back(verify_zero(Index{1, 2, 2}, -1, kCrossTolerance, eng.series));
  } else if (name == "lemma31") {
    for (const auto& dr : lemma_draws(opt.seed)) out.push_back(lemma_report(dr.c, dr.s, 1e-5, eng.quadrature));
  } else if (name == "ulanskii") {
    for (int d : {1, 2})
      for (const auto& t : simplex_draws(opt.seed, d)) {
        auto reps = ulanskii_reports(t);
        out.insert(out.end(), reps.begin(), reps.end());
      }
  } else if (name == "cross-method") {
    // series vs integral where both converge
    for (const Index& k : detail::interpolated_indices())
      for (double s : detail::interpolated_points())
        if (s > std::max(-1.0, abscissa(k).abscissa) + kDefaultMargin)
          out.push_back(verify_cross_method(k, s, EvalMethod::series, EvalMethod::integral, kCrossTolerance, eng));
    // series vs Mellin on the strip
    for (const Index& k : {Index{2, 3}, Index{1, 2, 2}, Index{3, 3}})
      for (double s : {-0.5, -0.25, -1.5}) {
        const double lower = std::max(abscissa(k).abscissa, -static_cast<double>(k.depth()));
        if (s > lower + kDefaultMargin && s < 0.0)
          out.push_back(verify_cross_method(k, s, EvalMethod::series, EvalMethod::mellin, kCrossTolerance, eng));
      }
  } else {
    throw error(errc::invalid_input, "unknown suite '" + name + "'");
  }
  return out;
}

}  // namespace ohno
