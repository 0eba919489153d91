// Acceptance criteria: one PASS/FAIL line per criterion.
// Usage: acceptance [criterion number]; with no argument all criteria run.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <string>
#include <vector>

#include "ohno/ohno.hpp"

using namespace ohno;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

struct Criterion {
  int id;
  const char* title;
  double budget_s;
  std::function<Outcome()> check;
};

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

Outcome duality_at_integers() {
  double worst = 0.0;
  int count = 0;
  for (int w = 2; w <= 5; ++w)
    for (const Index& k : admissible_indices(w)) {
      if (k.depth() > 3) continue;
      for (int m = 0; m <= 2; ++m) {
        const RelationReport r = verify_ohno_integer(k, m, 1e-7);
        worst = std::max(worst, r.abs_diff);
        ++count;
      }
    }
  return {worst <= 1e-7, std::to_string(count) + " instances, max |diff| " + fmt(worst)};
}

Outcome interpolated_duality() {
  double worst = 0.0;
  int count = 0;
  for (const Index& k : {Index{1, 2}, Index{2, 3}, Index{1, 1, 2}, Index{2, 2}})
    for (double s : {0.0, 0.5, 1.0, -0.25}) {
      const RelationReport r = verify_ohno(k, s, EvalMethod::automatic, 1e-4);
      worst = std::max(worst, r.abs_diff);
      ++count;
    }
  return {worst <= 1e-4, std::to_string(count) + " instances, max |diff| " + fmt(worst)};
}

Outcome sum_formula() {
  double worst = 0.0;
  for (int a = 1; a <= 3; ++a)
    for (double T : {0.0, 0.5, 1.0})
      for (double s : {0.0, 0.5, 1.0, -0.25}) worst = std::max(worst, verify_sum_formula(a, T, s, 1e-4).abs_diff);
  // at s = 1, T = 0 the closed form must also equal the integer Ohno sum
  const double at_int = std::abs(sum_formula_rhs(3, 0.0, 1.0).value - ohno_sum_integer(Index{1, 1, 2}, 1).value);
  return {worst <= 1e-4 && at_int <= 1e-7, "36 instances, max |diff| " + fmt(worst) + ", integer check " + fmt(at_int)};
}

Outcome forced_zeros() {
  std::string detail;
  bool ok = true;
  for (auto [k, n] : {std::pair{Index{2, 3}, -1}, {Index{2, 3}, -2}, {Index{1, 2, 2}, -1}}) {
    const EvalResult v = series_eval(k, static_cast<double>(n));
    const bool pass = std::abs(v.value) <= 1e-4;
    ok = ok && pass;
    if (!detail.empty()) detail += ", ";
    detail += "|I_(" + k.str() + ")(" + std::to_string(n) + ")| = " + fmt(std::abs(v.value)) + (pass ? "" : " (exceeds 1e-4)");
  }
  return {ok, detail};
}

Outcome linear_relations() {
  const RelationReport a = verify_linear_relation(Index{2, 3}, 2, -0.5, 1e-4);
  const RelationReport b = verify_linear_relation(Index{2, 3}, 1, -0.5, 1e-4);
  return {a.abs_diff <= 1e-4 && b.abs_diff <= 1e-4,
          "l=2 |diff| " + fmt(a.abs_diff) + ", l=1 |diff| " + fmt(b.abs_diff)};
}

Outcome cross_representation() {
  const auto reports = run_suite("cross-method");
  std::size_t passed = 0;
  double worst = 0.0;
  for (const auto& r : reports) {
    passed += r.abs_diff <= r.lhs_err + r.rhs_err + 1e-4 ? 1 : 0;
    worst = std::max(worst, r.abs_diff);
  }
  return {passed == reports.size() && !reports.empty(),
          std::to_string(passed) + "/" + std::to_string(reports.size()) + " agree, max |diff| " + fmt(worst)};
}

Outcome lemma_identity() {
  double worst = 0.0;
  const auto draws = lemma_draws(SuiteOptions{}.seed);
  for (const auto& d : draws) worst = std::max(worst, exponential_integral_check(d.c, d.s).diff);
  return {worst <= 1e-5 && draws.size() == 50, std::to_string(draws.size()) + " draws, max |diff| " + fmt(worst)};
}

Outcome change_of_variables() {
  double worst_jac = 0.0, worst_log = 0.0;
  int non_monotone = 0, count = 0;
  for (int d : {1, 2})
    for (const auto& t : simplex_draws(SuiteOptions{}.seed, d)) {
      const UlanskiiCheck c = ulanskii_check(t);
      worst_jac = std::max(worst_jac, std::abs(c.jacobian_ratio - 1.0));
      worst_log = std::max(worst_log, c.log_ratio_diff);
      non_monotone += c.monotone ? 0 : 1;
      ++count;
    }
  return {worst_jac <= 1e-6 && worst_log <= 1e-12 && non_monotone == 0,
          std::to_string(count) + " points, max |ratio-1| " + fmt(worst_jac) + ", max log diff " + fmt(worst_log) +
              ", non-monotone " + std::to_string(non_monotone)};
}

Outcome abscissa_sanity() {
  const Index k{2, 3};
  const int N = 200;
  const double conv = std::abs(series_partial_sum(k, -2.9, 2 * N).value - series_partial_sum(k, -2.9, N).value);
  const double div = std::abs(series_partial_sum(k, -3.1, 2 * N).value - series_partial_sum(k, -3.1, N).value);
  return {conv < 1e-3 && div >= 1e-3,
          "s=-2.9: |S(400)-S(200)| = " + fmt(conv) + " (needs < 1e-3); s=-3.1: " + fmt(div) + " (needs >= 1e-3)"};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> criteria = {
      {1, "duality at integers", 60, duality_at_integers},
      {2, "interpolated duality", 120, interpolated_duality},
      {3, "closed-form sum formula", 60, sum_formula},
      {4, "forced zeros at negative integers", 30, forced_zeros},
      {5, "linear relations", 60, linear_relations},
      {6, "cross-representation consistency", 120, cross_representation},
      {7, "exponential-integral identity", 60, lemma_identity},
      {8, "change-of-variables properties", 30, change_of_variables},
      {9, "abscissa sanity by partial sums", 60, abscissa_sanity},
  };
  const int only = argc > 1 ? std::atoi(argv[1]) : 0;
  bool all = true;
  for (const auto& c : criteria) {
    if (only && c.id != only) continue;
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.check();
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = elapsed <= c.budget_s;
    const bool pass = o.pass && in_time;
    all = all && pass;
    std::printf("[%s] criterion %d: %s: %s; %.1fs of %.0fs budget\n", pass ? "PASS" : "FAIL", c.id, c.title,
                o.detail.c_str(), elapsed, c.budget_s);
    std::fflush(stdout);
  }
  return all ? 0 : 1;
}
