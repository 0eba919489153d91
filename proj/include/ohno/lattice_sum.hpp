#pragma once

// Nested summation over the positive integer lattice in gap variables.
//
//   S = sum_{m_1 >= 1} ... sum_{m_r >= 1} F(m_1, ..., m_r)
//
// F must extend analytically to Re m_j > 0 with algebraic decay.  Each
// variable is summed as
//
//   sum_{m >= 1} g(m) = sum_{m < M} g(m) + g(M)/2 + int_M^inf g(x) dx
//                       + i int_0^inf (g(M+it) - g(M-it)) / (e^{2 pi t} - 1) dt
//
// (Abel-Plana), where g is the inner sum as a function of the current gap.
// Both integrals use exp-sinh rules.  The tail integral is scaled by
// |m_1 + ... + m_{j-1}| + M, the distance from M to the nearest singularity of
// g, so the rule sees the same shape at every level.  Beyond the last node the
// integral is closed with a power law x^{-1-alpha}, alpha supplied per level by
// the caller from the known decay of the summand.

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <span>
#include <thread>
#include <vector>

#include "ohno/complex.hpp"
#include "ohno/double_exponential.hpp"

namespace ohno {

struct LatticeOptions {
  /// Explicit terms m = 1 .. direct-1 precede the Abel-Plana tail.
  int direct = 4;
  /// Upper end of the tail integral, in units of the level scale.
  double tail_span = 5e30;
  /// Worker threads for the outermost level (0: hardware concurrency).
  unsigned threads = 0;
};

struct LatticeValue {
  cplx value;
  /// Closed-form power-law remainders folded into value (absolute, weighted).
  double remainder = 0.0;
  /// Sum of |contributions|, for rounding bounds.
  double abs_total = 0.0;
  std::int64_t evaluations = 0;
};

namespace detail {

inline constexpr std::size_t kMaxLatticeDepth = 6;

struct LatticeRules {
  std::vector<de::Node> tail;     // y in (0, inf), x = M + L y
  std::vector<de::Node> plana;    // t in (0, inf)
  double t_tail_end;              // effective end of the tail rule in t
};

inline LatticeRules make_lattice_rules(double h, const LatticeOptions& opt) {
  LatticeRules rules;
  rules.tail = de::exp_sinh(h, de::exp_sinh_t(1e-16), de::exp_sinh_t(opt.tail_span));
  rules.plana = de::exp_sinh(h, de::exp_sinh_t(1e-12), de::exp_sinh_t(8.0));
  const double t_last = std::asinh(std::log(rules.tail.back().x) / (0.5 * pi));
  rules.t_tail_end = t_last + 0.5 * h;
  return rules;
}

template <class F>
class LatticeEngine {
 public:
  LatticeEngine(int depth, const F& summand, std::span<const cplx> decay, bool real_summand, double h,
                const LatticeOptions& opt)
      : depth_(depth), f_(summand), real_summand_(real_summand), opt_(opt), rules_(make_lattice_rules(h, opt)) {
    for (std::size_t i = 0; i < decay.size() && i < kMaxLatticeDepth; ++i) decay_[i] = decay[i];
  }

  LatticeValue run() {
    std::array<cplx, kMaxLatticeDepth> gaps{};
    return level(0, gaps, 0.0, true, /*outermost=*/true);
  }

 private:
  struct Sample {
    cplx z;
    cplx coef;
    bool imag_only;  // contribution is coef * Im g(z)
  };

  LatticeValue level(int j, std::array<cplx, kMaxLatticeDepth>& gaps, cplx n_prev, bool real_ctx, bool outermost) {
    const double M = opt_.direct;
    const double L = std::abs(n_prev) + M;
    const bool real_here = real_ctx && real_summand_;

    std::vector<Sample> samples;
    samples.reserve(rules_.tail.size() + 2 * rules_.plana.size() + static_cast<std::size_t>(opt_.direct) + 1);
    for (int m = 1; m < opt_.direct; ++m) samples.push_back({cplx(m), 1.0, false});
    samples.push_back({cplx(M), 0.5, false});
    for (const auto& nd : rules_.tail) samples.push_back({cplx(M + L * nd.x), L * nd.w, false});
    const std::size_t last_tail = samples.size() - 1;
    for (const auto& nd : rules_.plana) {
      const double damp = 1.0 / std::expm1(2.0 * pi * nd.x);
      if (damp == 0.0) continue;
      if (real_here) {
        // i (g(M+it) - conj g(M+it)) = -2 Im g(M+it)
        samples.push_back({cplx(M, nd.x), -2.0 * nd.w * damp, true});
      } else {
        samples.push_back({cplx(M, nd.x), cplx(0.0, nd.w * damp), false});
        samples.push_back({cplx(M, -nd.x), cplx(0.0, -nd.w * damp), false});
      }
    }

    std::vector<LatticeValue> vals(samples.size());
    auto eval = [&](std::size_t q, std::array<cplx, kMaxLatticeDepth>& g) {
      g[static_cast<std::size_t>(j)] = samples[q].z;
      if (j + 1 == depth_) {
        LatticeValue v;
        v.value = f_(std::span<const cplx>(g.data(), static_cast<std::size_t>(depth_)));
        v.abs_total = std::abs(v.value);
        v.evaluations = 1;
        vals[q] = v;
      } else {
        const bool real_next = real_ctx && samples[q].z.imag() == 0.0;
        vals[q] = level(j + 1, g, n_prev + samples[q].z, real_next, false);
      }
    };

    unsigned workers = opt_.threads ? opt_.threads : std::max(1u, std::thread::hardware_concurrency());
    if (outermost && workers > 1 && depth_ > 1) {
      std::atomic<std::size_t> next{0};
      std::vector<std::thread> pool;
      for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&, copy = gaps]() mutable {
          for (std::size_t q; (q = next.fetch_add(1)) < samples.size();) eval(q, copy);
        });
      }
      for (auto& t : pool) t.join();
    } else {
      for (std::size_t q = 0; q < samples.size(); ++q) eval(q, gaps);
    }

    // Combine in fixed sample order so the result is independent of scheduling.
    LatticeValue out;
    cplx acc = 0.0, comp = 0.0;  // Kahan on the complex accumulator
    auto add = [&](cplx term) {
      const cplx y = term - comp;
      const cplx t = acc + y;
      comp = (t - acc) - y;
      acc = t;
    };
    for (std::size_t q = 0; q < samples.size(); ++q) {
      const auto& smp = samples[q];
      const LatticeValue& v = vals[q];
      const cplx term = smp.imag_only ? smp.coef * v.value.imag() : smp.coef * v.value;
      add(term);
      const double cabs = std::abs(smp.coef);
      out.remainder += cabs * v.remainder;
      out.abs_total += cabs * v.abs_total;
      out.evaluations += v.evaluations;
    }

    // Power-law closure of the tail integral beyond the last node.
    const cplx alpha = decay_[static_cast<std::size_t>(j)];
    if (alpha.real() > 0.0) {
      const double x_last = samples[last_tail].z.real();
      const double x_end = M + L * std::exp(0.5 * pi * std::sinh(rules_.t_tail_end));
      const cplx g_last = vals[last_tail].value;
      const cplx rem = g_last * x_last * cpow(cplx(x_last / x_end), alpha) / alpha;
      if (is_finite(rem)) {
        add(rem);
        out.remainder += std::abs(rem);
      }
    }
    out.value = acc;
    return out;
  }

  int depth_;
  const F& f_;
  bool real_summand_;
  LatticeOptions opt_;
  LatticeRules rules_;
  std::array<cplx, kMaxLatticeDepth> decay_{};
};

}  // namespace detail

/// One pass of the nested Abel-Plana summation at DE step h.
/// `decay[j]` is the exponent alpha with g_j(x) ~ x^{-1-alpha} at level j.
template <class F>
LatticeValue lattice_sum(int depth, const F& summand, std::span<const cplx> decay, bool real_summand, double h,
                         const LatticeOptions& opt = {}) {
  detail::LatticeEngine<F> engine(depth, summand, decay, real_summand, h, opt);
  return engine.run();
}

struct AdaptiveLatticeResult {
  cplx value;
  double err_est;
  double h;
  std::int64_t evaluations;  // over all passes
  bool converged;
};

/// Halve the DE step until successive passes agree to `tol` or the next pass
/// would exceed `max_evals` summand evaluations.  Returns the pass with the
/// smallest error estimate, so a larger budget never yields a larger estimate.
template <class F>
AdaptiveLatticeResult lattice_sum_adaptive(int depth, const F& summand, std::span<const cplx> decay,
                                           bool real_summand, double tol, std::int64_t max_evals,
                                           const LatticeOptions& opt = {}) {
  constexpr double eps = std::numeric_limits<double>::epsilon();
  double h = 0.5;
  LatticeValue prev = lattice_sum(depth, summand, decay, real_summand, h, opt);
  std::int64_t used = prev.evaluations;
  AdaptiveLatticeResult best{prev.value, std::numeric_limits<double>::infinity(), h, used, false};
  while (true) {
    // passes cost roughly 2^depth times the previous one
    const std::int64_t next_cost = prev.evaluations << depth;
    if (used + next_cost > max_evals) break;
    h *= 0.5;
    LatticeValue cur = lattice_sum(depth, summand, decay, real_summand, h, opt);
    used += cur.evaluations;
    const double err = std::abs(cur.value - prev.value) + 0.01 * cur.remainder + 64.0 * eps * cur.abs_total;
    if (err < best.err_est) best = {cur.value, err, h, used, false};
    best.evaluations = used;
    prev = cur;
    if (err <= tol) {
      best.converged = true;
      break;
    }
    if (h < 1.0 / 64) break;
  }
  best.evaluations = used;
  if (!std::isfinite(best.err_est)) {
    // no refinement fit the budget: only the coarse pass exists
    best.err_est = std::abs(prev.value) + prev.remainder;
  }
  return best;
}

}  // namespace ohno
