#pragma once

#include <cstdint>

namespace ohno {

inline constexpr double kDefaultMargin = 0.05;

/// Effort and accuracy controls for the nested-series engines.
struct SeriesOptions {
  /// Target absolute error; refinement stops once err_est <= tol.
  double tol = 1e-10;
  /// Budget of summand evaluations over all refinement passes.
  std::int64_t max_terms = 4'000'000;
  /// Required distance of Re(s) from the convergence abscissa.
  double margin = kDefaultMargin;
  /// Worker threads for the outermost summation level (0: all cores).
  unsigned threads = 0;
};

/// Controls for the iterated-integral engines.
struct QuadratureOptions {
  /// Target absolute error for the tensor rules.
  double tol = 1e-10;
  /// Double-exponential refinement level: step h = 2^-nodes on the finest pass.
  int nodes = 5;
  /// Budget of integrand evaluations for the tensor rules over all passes.
  std::int64_t max_evals = 20'000'000;
  /// Points per randomized QMC replicate.
  std::int64_t qmc_points = 1 << 16;
  /// Base seed for QMC scramblings.
  std::uint64_t seed = 20240917;
  /// Force RQMC even where a tensor rule is available.
  bool force_qmc = false;
  unsigned threads = 0;
};

}  // namespace ohno
