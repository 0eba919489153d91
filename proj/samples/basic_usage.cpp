// Evaluate an Ohno function three ways and check the interpolated duality.

#include <cstdio>

#include "ohno/ohno.hpp"

int main() {
  using namespace ohno;

  const Index k = parse_index("2,3");
  const Index kd = dual(k);
  const RegionInfo region = abscissa(k);
  std::printf("k = (%s), dual = (%s), abscissa = %g\n", k.str().c_str(), kd.str().c_str(), region.abscissa);

  // Re(s) = -0.5 lies in the series domain, the Mellin strip and the integral domain.
  const cplx s = -0.5;
  const EvalResult by_series = series_eval(k, s);
  const EvalResult by_mellin = mellin_eval(k, s);
  const EvalResult by_integral = integral_eval(k, s);
  std::printf("series   %.15f  +/- %.1e\n", by_series.value.real(), by_series.err_est);
  std::printf("mellin   %.15f  +/- %.1e\n", by_mellin.value.real(), by_mellin.err_est);
  std::printf("integral %.15f  +/- %.1e\n", by_integral.value.real(), by_integral.err_est);

  const RelationReport r = verify_ohno(k, 0.5);
  std::printf("I_(%s)(0.5) = %.12f, I_(%s)(0.5) = %.12f, %s\n", k.str().c_str(), r.lhs.real(), kd.str().c_str(),
              r.rhs.real(), r.pass ? "pass" : "FAIL");

  // At a nonnegative integer the function is a sum of multiple zeta values.
  const EvalResult at_one = ohno_sum_integer(Index{1, 1, 2}, 1);
  std::printf("I_(1,1,2)(1) = %.15f = zeta(5) = %.15f\n", at_one.value.real(), riemann_zeta(5.0).value.real());
  return 0;
}
