#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "ohno/double_exponential.hpp"
#include "ohno/integral.hpp"
#include "ohno/series.hpp"
#include "ohno/sobol.hpp"
#include "ohno/zeta.hpp"

using namespace ohno;

TEST(DoubleExponential, ExpSinhMoments) {
  const auto nodes = de::exp_sinh(1.0 / 16, -4.5, 4.5);
  double one = 0.0, half = 0.0;
  for (const auto& n : nodes) {
    one += n.w * std::exp(-n.x);
    half += n.w * std::exp(-n.x) / std::sqrt(n.x);
  }
  EXPECT_NEAR(one, 1.0, 1e-13);
  EXPECT_NEAR(half, std::sqrt(pi), 1e-12);
}

TEST(DoubleExponential, TanhSinhEndpointSingularity) {
  double sum = 0.0;
  for (const auto& n : de::tanh_sinh(1.0 / 32, 3.2)) sum += n.w * std::log(n.x);
  EXPECT_NEAR(sum, -1.0, 1e-12);
}

TEST(Sobol, FirstDimensionIsVanDerCorput) {
  Sobol sob(2);
  std::vector<double> xs;
  sob.generate(4, [&](std::span<const double> u) { xs.push_back(u[0]); });
  const double half_ulp = 0.5 * 0x1p-32;
  EXPECT_DOUBLE_EQ(xs[0], half_ulp);
  EXPECT_DOUBLE_EQ(xs[1], 0.5 + half_ulp);
  EXPECT_DOUBLE_EQ(xs[2], 0.75 + half_ulp);
  EXPECT_DOUBLE_EQ(xs[3], 0.25 + half_ulp);
}

TEST(Sobol, ShiftedPointsIntegrateSmoothFunction) {
  for (int dim = 1; dim <= Sobol::kMaxDim; ++dim) {
    Sobol sob(dim);
    sob.shift(replicate_seed(7, static_cast<std::uint64_t>(dim)));
    double sum = 0.0;
    const std::int64_t n = 1 << 14;
    sob.generate(n, [&](std::span<const double> u) {
      double p = 1.0;
      for (double v : u) p *= 2.0 * v;  // integral 1 over the cube
      sum += p;
    });
    EXPECT_NEAR(sum / n, 1.0, 2e-3) << dim;
  }
}

TEST(Sobol, ReplicateSeedDependsOnlyOnInputs) {
  EXPECT_EQ(replicate_seed(1, 2), replicate_seed(1, 2));
  EXPECT_NE(replicate_seed(1, 2), replicate_seed(1, 3));
  EXPECT_NE(replicate_seed(1, 2), replicate_seed(2, 2));
}

// d = 1: the integral representation of (1,2) is zeta(s+3) via duality.
TEST(Integral, DepthOneOracle) {
  for (cplx s : {cplx(0.0), cplx(0.5), cplx(-0.5), cplx(0.25, 0.5)}) {
    const EvalResult r = integral_eval(Index{1, 2}, s);
    const cplx want = riemann_zeta(s + 3.0).value;
    EXPECT_LT(std::abs(r.value - want), 1e-7) << format_complex(s);
    EXPECT_LE(std::abs(r.value - want), r.err_est + 1e-12) << format_complex(s);
    EXPECT_EQ(r.method, Method::integral_tensor);
  }
}

TEST(Integral, NearMinusOneStaysHonest) {
  const EvalResult r = integral_eval(Index{1, 2}, -0.9);
  const double want = 1.5602165335033620158;
  EXPECT_LE(std::abs(r.value.real() - want), r.err_est);
  EXPECT_LT(r.err_est, 1e-2);
}

TEST(Integral, DepthTwoAgreesWithSeries) {
  for (auto [k, s] : {std::pair{Index{2, 3}, 0.25}, {Index{2, 2}, -0.25}, {Index{2, 3}, 1.0}}) {
    const EvalResult a = integral_eval(k, s);
    const EvalResult b = series_eval(k, s);
    EXPECT_LT(std::abs(a.value - b.value), 1e-5) << k.str() << " " << s;
    EXPECT_LE(std::abs(a.value - b.value), a.err_est + b.err_est + 1e-9) << k.str() << " " << s;
  }
}

TEST(Integral, QmcIsSeededAndHonest) {
  QuadratureOptions opt;
  opt.force_qmc = true;
  opt.qmc_points = 1 << 14;
  const EvalResult a = integral_eval(Index{2, 3}, 0.25, opt);
  const EvalResult b = integral_eval(Index{2, 3}, 0.25, opt);
  EXPECT_EQ(a.value, b.value);
  EXPECT_EQ(a.method, Method::integral_qmc);
  ASSERT_TRUE(a.seed.has_value());
  EXPECT_EQ(*a.seed, opt.seed);
  const EvalResult ref = series_eval(Index{2, 3}, 0.25);
  EXPECT_LE(std::abs(a.value - ref.value), 3.0 * a.err_est);
  opt.seed += 1;
  EXPECT_NE(integral_eval(Index{2, 3}, 0.25, opt).value, a.value);
}

TEST(Integral, DomainErrors) {
  try {
    integral_eval(Index{2, 3}, -1.0);
    FAIL();
  } catch (const error& e) {
    EXPECT_EQ(e.code(), errc::outside_domain);
  }
  EXPECT_THROW(integral_eval(Index{2, 1}, 0.5), error);
}

TEST(TIntegral, ClosedForms) {
  // a = 1: plain zeta(s+2)
  EXPECT_NEAR(t_integral_eval(1, 0.5, 1.0).value.real(), riemann_zeta(3.0).value.real(), 1e-8);
  // a = 2, T = 1, s = 0: zeta*(1,2) = 2 zeta(3)
  EXPECT_NEAR(t_integral_eval(2, 1.0, 0.0).value.real(), 2 * 1.2020569031595942854, 1e-8);
  // a = 3, T = 0.5, s = -0.25: (1 + 0.75*0.5 + 0.75*1.75/2*0.25) zeta(3.75)
  const double poly = 1 + 0.75 * 0.5 + 0.75 * 1.75 / 2 * 0.25;
  EXPECT_NEAR(t_integral_eval(3, 0.5, -0.25).value.real(), poly * 1.1017908657460560571, 1e-7);
}

TEST(Lemma, PartialFractionsEqualExponentialIntegral) {
  const double c1[] = {0.7};
  const double c3[] = {0.5, 1.3, 2.9};
  for (cplx s : {cplx(0.5), cplx(-0.3, 0.4), cplx(1.7)}) {
    EXPECT_LT(exponential_integral_check(c1, s).diff, 1e-9) << format_complex(s);
    EXPECT_LT(exponential_integral_check(c3, s).diff, 1e-9) << format_complex(s);
  }
  const double repeated[] = {1.0, 1.0};
  try {
    exponential_integral_check(repeated, 0.5);
    FAIL();
  } catch (const error& e) {
    EXPECT_EQ(e.code(), errc::degenerate);
  }
}

TEST(ChangeOfVariables, KnownPointProperties) {
  const double t2[] = {0.2, 0.7};
  const UlanskiiCheck c2 = ulanskii_check(t2);
  EXPECT_TRUE(c2.monotone);
  EXPECT_NEAR(c2.jacobian_ratio, 1.0, 1e-6);
  EXPECT_LT(c2.log_ratio_diff, 1e-12);
  // d = 1 closed form: u_2 = (1 - t_2)/(1 - t_1), 1 - u_1 = (1 - u_2)/t_2
  const double u2 = (1 - 0.7) / (1 - 0.2);
  const double u1 = 1 - (1 - u2) * 1.0 / 0.7;
  ASSERT_EQ(c2.u.size(), 2u);
  EXPECT_NEAR(c2.u[1], u2, 1e-15);
  EXPECT_NEAR(c2.u[0], u1, 1e-15);

  const double t4[] = {0.1, 0.35, 0.6, 0.9};
  const UlanskiiCheck c4 = ulanskii_check(t4);
  EXPECT_TRUE(c4.monotone);
  EXPECT_NEAR(c4.jacobian_ratio, 1.0, 1e-6);
  EXPECT_LT(c4.log_ratio_diff, 1e-12);
}

TEST(ChangeOfVariables, MapIsInvolution) {
  const double t[] = {0.05, 0.3, 0.55, 0.8};
  const auto u = detail::ulanskii_map(t);
  const auto back = detail::ulanskii_map(u);
  for (std::size_t i = 0; i < 4; ++i) EXPECT_NEAR(back[i], t[i], 1e-14);
}
