#include <gtest/gtest.h>

#include <cmath>

#include "ohno/zeta.hpp"

using namespace ohno;

namespace {

// Independent references (50-digit arithmetic, rounded).
constexpr double kZeta2 = 1.6449340668482264365;
constexpr double kZeta3 = 1.2020569031595942854;
constexpr double kZeta4 = 1.0823232337111381915;
constexpr double kZeta5 = 1.0369277551433699263;

double rel(cplx got, cplx want) { return std::abs(got - want) / std::max(1.0, std::abs(want)); }

}  // namespace

TEST(Gamma, RealArgumentsMatchStd) {
  for (double x : {0.1, 0.5, 1.0, 2.5, 7.3, 20.0, -0.5, -2.5, -7.25})
    EXPECT_LT(std::abs(ohno::gamma(x).value.real() / std::tgamma(x) - 1.0), 1e-13) << x;
  EXPECT_NEAR(ohno::gamma(0.5).value.real(), 1.7724538509055160273, 1e-14);
}

TEST(Gamma, ComplexReference) {
  EXPECT_LT(rel(ohno::gamma(cplx(0.3, 0.7)).value, cplx(0.3096862567437491556, -0.8567877529392705725)), 1e-13);
  EXPECT_LT(rel(ohno::gamma(cplx(-1.5, 0.5)).value, cplx(0.9379166627878850510, 0.3492056681478048686)), 1e-13);
  // |Gamma(i)|^2 = pi / sinh(pi)
  EXPECT_NEAR(std::norm(ohno::gamma(cplx(0, 1)).value), pi / std::sinh(pi), 1e-14);
}

TEST(Gamma, PolesThrow) {
  for (double x : {0.0, -1.0, -4.0}) {
    try {
      ohno::gamma(x);
      ADD_FAILURE() << x;
    } catch (const error& e) {
      EXPECT_EQ(e.code(), errc::pole);
    }
  }
}

TEST(RiemannZeta, EvenValuesAndNegativeIntegers) {
  EXPECT_NEAR(riemann_zeta(2.0).value.real(), pi * pi / 6, 1e-15);
  EXPECT_NEAR(riemann_zeta(4.0).value.real(), std::pow(pi, 4) / 90, 1e-15);
  EXPECT_NEAR(riemann_zeta(0.0).value.real(), -0.5, 1e-15);
  EXPECT_NEAR(riemann_zeta(-1.0).value.real(), -1.0 / 12, 1e-15);
  EXPECT_NEAR(riemann_zeta(-3.0).value.real(), 1.0 / 120, 1e-15);
  EXPECT_NEAR(riemann_zeta(-2.0).value.real(), 0.0, 1e-15);
}

TEST(RiemannZeta, ReferenceValues) {
  const std::pair<cplx, cplx> cases[] = {
      {0.5, -1.4603545088095868129},
      {2.5, 1.3414872572509171798},
      {3.5, 1.1267338673170566464},
      {-2.5, 0.0085169287778503305424},
      {-5.5, -0.0026714580198992245990},
      {cplx(1.5, 2), cplx(0.75218186903423257260, -0.33397906099331399421)},
      {cplx(3.5, 1), cplx(1.0764273299172876499, -0.091264161521406991988)},
  };
  for (auto [s, want] : cases) {
    const EvalResult z = riemann_zeta(s);
    EXPECT_LT(std::abs(z.value - want), 1e-13) << format_complex(s);
    EXPECT_LE(std::abs(z.value - want), z.err_est + 1e-15) << format_complex(s);
  }
  EXPECT_LT(std::abs(riemann_zeta(cplx(0.5, 14.134725141734693)).value), 1e-12);
}

TEST(RiemannZeta, DomainErrors) {
  EXPECT_THROW(riemann_zeta(1.0), error);
  try {
    riemann_zeta(-12.0);
    FAIL();
  } catch (const error& e) {
    EXPECT_EQ(e.code(), errc::unsupported);
  }
}

TEST(GenBinomial, MatchesIntegerBinomials) {
  EXPECT_EQ(gen_binomial(3.0, 2), cplx(10.0));  // C(5,2)
  EXPECT_EQ(gen_binomial(0.0, 4), cplx(1.0));
  EXPECT_NEAR(gen_binomial(-0.25, 2).real(), 0.75 * 1.75 / 2, 1e-16);
  EXPECT_THROW(gen_binomial(1.0, -1), error);
}

// Classical evaluations, written in ascending-summation order.
TEST(Mzv, ClosedForms) {
  const std::pair<Index, double> cases[] = {
      {Index{2}, kZeta2},
      {Index{1, 2}, kZeta3},
      {Index{2, 2}, (kZeta2 * kZeta2 - kZeta4) / 2},
      {Index{1, 3}, kZeta4 / 4},
      {Index{1, 1, 2}, kZeta4},
      {Index{1, 1, 1, 2}, kZeta5},
      {Index{2, 3}, 3 * kZeta2 * kZeta3 - 5.5 * kZeta5},
      {Index{3, 2}, 4.5 * kZeta5 - 2 * kZeta2 * kZeta3},
      {Index{1, 4}, 2 * kZeta5 - kZeta2 * kZeta3},
      {Index{2, 2, 2}, std::pow(pi, 6) / 5040},
  };
  for (const auto& [k, want] : cases) {
    const EvalResult z = mzv(k);
    EXPECT_NEAR(z.value.real(), want, 1e-14) << k.str();
    EXPECT_LE(std::abs(z.value.real() - want), z.err_est + 1e-15) << k.str();
  }
}

TEST(Mzv, StuffleProduct) {
  // zeta(a) zeta(b) = zeta(a,b) + zeta(b,a) + zeta(a+b)
  for (int a = 2; a <= 4; ++a)
    for (int b = 2; b <= 4; ++b) {
      const double lhs = mzv(Index{a}).value.real() * mzv(Index{b}).value.real();
      const double rhs =
          (mzv(Index{a, b}).value + mzv(Index{b, a}).value + mzv(Index{a + b}).value).real();
      EXPECT_NEAR(lhs, rhs, 1e-14);
    }
}

TEST(Mzv, Errors) {
  try {
    mzv(Index{2, 1});
    FAIL();
  } catch (const error& e) {
    EXPECT_EQ(e.code(), errc::divergent);
  }
  try {
    mzv(Index{1, 1, 1, 1, 2});
    FAIL();
  } catch (const error& e) {
    EXPECT_EQ(e.code(), errc::unsupported);
  }
}

TEST(MzvShifted, ReducesToMzvAtZeroShift) {
  for (const Index& k : {Index{2, 3}, Index{1, 2}, Index{2, 2, 2}}) {
    const EvalResult v = mzv_shifted(k, 1, 0.0);
    EXPECT_NEAR(v.value.real(), mzv(k).value.real(), 1e-9) << k.str();
  }
}

TEST(MzvShifted, IntegerShiftMatchesMzv) {
  EXPECT_NEAR(mzv_shifted(Index{2, 2}, 2, 1.0).value.real(), mzv(Index{2, 3}).value.real(), 1e-9);
  EXPECT_NEAR(mzv_shifted(Index{1, 2}, 1, 1.0).value.real(), mzv(Index{2, 2}).value.real(), 1e-9);
}

TEST(MzvShifted, FractionalReferences) {
  // references by Euler-Maclaurin on the outer sum
  const EvalResult a = mzv_shifted(Index{2, 3}, 2, -0.5);  // zeta(2, 2.5)
  EXPECT_NEAR(a.value.real(), 0.4036040294802499, 1e-9);
  const EvalResult b = mzv_shifted(Index{2, 3}, 1, -0.5);  // zeta(1.5, 3)
  EXPECT_NEAR(b.value.real(), 0.2439706215327198, 1e-9);
  EXPECT_LT(a.err_est, 1e-8);
  EXPECT_EQ(a.method, Method::nested_sum);
}

TEST(MzvShifted, DivergentSuffixThrows) {
  try {
    mzv_shifted(Index{2, 3}, 2, -2.5);
    FAIL();
  } catch (const error& e) {
    EXPECT_EQ(e.code(), errc::divergent);
  }
}
