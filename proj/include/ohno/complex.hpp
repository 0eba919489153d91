#pragma once

#include <charconv>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <numbers>
#include <string>
#include <string_view>

#include "ohno/error.hpp"

namespace ohno {

using cplx = std::complex<double>;

inline constexpr double pi = std::numbers::pi;

/// sin(pi x) with exact argument reduction, so integers give exact zeros.
inline double sinpi(double x) {
  double r = std::remainder(x, 2.0);  // r in [-1, 1]
  if (r > 0.5) r = 1.0 - r;
  else if (r < -0.5) r = -1.0 - r;
  return std::sin(pi * r);
}

inline double cospi(double x) {
  double r = std::fabs(std::remainder(x, 2.0));  // [0, 1]
  if (r == 0.5) return 0.0;
  return r < 0.5 ? std::sin(pi * (0.5 - r)) : -std::sin(pi * (r - 0.5));
}

inline cplx sinpi(cplx z) {
  const double y = pi * z.imag();
  return {sinpi(z.real()) * std::cosh(y), cospi(z.real()) * std::sinh(y)};
}

/// exp(z) - 1 without cancellation for small |z|.
inline cplx expm1(cplx z) {
  const double x = z.real(), y = z.imag();
  if (y == 0.0) return {std::expm1(x), 0.0};
  const double s = std::sin(0.5 * y);
  return {std::expm1(x) * std::cos(y) - 2.0 * s * s, std::exp(x) * std::sin(y)};
}

/// log(1 + z) without cancellation for small |z|.
inline cplx log1p(cplx z) {
  if (z.imag() == 0.0 && z.real() > -1.0) return {std::log1p(z.real()), 0.0};
  const cplx u = 1.0 + z;
  if (u == 1.0) return z;
  const double re = 0.5 * std::log1p(z.real() * (2.0 + z.real()) + z.imag() * z.imag());
  return {re, std::arg(u)};
}

/// Principal power with exact handling of real positive bases.
inline cplx cpow(cplx base, cplx e) {
  if (base.imag() == 0.0 && base.real() > 0.0) {
    if (e.imag() == 0.0) return {std::pow(base.real(), e.real()), 0.0};
    return std::exp(e * std::log(base.real()));
  }
  return std::exp(e * std::log(base));
}

inline bool is_finite(cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

/// Nonpositive integer test (poles of gamma).
inline bool is_nonpositive_integer(cplx z) {
  return z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::floor(z.real());
}

/// Parse "a+bi" style complex numbers: "0.5", "-0.25+1i", "2i", "-i", "1e-3-2.5i".
inline cplx parse_complex(std::string_view text) {
  auto fail = [&]() -> error {
    return error(errc::invalid_input, "cannot parse complex number '" + std::string(text) +
                                          "' (expected a, bi or a+bi)");
  };
  std::string t;
  for (char c : text)
    if (c != ' ') t.push_back(c);
  if (t.empty()) throw fail();

  auto parse_real = [&](const std::string& part, double& out) {
    if (part.empty() || part == "+") { out = 1.0; return true; }
    if (part == "-") { out = -1.0; return true; }
    char* end = nullptr;
    out = std::strtod(part.c_str(), &end);
    return end == part.c_str() + part.size();
  };

  if (t.back() != 'i' && t.back() != 'j') {
    double re;
    if (!parse_real(t, re) || !std::isfinite(re)) throw fail();
    return {re, 0.0};
  }
  t.pop_back();
  // split at the last sign that is not part of an exponent
  std::size_t split = std::string::npos;
  for (std::size_t i = t.size(); i-- > 1;) {
    if ((t[i] == '+' || t[i] == '-') && t[i - 1] != 'e' && t[i - 1] != 'E') {
      split = i;
      break;
    }
  }
  double re = 0.0, im = 0.0;
  if (split == std::string::npos) {
    if (!parse_real(t, im)) throw fail();
  } else {
    const std::string a = t.substr(0, split), b = t.substr(split);
    double tmp;
    if (a.empty() || a == "+" || a == "-" || !parse_real(a, tmp)) throw fail();
    re = tmp;
    if (!parse_real(b, im)) throw fail();
  }
  if (!std::isfinite(re) || !std::isfinite(im)) throw fail();
  return {re, im};
}

/// Shortest round-trip decimal form of a double.
inline std::string format_real(double x) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

/// Canonical text form, round-trippable through parse_complex.
inline std::string format_complex(cplx z) {
  if (z.imag() == 0.0) return format_real(z.real());
  if (z.real() == 0.0) return format_real(z.imag()) + "i";
  std::string im = format_real(z.imag());
  if (im.front() != '-') im.insert(im.begin(), '+');
  return format_real(z.real()) + im + "i";
}

}  // namespace ohno
