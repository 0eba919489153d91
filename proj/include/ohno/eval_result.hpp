#pragma once

#include <cstdint>
#include <optional>

#include "ohno/complex.hpp"

namespace ohno {

enum class Method {
  exact,            // closed form / trivially exact
  lanczos,          // gamma
  euler_maclaurin,  // Riemann zeta
  holder,           // MZV by Hoelder convolution at 1/2
  nested_sum,       // lattice summation of a nested series
  series,           // Ohno series in gap variables
  partial_sum,      // brute-force truncated Ohno series
  ohno_sum,         // sum of MZVs at an integer argument
  mellin,           // Mellin-type representation
  integral_tensor,  // iterated integral, tensor double-exponential rule
  integral_qmc,     // iterated integral, randomized quasi-Monte Carlo
};

inline const char* to_string(Method m) {
  switch (m) {
    case Method::exact: return "exact";
    case Method::lanczos: return "lanczos";
    case Method::euler_maclaurin: return "euler_maclaurin";
    case Method::holder: return "holder";
    case Method::nested_sum: return "nested_sum";
    case Method::series: return "series";
    case Method::partial_sum: return "partial_sum";
    case Method::ohno_sum: return "ohno_sum";
    case Method::mellin: return "mellin";
    case Method::integral_tensor: return "integral_tensor";
    case Method::integral_qmc: return "integral_qmc";
  }
  return "unknown";
}

struct EvalResult {
  cplx value;
  double err_est = 0.0;
  Method method = Method::exact;
  std::int64_t terms_used = 0;
  std::int64_t nodes_used = 0;
  std::optional<std::uint64_t> seed;  // set for randomized methods
};

}  // namespace ohno
