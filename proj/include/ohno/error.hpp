#pragma once

#include <optional>
#include <stdexcept>
#include <string>

namespace ohno {

enum class errc {
  invalid_input,   // malformed text, bad option values
  non_admissible,  // index whose last entry is 1
  pole,            // argument at a pole of gamma / zeta
  outside_region,  // outside the absolute-convergence region of a series
  outside_strip,   // outside the validity strip of the Mellin representation
  outside_domain,  // outside the domain of an integral representation
  divergent,       // nested series that does not converge
  degenerate,      // coincident nodes and similar degenerate inputs
  unsupported,     // beyond the supported depth / dimension / window
};

inline const char* to_string(errc code) {
  switch (code) {
    case errc::invalid_input: return "invalid_input";
    case errc::non_admissible: return "non_admissible";
    case errc::pole: return "pole";
    case errc::outside_region: return "outside_region";
    case errc::outside_strip: return "outside_strip";
    case errc::outside_domain: return "outside_domain";
    case errc::divergent: return "divergent";
    case errc::degenerate: return "degenerate";
    case errc::unsupported: return "unsupported";
  }
  return "unknown";
}

class error : public std::runtime_error {
 public:
  error(errc code, const std::string& what, std::optional<double> abscissa = std::nullopt)
      : std::runtime_error(what), code_(code), abscissa_(abscissa) {}

  errc code() const noexcept { return code_; }

  /// Convergence abscissa of the offending index, set for region errors.
  std::optional<double> abscissa() const noexcept { return abscissa_; }

  /// True for errors caused by the caller's input rather than by the mathematics.
  bool is_usage() const noexcept {
    return code_ == errc::invalid_input || code_ == errc::non_admissible;
  }

 private:
  errc code_;
  std::optional<double> abscissa_;
};

}  // namespace ohno
