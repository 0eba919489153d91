#pragma once

// Sobol low-discrepancy points (Gray-code order) with a random digital shift.

#include <array>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "ohno/error.hpp"

namespace ohno {

class Sobol {
 public:
  static constexpr int kMaxDim = 8;
  static constexpr int kBits = 32;

  explicit Sobol(int dim) : dim_(dim) {
    if (dim < 1 || dim > kMaxDim) throw error(errc::unsupported, "Sobol generator supports up to 8 dimensions");
    // primitive polynomial degree s, coefficients a, initial m_i (Joe-Kuo)
    struct Init {
      int s;
      unsigned a;
      std::array<unsigned, 5> m;
    };
    static constexpr std::array<Init, kMaxDim - 1> inits = {{{1, 0, {1}},
                                                            {2, 1, {1, 3}},
                                                            {3, 1, {1, 3, 1}},
                                                            {3, 2, {1, 1, 1}},
                                                            {4, 1, {1, 1, 3, 3}},
                                                            {4, 4, {1, 3, 5, 13}},
                                                            {5, 2, {1, 1, 5, 5, 17}}}};
    for (int b = 0; b < kBits; ++b) dir_[0][static_cast<std::size_t>(b)] = 1u << (kBits - 1 - b);
    for (int d = 1; d < dim_; ++d) {
      const Init& in = inits[static_cast<std::size_t>(d - 1)];
      auto& v = dir_[static_cast<std::size_t>(d)];
      for (int b = 0; b < in.s && b < kBits; ++b) v[static_cast<std::size_t>(b)] = in.m[static_cast<std::size_t>(b)] << (kBits - 1 - b);
      for (int b = in.s; b < kBits; ++b) {
        unsigned x = v[static_cast<std::size_t>(b - in.s)] ^ (v[static_cast<std::size_t>(b - in.s)] >> in.s);
        for (int q = 1; q < in.s; ++q)
          if ((in.a >> (in.s - 1 - q)) & 1u) x ^= v[static_cast<std::size_t>(b - q)];
        v[static_cast<std::size_t>(b)] = x;
      }
    }
  }

  int dim() const { return dim_; }

  /// Apply a random digital shift drawn from the given seed.
  void shift(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    for (int d = 0; d < dim_; ++d) shift_[static_cast<std::size_t>(d)] = static_cast<std::uint32_t>(rng() >> 32);
  }

  /// Points in (0,1)^dim; the offset of half an ulp of the 32-bit grid keeps them off 0.
  template <class Visit>
  void generate(std::int64_t count, Visit&& visit) const {
    std::array<std::uint32_t, kMaxDim> x{};
    std::array<double, kMaxDim> u{};
    for (std::int64_t i = 0; i < count; ++i) {
      if (i > 0) {
        int c = __builtin_ctzll(static_cast<unsigned long long>(i));
        for (int d = 0; d < dim_; ++d) x[static_cast<std::size_t>(d)] ^= dir_[static_cast<std::size_t>(d)][static_cast<std::size_t>(c)];
      }
      for (int d = 0; d < dim_; ++d)
        u[static_cast<std::size_t>(d)] = (static_cast<double>(x[static_cast<std::size_t>(d)] ^ shift_[static_cast<std::size_t>(d)]) + 0.5) * 0x1p-32;
      visit(std::span<const double>(u.data(), static_cast<std::size_t>(dim_)));
    }
  }

 private:
  int dim_;
  std::array<std::array<std::uint32_t, kBits>, kMaxDim> dir_{};
  std::array<std::uint32_t, kMaxDim> shift_{};
};

/// Replicate seed derived from (base seed, replicate id) only.
inline std::uint64_t replicate_seed(std::uint64_t base, std::uint64_t replicate) {
  std::seed_seq seq{static_cast<std::uint32_t>(base), static_cast<std::uint32_t>(base >> 32),
                    static_cast<std::uint32_t>(replicate), 0x6f686e6fu};
  std::array<std::uint32_t, 2> out{};
  seq.generate(out.begin(), out.end());
  return (static_cast<std::uint64_t>(out[0]) << 32) | out[1];
}

}  // namespace ohno
