#pragma once

// Index algebra for multiple zeta values.
//
// Indices are stored in ascending-summation order: for k = (k_1, ..., k_r) the
// exponent k_1 sits on the smallest summation variable n_1 and k_r on the
// largest, i.e. zeta(k) = sum_{n_1 < ... < n_r} n_1^-k_1 ... n_r^-k_r.  The text
// form "k1,k2,...,kr" uses the same order.

#include <algorithm>
#include <charconv>
#include <cstddef>
#include <numeric>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ohno/error.hpp"

namespace ohno {

class Index {
 public:
  explicit Index(std::vector<int> parts) : parts_(std::move(parts)) {
    if (parts_.empty()) throw error(errc::invalid_input, "index must have at least one entry");
    for (int k : parts_)
      if (k < 1) throw error(errc::invalid_input, "index entries must be positive integers");
  }
  Index(std::initializer_list<int> parts) : Index(std::vector<int>(parts)) {}

  std::span<const int> parts() const { return parts_; }
  int operator[](std::size_t i) const { return parts_[i]; }
  int depth() const { return static_cast<int>(parts_.size()); }
  int weight() const { return std::accumulate(parts_.begin(), parts_.end(), 0); }
  bool admissible() const { return parts_.back() >= 2; }

  /// Number of entries >= 2 (the d of the run-length decomposition).
  int height() const {
    return static_cast<int>(std::count_if(parts_.begin(), parts_.end(), [](int k) { return k >= 2; }));
  }

  /// Entrywise k + e.
  Index plus(std::span<const int> e) const {
    if (e.size() != parts_.size()) throw error(errc::invalid_input, "shift vector length differs from depth");
    std::vector<int> out(parts_);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += e[i];
    return Index(std::move(out));
  }

  std::string str() const {
    std::string out;
    for (std::size_t i = 0; i < parts_.size(); ++i) {
      if (i) out += ',';
      out += std::to_string(parts_[i]);
    }
    return out;
  }

  friend bool operator==(const Index&, const Index&) = default;
  friend auto operator<=>(const Index&, const Index&) = default;

 private:
  std::vector<int> parts_;
};

inline bool is_admissible(const Index& k) { return k.admissible(); }

inline void require_admissible(const Index& k) {
  if (!k.admissible())
    throw error(errc::non_admissible, "index (" + k.str() + ") is not admissible: last entry must be >= 2");
}

/// Parse "k1,k2,...": positive integers separated by commas.
inline Index parse_index(std::string_view text) {
  std::vector<int> parts;
  std::size_t pos = 0;
  while (true) {
    std::size_t comma = text.find(',', pos);
    std::string_view tok = text.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos);
    while (!tok.empty() && tok.front() == ' ') tok.remove_prefix(1);
    while (!tok.empty() && tok.back() == ' ') tok.remove_suffix(1);
    int value = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (tok.empty() || ec != std::errc() || ptr != tok.data() + tok.size() || value < 1)
      throw error(errc::invalid_input,
                  "cannot parse index '" + std::string(text) + "': expected comma-separated positive integers");
    parts.push_back(value);
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return Index(std::move(parts));
}

struct ABPair {
  int a;
  int b;
  friend bool operator==(const ABPair&, const ABPair&) = default;
};

/// Run-length form (a_1,b_1,...,a_d,b_d): k = (1^{a_1-1}, b_1+1, ..., 1^{a_d-1}, b_d+1).
struct ABDecomposition {
  std::vector<ABPair> pairs;

  Index reconstruct() const {
    std::vector<int> out;
    for (auto [a, b] : pairs) {
      out.insert(out.end(), static_cast<std::size_t>(a - 1), 1);
      out.push_back(b + 1);
    }
    return Index(std::move(out));
  }
  friend bool operator==(const ABDecomposition&, const ABDecomposition&) = default;
};

inline ABDecomposition ab_decompose(const Index& k) {
  require_admissible(k);
  ABDecomposition out;
  int ones = 0;
  for (int part : k.parts()) {
    if (part == 1) {
      ++ones;
    } else {
      out.pairs.push_back({ones + 1, part - 1});
      ones = 0;
    }
  }
  return out;
}

/// Dual index: (1^{b_d-1}, a_d+1, ..., 1^{b_1-1}, a_1+1).
inline Index dual(const Index& k) {
  const ABDecomposition ab = ab_decompose(k);
  ABDecomposition swapped;
  for (auto it = ab.pairs.rbegin(); it != ab.pairs.rend(); ++it) swapped.pairs.push_back({it->b, it->a});
  return swapped.reconstruct();
}

struct RegionInfo {
  double abscissa = 0.0;
  /// slack[j-1] = r - 2j + 2 - (k_j + ... + k_r), j = 1..r
  std::vector<double> slack;
};

/// Abscissa of absolute convergence of the Ohno series: Re(s) must exceed max_j slack_j.
inline RegionInfo abscissa(const Index& k) {
  require_admissible(k);
  const int r = k.depth();
  RegionInfo info;
  int suffix = 0;
  info.slack.resize(static_cast<std::size_t>(r));
  for (int j = r; j >= 1; --j) {
    suffix += k[static_cast<std::size_t>(j - 1)];
    info.slack[static_cast<std::size_t>(j - 1)] = r - 2 * j + 2 - suffix;
  }
  info.abscissa = *std::max_element(info.slack.begin(), info.slack.end());
  return info;
}

/// Length-r nonnegative integer vectors summing to m, in lexicographic order.
/// `cap` bounds every entry; `zeros` lists 1-based positions forced to 0.
inline std::vector<std::vector<int>> compositions(int m, int r, std::optional<int> cap = std::nullopt,
                                                  const std::set<int>& zeros = {}) {
  if (m < 0 || r < 1) throw error(errc::invalid_input, "compositions need m >= 0 and r >= 1");
  for (int z : zeros)
    if (z < 1 || z > r) throw error(errc::invalid_input, "forced-zero position out of range");
  std::vector<int> limit(static_cast<std::size_t>(r), cap.value_or(m));
  for (int z : zeros) limit[static_cast<std::size_t>(z - 1)] = 0;

  std::vector<std::vector<int>> out;
  std::vector<int> cur(static_cast<std::size_t>(r), 0);
  // capacity of positions i..r-1, for pruning
  std::vector<int> room(static_cast<std::size_t>(r) + 1, 0);
  for (int i = r - 1; i >= 0; --i) room[static_cast<std::size_t>(i)] = room[static_cast<std::size_t>(i) + 1] + limit[static_cast<std::size_t>(i)];

  auto rec = [&](auto&& self, int pos, int left) -> void {
    if (pos == r - 1) {
      if (left <= limit[static_cast<std::size_t>(pos)]) {
        cur[static_cast<std::size_t>(pos)] = left;
        out.push_back(cur);
      }
      return;
    }
    const int hi = std::min(left, limit[static_cast<std::size_t>(pos)]);
    for (int v = 0; v <= hi; ++v) {
      if (left - v > room[static_cast<std::size_t>(pos) + 1]) continue;
      cur[static_cast<std::size_t>(pos)] = v;
      self(self, pos + 1, left - v);
    }
  };
  rec(rec, 0, m);
  return out;
}

/// All admissible indices of the given weight, in lexicographic order of parts.
inline std::vector<Index> admissible_indices(int weight) {
  std::vector<Index> out;
  if (weight < 2) return out;
  std::vector<int> cur;
  auto rec = [&](auto&& self, int left) -> void {
    if (left == 0) {
      if (cur.back() >= 2) out.emplace_back(cur);
      return;
    }
    for (int v = 1; v <= left; ++v) {
      cur.push_back(v);
      self(self, left - v);
      cur.pop_back();
    }
  };
  rec(rec, weight);
  return out;
}

}  // namespace ohno
