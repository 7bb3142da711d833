#pragma once

#include <algorithm>
#include <compare>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace chordlab {

/// Rotation-only (oriented boundaries) or rotation+reversal (non-oriented).
enum class Symmetry { Necklace, Bracelet };

/// Lexicographically smallest representative of the orbit of `entries`.
inline std::vector<int> canonical_entries(const std::vector<int>& entries, Symmetry symmetry) {
  if (entries.empty()) throw std::invalid_argument("cyclic tuple must be non-empty");
  for (int e : entries) {
    if (e < 0) throw std::invalid_argument("cyclic tuple entries must be non-negative");
  }
  const std::size_t k = entries.size();
  std::vector<int> best = entries;
  std::vector<int> probe(k);
  auto scan = [&](const std::vector<int>& base) {
    for (std::size_t r = 0; r < k; ++r) {
      for (std::size_t i = 0; i < k; ++i) probe[i] = base[(r + i) % k];
      if (probe < best) best = probe;
    }
  };
  scan(entries);
  if (symmetry == Symmetry::Bracelet) {
    std::vector<int> reversed(entries.rbegin(), entries.rend());
    scan(reversed);
  }
  return best;
}

/// A boundary label (i_1, ..., i_K), always held in canonical form.
class CyclicTuple {
 public:
  CyclicTuple(std::vector<int> entries, Symmetry symmetry)
      : entries_(canonical_entries(entries, symmetry)), symmetry_(symmetry) {}

  const std::vector<int>& entries() const { return entries_; }
  Symmetry symmetry() const { return symmetry_; }
  int length() const { return static_cast<int>(entries_.size()); }
  int sum() const {
    int s = 0;
    for (int e : entries_) s += e;
    return s;
  }

  friend bool operator==(const CyclicTuple&, const CyclicTuple&) = default;
  friend auto operator<=>(const CyclicTuple& a, const CyclicTuple& b) {
    if (auto c = a.entries_ <=> b.entries_; c != 0) return c;
    return a.symmetry_ <=> b.symmetry_;
  }

 private:
  std::vector<int> entries_;
  Symmetry symmetry_;
};

inline CyclicTuple canonical_tuple(const std::vector<int>& entries, Symmetry symmetry) {
  return CyclicTuple(entries, symmetry);
}

inline std::string tuple_string(const std::vector<int>& entries) {
  std::string out = "(";
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(entries[i]);
  }
  return out + ")";
}

inline std::ostream& operator<<(std::ostream& os, const CyclicTuple& t) { return os << tuple_string(t.entries()); }

}  // namespace chordlab
