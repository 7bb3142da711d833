#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <thread>
#include <vector>

#include "chordlab/boundary.hpp"
#include "chordlab/diagram.hpp"
#include "chordlab/rational.hpp"
#include "chordlab/series.hpp"

namespace chordlab {

struct EnumerationSpec {
  std::vector<int> backbone_lengths;
  std::optional<int> chords;  // nullopt: every feasible k
  Orientation mode = Orientation::Oriented;
  bool connected_only = false;

  int site_total() const {
    int m = 0;
    for (int i : backbone_lengths) m += i;
    return m;
  }

  void validate() const {
    for (int i : backbone_lengths) {
      if (i < 0) throw std::invalid_argument("backbone length must be non-negative");
    }
    if (chords && *chords < 0) throw std::invalid_argument("chord count must be non-negative");
  }

  /// Chord counts to enumerate; an infeasible fixed k gives an empty list.
  std::vector<int> chord_counts() const {
    std::vector<int> ks;
    const int m = site_total();
    if (chords) {
      if (2 * *chords <= m) ks.push_back(*chords);
    } else {
      for (int k = 0; 2 * k <= m; ++k) ks.push_back(k);
    }
    return ks;
  }
};

namespace detail {

// Every choice of 2k chord-end positions among the m sites, in lexicographic order.
inline std::vector<std::vector<char>> placements(int m, int k) {
  std::vector<std::vector<char>> out;
  if (2 * k > m) return out;
  std::vector<char> is_end(m, 0);
  std::fill(is_end.begin(), is_end.begin() + 2 * k, 1);
  do {
    out.push_back(is_end);
  } while (std::prev_permutation(is_end.begin(), is_end.end()));
  return out;
}

// Pairs the lowest unmatched end with each later candidate, recursively.
inline void for_each_matching(std::vector<int>& free_ends, std::vector<std::pair<int, int>>& pairs,
                              const std::function<void(const std::vector<std::pair<int, int>>&)>& emit) {
  if (free_ends.empty()) {
    emit(pairs);
    return;
  }
  const int first = free_ends.front();
  for (std::size_t j = 1; j < free_ends.size(); ++j) {
    const int partner = free_ends[j];
    std::vector<int> rest;
    rest.reserve(free_ends.size() - 2);
    for (std::size_t r = 1; r < free_ends.size(); ++r) {
      if (r != j) rest.push_back(free_ends[r]);
    }
    pairs.emplace_back(first, partner);
    for_each_matching(rest, pairs, emit);
    pairs.pop_back();
  }
}

// All configurations built on one placement.
inline void for_each_on_placement(const EnumerationSpec& spec, const std::vector<char>& is_end,
                                  const std::function<void(const PartialChordDiagram&)>& visit) {
  std::vector<Backbone> backbones;
  std::vector<SiteAddress> address;
  std::vector<int> ends;
  int pos = 0;
  for (int b = 0; b < static_cast<int>(spec.backbone_lengths.size()); ++b) {
    Backbone bb;
    for (int s = 0; s < spec.backbone_lengths[b]; ++s, ++pos) {
      bb.push_back(is_end[pos] ? SiteKind::ChordEnd : SiteKind::MarkedPoint);
      address.push_back({b, s});
      if (is_end[pos]) ends.push_back(pos);
    }
    backbones.push_back(std::move(bb));
  }
  const int k = static_cast<int>(ends.size()) / 2;
  const bool twist = spec.mode == Orientation::NonOriented;
  const std::uint32_t twist_masks = twist ? (1u << k) : 1u;
  std::vector<std::pair<int, int>> pairs;
  for_each_matching(ends, pairs, [&](const std::vector<std::pair<int, int>>& matching) {
    for (std::uint32_t mask = 0; mask < twist_masks; ++mask) {
      std::vector<Chord> chords;
      chords.reserve(k);
      for (int c = 0; c < k; ++c) {
        chords.push_back({address[matching[c].first], address[matching[c].second], ((mask >> c) & 1u) != 0});
      }
      PartialChordDiagram d(backbones, std::move(chords), spec.mode);
      if (!spec.connected_only || is_connected(d)) visit(d);
    }
  });
}

}  // namespace detail

/// Visits every configuration once: placements, then matchings, then twist bits.
/// With connected_only set, disconnected configurations are skipped.
inline void for_each_configuration(const EnumerationSpec& spec,
                                   const std::function<void(const PartialChordDiagram&)>& visit) {
  spec.validate();
  for (int k : spec.chord_counts()) {
    for (const auto& p : detail::placements(spec.site_total(), k)) detail::for_each_on_placement(spec, p, visit);
  }
}

inline std::vector<PartialChordDiagram> enumerate_configurations(const EnumerationSpec& spec) {
  std::vector<PartialChordDiagram> out;
  for_each_configuration(spec, [&](const PartialChordDiagram& d) { out.push_back(d); });
  return out;
}

enum class Spectrum { None, Point, Length, LengthAndPoint };

inline Spectrum parse_spectrum(const std::string& text) {
  if (text == "none") return Spectrum::None;
  if (text == "point") return Spectrum::Point;
  if (text == "length") return Spectrum::Length;
  if (text == "lp") return Spectrum::LengthAndPoint;
  throw std::invalid_argument("unknown spectrum: " + text);
}

/// Clears the spectra that the given kind does not keep.
inline DiagramType coarsen(DiagramType t, Spectrum kind) {
  if (kind != Spectrum::Point && kind != Spectrum::LengthAndPoint) t.point_spectrum.clear();
  if (kind != Spectrum::Length && kind != Spectrum::LengthAndPoint) t.length_spectrum.clear();
  if (kind != Spectrum::LengthAndPoint) t.lp_spectrum.clear();
  return t;
}

struct Census {
  EnumerationSpec spec;
  std::map<DiagramType, BigInt> entries;

  BigInt total() const {
    BigInt t = 0;
    for (const auto& [type, c] : entries) t += c;
    return t;
  }

  Census marginal(Spectrum kind) const {
    Census r{spec, {}};
    for (const auto& [type, c] : entries) r.entries[coarsen(type, kind)] += c;
    return r;
  }

  /// Counts by (k, euler genus).
  std::map<std::pair<int, int>, BigInt> by_genus() const {
    std::map<std::pair<int, int>, BigInt> r;
    for (const auto& [type, c] : entries) r[{type.k, type.euler_genus}] += c;
    return r;
  }

  void merge(const Census& o) {
    for (const auto& [type, c] : o.entries) entries[type] += c;
  }
};

/// Exact census; placements are spread over `threads` workers and merged.
inline Census census(const EnumerationSpec& spec, int threads = 1) {
  spec.validate();
  std::vector<std::vector<char>> work;
  for (int k : spec.chord_counts()) {
    for (auto& p : detail::placements(spec.site_total(), k)) work.push_back(std::move(p));
  }
  const int workers = std::max(1, std::min<int>(threads, static_cast<int>(work.size())));
  std::vector<std::map<DiagramType, std::uint64_t>> partial(workers);
  auto run = [&](int w) {
    for (std::size_t i = w; i < work.size(); i += workers) {
      detail::for_each_on_placement(spec, work[i], [&](const PartialChordDiagram& d) { ++partial[w][compute_type(d)]; });
    }
  };
  if (workers == 1) {
    run(0);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(run, w);
    for (auto& t : pool) t.join();
  }
  Census c{spec, {}};
  for (const auto& part : partial) {
    for (const auto& [type, n] : part) c.entries[type] += BigInt(n);
  }
  return c;
}

/// Number of configurations the enumerator should produce for fixed k
/// (ignoring connected_only): C(m, 2k) (2k-1)!! (2^k non-oriented).
inline BigInt expected_configuration_count(const EnumerationSpec& spec, int k) {
  const int m = spec.site_total();
  if (2 * k > m) return 0;
  BigInt binom = factorial(m) / (factorial(2 * k) * factorial(m - 2 * k));
  BigInt dfact = 1;
  for (int j = 2 * k - 1; j > 1; j -= 2) dfact *= j;
  BigInt twists = spec.mode == Orientation::NonOriented ? BigInt(1) << k : BigInt(1);
  return binom * dfact * twists;
}

/// The spectrum monomial prod u_ii^{n_ii} of a type.
inline std::map<VarKey, int> lp_monomial(const DiagramType& t) {
  std::map<VarKey, int> vars;
  for (const auto& [tuple, c] : t.lp_spectrum) vars[VarKey::u(tuple)] += c;
  return vars;
}

/// sum over census entries of count * factor * x^{-(b-k+n)} y^k prod u; the
/// s-part is supplied by the caller.
inline void add_census_terms(GradedSeries& out, const Census& c, const std::map<int, int>& s, const Rational& factor) {
  for (const auto& [type, count] : c.entries) {
    Monomial m{type.k, s, lp_monomial(type)};
    const int chi = type.backbone_count() - type.k + type.n;
    out.add_term(m, LaurentCoeff(-chi, factor * Rational(count)));
  }
}

/// The Wick-expanded Gaussian average for one backbone block, without any
/// symmetry factor and without s variables.
inline GradedSeries gaussian_average(const EnumerationSpec& spec) {
  Census c = census(spec);
  const int m = spec.site_total();
  GradedSeries out(Truncation{m / 2, 0, std::nullopt});
  add_census_terms(out, c, {}, Rational(1));
  return out;
}

/// Every sorted list of backbone lengths with 1 <= b <= b_max backbones and
/// sum of lengths <= site_max.
inline std::vector<std::vector<int>> backbone_blocks(int b_max, int site_max) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  std::function<void(int, int)> grow = [&](int min_len, int budget) {
    if (!cur.empty()) out.push_back(cur);
    if (static_cast<int>(cur.size()) == b_max) return;
    for (int i = min_len; i <= budget; ++i) {
      cur.push_back(i);
      grow(i, budget - i);
      cur.pop_back();
    }
  };
  grow(0, site_max);
  return out;
}

}  // namespace chordlab
