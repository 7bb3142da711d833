#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "chordlab/cyclic_tuple.hpp"
#include "chordlab/diagram.hpp"

namespace chordlab {

struct BoundaryCycle {
  int length = 0;
  CyclicTuple marks;
  friend bool operator==(const BoundaryCycle&, const BoundaryCycle&) = default;
};

inline Symmetry symmetry_for(Orientation mode) {
  return mode == Orientation::Oriented ? Symmetry::Necklace : Symmetry::Bracelet;
}

namespace detail {

// Port graph of a diagram. Every node is one end of a top segment T_j or of the
// underside B. Each node has one "along" edge (the segment itself) and one "link"
// edge (end-wrap, marked-point junction or chord flank), so the graph is 2-regular.
struct PortGraph {
  struct Edge {
    int to = -1;
    bool length = false;  // underside or flank
    bool mark = false;    // marked-point junction
  };
  std::vector<Edge> along;
  std::vector<Edge> link;
  std::vector<int> top_west;  // start nodes for the traversal

  explicit PortGraph(const PartialChordDiagram& d) {
    const int nb = d.backbone_count();
    std::vector<int> base(nb + 1, 0);
    for (int b = 0; b < nb; ++b) base[b + 1] = base[b] + 2 * (static_cast<int>(d.backbones()[b].size()) + 2);
    along.resize(base[nb]);
    link.resize(base[nb]);
    auto t_west = [&](int b, int j) { return base[b] + 2 * j; };
    auto t_east = [&](int b, int j) { return base[b] + 2 * j + 1; };
    auto connect = [](std::vector<Edge>& edges, int u, int v, bool len, bool mark) {
      edges[u] = {v, len, mark};
      edges[v] = {u, len, mark};
    };
    for (int b = 0; b < nb; ++b) {
      const int i = static_cast<int>(d.backbones()[b].size());
      const int b_west = base[b] + 2 * (i + 1), b_east = b_west + 1;
      for (int j = 0; j <= i; ++j) {
        connect(along, t_west(b, j), t_east(b, j), false, false);
        top_west.push_back(t_west(b, j));
      }
      connect(along, b_west, b_east, true, false);
      connect(link, t_west(b, 0), b_west, false, false);
      connect(link, t_east(b, i), b_east, false, false);
      for (int j = 1; j <= i; ++j) {
        if (d.backbones()[b][j - 1] == SiteKind::MarkedPoint) connect(link, t_east(b, j - 1), t_west(b, j), false, true);
      }
    }
    // Site s_j (1-based) has W = east end of T_{j-1} and E = west end of T_j.
    auto port_w = [&](SiteAddress a) { return t_east(a.backbone, a.site); };
    auto port_e = [&](SiteAddress a) { return t_west(a.backbone, a.site + 1); };
    for (const auto& c : d.chords()) {
      if (c.twisted) {
        connect(link, port_w(c.end_a), port_w(c.end_b), true, false);
        connect(link, port_e(c.end_a), port_e(c.end_b), true, false);
      } else {
        connect(link, port_w(c.end_a), port_e(c.end_b), true, false);
        connect(link, port_e(c.end_a), port_w(c.end_b), true, false);
      }
    }
  }
};

}  // namespace detail

/// Boundary components of the thickened diagram. Each cycle is walked rightward
/// along the top segments; the marks tuple counts marked points between
/// consecutive length elements (undersides and flanks).
inline std::vector<BoundaryCycle> trace_boundaries(const PartialChordDiagram& d) {
  detail::PortGraph g(d);
  const Symmetry sym = symmetry_for(d.mode());
  std::vector<char> seen(g.along.size(), 0);
  std::vector<BoundaryCycle> cycles;
  for (int start : g.top_west) {
    if (seen[start]) continue;
    // tokens: -1 for a length element, otherwise a mark.
    std::vector<int> tokens;
    int v = start;
    do {
      seen[v] = 1;
      const auto& a = g.along[v];
      if (a.length) tokens.push_back(-1);
      v = a.to;
      seen[v] = 1;
      const auto& l = g.link[v];
      if (l.length) tokens.push_back(-1);
      if (l.mark) tokens.push_back(1);
      v = l.to;
    } while (v != start);

    std::size_t first = 0;
    while (tokens[first] != -1) ++first;
    std::vector<int> marks;
    for (std::size_t step = 0; step < tokens.size(); ++step) {
      int tok = tokens[(first + step) % tokens.size()];
      if (tok == -1) {
        marks.push_back(0);
      } else {
        ++marks.back();
      }
    }
    const int length = static_cast<int>(marks.size());
    cycles.push_back({length, CyclicTuple(std::move(marks), sym)});
  }
  return cycles;
}

struct DiagramType {
  Orientation mode = Orientation::Oriented;
  int euler_genus = 0;  // g if oriented, h if non-oriented
  int k = 0;
  int l = 0;
  int n = 0;
  std::map<int, int> backbone_spectrum;
  std::map<int, int> point_spectrum;
  std::map<int, int> length_spectrum;
  std::map<CyclicTuple, int> lp_spectrum;

  int backbone_count() const {
    int b = 0;
    for (const auto& [i, c] : backbone_spectrum) b += c;
    return b;
  }

  friend auto operator<=>(const DiagramType&, const DiagramType&) = default;
};

inline DiagramType compute_type(const PartialChordDiagram& d) {
  DiagramType t;
  t.mode = d.mode();
  t.k = d.chord_count();
  t.l = d.marked_point_count();
  for (const auto& b : d.backbones()) ++t.backbone_spectrum[static_cast<int>(b.size())];
  for (const auto& c : trace_boundaries(d)) {
    ++t.n;
    ++t.point_spectrum[c.marks.sum()];
    ++t.length_spectrum[c.length];
    ++t.lp_spectrum[c.marks];
  }
  const int chi = d.backbone_count() - t.k + t.n;
  if (d.mode() == Orientation::Oriented) {
    if ((2 - chi) % 2 != 0) throw std::logic_error("odd Euler characteristic for an oriented diagram");
    t.euler_genus = (2 - chi) / 2;
  } else {
    t.euler_genus = 2 - chi;
  }
  return t;
}

/// Returns the violated relations; empty when the record is consistent.
inline std::vector<std::string> type_violations(const DiagramType& t) {
  std::vector<std::string> bad;
  const int b = t.backbone_count();
  const int chi = b - t.k + t.n;
  if (t.mode == Orientation::Oriented) {
    if (2 - 2 * t.euler_genus != chi) bad.push_back("Euler relation 2-2g = b-k+n");
  } else if (2 - t.euler_genus != chi) {
    bad.push_back("Euler relation 2-h = b-k+n");
  }

  int sites = 0;
  for (const auto& [i, c] : t.backbone_spectrum) sites += i * c;
  if (sites != 2 * t.k + t.l) bad.push_back("sum i*b_i = 2k+l");

  int n_pt = 0, l_pt = 0;
  for (const auto& [i, c] : t.point_spectrum) {
    n_pt += c;
    l_pt += i * c;
  }
  if (n_pt != t.n) bad.push_back("n = sum n_i");
  if (l_pt != t.l) bad.push_back("l = sum i*n_i");

  int n_len = 0, w_len = 0;
  for (const auto& [i, c] : t.length_spectrum) {
    n_len += c;
    w_len += i * c;
  }
  if (n_len != t.n) bad.push_back("n = sum p_i");
  if (w_len != 2 * t.k + b) bad.push_back("2k+b = sum i*p_i");

  int n_lp = 0, l_lp = 0;
  std::map<int, int> by_length, by_sum;
  for (const auto& [tuple, c] : t.lp_spectrum) {
    n_lp += c;
    l_lp += tuple.sum() * c;
    by_length[tuple.length()] += c;
    by_sum[tuple.sum()] += c;
  }
  if (n_lp != t.n) bad.push_back("n = sum n_ii");
  if (l_lp != t.l) bad.push_back("l = sum |ii|*n_ii");
  if (by_length != t.length_spectrum) bad.push_back("lp spectrum refines length spectrum");
  if (by_sum != t.point_spectrum) bad.push_back("lp spectrum refines point spectrum");
  return bad;
}

inline bool type_is_consistent(const DiagramType& t) { return type_violations(t).empty(); }

}  // namespace chordlab
