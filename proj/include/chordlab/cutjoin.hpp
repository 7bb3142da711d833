#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "chordlab/diagram.hpp"
#include "chordlab/enumerator.hpp"
#include "chordlab/series.hpp"

namespace chordlab {

enum class Model { Point, Length, LengthAndPoint };

inline Model parse_model(const std::string& text) {
  if (text == "point") return Model::Point;
  if (text == "length") return Model::Length;
  if (text == "lp") return Model::LengthAndPoint;
  throw std::invalid_argument("unknown model: " + text);
}

inline std::string to_string(Model m) {
  switch (m) {
    case Model::Point:
      return "point";
    case Model::Length:
      return "length";
    case Model::LengthAndPoint:
      return "lp";
  }
  return "?";
}

enum class Piece { L0, L1, L2, K0, K1, K2, M0, M1, M2, M2Dual };

inline std::string to_string(Piece p) {
  static const char* names[] = {"L0", "L1", "L2", "K0", "K1", "K2", "M0", "M1", "M2", "M2v"};
  return names[static_cast<int>(p)];
}

inline Model model_of(Piece p) {
  switch (p) {
    case Piece::L0:
    case Piece::L1:
    case Piece::L2:
      return Model::Point;
    case Piece::K0:
    case Piece::K1:
    case Piece::K2:
      return Model::Length;
    default:
      return Model::LengthAndPoint;
  }
}

inline bool is_second_order(Piece p) {
  return p == Piece::L2 || p == Piece::K2 || p == Piece::M2 || p == Piece::M2Dual;
}

namespace detail {

using Product = std::map<VarKey, int>;
using Image = std::vector<std::pair<Rational, Product>>;

inline void times_t(Product& p, int i) {
  if (i != 0) ++p[VarKey::t(i)];
}

inline Product tuple_product(const std::vector<std::vector<int>>& tuples, Symmetry sym) {
  Product p;
  for (const auto& t : tuples) ++p[VarKey::u(t, sym)];
  return p;
}

// Tuple entries i_{from}, i_{from+1}, ... up to but excluding position `to`,
// walking cyclically in direction `step`.
inline void append_run(std::vector<int>& out, const std::vector<int>& c, int from, int to, int step) {
  const int k = static_cast<int>(c.size());
  for (int j = from; j != to; j = ((j + step) % k + k) % k) out.push_back(c[j]);
}

inline Image first_order_image(Piece piece, const VarKey& v, Symmetry sym) {
  Image out;
  switch (piece) {
    case Piece::L0: {
      const int i = v.index();
      for (int j = 0; j <= i - 2; ++j) {
        Product p;
        times_t(p, j);
        times_t(p, i - j - 2);
        out.emplace_back(Rational(i, 2), std::move(p));
      }
      break;
    }
    case Piece::L1: {
      const int i = v.index();
      if (i >= 2) {
        Product p;
        times_t(p, i - 2);
        out.emplace_back(Rational((i - 1) * i, 2), std::move(p));
      }
      break;
    }
    case Piece::K0: {
      const int i = v.index();
      for (int j = 1; j <= i + 1; ++j) {
        Product p;
        ++p[VarKey::q(j)];
        ++p[VarKey::q(i - j + 2)];
        out.emplace_back(Rational(i, 2), std::move(p));
      }
      break;
    }
    case Piece::K1: {
      const int i = v.index();
      out.emplace_back(Rational(i * (i + 1), 2), Product{{VarKey::q(i + 2), 1}});
      break;
    }
    case Piece::M0:
    case Piece::M1: {
      const auto& c = v.entries;
      const int k = static_cast<int>(c.size());
      for (int I = 0; I < k; ++I) {
        for (int M = 0; M < k; ++M) {
          if (I == M) continue;
          for (int l = 0; l < c[I]; ++l) {
            for (int m = 0; m < c[M]; ++m) {
              if (piece == Piece::M0) {
                std::vector<int> a{c[I] - l - 1};
                append_run(a, c, (I + 1) % k, M, 1);
                a.push_back(m);
                std::vector<int> b{c[M] - m - 1};
                append_run(b, c, (M + 1) % k, I, 1);
                b.push_back(l);
                out.emplace_back(Rational(1, 2), tuple_product({a, b}, sym));
              } else {
                std::vector<int> a{m};
                append_run(a, c, (M - 1 + k) % k, I, -1);
                a.push_back(c[I] - l - 1);
                a.push_back(c[M] - m - 1);
                append_run(a, c, (M + 1) % k, I, 1);
                a.push_back(l);
                out.emplace_back(Rational(1, 2), tuple_product({a}, sym));
              }
            }
          }
        }
        for (int l = 0; l <= c[I] - 2; ++l) {
          for (int m = 0; l + m <= c[I] - 2; ++m) {
            const int rest = c[I] - l - m - 2;
            std::vector<int> tail;
            append_run(tail, c, (I + 1) % k, I, 1);
            if (piece == Piece::M0) {
              std::vector<int> a{l, m};
              a.insert(a.end(), tail.begin(), tail.end());
              out.emplace_back(Rational(1), tuple_product({a, {rest}}, sym));
            } else {
              std::vector<int> a{l, rest, m};
              a.insert(a.end(), tail.begin(), tail.end());
              out.emplace_back(Rational(1), tuple_product({a}, sym));
            }
          }
        }
      }
      break;
    }
    default:
      throw std::logic_error("not a first-order piece");
  }
  return out;
}

// S(v, w) of a second-order piece written as 1/2 sum_{v,w} S(v,w) d_v d_w.
inline Image second_order_image(Piece piece, const VarKey& v, const VarKey& w, Symmetry sym) {
  Image out;
  switch (piece) {
    case Piece::L2: {
      const int i = v.index(), j = w.index();
      Product p;
      times_t(p, i + j - 2);
      out.emplace_back(Rational(i * j), std::move(p));
      break;
    }
    case Piece::K2: {
      const int i = v.index(), j = w.index();
      out.emplace_back(Rational(i * j), Product{{VarKey::q(i + j + 2), 1}});
      break;
    }
    case Piece::M2:
    case Piece::M2Dual: {
      const auto& c = v.entries;
      const auto& d = w.entries;
      const int k = static_cast<int>(c.size()), kk = static_cast<int>(d.size());
      for (int I = 0; I < k; ++I) {
        for (int J = 0; J < kk; ++J) {
          for (int l = 0; l < c[I]; ++l) {
            for (int m = 0; m < d[J]; ++m) {
              std::vector<int> a;
              if (piece == Piece::M2) {
                a.push_back(c[I] - l - 1);
                append_run(a, c, (I + 1) % k, I, 1);
                a.push_back(l);
              } else {
                a.push_back(l);
                append_run(a, c, (I - 1 + k) % k, I, -1);
                a.push_back(c[I] - l - 1);
              }
              a.push_back(d[J] - m - 1);
              append_run(a, d, (J + 1) % kk, J, 1);
              a.push_back(m);
              out.emplace_back(Rational(1), tuple_product({a}, sym));
            }
          }
        }
      }
      break;
    }
    default:
      throw std::logic_error("not a second-order piece");
  }
  return out;
}

inline VarKind kind_for(Model m) {
  switch (m) {
    case Model::Point:
      return VarKind::T;
    case Model::Length:
      return VarKind::Q;
    case Model::LengthAndPoint:
      return VarKind::U;
  }
  return VarKind::U;
}

inline Monomial replace(const Monomial& m, const Product& remove, const Product& add) {
  Monomial r = m;
  for (const auto& [v, e] : remove) {
    auto it = r.vars.find(v);
    if ((it->second -= e) == 0) r.vars.erase(it);
  }
  for (const auto& [v, e] : add) r.vars[v] += e;
  return r;
}

}  // namespace detail

/// Applies one operator piece. `mode` selects necklace or bracelet
/// canonicalization of the u-tuples produced by the M pieces.
inline GradedSeries apply_piece(Piece piece, const GradedSeries& f, Orientation mode = Orientation::Oriented) {
  const Symmetry sym = symmetry_for(mode);
  const VarKind expected = detail::kind_for(model_of(piece));
  GradedSeries out(f.truncation());
  for (const auto& [m, c] : f.terms()) {
    for (const auto& [v, e] : m.vars) {
      if (v.kind != expected) throw std::invalid_argument("piece " + to_string(piece) + " does not act on " + to_string(v));
    }
    if (!is_second_order(piece)) {
      for (const auto& [v, e] : m.vars) {
        for (const auto& [w, prod] : detail::first_order_image(piece, v, sym)) {
          out.add_term(detail::replace(m, {{v, 1}}, prod), c.scaled(w * e));
        }
      }
      continue;
    }
    for (auto it = m.vars.begin(); it != m.vars.end(); ++it) {
      for (auto jt = it; jt != m.vars.end(); ++jt) {
        Rational mult;
        detail::Product removed;
        if (it == jt) {
          if (it->second < 2) continue;
          mult = Rational(it->second * (it->second - 1), 2);
          removed[it->first] = 2;
        } else {
          mult = Rational(it->second * jt->second);
          removed[it->first] = 1;
          removed[jt->first] = 1;
        }
        for (const auto& [w, prod] : detail::second_order_image(piece, it->first, jt->first, sym)) {
          out.add_term(detail::replace(m, removed, prod), c.scaled(w * mult));
        }
      }
    }
  }
  return out;
}

struct WeightedPiece {
  Piece piece;
  int x_power;
  Rational weight;
};

struct CutJoinOperator {
  Model model = Model::LengthAndPoint;
  Orientation orientation = Orientation::Oriented;
  std::vector<WeightedPiece> pieces;
};

inline CutJoinOperator assemble_operator(Model model, Orientation orientation) {
  CutJoinOperator op{model, orientation, {}};
  const bool oriented = orientation == Orientation::Oriented;
  auto second = Rational(oriented ? 1 : 2);
  switch (model) {
    case Model::Point:
      op.pieces.push_back({Piece::L0, 0, 1});
      if (!oriented) op.pieces.push_back({Piece::L1, 1, 1});
      op.pieces.push_back({Piece::L2, 2, second});
      break;
    case Model::Length:
      op.pieces.push_back({Piece::K0, 0, 1});
      if (!oriented) op.pieces.push_back({Piece::K1, 1, 1});
      op.pieces.push_back({Piece::K2, 2, second});
      break;
    case Model::LengthAndPoint:
      op.pieces.push_back({Piece::M0, 0, 1});
      if (!oriented) op.pieces.push_back({Piece::M1, 1, 1});
      op.pieces.push_back({Piece::M2, 2, 1});
      if (!oriented) op.pieces.push_back({Piece::M2Dual, 2, 1});
      break;
  }
  return op;
}

inline GradedSeries apply_operator(const CutJoinOperator& op, const GradedSeries& f) {
  GradedSeries out(f.truncation());
  for (const auto& wp : op.pieces) out += apply_piece(wp.piece, f, op.orientation).scaled(wp.weight, wp.x_power);
  return out;
}

/// exp(sign * x^-2 * sum_i s_i v_i) with v_i = u_(i), t_i (t_0 = 1), or the
/// length-model q_1 with a single uniform s. The lp and point models need a
/// site bound in the truncation.
inline GradedSeries initial_condition(Model model, Orientation orientation, const Truncation& trunc, int sign = 1) {
  GradedSeries f(trunc);
  const Rational c(sign);
  if (model == Model::Length) {
    f.add_term(Monomial{0, {{kUniformS, 1}}, {{VarKey::q(1), 1}}}, LaurentCoeff(-2, c));
    return exp_truncated(f);
  }
  if (!trunc.site_max) throw std::invalid_argument("initial condition needs a site bound");
  const Symmetry sym = symmetry_for(orientation);
  for (int i = 0; i <= *trunc.site_max; ++i) {
    Monomial m{0, {{i, 1}}, {}};
    if (model == Model::LengthAndPoint) {
      m.vars[VarKey::u({i}, sym)] = 1;
    } else if (i > 0) {
      m.vars[VarKey::t(i)] = 1;
    }
    f.add_term(m, LaurentCoeff(-2, c));
  }
  return exp_truncated(f);
}

/// sum_k y^k/k! op^k(init), built as Z_k = op(Z_{k-1}) / k.
inline GradedSeries evolve(const CutJoinOperator& op, const GradedSeries& init) {
  GradedSeries total = init;
  GradedSeries current = init;
  for (int k = 1; k <= init.truncation().y_max && !current.empty(); ++k) {
    GradedSeries next(init.truncation());
    const GradedSeries image = apply_operator(op, current);
    for (const auto& [m, c] : image.terms()) {
      Monomial shifted = m;
      ++shifted.y;
      next.add_term(shifted, c.scaled(Rational(1, k)));
    }
    current = std::move(next);
    total += current;
  }
  return total;
}

/// Censuses for every backbone block inside the truncation (all k).
inline std::vector<Census> census_blocks(Orientation mode, const Truncation& trunc, int threads = 1) {
  if (!trunc.site_max) throw std::invalid_argument("census blocks need a site bound");
  std::vector<Census> out;
  for (const auto& block : backbone_blocks(trunc.b_max, *trunc.site_max)) {
    out.push_back(census(EnumerationSpec{block, std::nullopt, mode, false}, threads));
  }
  return out;
}

/// Z = 1 + sum over blocks of prod(s_i^{b_i}/b_i!) times the block's Wick
/// expansion. Every block admitted by the truncation must be supplied.
inline GradedSeries assemble_Z_from_census(const std::vector<Census>& censuses, const Truncation& trunc) {
  std::map<std::vector<int>, const Census*> by_block;
  for (const auto& c : censuses) {
    if (c.spec.chords) throw std::invalid_argument("census block must cover every chord count");
    auto lengths = c.spec.backbone_lengths;
    std::sort(lengths.begin(), lengths.end());
    by_block[lengths] = &c;
  }
  GradedSeries z = GradedSeries::one(trunc);
  for (const auto& [block, c] : by_block) {
    std::map<int, int> s;
    for (int i : block) ++s[i];
    BigInt sym = 1;
    for (const auto& [i, e] : s) sym *= factorial(e);
    add_census_terms(z, *c, s, Rational(BigInt(1), sym));
  }
  if (trunc.site_max) {
    for (const auto& block : backbone_blocks(trunc.b_max, *trunc.site_max)) {
      if (!by_block.count(block)) throw std::invalid_argument("missing census block");
    }
  }
  return z;
}

/// b! [log Z] at the selector, b = total s degree of the selector.
inline Rational connected_numbers(const GradedSeries& z, const Selector& sel) {
  int b = 0;
  for (const auto& [i, e] : sel.s) b += e;
  return Rational(factorial(b)) * coefficient(log_truncated(z), sel);
}

}  // namespace chordlab
