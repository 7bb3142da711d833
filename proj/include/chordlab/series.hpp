#pragma once

#include <cmath>
#include <compare>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "chordlab/cyclic_tuple.hpp"
#include "chordlab/rational.hpp"

namespace chordlab {

// ---------------------------------------------------------------------------
// Coefficients: Laurent polynomials in x = 1/N.

class LaurentCoeff {
 public:
  LaurentCoeff() = default;
  LaurentCoeff(int x_power, Rational value) { add(x_power, value); }

  const std::map<int, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  Rational at(int x_power) const {
    auto it = terms_.find(x_power);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  void add(int x_power, const Rational& value) {
    if (value == 0) return;
    auto [it, inserted] = terms_.try_emplace(x_power, value);
    if (!inserted) {
      it->second += value;
      if (it->second == 0) terms_.erase(it);
    }
  }

  LaurentCoeff& operator+=(const LaurentCoeff& o) {
    for (const auto& [p, v] : o.terms_) add(p, v);
    return *this;
  }

  LaurentCoeff scaled(const Rational& factor, int x_shift = 0) const {
    LaurentCoeff r;
    if (factor == 0) return r;
    for (const auto& [p, v] : terms_) r.terms_.emplace(p + x_shift, v * factor);
    return r;
  }

  friend LaurentCoeff operator*(const LaurentCoeff& a, const LaurentCoeff& b) {
    LaurentCoeff r;
    for (const auto& [p, v] : a.terms_) {
      for (const auto& [q, w] : b.terms_) r.add(p + q, v * w);
    }
    return r;
  }

  Rational sum() const {
    Rational s = 0;
    for (const auto& [p, v] : terms_) s += v;
    return s;
  }

  double evaluate(double x) const {
    double s = 0;
    for (const auto& [p, v] : terms_) s += to_double(v) * std::pow(x, p);
    return s;
  }

  friend bool operator==(const LaurentCoeff&, const LaurentCoeff&) = default;

 private:
  std::map<int, Rational> terms_;
};

// ---------------------------------------------------------------------------
// Monomials.

enum class VarKind { U, T, Q };

/// u(tuple), t_i or q_i. For U the entries are a canonical tuple; for T and Q a
/// single index.
struct VarKey {
  VarKind kind = VarKind::U;
  std::vector<int> entries;

  static VarKey u(const std::vector<int>& tuple, Symmetry sym) { return {VarKind::U, canonical_entries(tuple, sym)}; }
  static VarKey u(const CyclicTuple& tuple) { return {VarKind::U, tuple.entries()}; }
  static VarKey t(int i) { return {VarKind::T, {i}}; }
  static VarKey q(int i) { return {VarKind::Q, {i}}; }

  int index() const { return entries.at(0); }

  friend auto operator<=>(const VarKey&, const VarKey&) = default;
};

inline std::string to_string(const VarKey& v) {
  switch (v.kind) {
    case VarKind::U:
      return "u" + tuple_string(v.entries);
    case VarKind::T:
      return "t" + std::to_string(v.index());
    case VarKind::Q:
      return "q" + std::to_string(v.index());
  }
  return "?";
}

/// Key used for the backbone variable after the specialization s_i = s.
inline constexpr int kUniformS = -1;

struct Monomial {
  int y = 0;
  std::map<int, int> s;        // backbone length i -> exponent b_i
  std::map<VarKey, int> vars;  // spectrum variable -> exponent

  int s_degree() const {
    int d = 0;
    for (const auto& [i, e] : s) d += e;
    return d;
  }
  /// Sum of i*b_i over tracked backbone lengths.
  int site_weight() const {
    int w = 0;
    for (const auto& [i, e] : s) {
      if (i > 0) w += i * e;
    }
    return w;
  }
  bool is_one() const { return y == 0 && s.empty() && vars.empty(); }

  friend auto operator<=>(const Monomial&, const Monomial&) = default;
};

inline Monomial operator*(const Monomial& a, const Monomial& b) {
  Monomial r = a;
  r.y += b.y;
  for (const auto& [i, e] : b.s) r.s[i] += e;
  for (const auto& [v, e] : b.vars) r.vars[v] += e;
  return r;
}

inline std::string to_string(const Monomial& m) {
  std::string out;
  auto append = [&](const std::string& factor, int e) {
    if (!out.empty()) out += '*';
    out += factor;
    if (e != 1) out += '^' + std::to_string(e);
  };
  if (m.y) append("y", m.y);
  for (const auto& [i, e] : m.s) append(i == kUniformS ? std::string("s") : "s" + std::to_string(i), e);
  for (const auto& [v, e] : m.vars) append(to_string(v), e);
  return out.empty() ? "1" : out;
}

inline std::string to_string(const LaurentCoeff& c) {
  if (c.is_zero()) return "0";
  std::string out;
  for (const auto& [p, v] : c.terms()) {
    if (!out.empty()) out += " + ";
    out += "(" + to_string(v) + ")";
    if (p) out += "*x^" + std::to_string(p);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Truncated series.

struct Truncation {
  int y_max = 0;
  int b_max = 0;
  std::optional<int> site_max;  // bound on sum of i*b_i

  bool admits(const Monomial& m) const {
    if (m.y > y_max || m.s_degree() > b_max) return false;
    return !site_max || m.site_weight() <= *site_max;
  }
  friend bool operator==(const Truncation&, const Truncation&) = default;
};

inline Truncation intersect(const Truncation& a, const Truncation& b) {
  Truncation t{std::min(a.y_max, b.y_max), std::min(a.b_max, b.b_max), a.site_max};
  if (b.site_max) t.site_max = a.site_max ? std::min(*a.site_max, *b.site_max) : *b.site_max;
  return t;
}

class GradedSeries {
 public:
  using Terms = std::map<Monomial, LaurentCoeff>;

  explicit GradedSeries(Truncation trunc = {}) : trunc_(trunc) {}

  static GradedSeries one(Truncation trunc) {
    GradedSeries r(trunc);
    r.add_term(Monomial{}, LaurentCoeff(0, 1));
    return r;
  }

  const Truncation& truncation() const { return trunc_; }
  const Terms& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  /// Adds c*m; silently drops monomials outside the truncation.
  void add_term(const Monomial& m, const LaurentCoeff& c) {
    if (c.is_zero() || !trunc_.admits(m)) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  LaurentCoeff coefficient_of(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? LaurentCoeff{} : it->second;
  }

  GradedSeries& operator+=(const GradedSeries& o) {
    check_same(o);
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }

  GradedSeries& operator-=(const GradedSeries& o) {
    check_same(o);
    for (const auto& [m, c] : o.terms_) add_term(m, c.scaled(-1));
    return *this;
  }

  friend GradedSeries operator+(GradedSeries a, const GradedSeries& b) { return a += b; }
  friend GradedSeries operator-(GradedSeries a, const GradedSeries& b) { return a -= b; }

  friend GradedSeries operator*(const GradedSeries& a, const GradedSeries& b) {
    a.check_same(b);
    GradedSeries r(a.trunc_);
    for (const auto& [m1, c1] : a.terms_) {
      for (const auto& [m2, c2] : b.terms_) {
        Monomial m = m1 * m2;
        if (!r.trunc_.admits(m)) continue;
        r.add_term(m, c1 * c2);
      }
    }
    return r;
  }

  GradedSeries scaled(const Rational& factor, int x_shift = 0) const {
    GradedSeries r(trunc_);
    for (const auto& [m, c] : terms_) r.add_term(m, c.scaled(factor, x_shift));
    return r;
  }

  /// Same terms, re-truncated (drops whatever the new bounds exclude).
  GradedSeries with_truncation(const Truncation& t) const {
    GradedSeries r(t);
    for (const auto& [m, c] : terms_) r.add_term(m, c);
    return r;
  }

  friend bool operator==(const GradedSeries& a, const GradedSeries& b) {
    return a.trunc_ == b.trunc_ && a.terms_ == b.terms_;
  }

 private:
  void check_same(const GradedSeries& o) const {
    if (!(trunc_ == o.trunc_)) throw std::invalid_argument("truncation mismatch");
  }

  Truncation trunc_;
  Terms terms_;
};

inline GradedSeries add(const GradedSeries& a, const GradedSeries& b) { return a + b; }
inline GradedSeries mul(const GradedSeries& a, const GradedSeries& b) { return a * b; }

namespace detail {

inline int nilpotent_degree(const Monomial& m) { return m.y + m.s_degree(); }

}  // namespace detail

/// exp(f) for f whose every term carries positive y+s degree.
inline GradedSeries exp_truncated(const GradedSeries& f) {
  for (const auto& [m, c] : f.terms()) {
    if (detail::nilpotent_degree(m) <= 0) {
      throw std::invalid_argument("exp: every term needs positive y or s degree");
    }
  }
  const Truncation& t = f.truncation();
  GradedSeries result = GradedSeries::one(t);
  GradedSeries power = GradedSeries::one(t);
  for (int n = 1; n <= t.y_max + t.b_max && !power.empty(); ++n) {
    power = (power * f).scaled(Rational(1, n));
    result += power;
  }
  return result;
}

/// log(g) for g = 1 + h, h of positive y+s degree.
inline GradedSeries log_truncated(const GradedSeries& g) {
  const Truncation& t = g.truncation();
  GradedSeries h = g - GradedSeries::one(t);
  for (const auto& [m, c] : h.terms()) {
    if (detail::nilpotent_degree(m) <= 0) throw std::invalid_argument("log: constant term must be 1");
  }
  GradedSeries result(t);
  GradedSeries power = GradedSeries::one(t);
  for (int n = 1; n <= t.y_max + t.b_max && !(power = power * h).empty(); ++n) {
    result += power.scaled(Rational(n % 2 ? 1 : -1, n));
  }
  return result;
}

// ---------------------------------------------------------------------------
// Coefficient extraction.

/// Picks y^k prod s_i^{b_i} and optionally a spectrum monomial and a power of x.
/// Omitted parts are summed over (x -> 1, spectrum variables -> 1).
struct Selector {
  int y = 0;
  std::map<int, int> s;
  std::optional<std::map<VarKey, int>> vars;
  std::optional<int> x_power;
};

/// x-power of a connected surface: x^{2g-2} oriented, x^{h-2} non-oriented.
inline int x_power_for_genus(bool oriented, int euler_genus) {
  return oriented ? 2 * euler_genus - 2 : euler_genus - 2;
}

inline Rational coefficient(const GradedSeries& series, const Selector& sel) {
  Rational total = 0;
  for (const auto& [m, c] : series.terms()) {
    if (m.y != sel.y || m.s != sel.s) continue;
    if (sel.vars && m.vars != *sel.vars) continue;
    total += sel.x_power ? c.at(*sel.x_power) : c.sum();
  }
  return total;
}

// ---------------------------------------------------------------------------
// Substitutions.

/// Applies a per-variable substitution: each variable maps to a (possibly
/// empty) product of variables, or to zero (nullopt).
inline GradedSeries substitute(const GradedSeries& f,
                               const std::function<std::optional<std::map<VarKey, int>>(const VarKey&)>& image) {
  GradedSeries r(f.truncation());
  for (const auto& [m, c] : f.terms()) {
    Monomial out{m.y, m.s, {}};
    bool zero = false;
    for (const auto& [v, e] : m.vars) {
      auto img = image(v);
      if (!img) {
        zero = true;
        break;
      }
      for (const auto& [w, f2] : *img) out.vars[w] += f2 * e;
    }
    if (!zero) r.add_term(out, c);
  }
  return r;
}

/// u(i_1..i_K) -> t_{i_1+..+i_K}, with t_0 = 1.
inline GradedSeries project_point(const GradedSeries& f) {
  return substitute(f, [](const VarKey& v) -> std::optional<std::map<VarKey, int>> {
    if (v.kind != VarKind::U) return std::map<VarKey, int>{{v, 1}};
    int sum = 0;
    for (int e : v.entries) sum += e;
    if (sum == 0) return std::map<VarKey, int>{};
    return std::map<VarKey, int>{{VarKey::t(sum), 1}};
  });
}

/// u(0,..,0) of length K -> q_K; any tuple with a marked point -> 0.
inline GradedSeries project_length(const GradedSeries& f) {
  return substitute(f, [](const VarKey& v) -> std::optional<std::map<VarKey, int>> {
    if (v.kind != VarKind::U) return std::map<VarKey, int>{{v, 1}};
    for (int e : v.entries) {
      if (e != 0) return std::nullopt;
    }
    return std::map<VarKey, int>{{VarKey::q(static_cast<int>(v.entries.size())), 1}};
  });
}

/// s_i -> s for every i. The result's truncation drops the site bound.
inline GradedSeries uniform_s(const GradedSeries& f) {
  Truncation t = f.truncation();
  t.site_max.reset();
  GradedSeries r(t);
  for (const auto& [m, c] : f.terms()) {
    Monomial out{m.y, {}, m.vars};
    int d = m.s_degree();
    if (d) out.s[kUniformS] = d;
    r.add_term(out, c);
  }
  return r;
}

/// Reinstates t_0 in a point-model series: each term gets t_0^{n_0}, where n_0
/// is the number of boundaries without marked points, read off from
/// b - k + n = -(x power).
inline GradedSeries restore_t0(const GradedSeries& f) {
  GradedSeries r(f.truncation());
  for (const auto& [m, c] : f.terms()) {
    int nonzero = 0;
    for (const auto& [v, e] : m.vars) {
      if (v.kind != VarKind::T) throw std::invalid_argument("restore_t0 expects a point-model series");
      if (v.index() == 0) throw std::invalid_argument("series already carries t_0");
      nonzero += e;
    }
    for (const auto& [p, val] : c.terms()) {
      const int n = -p - m.s_degree() + m.y;
      const int n0 = n - nonzero;
      if (n0 < 0) throw std::invalid_argument("restore_t0: inconsistent boundary count");
      Monomial out = m;
      if (n0 > 0) out.vars[VarKey::t(0)] = n0;
      r.add_term(out, LaurentCoeff(p, val));
    }
  }
  return r;
}

/// Numeric value with y = 1 and every s_i = 1.
inline double evaluate(const GradedSeries& f, double x, const std::function<double(const VarKey&)>& value) {
  double total = 0;
  for (const auto& [m, c] : f.terms()) {
    double term = c.evaluate(x);
    for (const auto& [v, e] : m.vars) term *= std::pow(value(v), e);
    total += term;
  }
  return total;
}

}  // namespace chordlab
