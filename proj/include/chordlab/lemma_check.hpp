#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "chordlab/cutjoin.hpp"
#include "chordlab/series.hpp"

namespace chordlab {

using Matrix = Eigen::MatrixXd;

enum class LemmaVariant { PointOriented, LengthOriented, LpOriented, PointNonOriented, LengthNonOriented, LpNonOriented };

inline const std::vector<LemmaVariant>& all_lemma_variants() {
  static const std::vector<LemmaVariant> all{LemmaVariant::PointOriented,    LemmaVariant::LengthOriented,
                                             LemmaVariant::LpOriented,       LemmaVariant::PointNonOriented,
                                             LemmaVariant::LengthNonOriented, LemmaVariant::LpNonOriented};
  return all;
}

inline std::string to_string(LemmaVariant v) {
  static const char* names[] = {"point-oriented",    "length-oriented",    "lp-oriented",
                                "point-nonoriented", "length-nonoriented", "lp-nonoriented"};
  return names[static_cast<int>(v)];
}

inline LemmaVariant parse_lemma_variant(const std::string& text) {
  for (auto v : all_lemma_variants()) {
    if (to_string(v) == text) return v;
  }
  throw std::invalid_argument("unknown lemma: " + text);
}

inline Model lemma_model(LemmaVariant v) {
  switch (v) {
    case LemmaVariant::PointOriented:
    case LemmaVariant::PointNonOriented:
      return Model::Point;
    case LemmaVariant::LengthOriented:
    case LemmaVariant::LengthNonOriented:
      return Model::Length;
    default:
      return Model::LengthAndPoint;
  }
}

inline Orientation lemma_orientation(LemmaVariant v) {
  return static_cast<int>(v) < 3 ? Orientation::Oriented : Orientation::NonOriented;
}

/// The matrices a set of Miwa variables is built from: r_i = Tr P^i/N,
/// q_i = Tr W^i/N, u_(i_1..i_K) = Tr(P^{i_1} W ... P^{i_K} W)/N, where W is the
/// inverse of the length matrix.
template <typename Scalar>
struct BasicMiwaMatrices {
  using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  Mat p;
  Mat w;
};
using MiwaMatrices = BasicMiwaMatrices<double>;

template <typename Mat>
Mat checked_inverse(const Mat& m) {
  Eigen::FullPivLU<Mat> lu(m);
  if (!lu.isInvertible()) throw std::invalid_argument("singular length matrix");
  Eigen::JacobiSVD<Mat> svd(m);
  const auto& sv = svd.singularValues();
  if (sv(sv.size() - 1) < 1e-8 * sv(0)) throw std::invalid_argument("ill-conditioned length matrix");
  return lu.inverse();
}

template <typename Scalar>
Scalar miwa_value(const BasicMiwaMatrices<Scalar>& mm, const VarKey& v) {
  using Mat = typename BasicMiwaMatrices<Scalar>::Mat;
  const auto n = mm.w.rows();
  auto power = [&](const Mat& m, int e) {
    Mat r = Mat::Identity(n, n);
    for (int i = 0; i < e; ++i) r = r * m;
    return r;
  };
  switch (v.kind) {
    case VarKind::T:
      return power(mm.p, v.index()).trace() / Scalar(n);
    case VarKind::Q:
      return power(mm.w, v.index()).trace() / Scalar(n);
    case VarKind::U: {
      Mat acc = Mat::Identity(n, n);
      for (int e : v.entries) acc = acc * power(mm.p, e) * mm.w;
      return acc.trace() / Scalar(n);
    }
  }
  return 0;
}

/// Values of the requested variables.
inline std::map<VarKey, double> miwa_eval(const MiwaMatrices& mm, const std::vector<VarKey>& keys) {
  std::map<VarKey, double> out;
  for (const auto& k : keys) out[k] = miwa_value(mm, k);
  return out;
}

/// Input of one lemma instance: `a` is the matrix being differentiated;
/// `length` is the fixed length matrix of the lp variants.
struct LemmaPoint {
  Matrix a;
  Matrix length;
};

template <typename Scalar = double>
BasicMiwaMatrices<Scalar> lemma_miwa(LemmaVariant v, const LemmaPoint& pt) {
  using Mat = typename BasicMiwaMatrices<Scalar>::Mat;
  const bool sym = lemma_orientation(v) == Orientation::NonOriented;
  auto eff = [&](const Matrix& m) -> Mat {
    Mat c = m.cast<Scalar>();
    return sym ? Mat(c + c.transpose()) : c;
  };
  const auto n = pt.a.rows();
  switch (lemma_model(v)) {
    case Model::Point:
      return {eff(pt.a), Mat::Identity(n, n)};
    case Model::Length:
      return {Mat::Zero(n, n), checked_inverse(eff(pt.a))};
    case Model::LengthAndPoint:
      return {eff(pt.a), checked_inverse(eff(pt.length))};
  }
  return {};
}

enum class FdScheme {
  Central,     // second-order central differences at step h
  Richardson,  // (4 D(h/2) - D(h)) / 3 from the same central differences
};

namespace detail {

using LongMatrix = Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>;

// F(A) = f(miwa(A)) in extended precision, so the differences lose fewer digits.
inline long double lemma_function(LemmaVariant v, const GradedSeries& f, const LemmaPoint& pt, const LongMatrix& a) {
  const auto n = a.rows();
  const long double x = 1.0L / n;
  const bool sym = lemma_orientation(v) == Orientation::NonOriented;
  LongMatrix eff = sym ? LongMatrix(a + a.transpose()) : a;
  BasicMiwaMatrices<long double> mm;
  switch (lemma_model(v)) {
    case Model::Point:
      mm = {eff, LongMatrix::Identity(n, n)};
      break;
    case Model::Length:
      mm = {LongMatrix::Zero(n, n), checked_inverse(eff)};
      break;
    case Model::LengthAndPoint: {
      LongMatrix l = pt.length.cast<long double>();
      mm = {eff, checked_inverse(sym ? LongMatrix(l + l.transpose()) : l)};
      break;
    }
  }
  long double total = 0;
  for (const auto& [m, c] : f.terms()) {
    long double coeff = 0;
    for (const auto& [p, val] : c.terms()) coeff += static_cast<long double>(to_double(val)) * std::pow(x, p);
    for (const auto& [key, e] : m.vars) coeff *= std::pow(miwa_value(mm, key), e);
    total += coeff;
  }
  return total;
}

}  // namespace detail

/// Central second-difference Hessian of F(A) = f(miwa(A)) over the N^2 entries
/// of A: the three-point rule on the diagonal, the four-point mixed rule off it.
inline Matrix fd_hessian(LemmaVariant v, const GradedSeries& f, const LemmaPoint& pt, double h) {
  const int n = static_cast<int>(pt.a.rows());
  const int dim = n * n;
  const detail::LongMatrix base = pt.a.cast<long double>();
  const long double step = h;
  Matrix hess(dim, dim);
  const long double centre = detail::lemma_function(v, f, pt, base);
  for (int i = 0; i < dim; ++i) {
    for (int j = i; j < dim; ++j) {
      auto shifted = [&](int si, int sj) {
        detail::LongMatrix a = base;
        a(i / n, i % n) += si * step;
        a(j / n, j % n) += sj * step;
        return detail::lemma_function(v, f, pt, a);
      };
      const long double d =
          i == j ? (shifted(1, 0) - 2 * centre + shifted(-1, 0)) / (step * step)
                 : (shifted(1, 1) - shifted(1, -1) - shifted(-1, 1) + shifted(-1, -1)) / (4 * step * step);
      hess(i, j) = hess(j, i) = static_cast<double>(d);
    }
  }
  return hess;
}

/// Prefactor times the contracted second derivative, by finite differences:
/// plain Tr d^2/dA^2 for point and length, Tr[W^T d/dA W^T d/dA] for lp.
inline double fd_contracted_second_derivative(LemmaVariant v, const GradedSeries& f, const LemmaPoint& pt,
                                              double h = 1e-4, FdScheme scheme = FdScheme::Richardson) {
  if (scheme == FdScheme::Richardson) {
    const double coarse = fd_contracted_second_derivative(v, f, pt, h, FdScheme::Central);
    const double fine = fd_contracted_second_derivative(v, f, pt, h / 2, FdScheme::Central);
    return (4 * fine - coarse) / 3;
  }
  const int n = static_cast<int>(pt.a.rows());
  Matrix hess = fd_hessian(v, f, pt, h);
  auto at = [&](int r1, int c1, int r2, int c2) { return hess(r1 * n + c1, r2 * n + c2); };
  double total = 0;
  if (lemma_model(v) != Model::LengthAndPoint) {
    for (int al = 0; al < n; ++al) {
      for (int be = 0; be < n; ++be) total += at(be, al, al, be);
    }
  } else {
    const Matrix w = lemma_miwa(v, pt).w;
    for (int al = 0; al < n; ++al)
      for (int be = 0; be < n; ++be)
        for (int ga = 0; ga < n; ++ga)
          for (int de = 0; de < n; ++de) total += w(be, al) * w(de, ga) * at(be, ga, de, al);
  }
  const double prefactor = lemma_orientation(v) == Orientation::Oriented ? 1.0 / (2 * n) : 1.0 / (4 * n);
  const double r = prefactor * total;
  if (!std::isfinite(r)) throw std::runtime_error("non-finite finite-difference result");
  return r;
}

/// The cut-and-join operator applied to f, evaluated at x = 1/N and the Miwa values.
inline double operator_side(LemmaVariant v, const GradedSeries& f, const LemmaPoint& pt) {
  const int n = static_cast<int>(pt.a.rows());
  const GradedSeries g = apply_operator(assemble_operator(lemma_model(v), lemma_orientation(v)), f);
  const MiwaMatrices mm = lemma_miwa(v, pt);
  return evaluate(g, 1.0 / n, [&](const VarKey& k) { return miwa_value(mm, k); });
}

inline double relative_error(double fd, double op) { return std::abs(fd - op) / std::max(1.0, std::abs(op)); }

/// Random test polynomial in the variant's variables: 1-3 terms of degree 1-3,
/// indices at most 4, small integer coefficients.
inline GradedSeries random_lemma_polynomial(LemmaVariant v, std::mt19937_64& rng) {
  const Symmetry sym = symmetry_for(lemma_orientation(v));
  std::uniform_int_distribution<int> terms_d(1, 3), deg_d(1, 3), idx_d(1, 4), coef_d(1, 5), sign_d(0, 1),
      len_d(1, 3);
  auto random_var = [&]() -> VarKey {
    switch (lemma_model(v)) {
      case Model::Point:
        return VarKey::t(idx_d(rng));
      case Model::Length:
        return VarKey::q(idx_d(rng));
      case Model::LengthAndPoint: {
        const int len = len_d(rng);
        int budget = idx_d(rng);
        std::vector<int> e(len, 0);
        std::uniform_int_distribution<int> pos_d(0, len - 1);
        while (budget-- > 0) ++e[pos_d(rng)];
        return VarKey::u(e, sym);
      }
    }
    return {};
  };
  GradedSeries f(Truncation{0, 0, std::nullopt});
  const int terms = terms_d(rng);
  for (int t = 0; t < terms; ++t) {
    Monomial m;
    const int deg = deg_d(rng);
    for (int d = 0; d < deg; ++d) ++m.vars[random_var()];
    f.add_term(m, LaurentCoeff(0, Rational(sign_d(rng) ? coef_d(rng) : -coef_d(rng))));
  }
  return f;
}

/// A random instance: entries of the differentiated matrix in [-1, 1]; length
/// matrices I + 0.3 R.
inline LemmaPoint random_lemma_point(LemmaVariant v, int n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  auto random_matrix = [&]() {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) m(i, j) = u(rng);
    return m;
  };
  const Matrix id = Matrix::Identity(n, n);
  // R has entries in [-1, 1] scaled to unit spectral norm, so the singular
  // values of I + 0.3 R lie in [0.7, 1.3].
  auto length_matrix = [&]() {
    Matrix r = random_matrix();
    r /= Eigen::JacobiSVD<Matrix>(r).singularValues()(0);
    return Matrix(id + 0.3 * r);
  };
  LemmaPoint pt;
  if (lemma_model(v) == Model::Length) {
    pt.a = length_matrix();
    pt.length = Matrix::Zero(n, n);
  } else {
    pt.a = random_matrix();
    pt.length = length_matrix();
  }
  return pt;
}

struct LemmaReport {
  LemmaVariant which = LemmaVariant::PointOriented;
  int n = 0;
  int trials = 0;
  double tol = 0;
  double max_rel_err = 0;
  bool pass = false;
};

inline LemmaReport check_lemma(LemmaVariant which, int n, int trials, double tol, std::uint64_t seed, double h = 1e-4,
                               FdScheme scheme = FdScheme::Richardson) {
  if (n < 2) throw std::invalid_argument("matrix size must be at least 2");
  if (trials < 1) throw std::invalid_argument("need at least one trial");
  std::mt19937_64 rng(seed * 1000003ULL + static_cast<std::uint64_t>(which) * 97ULL + static_cast<std::uint64_t>(n));
  LemmaReport rep{which, n, trials, tol, 0.0, true};
  for (int t = 0; t < trials; ++t) {
    const GradedSeries f = random_lemma_polynomial(which, rng);
    const LemmaPoint pt = random_lemma_point(which, n, rng);
    const double fd = fd_contracted_second_derivative(which, f, pt, h, scheme);
    const double op = operator_side(which, f, pt);
    rep.max_rel_err = std::max(rep.max_rel_err, relative_error(fd, op));
  }
  rep.pass = rep.max_rel_err < tol;
  return rep;
}

}  // namespace chordlab
