#pragma once

#include <Eigen/Core>

#include <vector>

#include "plspan/rational.hpp"

namespace Eigen {

template <>
struct NumTraits<plspan::Rational> {
  using Real = plspan::Rational;
  using NonInteger = plspan::Rational;
  using Literal = long;
  using Nested = plspan::Rational;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 8,
    AddCost = 32,
    MulCost = 32,
  };
  static inline Real epsilon() { return plspan::Rational(0); }
  static inline Real dummy_precision() { return plspan::Rational(0); }
  static inline int digits10() { return 0; }
  static inline Real highest() { return plspan::Rational(0); }
  static inline Real lowest() { return plspan::Rational(0); }
};

}  // namespace Eigen

namespace plspan {

using VecQ = Eigen::Matrix<Rational, Eigen::Dynamic, 1>;
using MatQ = Eigen::Matrix<Rational, Eigen::Dynamic, Eigen::Dynamic>;
using Vec2Q = Eigen::Matrix<Rational, 2, 1>;
using Vec3Q = Eigen::Matrix<Rational, 3, 1>;
// A point of R^d; the dimension is carried at runtime.
using PointD = VecQ;

inline Vec2Q vec2(Rational x, Rational y) {
  Vec2Q v;
  v << std::move(x), std::move(y);
  return v;
}

inline Vec3Q vec3(Rational x, Rational y, Rational z) {
  Vec3Q v;
  v << std::move(x), std::move(y), std::move(z);
  return v;
}

template <typename A, typename B>
Rational dot(const Eigen::MatrixBase<A>& a, const Eigen::MatrixBase<B>& b) {
  Rational s = 0;
  for (Eigen::Index i = 0; i < a.size(); ++i) s += a(i) * b(i);
  return s;
}

template <typename A, typename B>
Rational cross2(const Eigen::MatrixBase<A>& a, const Eigen::MatrixBase<B>& b) {
  return a(0) * b(1) - a(1) * b(0);
}

template <typename A, typename B>
Vec3Q cross3(const Eigen::MatrixBase<A>& a, const Eigen::MatrixBase<B>& b) {
  return vec3(a(1) * b(2) - a(2) * b(1), a(2) * b(0) - a(0) * b(2),
              a(0) * b(1) - a(1) * b(0));
}

template <typename A>
bool is_zero_vec(const Eigen::MatrixBase<A>& a) {
  for (Eigen::Index i = 0; i < a.size(); ++i)
    if (!a(i).is_zero()) return false;
  return true;
}

template <typename A, typename B>
bool points_equal(const Eigen::MatrixBase<A>& a,
                  const Eigen::MatrixBase<B>& b) {
  if (a.size() != b.size()) return false;
  for (Eigen::Index i = 0; i < a.size(); ++i)
    if (a(i) != b(i)) return false;
  return true;
}

// Lexicographic order on coordinate vectors (used for deterministic
// tie-breaking, e.g. picking quad diagonals).
bool lex_less(const VecQ& a, const VecQ& b);

// Exact solution set of A x = b via Gauss-Jordan elimination.
// `particular` has every free variable set to zero; `kernel` is a basis of
// the homogeneous solution space.  Both are empty when inconsistent.
struct LinearSolution {
  bool consistent = false;
  VecQ particular;
  std::vector<VecQ> kernel;
  bool unique() const { return consistent && kernel.empty(); }
};
LinearSolution solve_linear(MatQ a, VecQ b);

// Exact determinant by fraction-free expansion; intended for tiny matrices
// (n <= 4 in this library).
Rational det(const MatQ& a);

// A projection frame for R^3: u, v span the diagram plane and w is the
// height direction; det[u v w] must be nonzero (positive for the frames the
// search produces).
struct ProjectionFrame {
  Vec3Q u, v, w;
};

inline Vec2Q project_point(const Vec3Q& x, const ProjectionFrame& f) {
  return vec2(dot(f.u, x), dot(f.v, x));
}

inline Rational height(const Vec3Q& x, const ProjectionFrame& f) {
  return dot(f.w, x);
}

// Inverse image of (s, t, h) under x -> (u.x, v.x, w.x).
Vec3Q lift_point(const Rational& s, const Rational& t, const Rational& h,
                 const ProjectionFrame& f);

}  // namespace plspan
