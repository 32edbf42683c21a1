#include "plspan/linalg.hpp"

namespace plspan {

bool lex_less(const VecQ& a, const VecQ& b) {
  Eigen::Index n = std::min(a.size(), b.size());
  for (Eigen::Index i = 0; i < n; ++i) {
    if (a(i) != b(i)) return a(i) < b(i);
  }
  return a.size() < b.size();
}

LinearSolution solve_linear(MatQ a, VecQ b) {
  const Eigen::Index rows = a.rows();
  const Eigen::Index cols = a.cols();
  if (b.size() != rows) throw Error("solve_linear: shape mismatch");

  std::vector<Eigen::Index> pivot_col_of_row;
  Eigen::Index row = 0;
  for (Eigen::Index col = 0; col < cols && row < rows; ++col) {
    Eigen::Index p = -1;
    for (Eigen::Index r = row; r < rows; ++r) {
      if (!a(r, col).is_zero()) {
        p = r;
        break;
      }
    }
    if (p < 0) continue;
    if (p != row) {
      a.row(p).swap(a.row(row));
      swap(b(p), b(row));
    }
    Rational inv = Rational(1) / a(row, col);
    for (Eigen::Index c = col; c < cols; ++c) a(row, c) *= inv;
    b(row) *= inv;
    for (Eigen::Index r = 0; r < rows; ++r) {
      if (r == row || a(r, col).is_zero()) continue;
      Rational f = a(r, col);
      for (Eigen::Index c = col; c < cols; ++c) a(r, c) -= f * a(row, c);
      b(r) -= f * b(row);
    }
    pivot_col_of_row.push_back(col);
    ++row;
  }

  LinearSolution out;
  for (Eigen::Index r = row; r < rows; ++r) {
    if (!b(r).is_zero()) return out;  // inconsistent
  }
  out.consistent = true;

  std::vector<bool> is_pivot(static_cast<size_t>(cols), false);
  for (Eigen::Index c : pivot_col_of_row) is_pivot[static_cast<size_t>(c)] = true;

  out.particular = VecQ::Zero(cols);
  for (size_t r = 0; r < pivot_col_of_row.size(); ++r)
    out.particular(pivot_col_of_row[r]) = b(static_cast<Eigen::Index>(r));

  for (Eigen::Index c = 0; c < cols; ++c) {
    if (is_pivot[static_cast<size_t>(c)]) continue;
    VecQ k = VecQ::Zero(cols);
    k(c) = 1;
    for (size_t r = 0; r < pivot_col_of_row.size(); ++r)
      k(pivot_col_of_row[r]) = -a(static_cast<Eigen::Index>(r), c);
    out.kernel.push_back(std::move(k));
  }
  return out;
}

Rational det(const MatQ& a) {
  if (a.rows() != a.cols()) throw Error("det: non-square matrix");
  const Eigen::Index n = a.rows();
  if (n == 0) return 1;
  if (n == 1) return a(0, 0);
  if (n == 2) return a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0);
  // Laplace expansion along the first row; fine for the n <= 4 uses here.
  Rational acc = 0;
  for (Eigen::Index j = 0; j < n; ++j) {
    if (a(0, j).is_zero()) continue;
    MatQ minor(n - 1, n - 1);
    for (Eigen::Index r = 1; r < n; ++r) {
      Eigen::Index cc = 0;
      for (Eigen::Index c = 0; c < n; ++c) {
        if (c == j) continue;
        minor(r - 1, cc++) = a(r, c);
      }
    }
    Rational term = a(0, j) * det(minor);
    if (j % 2 == 0)
      acc += term;
    else
      acc -= term;
  }
  return acc;
}

Vec3Q lift_point(const Rational& s, const Rational& t, const Rational& h,
                 const ProjectionFrame& f) {
  MatQ m(3, 3);
  m.row(0) = f.u.transpose();
  m.row(1) = f.v.transpose();
  m.row(2) = f.w.transpose();
  VecQ rhs(3);
  rhs << s, t, h;
  LinearSolution sol = solve_linear(std::move(m), std::move(rhs));
  if (!sol.unique()) throw Error("lift_point: frame is singular");
  return Vec3Q(sol.particular);
}

}  // namespace plspan
