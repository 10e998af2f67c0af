// Exact Gauss-Jordan elimination over a field on dense Eigen matrices.
#pragma once

#include "almab/exterior.hpp"

#include <optional>
#include <vector>

namespace almab {

/// Reduced row echelon form: `rows` holds exactly rank() rows, pivot
/// column of row i is pivots[i] (strictly increasing).
template <class Scalar>
struct Echelon {
  DenseMatrix<Scalar> rows;
  std::vector<Eigen::Index> pivots;

  Eigen::Index rank() const { return static_cast<Eigen::Index>(pivots.size()); }
  Eigen::Index cols() const { return rows.cols(); }
};

template <class Scalar>
Echelon<Scalar> rref(DenseMatrix<Scalar> m) {
  Echelon<Scalar> e;
  const Eigen::Index nrows = m.rows();
  const Eigen::Index ncols = m.cols();
  Eigen::Index r = 0;
  for (Eigen::Index c = 0; c < ncols && r < nrows; ++c) {
    Eigen::Index p = r;
    while (p < nrows && is_zero(m(p, c))) ++p;
    if (p == nrows) continue;
    if (p != r) m.row(p).swap(m.row(r));
    Scalar inv = Scalar(1) / m(r, c);
    for (Eigen::Index j = c; j < ncols; ++j) {
      if (!is_zero(m(r, j))) m(r, j) *= inv;
    }
    for (Eigen::Index i = 0; i < nrows; ++i) {
      if (i == r || is_zero(m(i, c))) continue;
      Scalar f = m(i, c);
      for (Eigen::Index j = c; j < ncols; ++j) {
        if (!is_zero(m(r, j))) m(i, j) -= f * m(r, j);
      }
    }
    e.pivots.push_back(c);
    ++r;
  }
  e.rows = m.topRows(r);
  return e;
}

template <class Scalar>
Eigen::Index rank(const DenseMatrix<Scalar>& m) {
  return rref<Scalar>(m).rank();
}

/// Basis of {v : m v = 0} as the rows of the returned matrix, in reduced
/// echelon form.
template <class Scalar>
DenseMatrix<Scalar> kernel(const DenseMatrix<Scalar>& m) {
  Echelon<Scalar> e = rref<Scalar>(m);
  const Eigen::Index n = m.cols();
  std::vector<bool> is_pivot(static_cast<std::size_t>(n), false);
  for (auto p : e.pivots) is_pivot[static_cast<std::size_t>(p)] = true;
  std::vector<Eigen::Index> free;
  for (Eigen::Index c = 0; c < n; ++c) {
    if (!is_pivot[static_cast<std::size_t>(c)]) free.push_back(c);
  }
  DenseMatrix<Scalar> k = DenseMatrix<Scalar>::Constant(static_cast<Eigen::Index>(free.size()), n, Scalar(0));
  for (std::size_t f = 0; f < free.size(); ++f) {
    Eigen::Index fc = free[f];
    k(static_cast<Eigen::Index>(f), fc) = Scalar(1);
    for (Eigen::Index i = 0; i < e.rank(); ++i) {
      if (!is_zero(e.rows(i, fc))) k(static_cast<Eigen::Index>(f), e.pivots[static_cast<std::size_t>(i)]) = -e.rows(i, fc);
    }
  }
  if (k.rows() == 0) return k;
  return rref<Scalar>(k).rows;
}

/// Reduces v against an echelon basis; the result is zero iff v lies in its span.
template <class Scalar>
DenseVector<Scalar> reduce(DenseVector<Scalar> v, const Echelon<Scalar>& e) {
  for (Eigen::Index i = 0; i < e.rank(); ++i) {
    Eigen::Index p = e.pivots[static_cast<std::size_t>(i)];
    if (is_zero(v(p))) continue;
    Scalar f = v(p);
    for (Eigen::Index j = p; j < v.size(); ++j) {
      if (!is_zero(e.rows(i, j))) v(j) -= f * e.rows(i, j);
    }
  }
  return v;
}

template <class Scalar>
bool is_zero_vector(const DenseVector<Scalar>& v) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (!is_zero(v(i))) return false;
  }
  return true;
}

template <class Scalar>
bool in_row_space(const DenseVector<Scalar>& v, const Echelon<Scalar>& e) {
  return is_zero_vector<Scalar>(reduce<Scalar>(v, e));
}

/// Incrementally maintained span; used to pick complements greedily.
template <class Scalar>
class SpanBuilder {
 public:
  explicit SpanBuilder(Eigen::Index cols) : echelon_{DenseMatrix<Scalar>(0, cols), {}} {}
  explicit SpanBuilder(const DenseMatrix<Scalar>& rows) : echelon_(rref<Scalar>(rows)) {}

  /// Adds v if independent; returns whether it was added.
  bool add(const DenseVector<Scalar>& v) {
    if (in_row_space<Scalar>(v, echelon_)) return false;
    DenseMatrix<Scalar> stacked(echelon_.rows.rows() + 1, echelon_.rows.cols());
    stacked.topRows(echelon_.rows.rows()) = echelon_.rows;
    stacked.row(echelon_.rows.rows()) = v.transpose();
    echelon_ = rref<Scalar>(std::move(stacked));
    return true;
  }
  bool contains(const DenseVector<Scalar>& v) const { return in_row_space<Scalar>(v, echelon_); }
  Eigen::Index rank() const { return echelon_.rank(); }
  const Echelon<Scalar>& echelon() const { return echelon_; }

 private:
  Echelon<Scalar> echelon_;
};

/// Particular solution of m x = b with all free variables zero.
template <class Scalar>
std::optional<DenseVector<Scalar>> solve(const DenseMatrix<Scalar>& m, const DenseVector<Scalar>& b) {
  DenseMatrix<Scalar> aug(m.rows(), m.cols() + 1);
  aug.leftCols(m.cols()) = m;
  aug.col(m.cols()) = b;
  Echelon<Scalar> e = rref<Scalar>(std::move(aug));
  DenseVector<Scalar> x = DenseVector<Scalar>::Constant(m.cols(), Scalar(0));
  for (Eigen::Index i = 0; i < e.rank(); ++i) {
    Eigen::Index p = e.pivots[static_cast<std::size_t>(i)];
    if (p == m.cols()) return std::nullopt;
    x(p) = e.rows(i, m.cols());
  }
  return x;
}

/// Row spaces of a and b coincide.
template <class Scalar>
bool same_row_space(const DenseMatrix<Scalar>& a, const DenseMatrix<Scalar>& b) {
  Echelon<Scalar> ea = rref<Scalar>(a);
  Echelon<Scalar> eb = rref<Scalar>(b);
  return ea.pivots == eb.pivots && ea.rows == eb.rows;
}

template <class Scalar>
DenseMatrix<Scalar> vstack(const DenseMatrix<Scalar>& a, const DenseMatrix<Scalar>& b) {
  const Eigen::Index cols = a.rows() > 0 ? a.cols() : b.cols();
  DenseMatrix<Scalar> out(a.rows() + b.rows(), cols);
  if (a.rows() > 0) out.topRows(a.rows()) = a;
  if (b.rows() > 0) out.bottomRows(b.rows()) = b;
  return out;
}

}  // namespace almab
