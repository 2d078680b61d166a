#pragma once
// Deterministic exact linear algebra on dense Eigen matrices.
//
// Pivoting rule everywhere: scan columns left to right, take the FIRST row
// with a nonzero entry.  No magnitude comparisons, so identical inputs give
// bit-identical results on every platform and the routines work for any
// exact scalar.  Eigen's own decompositions are unusable here (they pick
// largest pivots and need abs()).

#include <optional>
#include <stdexcept>
#include <vector>

#include <Eigen/Core>

#include "lam/field.hpp"

namespace lam {

template <class K> using Mat = Eigen::Matrix<K, Eigen::Dynamic, Eigen::Dynamic>;
template <class K> using Vec = Eigen::Matrix<K, Eigen::Dynamic, 1>;

// All products go through here; lazyProduct keeps the scalar requirements
// minimal and avoids Eigen's packed GEMM kernels on custom scalars.
template <class K>
Mat<K> mul(const Mat<K>& a, const Mat<K>& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("mul: shape mismatch");
  return a.lazyProduct(b);
}

template <class K>
bool is_zero_mat(const Mat<K>& m) {
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      if (!is_zero(m(i, j))) return false;
  return true;
}

template <class K>
Mat<K> hcat(const Mat<K>& a, const Mat<K>& b) {
  if (a.rows() != b.rows()) throw std::invalid_argument("hcat: row mismatch");
  Mat<K> r(a.rows(), a.cols() + b.cols());
  r.leftCols(a.cols()) = a;
  r.rightCols(b.cols()) = b;
  return r;
}

template <class K>
Mat<K> vcat(const Mat<K>& a, const Mat<K>& b) {
  if (a.cols() != b.cols()) throw std::invalid_argument("vcat: col mismatch");
  Mat<K> r(a.rows() + b.rows(), a.cols());
  r.topRows(a.rows()) = a;
  r.bottomRows(b.rows()) = b;
  return r;
}

// In-place reduction of `a` to reduced row echelon form with unit pivots,
// first-pivot rule; the same row operations are applied to `aux` if given.
// Returns the pivot columns in ascending order (their count is the rank).
template <class K>
std::vector<int> row_reduce(Mat<K>& a, Mat<K>* aux = nullptr) {
  std::vector<int> pivots;
  const Eigen::Index rows = a.rows(), cols = a.cols();
  Eigen::Index r = 0;
  for (Eigen::Index c = 0; c < cols && r < rows; ++c) {
    Eigen::Index pr = -1;
    for (Eigen::Index i = r; i < rows; ++i)
      if (!is_zero(a(i, c))) { pr = i; break; }
    if (pr < 0) continue;
    if (pr != r) {
      a.row(pr).swap(a.row(r));
      if (aux) aux->row(pr).swap(aux->row(r));
    }
    K inv = K(1) / a(r, c);
    a.row(r) *= inv;
    if (aux) aux->row(r) *= inv;
    for (Eigen::Index i = 0; i < rows; ++i) {
      if (i == r || is_zero(a(i, c))) continue;
      K f = a(i, c);
      a.row(i) -= f * a.row(r);
      if (aux) aux->row(i) -= f * aux->row(r);
    }
    pivots.push_back(static_cast<int>(c));
    ++r;
  }
  return pivots;
}

template <class K>
int rank(Mat<K> m) {
  return static_cast<int>(row_reduce(m).size());
}

// Basis of the null space {x : m x = 0}; one column per free column of m,
// in ascending free-column order (the canonical RREF back-substitution).
template <class K>
Mat<K> kernel_basis(Mat<K> m) {
  const Eigen::Index n = m.cols();
  std::vector<int> piv = row_reduce(m);
  std::vector<bool> is_piv(n, false);
  for (int c : piv) is_piv[c] = true;
  Mat<K> ker = Mat<K>::Zero(n, n - static_cast<Eigen::Index>(piv.size()));
  Eigen::Index k = 0;
  for (Eigen::Index f = 0; f < n; ++f) {
    if (is_piv[f]) continue;
    ker(f, k) = K(1);
    for (size_t i = 0; i < piv.size(); ++i)
      ker(piv[i], k) = -m(static_cast<Eigen::Index>(i), f);
    ++k;
  }
  return ker;
}

// Basis of the column space: the original columns at the pivot positions.
template <class K>
Mat<K> image_basis(const Mat<K>& m) {
  Mat<K> r = m;
  std::vector<int> piv = row_reduce(r);
  Mat<K> img(m.rows(), static_cast<Eigen::Index>(piv.size()));
  for (size_t i = 0; i < piv.size(); ++i) img.col(i) = m.col(piv[i]);
  return img;
}

// First-pivot particular solution of m x = b (free variables set to zero),
// solved for all columns of b at once; nullopt if inconsistent.
template <class K>
std::optional<Mat<K>> solve(const Mat<K>& m, const Mat<K>& b) {
  if (m.rows() != b.rows()) throw std::invalid_argument("solve: shape mismatch");
  Mat<K> r = m, c = b;
  std::vector<int> piv = row_reduce(r, &c);
  // Rows below the pivot rows of r are zero; b must vanish there too.
  for (Eigen::Index i = static_cast<Eigen::Index>(piv.size()); i < c.rows(); ++i)
    for (Eigen::Index j = 0; j < c.cols(); ++j)
      if (!is_zero(c(i, j))) return std::nullopt;
  Mat<K> x = Mat<K>::Zero(m.cols(), b.cols());
  for (size_t i = 0; i < piv.size(); ++i)
    x.row(piv[i]) = c.row(static_cast<Eigen::Index>(i));
  return x;
}

// Identity columns extending the column span of `sub` to all of K^ambient:
// e_i is kept iff i is not a pivot row of the column echelon form of `sub`,
// in ascending order.  Deterministic "first-fit" complement.
template <class K>
Mat<K> complement_basis(const Mat<K>& sub, Eigen::Index ambient) {
  if (sub.rows() != 0 && sub.rows() != ambient)
    throw std::invalid_argument("complement_basis: ambient mismatch");
  Mat<K> t = sub.transpose();
  std::vector<int> piv = row_reduce(t);
  std::vector<bool> is_piv(ambient, false);
  for (int c : piv) is_piv[c] = true;
  Mat<K> comp = Mat<K>::Zero(ambient, ambient - static_cast<Eigen::Index>(piv.size()));
  Eigen::Index k = 0;
  for (Eigen::Index i = 0; i < ambient; ++i)
    if (!is_piv[i]) comp(i, k++) = K(1);
  return comp;
}

template <class K>
std::optional<Mat<K>> inverse(const Mat<K>& m) {
  if (m.rows() != m.cols()) return std::nullopt;
  Mat<K> id = Mat<K>::Identity(m.rows(), m.rows());
  Mat<K> r = m, x = id;
  std::vector<int> piv = row_reduce(r, &x);
  if (static_cast<Eigen::Index>(piv.size()) != m.rows()) return std::nullopt;
  return x;
}

}  // namespace lam
