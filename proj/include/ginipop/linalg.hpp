#pragma once

#include <cmath>
#include <cstddef>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace ginipop::linalg {

/// Dense row-major matrix, just enough for small regression problems.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  const std::vector<double>& data() const { return data_; }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

struct LeastSquaresSolution {
  std::vector<double> coefficients;    // in original column order
  Matrix xtx_inverse;                  // (X'X)^-1, original column order
  std::size_t rank = 0;
  std::size_t deficient_column = 0;    // original index of first dependent column (rank < k only)
  bool full_rank = false;
};

/// Householder least squares with column pivoting.
///
/// Solves min ||y - X b|| and returns (X'X)^-1 alongside the coefficients.
/// Rank is decided against `rank_tol` relative to the largest diagonal of R.
inline LeastSquaresSolution solve_least_squares(const Matrix& x,
                                                const std::vector<double>& y,
                                                double rank_tol = 1e-10) {
  const std::size_t n = x.rows();
  const std::size_t k = x.cols();
  if (y.size() != n) throw std::invalid_argument("solve_least_squares: y length does not match X rows");
  if (n < k) throw std::invalid_argument("solve_least_squares: fewer rows than columns");

  Matrix a = x;                       // factored in place
  std::vector<double> rhs = y;        // Q' applied alongside
  std::vector<std::size_t> perm(k);
  std::iota(perm.begin(), perm.end(), std::size_t{0});

  for (std::size_t j = 0; j < k; ++j) {
    // pivot: bring the remaining column with the largest trailing norm up front
    std::size_t best = j;
    double best_norm = -1.0;
    for (std::size_t c = j; c < k; ++c) {
      double s = 0.0;
      for (std::size_t i = j; i < n; ++i) s += a(i, c) * a(i, c);
      if (s > best_norm) { best_norm = s; best = c; }
    }
    if (best != j) {
      for (std::size_t i = 0; i < n; ++i) std::swap(a(i, j), a(i, best));
      std::swap(perm[j], perm[best]);
    }

    // Householder reflector for column j
    double norm = std::sqrt(best_norm);
    if (norm > 0.0) {
      double alpha = a(j, j) >= 0.0 ? -norm : norm;
      std::vector<double> v(n - j);
      v[0] = a(j, j) - alpha;
      for (std::size_t i = j + 1; i < n; ++i) v[i - j] = a(i, j);
      double vtv = 0.0;
      for (double t : v) vtv += t * t;
      if (vtv > 0.0) {
        const double beta = 2.0 / vtv;
        for (std::size_t c = j; c < k; ++c) {
          double dot = 0.0;
          for (std::size_t i = j; i < n; ++i) dot += v[i - j] * a(i, c);
          dot *= beta;
          for (std::size_t i = j; i < n; ++i) a(i, c) -= dot * v[i - j];
        }
        double dot = 0.0;
        for (std::size_t i = j; i < n; ++i) dot += v[i - j] * rhs[i];
        dot *= beta;
        for (std::size_t i = j; i < n; ++i) rhs[i] -= dot * v[i - j];
      }
      a(j, j) = alpha;
      for (std::size_t i = j + 1; i < n; ++i) a(i, j) = 0.0;
    }
  }

  LeastSquaresSolution out;
  const double pivot_scale = std::fabs(a(0, 0));
  std::size_t rank = 0;
  while (rank < k && std::fabs(a(rank, rank)) > rank_tol * pivot_scale) ++rank;
  out.rank = rank;
  if (rank < k) {
    out.full_rank = false;
    out.deficient_column = perm[rank];
    return out;
  }
  out.full_rank = true;

  // back-substitution on R b = Q'y (permuted order), then undo the pivoting
  std::vector<double> b(k, 0.0);
  for (std::size_t jj = k; jj-- > 0;) {
    double s = rhs[jj];
    for (std::size_t c = jj + 1; c < k; ++c) s -= a(jj, c) * b[c];
    b[jj] = s / a(jj, jj);
  }
  out.coefficients.assign(k, 0.0);
  for (std::size_t j = 0; j < k; ++j) out.coefficients[perm[j]] = b[j];

  // (X'X)^-1 = P (R'R)^-1 P' with (R'R)^-1 = Rinv Rinv'
  Matrix rinv(k, k);
  for (std::size_t col = 0; col < k; ++col) {
    for (std::size_t row = col + 1; row-- > 0;) {
      double s = (row == col) ? 1.0 : 0.0;
      for (std::size_t c = row + 1; c <= col; ++c) s -= a(row, c) * rinv(c, col);
      rinv(row, col) = s / a(row, row);
    }
  }
  out.xtx_inverse = Matrix(k, k);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      double s = 0.0;
      for (std::size_t c = std::max(i, j); c < k; ++c) s += rinv(i, c) * rinv(j, c);
      out.xtx_inverse(perm[i], perm[j]) = s;
    }
  }
  return out;
}

}  // namespace ginipop::linalg
