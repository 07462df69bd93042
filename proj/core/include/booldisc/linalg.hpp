#pragma once

#include <span>
#include <vector>

namespace booldisc {

/// Dense row-major real matrix. Workhorse for eigenvector sets, cross-Gram
/// blocks, and intermediate products; not required to be square.
class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols) : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows) * cols, 0.0) {}

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  double& operator()(int i, int j) { return data_[static_cast<std::size_t>(i) * cols_ + j]; }
  double operator()(int i, int j) const { return data_[static_cast<std::size_t>(i) * cols_ + j]; }
  double* row(int i) { return data_.data() + static_cast<std::size_t>(i) * cols_; }
  const double* row(int i) const { return data_.data() + static_cast<std::size_t>(i) * cols_; }

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<double> data_;
};

Matrix matmul(const Matrix& a, const Matrix& b);
Matrix transpose(const Matrix& a);
Matrix subtract(const Matrix& a, const Matrix& b);
double frobenius(const Matrix& a);

/// Dense real symmetric matrix. Only the lower triangle is stored, so
/// A(i,j) == A(j,i) holds exactly by construction.
class SymMatrix {
 public:
  explicit SymMatrix(int dim);
  static SymMatrix identity(int dim);
  static SymMatrix diagonal(std::span<const double> values);

  int dim() const { return dim_; }
  double operator()(int i, int j) const { return tri_[slot(i, j)]; }
  void set(int i, int j, double v) { tri_[slot(i, j)] = v; }
  void add(int i, int j, double v) { tri_[slot(i, j)] += v; }

  double trace() const;
  double frobenius() const;

 private:
  static std::size_t tri_size(int dim) { return static_cast<std::size_t>(dim) * (dim + 1) / 2; }
  std::size_t slot(int i, int j) const {
    if (i < j) std::swap(i, j);
    return static_cast<std::size_t>(i) * (i + 1) / 2 + j;
  }
  int dim_;
  std::vector<double> tri_;
};

Matrix to_dense(const SymMatrix& a);
/// Packs the lower triangle of a numerically symmetric dense matrix.
SymMatrix sym_lower(const Matrix& a);

struct EigenDecomposition {
  std::vector<double> eigenvalues;  // descending
  Matrix eigenvectors;              // orthonormal columns, matching order
};

/// Cyclic Jacobi eigendecomposition. Converges when the off-diagonal
/// Frobenius mass drops below 1e-14 * ||A||_F; at most 100 sweeps.
EigenDecomposition sym_eigen(const SymMatrix& a);

/// Sum of absolute eigenvalues.
double trace_norm(const SymMatrix& a);

/// Positive-semidefinite square root V sqrt(L) V^T; eigenvalues slightly
/// below zero (within -1e-10 * lambda_max) are clipped to zero, anything
/// materially negative throws accuracy_error.
SymMatrix psd_sqrt(const SymMatrix& a);

/// Moore-Penrose pseudo-inverse square root: eigenvalues above
/// 1e-12 * lambda_max map to 1/sqrt(lambda), the rest to zero. The zero
/// matrix maps to the zero matrix.
SymMatrix pinv_sqrt(const SymMatrix& a);

/// Kronecker product; combined dimension must stay within 4096.
SymMatrix kron(const SymMatrix& a, const SymMatrix& b);

/// ||AB - BA||_F for equal-dimension symmetric matrices.
double commutator_residual(const SymMatrix& a, const SymMatrix& b);

}  // namespace booldisc
