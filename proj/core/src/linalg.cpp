#include "booldisc/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "booldisc/errors.hpp"

namespace booldisc {

namespace {

constexpr int kMaxDim = 4096;
constexpr double kOffDiagTol = 1e-14;   // relative to ||A||_F
constexpr int kMaxSweeps = 100;
constexpr double kPsdClipTol = 1e-10;   // relative negative-eigenvalue allowance
constexpr double kPinvCutoff = 1e-12;   // relative support cutoff

void check_dims_equal(const SymMatrix& a, const SymMatrix& b, const char* what) {
  if (a.dim() != b.dim()) {
    throw std::invalid_argument(std::string(what) + ": dimension mismatch");
  }
}

// Off-diagonal Frobenius mass, reading the upper triangle only.
double offdiag_frobenius(const Matrix& a) {
  double sum = 0.0;
  for (int i = 0; i < a.rows(); ++i) {
    const double* row = a.row(i);
    for (int j = i + 1; j < a.cols(); ++j) sum += row[j] * row[j];
  }
  return std::sqrt(2.0 * sum);
}

}  // namespace

Matrix matmul(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("matmul: inner dimension mismatch");
  Matrix c(a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i) {
    const double* arow = a.row(i);
    double* crow = c.row(i);
    for (int k = 0; k < a.cols(); ++k) {
      double aik = arow[k];
      if (aik == 0.0) continue;
      const double* brow = b.row(k);
      for (int j = 0; j < b.cols(); ++j) crow[j] += aik * brow[j];
    }
  }
  return c;
}

Matrix transpose(const Matrix& a) {
  Matrix t(a.cols(), a.rows());
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = 0; j < a.cols(); ++j) t(j, i) = a(i, j);
  }
  return t;
}

Matrix subtract(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw std::invalid_argument("subtract: shape mismatch");
  }
  Matrix c(a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = 0; j < a.cols(); ++j) c(i, j) = a(i, j) - b(i, j);
  }
  return c;
}

double frobenius(const Matrix& a) {
  double sum = 0.0;
  for (int i = 0; i < a.rows(); ++i) {
    const double* row = a.row(i);
    for (int j = 0; j < a.cols(); ++j) sum += row[j] * row[j];
  }
  return std::sqrt(sum);
}

SymMatrix::SymMatrix(int dim) : dim_(dim), tri_(tri_size(std::max(dim, 0)), 0.0) {
  if (dim < 0 || dim > kMaxDim) {
    throw std::invalid_argument("SymMatrix dimension must be in [0, 4096]");
  }
}

SymMatrix SymMatrix::identity(int dim) {
  SymMatrix a(dim);
  for (int i = 0; i < dim; ++i) a.set(i, i, 1.0);
  return a;
}

SymMatrix SymMatrix::diagonal(std::span<const double> values) {
  SymMatrix a(static_cast<int>(values.size()));
  for (int i = 0; i < a.dim(); ++i) a.set(i, i, values[i]);
  return a;
}

double SymMatrix::trace() const {
  double t = 0.0;
  for (int i = 0; i < dim_; ++i) t += (*this)(i, i);
  return t;
}

double SymMatrix::frobenius() const {
  double diag = 0.0, off = 0.0;
  for (int i = 0; i < dim_; ++i) {
    for (int j = 0; j < i; ++j) {
      double v = (*this)(i, j);
      off += v * v;
    }
    double d = (*this)(i, i);
    diag += d * d;
  }
  return std::sqrt(diag + 2.0 * off);
}

Matrix to_dense(const SymMatrix& a) {
  Matrix m(a.dim(), a.dim());
  for (int i = 0; i < a.dim(); ++i) {
    for (int j = 0; j <= i; ++j) {
      double v = a(i, j);
      m(i, j) = v;
      m(j, i) = v;
    }
  }
  return m;
}

SymMatrix sym_lower(const Matrix& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("sym_lower: matrix not square");
  SymMatrix s(a.rows());
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = 0; j <= i; ++j) s.set(i, j, a(i, j));
  }
  return s;
}

EigenDecomposition sym_eigen(const SymMatrix& input) {
  int d = input.dim();
  Matrix a = to_dense(input);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j <= i; ++j) {
      if (!std::isfinite(a(i, j))) throw std::invalid_argument("sym_eigen: non-finite entry");
    }
  }
  double norm = input.frobenius();
  double stop = kOffDiagTol * norm;

  // Eigenvector columns kept as contiguous rows of vt. Only the upper
  // triangle of the working copy is rotated; eigenvalues accumulate in
  // eval with the per-sweep correction buffer keeping them accurate.
  Matrix vt(d, d);
  for (int i = 0; i < d; ++i) vt(i, i) = 1.0;
  std::vector<double> eval(d), base(d), accum(d, 0.0);
  for (int i = 0; i < d; ++i) eval[i] = base[i] = a(i, i);

  auto rotate = [](double& x, double& y, double s, double tau) {
    double g = x;
    double h = y;
    x = g - s * (h + g * tau);
    y = h + s * (g - h * tau);
  };

  bool converged = d <= 1;
  for (int sweep = 1; sweep <= kMaxSweeps && d > 1; ++sweep) {
    double off = offdiag_frobenius(a);
    if (off <= stop) {
      converged = true;
      break;
    }
    // Rutishauser threshold: generous early on, exact afterwards.
    double thresh = sweep < 4 ? 0.2 * off * off / (static_cast<double>(d) * d) : 0.0;
    for (int p = 0; p < d - 1; ++p) {
      double* rp = a.row(p);
      for (int q = p + 1; q < d; ++q) {
        double apq = rp[q];
        double g = 100.0 * std::abs(apq);
        if (sweep > 4 && std::abs(eval[p]) + g == std::abs(eval[p]) &&
            std::abs(eval[q]) + g == std::abs(eval[q])) {
          rp[q] = 0.0;
          continue;
        }
        if (apq == 0.0 || apq * apq <= thresh) continue;

        double h = eval[q] - eval[p];
        double t;
        if (std::abs(h) + g == std::abs(h)) {
          t = apq / h;
        } else {
          double theta = 0.5 * h / apq;
          t = 1.0 / (std::abs(theta) + std::sqrt(1.0 + theta * theta));
          if (theta < 0.0) t = -t;
        }
        double c = 1.0 / std::sqrt(1.0 + t * t);
        double s = t * c;
        double tau = s / (1.0 + c);
        double shift = t * apq;
        accum[p] -= shift;
        accum[q] += shift;
        eval[p] -= shift;
        eval[q] += shift;
        rp[q] = 0.0;

        double* rq = a.row(q);
        for (int j = 0; j < p; ++j) rotate(a(j, p), a(j, q), s, tau);
        for (int j = p + 1; j < q; ++j) rotate(rp[j], a(j, q), s, tau);
        for (int j = q + 1; j < d; ++j) rotate(rp[j], rq[j], s, tau);

        double* vp = vt.row(p);
        double* vq = vt.row(q);
        for (int k = 0; k < d; ++k) rotate(vp[k], vq[k], s, tau);
      }
    }
    for (int i = 0; i < d; ++i) {
      base[i] += accum[i];
      eval[i] = base[i];
      accum[i] = 0.0;
    }
  }
  if (!converged && offdiag_frobenius(a) > stop) {
    throw accuracy_error("sym_eigen: no convergence within 100 sweeps");
  }

  std::vector<int> order(d);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int i, int j) { return eval[i] > eval[j]; });

  EigenDecomposition out;
  out.eigenvalues.resize(d);
  out.eigenvectors = Matrix(d, d);
  for (int j = 0; j < d; ++j) {
    int src = order[j];
    out.eigenvalues[j] = eval[src];
    const double* col = vt.row(src);
    for (int i = 0; i < d; ++i) out.eigenvectors(i, j) = col[i];
  }
  return out;
}

double trace_norm(const SymMatrix& a) {
  auto eig = sym_eigen(a);
  double sum = 0.0;
  for (double v : eig.eigenvalues) sum += std::abs(v);
  return sum;
}

namespace {

// V f(L) V^T assembled triangle-only from scaled eigenvector columns.
SymMatrix assemble_from_eigen(const EigenDecomposition& eig, std::span<const double> scaled) {
  int d = eig.eigenvectors.rows();
  Matrix w(d, d);
  for (int i = 0; i < d; ++i) {
    for (int k = 0; k < d; ++k) w(i, k) = eig.eigenvectors(i, k) * scaled[k];
  }
  SymMatrix out(d);
  for (int i = 0; i < d; ++i) {
    const double* wi = w.row(i);
    for (int j = 0; j <= i; ++j) {
      const double* vj = eig.eigenvectors.row(j);
      double sum = 0.0;
      for (int k = 0; k < d; ++k) sum += wi[k] * vj[k];
      out.set(i, j, sum);
    }
  }
  return out;
}

}  // namespace

SymMatrix psd_sqrt(const SymMatrix& a) {
  auto eig = sym_eigen(a);
  double lmax = eig.eigenvalues.empty() ? 0.0 : std::max(eig.eigenvalues.front(), 0.0);
  double floor = -kPsdClipTol * lmax;
  std::vector<double> roots(eig.eigenvalues.size());
  for (std::size_t k = 0; k < roots.size(); ++k) {
    double lambda = eig.eigenvalues[k];
    if (lambda < floor) {
      throw accuracy_error("psd_sqrt: materially negative eigenvalue " + std::to_string(lambda));
    }
    roots[k] = lambda > 0.0 ? std::sqrt(lambda) : 0.0;
  }
  return assemble_from_eigen(eig, roots);
}

SymMatrix pinv_sqrt(const SymMatrix& a) {
  auto eig = sym_eigen(a);
  double lmax = eig.eigenvalues.empty() ? 0.0 : std::max(eig.eigenvalues.front(), 0.0);
  double floor = -kPsdClipTol * lmax;
  double cutoff = kPinvCutoff * lmax;
  std::vector<double> inv_roots(eig.eigenvalues.size());
  for (std::size_t k = 0; k < inv_roots.size(); ++k) {
    double lambda = eig.eigenvalues[k];
    if (lmax > 0.0 && lambda < floor) {
      throw accuracy_error("pinv_sqrt: materially negative eigenvalue " + std::to_string(lambda));
    }
    inv_roots[k] = lambda > cutoff && lambda > 0.0 ? 1.0 / std::sqrt(lambda) : 0.0;
  }
  return assemble_from_eigen(eig, inv_roots);
}

SymMatrix kron(const SymMatrix& a, const SymMatrix& b) {
  long combined = static_cast<long>(a.dim()) * b.dim();
  if (combined > kMaxDim) throw std::invalid_argument("kron: combined dimension exceeds 4096");
  int db = b.dim();
  SymMatrix out(static_cast<int>(combined));
  for (int i = 0; i < out.dim(); ++i) {
    int i1 = i / db, i2 = i % db;
    for (int j = 0; j <= i; ++j) {
      int j1 = j / db, j2 = j % db;
      out.set(i, j, a(i1, j1) * b(i2, j2));
    }
  }
  return out;
}

double commutator_residual(const SymMatrix& a, const SymMatrix& b) {
  check_dims_equal(a, b, "commutator_residual");
  Matrix c = matmul(to_dense(a), to_dense(b));
  // For symmetric A, B: AB - BA = C - C^T.
  double sum = 0.0;
  for (int i = 0; i < c.rows(); ++i) {
    for (int j = 0; j < i; ++j) {
      double v = c(i, j) - c(j, i);
      sum += v * v;
    }
  }
  return std::sqrt(2.0 * sum);
}

}  // namespace booldisc
