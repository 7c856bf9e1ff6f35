#include "porolub/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace porolub {

DenseSymmetricMatrix::DenseSymmetricMatrix(std::size_t n)
    : n_(n), a_(n * n, 0.0) {}

void DenseSymmetricMatrix::apply(const std::vector<double>& x,
                                 std::vector<double>& y) const {
  y.assign(n_, 0.0);
  for (std::size_t i = 0; i < n_; ++i) {
    const double* row = &a_[i * n_];
    double s = 0.0;
    for (std::size_t j = 0; j < n_; ++j) s += row[j] * x[j];
    y[i] = s;
  }
}

double DenseSymmetricMatrix::row_dot(std::size_t i,
                                     const std::vector<double>& x) const {
  const double* row = &a_[i * n_];
  double s = 0.0;
  for (std::size_t j = 0; j < n_; ++j) s += row[j] * x[j];
  return s;
}

double DenseSymmetricMatrix::max_asymmetry() const {
  double worst = 0.0;
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = i + 1; j < n_; ++j)
      worst = std::max(worst, std::abs(at(i, j) - at(j, i)));
  return worst;
}

std::vector<double> DenseSymmetricMatrix::cholesky_solve(
    const std::vector<double>& rhs) const {
  if (rhs.size() != n_) throw std::invalid_argument("cholesky_solve: size mismatch");
  std::vector<double> low(a_);
  for (std::size_t j = 0; j < n_; ++j) {
    double d = low[j * n_ + j];
    for (std::size_t k = 0; k < j; ++k) d -= low[j * n_ + k] * low[j * n_ + k];
    if (!(d > 0.0)) {
      std::ostringstream msg;
      msg << "cholesky_solve: non-positive pivot " << d << " at index " << j
          << "; matrix is not positive definite";
      throw std::runtime_error(msg.str());
    }
    d = std::sqrt(d);
    low[j * n_ + j] = d;
    for (std::size_t i = j + 1; i < n_; ++i) {
      double s = low[i * n_ + j];
      for (std::size_t k = 0; k < j; ++k) s -= low[i * n_ + k] * low[j * n_ + k];
      low[i * n_ + j] = s / d;
    }
  }
  // forward then backward substitution
  std::vector<double> y(n_);
  for (std::size_t i = 0; i < n_; ++i) {
    double s = rhs[i];
    for (std::size_t k = 0; k < i; ++k) s -= low[i * n_ + k] * y[k];
    y[i] = s / low[i * n_ + i];
  }
  std::vector<double> x(n_);
  for (std::size_t ii = n_; ii-- > 0;) {
    double s = y[ii];
    for (std::size_t k = ii + 1; k < n_; ++k) s -= low[k * n_ + ii] * x[k];
    x[ii] = s / low[ii * n_ + ii];
  }
  return x;
}

CsrMatrix CsrMatrix::from_triplets(std::size_t n, std::vector<Triplet> entries) {
  std::sort(entries.begin(), entries.end(), [](const Triplet& a, const Triplet& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });
  CsrMatrix m;
  m.n_ = n;
  m.row_start_.assign(n + 1, 0);
  std::size_t unique = 0;
  for (std::size_t k = 0; k < entries.size();) {
    std::size_t j = k + 1;
    double v = entries[k].value;
    while (j < entries.size() && entries[j].row == entries[k].row &&
           entries[j].col == entries[k].col) {
      v += entries[j].value;
      ++j;
    }
    entries[unique] = {entries[k].row, entries[k].col, v};
    ++unique;
    k = j;
  }
  entries.resize(unique);
  m.cols_.resize(unique);
  m.values_.resize(unique);
  for (std::size_t k = 0; k < unique; ++k) {
    if (entries[k].row >= n || entries[k].col >= n)
      throw std::invalid_argument("from_triplets: index out of range");
    m.row_start_[entries[k].row + 1]++;
    m.cols_[k] = entries[k].col;
    m.values_[k] = entries[k].value;
  }
  for (std::size_t i = 0; i < n; ++i) m.row_start_[i + 1] += m.row_start_[i];
  return m;
}

double CsrMatrix::diagonal(std::size_t i) const {
  for (std::size_t k = row_start_[i]; k < row_start_[i + 1]; ++k)
    if (cols_[k] == i) return values_[k];
  return 0.0;
}

void CsrMatrix::apply(const std::vector<double>& x, std::vector<double>& y) const {
  y.assign(n_, 0.0);
  for (std::size_t i = 0; i < n_; ++i) {
    double s = 0.0;
    for (std::size_t k = row_start_[i]; k < row_start_[i + 1]; ++k)
      s += values_[k] * x[cols_[k]];
    y[i] = s;
  }
}

double CsrMatrix::row_dot(std::size_t i, const std::vector<double>& x) const {
  double s = 0.0;
  for (std::size_t k = row_start_[i]; k < row_start_[i + 1]; ++k)
    s += values_[k] * x[cols_[k]];
  return s;
}

double CsrMatrix::max_asymmetry() const {
  double worst = 0.0;
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t k = row_start_[i]; k < row_start_[i + 1]; ++k) {
      const std::size_t j = cols_[k];
      double transposed = 0.0;
      for (std::size_t kk = row_start_[j]; kk < row_start_[j + 1]; ++kk)
        if (cols_[kk] == i) {
          transposed = values_[kk];
          break;
        }
      worst = std::max(worst, std::abs(values_[k] - transposed));
    }
  }
  return worst;
}

CgResult conjugate_gradient(const SymmetricMatrix& A, const std::vector<double>& b,
                            std::vector<double>& x, double tol,
                            int max_iterations) {
  const std::size_t n = A.size();
  if (x.size() != n) x.assign(n, 0.0);

  double bnorm = 0.0;
  for (double v : b) bnorm += v * v;
  bnorm = std::sqrt(bnorm);
  if (bnorm == 0.0) {
    x.assign(n, 0.0);
    return {0, 0.0, true};
  }

  std::vector<double> r(n), z(n), p(n), q(n);
  A.apply(x, q);
  for (std::size_t i = 0; i < n; ++i) r[i] = b[i] - q[i];

  auto precondition = [&](const std::vector<double>& in, std::vector<double>& out) {
    for (std::size_t i = 0; i < n; ++i) out[i] = in[i] / A.diagonal(i);
  };

  precondition(r, z);
  p = z;
  double rz = 0.0;
  for (std::size_t i = 0; i < n; ++i) rz += r[i] * z[i];

  double rnorm = 0.0;
  for (double v : r) rnorm += v * v;
  rnorm = std::sqrt(rnorm);

  int iter = 0;
  while (rnorm > tol * bnorm && iter < max_iterations) {
    ++iter;
    A.apply(p, q);
    double pq = 0.0;
    for (std::size_t i = 0; i < n; ++i) pq += p[i] * q[i];
    const double alpha = rz / pq;
    for (std::size_t i = 0; i < n; ++i) {
      x[i] += alpha * p[i];
      r[i] -= alpha * q[i];
    }
    precondition(r, z);
    double rz_next = 0.0;
    for (std::size_t i = 0; i < n; ++i) rz_next += r[i] * z[i];
    const double beta = rz_next / rz;
    rz = rz_next;
    for (std::size_t i = 0; i < n; ++i) p[i] = z[i] + beta * p[i];
    rnorm = 0.0;
    for (double v : r) rnorm += v * v;
    rnorm = std::sqrt(rnorm);
  }
  return {iter, rnorm / bnorm, rnorm <= tol * bnorm};
}

}  // namespace porolub
