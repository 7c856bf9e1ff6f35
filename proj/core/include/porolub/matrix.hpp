#ifndef POROLUB_MATRIX_HPP
#define POROLUB_MATRIX_HPP

#include <cstddef>
#include <vector>

namespace porolub {

/** Row-accessible symmetric matrix. Dense and compressed-sparse-row storage
 * share this interface so the obstacle and Krylov solvers run on either. */
class SymmetricMatrix {
 public:
  virtual ~SymmetricMatrix() = default;
  virtual std::size_t size() const = 0;
  virtual double diagonal(std::size_t i) const = 0;
  // y = A x
  virtual void apply(const std::vector<double>& x, std::vector<double>& y) const = 0;
  // (A x)_i
  virtual double row_dot(std::size_t i, const std::vector<double>& x) const = 0;
};

class DenseSymmetricMatrix : public SymmetricMatrix {
 public:
  explicit DenseSymmetricMatrix(std::size_t n);

  double& at(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
  double at(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }

  std::size_t size() const override { return n_; }
  double diagonal(std::size_t i) const override { return a_[i * n_ + i]; }
  void apply(const std::vector<double>& x, std::vector<double>& y) const override;
  double row_dot(std::size_t i, const std::vector<double>& x) const override;

  // max |a_ij - a_ji| over all pairs
  double max_asymmetry() const;

  // LL^T solve; throws std::runtime_error if the matrix is not positive
  // definite (non-positive pivot).
  std::vector<double> cholesky_solve(const std::vector<double>& rhs) const;

 private:
  std::size_t n_;
  std::vector<double> a_;
};

struct Triplet {
  std::size_t row;
  std::size_t col;
  double value;
};

class CsrMatrix : public SymmetricMatrix {
 public:
  // Sums duplicate (row, col) entries.
  static CsrMatrix from_triplets(std::size_t n, std::vector<Triplet> entries);

  std::size_t size() const override { return n_; }
  double diagonal(std::size_t i) const override;
  void apply(const std::vector<double>& x, std::vector<double>& y) const override;
  double row_dot(std::size_t i, const std::vector<double>& x) const override;

  std::size_t nonzeros() const { return values_.size(); }
  double max_asymmetry() const;

 private:
  CsrMatrix() = default;
  std::size_t n_ = 0;
  std::vector<std::size_t> row_start_;
  std::vector<std::size_t> cols_;
  std::vector<double> values_;
};

struct CgResult {
  int iterations = 0;
  double relative_residual = 0.0;
  bool converged = false;
};

/** Jacobi-preconditioned conjugate gradients. Stops when ||b - Ax||_2 <=
 * tol * ||b||_2 (or immediately when b = 0). x holds the starting vector on
 * entry and the solution on exit. Reductions run in a fixed sequential order,
 * so results are bitwise reproducible. */
CgResult conjugate_gradient(const SymmetricMatrix& A, const std::vector<double>& b,
                            std::vector<double>& x, double tol, int max_iterations);

}  // namespace porolub

#endif
