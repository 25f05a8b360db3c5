#pragma once

#include <Eigen/Core>
#include <Eigen/SparseCore>
#include <memory>

#include "hmporo/assembly.hpp"

namespace hmporo {

/// Sparse LU (UMFPACK) with row equilibration and iterative refinement.
///
/// With `reuse_factorization` set, a later system with the same sparsity
/// pattern is first solved by GMRES preconditioned with the most recent
/// factors; the matrix is refactored only when that fails to reach the
/// tolerance. Picard sequences produce many nearby matrices, so most solves
/// skip the numeric factorization.
class SparseDirectSolver {
 public:
  using RowMatrix = Eigen::SparseMatrix<double, Eigen::RowMajor>;

  struct Report {
    double relative_residual = 0.0;  ///< of the row-equilibrated system
    /// 1-norm reciprocal condition estimate of the last factored matrix.
    double rcond = 0.0;
    int refinements = 0;
    int krylov_iterations = 0;
    bool refactored = false;
  };

  explicit SparseDirectSolver(double tolerance = 1e-12, bool reuse_factorization = false);
  ~SparseDirectSolver();
  SparseDirectSolver(SparseDirectSolver&&) noexcept;
  SparseDirectSolver& operator=(SparseDirectSolver&&) noexcept;

  /// Throws LinearSolveFailed for singular or near-singular matrices
  /// (rcond below 1e-15) and when the tolerance cannot be reached.
  Eigen::VectorXd solve(const RowMatrix& a, const Eigen::VectorXd& b);

  const Report& last_report() const { return report_; }
  int factorizations() const { return factorizations_; }

 private:
  class Factors;
  using ColMatrix = Eigen::SparseMatrix<double, Eigen::ColMajor>;

  Eigen::VectorXd direct_solve(const ColMatrix& a, const Eigen::VectorXd& b);
  bool krylov_solve(const ColMatrix& a, const Eigen::VectorXd& b, Eigen::VectorXd& x);
  double estimate_rcond(const ColMatrix& a) const;

  double tolerance_;
  bool reuse_;
  std::unique_ptr<Factors> lu_;
  Eigen::VectorXd last_x_;
  Report report_;
  int factorizations_ = 0;
};

/// One-shot solve of a constrained system (always factorizes).
Eigen::VectorXd sparse_solve(const SparseSystem& system, double tolerance = 1e-12);

}  // namespace hmporo
