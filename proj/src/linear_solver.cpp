#include "hmporo/linear_solver.hpp"

#include <umfpack.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <unsupported/Eigen/IterativeSolvers>

#include "hmporo/error.hpp"

namespace hmporo {

// Owns the UMFPACK symbolic and numeric objects of one column-major matrix.
// A copy of the factored matrix is kept since the pattern arrays must
// outlive the symbolic object.
class SparseDirectSolver::Factors {
 public:
  explicit Factors(const ColMatrix& a) : a_(a) {
    umfpack_di_defaults(control_);
    control_[UMFPACK_IRSTEP] = 0;  // refinement is done by the caller
    const int status = umfpack_di_symbolic(rows(), rows(), a_.outerIndexPtr(), a_.innerIndexPtr(), a_.valuePtr(),
                                           &symbolic_, control_, nullptr);
    if (status != UMFPACK_OK) fail("symbolic analysis", status);
    numeric();
  }
  Factors(const Factors&) = delete;
  Factors& operator=(const Factors&) = delete;
  ~Factors() {
    if (numeric_) umfpack_di_free_numeric(&numeric_);
    if (symbolic_) umfpack_di_free_symbolic(&symbolic_);
  }

  bool same_pattern(const ColMatrix& a) const {
    return a.rows() == a_.rows() && a.nonZeros() == a_.nonZeros() &&
           std::equal(a.outerIndexPtr(), a.outerIndexPtr() + a.outerSize() + 1, a_.outerIndexPtr()) &&
           std::equal(a.innerIndexPtr(), a.innerIndexPtr() + a.nonZeros(), a_.innerIndexPtr());
  }

  /// Numeric factorization of a matrix with the analysed pattern.
  void refactor(const ColMatrix& a) {
    std::copy(a.valuePtr(), a.valuePtr() + a.nonZeros(), a_.valuePtr());
    numeric();
  }

  Eigen::VectorXd solve(const Eigen::VectorXd& b, bool transpose = false) const {
    Eigen::VectorXd x(b.size());
    const int status = umfpack_di_solve(transpose ? UMFPACK_At : UMFPACK_A, a_.outerIndexPtr(), a_.innerIndexPtr(),
                                        a_.valuePtr(), x.data(), b.data(), numeric_, control_, nullptr);
    if (status != UMFPACK_OK) fail("triangular solve", status);
    return x;
  }

  int rows() const { return static_cast<int>(a_.rows()); }

 private:
  void numeric() {
    if (numeric_) umfpack_di_free_numeric(&numeric_);
    const int status = umfpack_di_numeric(a_.outerIndexPtr(), a_.innerIndexPtr(), a_.valuePtr(), symbolic_, &numeric_,
                                          control_, nullptr);
    if (status == UMFPACK_WARNING_singular_matrix) {
      std::ostringstream os;
      os << "singular matrix: zero pivot in the LU factorization (size " << rows() << ")";
      throw LinearSolveFailed(os.str());
    }
    if (status != UMFPACK_OK) fail("numeric factorization", status);
  }

  [[noreturn]] static void fail(const char* phase, int status) {
    std::ostringstream os;
    os << "UMFPACK " << phase << " failed with status " << status;
    throw LinearSolveFailed(os.str());
  }

  ColMatrix a_;
  double control_[UMFPACK_CONTROL];
  void* symbolic_ = nullptr;
  void* numeric_ = nullptr;
};

namespace {

// Preconditioner adapter: applies the inverse of a (possibly stale) factorization.
template <typename Factors>
class FactorsPreconditioner {
 public:
  using MatrixType = Eigen::SparseMatrix<double>;
  FactorsPreconditioner() = default;
  void set(const Factors* f) { f_ = f; }
  template <typename M>
  FactorsPreconditioner& analyzePattern(const M&) { return *this; }
  template <typename M>
  FactorsPreconditioner& factorize(const M&) { return *this; }
  template <typename M>
  FactorsPreconditioner& compute(const M&) { return *this; }
  Eigen::VectorXd solve(const Eigen::VectorXd& b) const { return f_->solve(b); }
  Eigen::ComputationInfo info() const { return Eigen::Success; }

 private:
  const Factors* f_ = nullptr;
};

constexpr int kMaxKrylov = 40;
constexpr double kMinRcond = 1e-15;

}  // namespace

SparseDirectSolver::SparseDirectSolver(double tolerance, bool reuse_factorization)
    : tolerance_(tolerance), reuse_(reuse_factorization) {}
SparseDirectSolver::~SparseDirectSolver() = default;
SparseDirectSolver::SparseDirectSolver(SparseDirectSolver&&) noexcept = default;
SparseDirectSolver& SparseDirectSolver::operator=(SparseDirectSolver&&) noexcept = default;

Eigen::VectorXd SparseDirectSolver::solve(const RowMatrix& a, const Eigen::VectorXd& b) {
  const Eigen::Index n = a.rows();
  if (a.cols() != n || b.size() != n) throw InvalidArgument("linear system is not square or rhs size mismatch");

  Eigen::VectorXd row_scale(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    double m = 0.0;
    for (RowMatrix::InnerIterator it(a, i); it; ++it) m = std::max(m, std::abs(it.value()));
    if (m == 0.0) {
      std::ostringstream os;
      os << "singular matrix: row " << i << " is empty";
      throw LinearSolveFailed(os.str());
    }
    row_scale[i] = 1.0 / m;
  }
  ColMatrix scaled = row_scale.asDiagonal() * a;
  scaled.makeCompressed();
  const Eigen::VectorXd sb = row_scale.cwiseProduct(b);

  const double rcond = report_.rcond;
  report_ = {};
  report_.rcond = rcond;
  Eigen::VectorXd x;
  if (reuse_ && lu_ && lu_->same_pattern(scaled) && krylov_solve(scaled, sb, x)) {
    last_x_ = x;
    return x;
  }
  x = direct_solve(scaled, sb);
  if (reuse_) last_x_ = x;
  return x;
}

bool SparseDirectSolver::krylov_solve(const ColMatrix& a, const Eigen::VectorXd& b, Eigen::VectorXd& x) {
  const double bnorm = b.norm();
  if (bnorm == 0.0) {
    x = Eigen::VectorXd::Zero(b.size());
    return true;
  }
  Eigen::GMRES<ColMatrix, FactorsPreconditioner<Factors>> gmres;
  gmres.preconditioner().set(lu_.get());
  gmres.set_restart(kMaxKrylov);
  gmres.setMaxIterations(kMaxKrylov);
  gmres.setTolerance(0.1 * tolerance_);
  gmres.compute(a);
  const Eigen::VectorXd guess = last_x_.size() == b.size() ? last_x_ : Eigen::VectorXd::Zero(b.size());
  x = gmres.solveWithGuess(b, guess);
  report_.krylov_iterations = static_cast<int>(gmres.iterations());
  report_.relative_residual = (b - a * x).norm() / bnorm;
  return x.allFinite() && report_.relative_residual <= tolerance_;
}

Eigen::VectorXd SparseDirectSolver::direct_solve(const ColMatrix& a, const Eigen::VectorXd& b) {
  if (lu_ && lu_->same_pattern(a)) {
    lu_->refactor(a);
  } else {
    lu_.reset();
    lu_ = std::make_unique<Factors>(a);
  }
  ++factorizations_;
  report_.refactored = true;

  Eigen::VectorXd x = lu_->solve(b);
  const double bnorm = std::max(b.norm(), std::numeric_limits<double>::min());
  Eigen::VectorXd r = b - a * x;
  report_.relative_residual = r.norm() / bnorm;
  while (report_.relative_residual > tolerance_ && report_.refinements < 3) {
    x += lu_->solve(r);
    r = b - a * x;
    report_.relative_residual = r.norm() / bnorm;
    ++report_.refinements;
  }
  if (b.norm() == 0.0) report_.relative_residual = r.norm();
  report_.rcond = estimate_rcond(a);
  if (!(report_.rcond >= kMinRcond) || !x.allFinite()) {
    std::ostringstream os;
    os << "near-singular matrix: reciprocal condition estimate " << report_.rcond << ", relative residual "
       << report_.relative_residual << ", size " << a.rows();
    lu_.reset();
    throw LinearSolveFailed(os.str());
  }
  if (report_.relative_residual > tolerance_) {
    std::ostringstream os;
    os << "linear solve stalled at relative residual " << report_.relative_residual << " (tolerance " << tolerance_
       << ", rcond " << report_.rcond << ")";
    throw LinearSolveFailed(os.str());
  }
  return x;
}

// Hager's 1-norm estimator of ||A^-1||, using the existing factorization.
double SparseDirectSolver::estimate_rcond(const ColMatrix& a) const {
  const Eigen::Index n = a.rows();
  double a_norm = 0.0;
  for (Eigen::Index j = 0; j < a.outerSize(); ++j) {
    double s = 0.0;
    for (ColMatrix::InnerIterator it(a, j); it; ++it) s += std::abs(it.value());
    a_norm = std::max(a_norm, s);
  }
  Eigen::VectorXd x = Eigen::VectorXd::Constant(n, 1.0 / static_cast<double>(n));
  double est = 0.0;
  for (int iter = 0; iter < 5; ++iter) {
    const Eigen::VectorXd y = lu_->solve(x);
    est = y.lpNorm<1>();
    const Eigen::VectorXd sign = y.unaryExpr([](double v) { return v >= 0.0 ? 1.0 : -1.0; });
    const Eigen::VectorXd z = lu_->solve(sign, true);
    Eigen::Index j = 0;
    const double zmax = z.cwiseAbs().maxCoeff(&j);
    if (zmax <= z.dot(x)) break;
    x.setZero();
    x[j] = 1.0;
  }
  if (!(est > 0.0) || !std::isfinite(est)) return 0.0;
  return 1.0 / (a_norm * est);
}

Eigen::VectorXd sparse_solve(const SparseSystem& system, double tolerance) {
  SparseDirectSolver s(tolerance);
  return s.solve(system.matrix, system.rhs);
}

}  // namespace hmporo
