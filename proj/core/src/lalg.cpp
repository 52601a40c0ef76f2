#include "shiftgreen/lalg.hpp"

#include <cmath>

#include "shiftgreen/errors.hpp"

namespace shiftgreen::lalg {
namespace {

constexpr double kPivotFloor = 1e-300;

void require_square(const ComplexMatrix& m, const char* what) {
  if (m.rows() == 0 || m.rows() != m.cols()) throw ContractViolation(std::string(what) + ": matrix must be square");
  if (!m.allFinite()) throw ContractViolation(std::string(what) + ": matrix has non-finite entries");
}

}  // namespace

LuFactorization::LuFactorization(const ComplexMatrix& m) {
  require_square(m, "lu_solve");
  lu_.compute(m);
  min_pivot_ = lu_.matrixLU().diagonal().cwiseAbs().minCoeff();
  if (!(min_pivot_ >= kPivotFloor)) throw SingularMatrixError("lu_solve: pivot below 1e-300, matrix is singular");
}

ComplexVector LuFactorization::solve(const ComplexVector& rhs) const {
  if (rhs.size() != lu_.rows()) throw ContractViolation("lu_solve: right-hand side size mismatch");
  return lu_.solve(rhs);
}

ComplexMatrix LuFactorization::solve(const ComplexMatrix& rhs) const {
  if (rhs.rows() != lu_.rows()) throw ContractViolation("lu_solve: right-hand side size mismatch");
  return lu_.solve(rhs);
}

ComplexVector lu_solve(const ComplexMatrix& m, const ComplexVector& rhs) { return LuFactorization(m).solve(rhs); }

ComplexMatrix lu_solve(const ComplexMatrix& m, const ComplexMatrix& rhs) { return LuFactorization(m).solve(rhs); }

SingularValueExtremes svd_extremes(const ComplexMatrix& m) {
  require_square(m, "svd_extremes");
  Eigen::JacobiSVD<ComplexMatrix> svd(m);
  const auto& s = svd.singularValues();
  if (!s.allFinite()) throw NumericalFailure("svd_extremes: singular values did not converge");
  return {s.minCoeff(), s.maxCoeff()};
}

}  // namespace shiftgreen::lalg
