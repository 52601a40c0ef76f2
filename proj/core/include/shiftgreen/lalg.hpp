#pragma once

#include <Eigen/Dense>

#include "shiftgreen/types.hpp"

namespace shiftgreen::lalg {

// Partial-pivot LU, factored once and reused for any number of right-hand sides.
class LuFactorization {
 public:
  explicit LuFactorization(const ComplexMatrix& m);

  ComplexVector solve(const ComplexVector& rhs) const;
  ComplexMatrix solve(const ComplexMatrix& rhs) const;
  Eigen::Index size() const { return lu_.rows(); }
  double min_pivot() const { return min_pivot_; }

 private:
  Eigen::PartialPivLU<ComplexMatrix> lu_;
  double min_pivot_ = 0.0;
};

ComplexVector lu_solve(const ComplexMatrix& m, const ComplexVector& rhs);
ComplexMatrix lu_solve(const ComplexMatrix& m, const ComplexMatrix& rhs);

struct SingularValueExtremes {
  double sigma_min = 0.0;
  double sigma_max = 0.0;
  double condition() const { return sigma_max / sigma_min; }
};

SingularValueExtremes svd_extremes(const ComplexMatrix& m);

}  // namespace shiftgreen::lalg
