#include "sixth/linalg.hpp"

#include <cmath>
#include <string>

#include "sixth/errors.hpp"

namespace sixth {

LdltFactor ldlt_unpivoted(const Eigen::MatrixXd& A, double rel_floor) {
  const Eigen::Index n = A.rows();
  if (A.cols() != n) throw InvalidArgument("LDL^T needs a square matrix");
  const double scale = n == 0 ? 0.0 : A.cwiseAbs().maxCoeff();

  LdltFactor f;
  f.L = Eigen::MatrixXd::Identity(n, n);
  f.D = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd ld(n);  // L(j, k) * D(k) for the current row j
  for (Eigen::Index j = 0; j < n; ++j) {
    double d = A(j, j);
    for (Eigen::Index k = 0; k < j; ++k) {
      ld[k] = f.L(j, k) * f.D[k];
      d -= f.L(j, k) * ld[k];
    }
    if (!std::isfinite(d) || std::fabs(d) < rel_floor * scale ||
        (j > 0 && (d > 0.0) != (f.D[0] > 0.0))) {
      throw NumericalError(NumericalError::Kind::definiteness,
                           "LDL^T pivot " + std::to_string(j) + " = " + std::to_string(d) +
                               " breaks definiteness");
    }
    f.D[j] = d;
    for (Eigen::Index i = j + 1; i < n; ++i) {
      double v = A(i, j);
      for (Eigen::Index k = 0; k < j; ++k) v -= f.L(i, k) * ld[k];
      f.L(i, j) = v / d;
    }
  }
  return f;
}

Eigen::VectorXd LdltFactor::solve(const Eigen::VectorXd& rhs) const {
  Eigen::VectorXd y = L.triangularView<Eigen::UnitLower>().solve(rhs);
  y.array() /= D.array();
  return L.transpose().triangularView<Eigen::UnitUpper>().solve(y);
}

double symmetry_defect(const Eigen::MatrixXd& A) {
  const double scale = A.cwiseAbs().maxCoeff();
  if (scale == 0.0) return 0.0;
  return (A - A.transpose()).cwiseAbs().maxCoeff() / scale;
}

}  // namespace sixth
