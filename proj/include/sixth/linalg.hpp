#pragma once

#include <Eigen/Dense>

namespace sixth {

/// A = L D L^T without pivoting. L is unit lower triangular.
struct LdltFactor {
  Eigen::MatrixXd L;
  Eigen::VectorXd D;

  Eigen::VectorXd solve(const Eigen::VectorXd& rhs) const;
};

/// Factors a symmetric matrix (only the lower triangle is read) without
/// pivoting, then checks that every pivot has the same sign and
/// |D_j| >= rel_floor * max|A|. Throws NumericalError(definiteness)
/// otherwise; the partial factor is not returned.
LdltFactor ldlt_unpivoted(const Eigen::MatrixXd& A, double rel_floor = 1e-12);

/// Largest |A_ij - A_ji| relative to max|A_ij|.
double symmetry_defect(const Eigen::MatrixXd& A);

}  // namespace sixth
