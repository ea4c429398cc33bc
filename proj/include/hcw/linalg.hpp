#pragma once

#include <Eigen/Dense>

namespace hcw {

struct EigenDecomposition {
  Eigen::VectorXd values;   // ascending
  Eigen::MatrixXd vectors;  // column k belongs to values[k]
};

// Thin wrappers over LAPACK dsyevd. Only the lower triangle is read.
Eigen::VectorXd symmetric_eigenvalues(const Eigen::MatrixXd& matrix);
EigenDecomposition symmetric_eigen(const Eigen::MatrixXd& matrix);

// Hermitian variant (zheevd), used for projector factorization.
struct HermitianDecomposition {
  Eigen::VectorXd values;
  Eigen::MatrixXcd vectors;
};
HermitianDecomposition hermitian_eigen(const Eigen::MatrixXcd& matrix);

}  // namespace hcw
