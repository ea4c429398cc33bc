#include "hcw/linalg.hpp"

#include <lapacke.h>

#include <string>

#include "hcw/error.hpp"

namespace hcw {
namespace {

void check_square(Eigen::Index rows, Eigen::Index cols) {
  require(rows == cols && rows > 0, "eigensolver needs a nonempty square matrix");
}

void check_info(lapack_int info, const char* routine) {
  if (info != 0) {
    throw NumericalFailure(std::string(routine) + " failed with info=" + std::to_string(info), 0.0);
  }
}

}  // namespace

Eigen::VectorXd symmetric_eigenvalues(const Eigen::MatrixXd& matrix) {
  check_square(matrix.rows(), matrix.cols());
  Eigen::MatrixXd work = matrix;
  Eigen::VectorXd values(matrix.rows());
  const auto n = static_cast<lapack_int>(matrix.rows());
  check_info(LAPACKE_dsyevd(LAPACK_COL_MAJOR, 'N', 'L', n, work.data(), n, values.data()), "dsyevd");
  return values;
}

EigenDecomposition symmetric_eigen(const Eigen::MatrixXd& matrix) {
  check_square(matrix.rows(), matrix.cols());
  EigenDecomposition out{Eigen::VectorXd(matrix.rows()), matrix};
  const auto n = static_cast<lapack_int>(matrix.rows());
  check_info(LAPACKE_dsyevd(LAPACK_COL_MAJOR, 'V', 'L', n, out.vectors.data(), n, out.values.data()),
             "dsyevd");
  return out;
}

HermitianDecomposition hermitian_eigen(const Eigen::MatrixXcd& matrix) {
  check_square(matrix.rows(), matrix.cols());
  HermitianDecomposition out{Eigen::VectorXd(matrix.rows()), matrix};
  const auto n = static_cast<lapack_int>(matrix.rows());
  auto* data = reinterpret_cast<lapack_complex_double*>(out.vectors.data());
  check_info(LAPACKE_zheevd(LAPACK_COL_MAJOR, 'V', 'L', n, data, n, out.values.data()), "zheevd");
  return out;
}

}  // namespace hcw
