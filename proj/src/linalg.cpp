#include "nsolab/linalg.hpp"

#include <string>

#include "nsolab/error.hpp"

#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>

namespace nsolab {

Eigen::VectorXd singular_values(const MatrixXc& a) {
  const lapack_int m = lapack_int(a.rows()), n = lapack_int(a.cols());
  Eigen::VectorXd s(std::min(m, n));
  if (s.size() == 0) return s;
  MatrixXc work = a;
  lapack_int info = LAPACKE_zgesdd(LAPACK_COL_MAJOR, 'N', m, n, work.data(), m, s.data(),
                                   nullptr, 1, nullptr, 1);
  if (info != 0) throw ConvergenceError("zgesdd failed, info = " + std::to_string(info));
  return s;
}

double largest_singular_value(const MatrixXc& a) { return singular_values(a)[0]; }

EigenDecomposition eigen_decompose(const MatrixXc& a, bool want_vectors) {
  const lapack_int n = lapack_int(a.rows());
  if (a.cols() != a.rows()) throw DomainError("eigen_decompose needs a square matrix");
  EigenDecomposition out;
  out.values.resize(n);
  if (n == 0) return out;
  MatrixXc work = a;
  if (want_vectors) out.vectors.resize(n, n);
  lapack_int info = LAPACKE_zgeev(LAPACK_COL_MAJOR, 'N', want_vectors ? 'V' : 'N', n, work.data(), n,
                                  out.values.data(), nullptr, 1,
                                  want_vectors ? out.vectors.data() : nullptr, want_vectors ? n : 1);
  if (info > 0)
    throw ConvergenceError("zgeev failed to converge; eigenvalues before index " +
                           std::to_string(info) + " not computed");
  if (info < 0) throw DomainError("zgeev argument " + std::to_string(-info) + " invalid");
  return out;
}

TridiagonalLU::TridiagonalLU(VectorXc lower, VectorXc diag, VectorXc upper)
    : dl_(std::move(lower)), d_(std::move(diag)), du_(std::move(upper)) {
  const lapack_int n = lapack_int(d_.size());
  if (dl_.size() != std::max<lapack_int>(n - 1, 0) || du_.size() != dl_.size())
    throw DomainError("tridiagonal bands have inconsistent lengths");
  du2_.resize(std::max<lapack_int>(n - 2, 0));
  ipiv_.resize(n);
  lapack_int info = LAPACKE_zgttrf(n, dl_.data(), d_.data(), du_.data(), du2_.data(), ipiv_.data());
  if (info < 0) throw DomainError("zgttrf argument " + std::to_string(-info) + " invalid");
  singular_ = info > 0;
}

void TridiagonalLU::solve(MatrixXc& rhs) const {
  if (singular_) throw SingularPointError("tridiagonal matrix is exactly singular");
  const lapack_int n = lapack_int(d_.size());
  if (rhs.rows() != n) throw DomainError("right-hand side has wrong row count");
  lapack_int info = LAPACKE_zgttrs(LAPACK_COL_MAJOR, 'N', n, lapack_int(rhs.cols()),
                                   dl_.data(), d_.data(), du_.data(), du2_.data(), ipiv_.data(),
                                   rhs.data(), n);
  if (info != 0) throw DomainError("zgttrs failed, info = " + std::to_string(info));
}

}  // namespace nsolab
