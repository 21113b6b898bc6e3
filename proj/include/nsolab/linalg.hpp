#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

namespace nsolab {

using MatrixXc = Eigen::MatrixXcd;
using VectorXc = Eigen::VectorXcd;

// Singular values in descending order (LAPACK zgesdd, values only).
Eigen::VectorXd singular_values(const MatrixXc& a);
double largest_singular_value(const MatrixXc& a);

struct EigenDecomposition {
  VectorXc values;
  MatrixXc vectors;  // right eigenvectors as columns; empty unless requested
};

// General complex eigenproblem (LAPACK zgeev).
EigenDecomposition eigen_decompose(const MatrixXc& a, bool want_vectors);

// LU factorization of a tridiagonal matrix with partial pivoting (zgttrf).
class TridiagonalLU {
 public:
  TridiagonalLU(VectorXc lower, VectorXc diag, VectorXc upper);
  bool singular() const { return singular_; }
  // Overwrites rhs (n x k) with the solution.
  void solve(MatrixXc& rhs) const;
  int dim() const { return int(d_.size()); }

 private:
  VectorXc dl_, d_, du_, du2_;
  std::vector<int> ipiv_;
  bool singular_ = false;
};

}  // namespace nsolab
