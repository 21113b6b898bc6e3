#pragma once

#include <array>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "nsolab/coupling.hpp"
#include "nsolab/linalg.hpp"

namespace nsolab {

inline constexpr double kRelGapFloor = 1e-30;
inline constexpr double kDefaultRelGapTol = 1e-6;

// Agreement of one quantity between truncation dims N and 2N.
struct TruncationDiagnostics {
  std::pair<int, int> dim_pair{0, 0};
  std::string quantity_tag;
  std::array<cplx, 2> values{};
  double rel_gap = 0.0;

  static TruncationDiagnostics make(int n, std::string tag, cplx v_n, cplx v_2n);
  bool agrees(double tol = kDefaultRelGapTol) const { return rel_gap < tol; }
};

// H_c in the Hermite basis: diagonal (1+c)(2n+1)/2, entries (c-1)sqrt((n+1)(n+2))/2 at offset 2.
struct OperatorMatrix {
  Coupling coupling;
  int dim = 0;
  MatrixXc entries;
  int bandwidth = 2;

  // The matrix decouples into even and odd index blocks, each tridiagonal.
  static int block_dim(int dim, int parity) { return (dim - parity + 1) / 2; }
  MatrixXc parity_block(int parity) const;
  // Bands of the tridiagonal parity block (lower == upper by complex symmetry).
  void block_bands(int parity, VectorXc& diag, VectorXc& off) const;
};

OperatorMatrix build_matrix(const Coupling& c, int n);

// Bands of a parity block without forming the full matrix.
void parity_bands(const Coupling& c, int dim, int parity, VectorXc& diag, VectorXc& off);
MatrixXc parity_block(const Coupling& c, int dim, int parity);

struct TruncatedEigenvalue {
  cplx value;
  int parity = 0;
};

// Eigenvalues of both parity blocks merged and sorted by modulus.
std::vector<TruncatedEigenvalue> block_eigenvalues(const OperatorMatrix& m);

// The `count` eigenvalues of the truncation closest to the origin, sorted by modulus.
std::vector<cplx> truncated_eigenvalues(const OperatorMatrix& m, int count);

struct EigenEstimate {
  int index = 0;
  cplx value;
  TruncationDiagnostics diagnostics;
  bool reliable = false;
};

// Compares the first `count` eigenvalues at N against the nearest ones at 2N.
std::vector<EigenEstimate> eigenvalue_estimates(const Coupling& c, int n, int count,
                                                double tol = kDefaultRelGapTol);

// Plain-text dump: header "N=<dim>", then column-major "re im" lines.
void write_matrix_dump(std::ostream& os, const OperatorMatrix& m);
MatrixXc read_matrix_dump(std::istream& is);

}  // namespace nsolab
