#pragma once

#include <vector>

#include "nsolab/discretization.hpp"
#include "nsolab/mehler.hpp"

namespace nsolab {

struct Contour {
  cplx center;
  double radius = 0.0;
  int nodes = 0;
};

struct ProjectorData {
  int n = 0;
  MatrixXc matrix;  // N x N, nonzero only on the parity block of n
  double norm = 0.0;
  Contour contour;
  TruncationDiagnostics diagnostics;  // projector norm at N and 2N
  cplx eigenvalue;                    // truncated eigenvalue at the contour centre
  double idempotency_defect = 0.0;    // ||Q^2 - Q|| / ||Q||
  double second_singular_ratio = 0.0; // sigma_2 / sigma_1
};

ProjectorData projector(const Coupling& c, int n, int dim, int contour_nodes = 64);

enum class KappaMethod { contour, biorthogonal };

struct InstabilityIndex {
  int n = 0;
  double kappa = 0.0;
  KappaMethod method = KappaMethod::contour;
  double quadrature_error = 0.0;
};

struct BiorthogonalQuadrature {
  double rel_tol = 1e-13;
  double max_rel_error = 1e-10;
};

InstabilityIndex kappa_contour(const Coupling& c, int n, int dim, int contour_nodes = 64);
// ||Psi_n||^2 / |int Psi_n^2| by adaptive quadrature of the eigenfunctions.
InstabilityIndex kappa_biorthogonal(const Coupling& c, int n, const BiorthogonalQuadrature& spec = {});

double kappa_m_sum(const Coupling& c, int m, int dim);

struct DecompositionBound {
  double lhs = 0.0;  // resolvent norm at z
  double rhs = 0.0;  // kappa_m (sum 1/|lambda_n - z| + restricted norm)
  double kappa_m = 0.0;
  double restricted_norm = 0.0;
  double disk_sum = 0.0;
};

// Restricted resolvent: compression of H_N - z to the invariant complement of the first
// m+1 eigenvectors, i.e. the orthogonal complement of their complex conjugates.
double restricted_resolvent_norm(const Coupling& c, int m, cplx z, int dim);
DecompositionBound decomposition_bound_check(const Coupling& c, int m, cplx z, int dim);

// Eigenvalues of (I - P_m) A (I - P_m) for the Nystrom semigroup, sorted by modulus, descending.
std::vector<cplx> restricted_semigroup_spectrum(const MehlerKernel& k, int m, int node_count, int count);

struct IndexRow {
  int n = 0;
  double kappa_contour = 0.0;
  double kappa_biorthogonal = 0.0;
  double rel_gap = 0.0;
};

std::vector<IndexRow> instability_table(const Coupling& c, int max_n, int dim, int contour_nodes = 64);

}  // namespace nsolab
