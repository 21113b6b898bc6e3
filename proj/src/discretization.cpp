#include "nsolab/discretization.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <limits>
#include <new>
#include <ostream>
#include <string>

#include "nsolab/error.hpp"

namespace nsolab {

TruncationDiagnostics TruncationDiagnostics::make(int n, std::string tag, cplx v_n, cplx v_2n) {
  TruncationDiagnostics d;
  d.dim_pair = {n, 2 * n};
  d.quantity_tag = std::move(tag);
  d.values = {v_n, v_2n};
  if (std::isinf(std::abs(v_n)) && std::isinf(std::abs(v_2n)))
    d.rel_gap = 0.0;
  else
    d.rel_gap = std::abs(v_n - v_2n) / std::max(std::abs(v_2n), kRelGapFloor);
  return d;
}

static cplx diag_entry(const Coupling& c, int n) { return (1.0 + c.c()) * (2.0 * n + 1.0) / 2.0; }
static cplx off_entry(const Coupling& c, int n) {
  return (c.c() - 1.0) * std::sqrt((n + 1.0) * (n + 2.0)) / 2.0;
}

OperatorMatrix build_matrix(const Coupling& c, int n) {
  if (n < 1) throw DomainError("truncation dimension must be >= 1");
  OperatorMatrix m{c, n, {}, 2};
  try {
    m.entries = MatrixXc::Zero(n, n);
  } catch (const std::bad_alloc&) {
    throw ResourceError("cannot allocate " + std::to_string(n) + "x" + std::to_string(n) + " matrix");
  }
  for (int k = 0; k < n; ++k) m.entries(k, k) = diag_entry(c, k);
  for (int k = 0; k + 2 < n; ++k) m.entries(k, k + 2) = m.entries(k + 2, k) = off_entry(c, k);
  return m;
}

void parity_bands(const Coupling& c, int dim, int parity, VectorXc& diag, VectorXc& off) {
  int b = OperatorMatrix::block_dim(dim, parity);
  diag.resize(b);
  off.resize(std::max(b - 1, 0));
  for (int k = 0; k < b; ++k) diag[k] = diag_entry(c, 2 * k + parity);
  for (int k = 0; k + 1 < b; ++k) off[k] = off_entry(c, 2 * k + parity);
}

MatrixXc parity_block(const Coupling& c, int dim, int parity) {
  VectorXc d, o;
  parity_bands(c, dim, parity, d, o);
  MatrixXc b = MatrixXc::Zero(d.size(), d.size());
  b.diagonal() = d;
  if (o.size() > 0) {
    b.diagonal(1) = o;
    b.diagonal(-1) = o;
  }
  return b;
}

MatrixXc OperatorMatrix::parity_block(int parity) const { return nsolab::parity_block(coupling, dim, parity); }

void OperatorMatrix::block_bands(int parity, VectorXc& diag, VectorXc& off) const {
  parity_bands(coupling, dim, parity, diag, off);
}

std::vector<TruncatedEigenvalue> block_eigenvalues(const OperatorMatrix& m) {
  std::vector<TruncatedEigenvalue> out;
  for (int p = 0; p < 2; ++p) {
    if (OperatorMatrix::block_dim(m.dim, p) == 0) continue;
    VectorXc ev = eigen_decompose(m.parity_block(p), false).values;
    for (auto v : ev) out.push_back({v, p});
  }
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return std::abs(a.value) < std::abs(b.value);
  });
  return out;
}

std::vector<cplx> truncated_eigenvalues(const OperatorMatrix& m, int count) {
  if (count < 0 || count > m.dim) throw DomainError("eigenvalue count must lie in [0, dim]");
  auto all = block_eigenvalues(m);
  std::vector<cplx> out;
  for (int k = 0; k < count; ++k) out.push_back(all[k].value);
  return out;
}

std::vector<EigenEstimate> eigenvalue_estimates(const Coupling& c, int n, int count, double tol) {
  auto a = block_eigenvalues(build_matrix(c, n));
  auto b = block_eigenvalues(build_matrix(c, 2 * n));
  if (count > n) throw DomainError("eigenvalue count exceeds the truncation dimension");
  std::vector<EigenEstimate> out;
  for (int k = 0; k < count; ++k) {
    cplx v = a[k].value;
    cplx best(std::numeric_limits<double>::infinity(), 0.0);
    for (const auto& e : b)
      if (e.parity == a[k].parity && std::abs(e.value - v) < std::abs(best - v)) best = e.value;
    EigenEstimate est;
    est.index = k;
    est.value = v;
    est.diagnostics = TruncationDiagnostics::make(n, "eigenvalue " + std::to_string(k), v, best);
    est.reliable = est.diagnostics.agrees(tol);
    out.push_back(est);
  }
  return out;
}

void write_matrix_dump(std::ostream& os, const OperatorMatrix& m) {
  os << "N=" << m.dim << '\n';
  char buf[64];
  for (int j = 0; j < m.dim; ++j)
    for (int i = 0; i < m.dim; ++i) {
      std::snprintf(buf, sizeof buf, "%.17g %.17g\n", m.entries(i, j).real(), m.entries(i, j).imag());
      os << buf;
    }
}

MatrixXc read_matrix_dump(std::istream& is) {
  std::string header;
  if (!(is >> header) || header.rfind("N=", 0) != 0) throw DomainError("matrix dump lacks N= header");
  int n = std::stoi(header.substr(2));
  if (n < 1) throw DomainError("matrix dump has invalid dimension");
  MatrixXc a(n, n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      double re, im;
      if (!(is >> re >> im)) throw DomainError("matrix dump truncated");
      a(i, j) = {re, im};
    }
  return a;
}

}  // namespace nsolab
