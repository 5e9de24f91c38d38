// Copyright 2026 The jcblockade Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>
#include <Eigen/SparseLU>

#include "jcb/liouvillian.hpp"
#include "jcb/types.hpp"

namespace jcb {

enum class SteadyStateMethod {
  RowReplacement,  // swap one equation for tr(rho) = 1 and direct-solve
  NullVector,      // eigenvector of the eigenvalue nearest zero, renormalized
};

namespace detail {

inline double max_abs_entry(const SparseMatrix& m) {
  double out = 0.0;
  for (int k = 0; k < m.outerSize(); ++k)
    for (SparseMatrix::InnerIterator it(m, k); it; ++it)
      out = std::max(out, std::abs(it.value()));
  return out;
}

/// Largest |tr(L X)| over the matrix units X = |i><j|, i.e. the largest
/// entry of the row functional tr o L. Zero for a trace-preserving generator.
inline double trace_defect(const Superoperator& l) {
  const int d = l.hilbert_dim;
  Vector trace_row = Vector::Zero(static_cast<Eigen::Index>(d) * d);
  for (int k = 0; k < l.matrix.outerSize(); ++k)
    for (SparseMatrix::InnerIterator it(l.matrix, k); it; ++it)
      if (it.row() % (d + 1) == 0) trace_row(it.col()) += it.value();
  return trace_row.cwiseAbs().maxCoeff();
}

inline double kernel_threshold(const Superoperator& l) {
  return 1e-10 * std::max(1.0, max_abs_entry(l.matrix));
}

}  // namespace detail

/// Eigenvalues of a Liouvillian nearest zero, by shift-invert Arnoldi.
struct SlowModes {
  std::vector<Complex> eigenvalues;  // sorted by increasing magnitude
  Vector null_vector;                // Ritz vector of eigenvalues[0]
};

inline SlowModes slowest_modes(const Superoperator& l, int count = 2,
                               int krylov_dim = 40) {
  const Eigen::Index n = l.matrix.rows();
  const double scale = std::max(1.0, detail::max_abs_entry(l.matrix));
  const double shift = 1e-9 * scale;
  SparseMatrix shifted = l.matrix;
  for (Eigen::Index i = 0; i < n; ++i) shifted.coeffRef(i, i) -= shift;
  shifted.makeCompressed();
  Eigen::SparseLU<SparseMatrix> lu;
  lu.compute(shifted);
  if (lu.info() != Eigen::Success)
    fail(ErrorKind::SolverFailure, "slowest_modes: factorization failed");

  const int m = static_cast<int>(std::min<Eigen::Index>(krylov_dim, n));
  DenseMatrix basis(n, m + 1);
  DenseMatrix hess = DenseMatrix::Zero(m + 1, m);
  // Deterministic start vector with support on every coordinate.
  Vector start(n);
  for (Eigen::Index i = 0; i < n; ++i)
    start(i) = Complex(1.0 + 0.37 * std::sin(1.3 * i), 0.21 * std::cos(0.7 * i));
  basis.col(0) = start.normalized();
  int used = m;
  for (int j = 0; j < m; ++j) {
    Vector w = lu.solve(basis.col(j));
    for (int pass = 0; pass < 2; ++pass)
      for (int i = 0; i <= j; ++i) {
        const Complex h = basis.col(i).dot(w);
        hess(i, j) += h;
        w -= h * basis.col(i);
      }
    const double norm = w.norm();
    hess(j + 1, j) = norm;
    if (norm < 1e-14 * std::max(1.0, hess.col(j).norm())) {
      used = j + 1;
      break;
    }
    basis.col(j + 1) = w / norm;
  }

  Eigen::ComplexEigenSolver<DenseMatrix> es(hess.topLeftCorner(used, used));
  std::vector<int> order(used);
  for (int i = 0; i < used; ++i) order[i] = i;
  auto lambda = [&](int i) {
    const Complex theta = es.eigenvalues()(i);
    if (std::abs(theta) == 0.0) return Complex(1e300, 0.0);
    return shift + 1.0 / theta;
  };
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return std::abs(lambda(a)) < std::abs(lambda(b)); });

  SlowModes out;
  for (int i = 0; i < std::min(count, used); ++i)
    out.eigenvalues.push_back(lambda(order[i]));
  out.null_vector = basis.leftCols(used) * es.eigenvectors().col(order[0]);
  return out;
}

/// Hermitize, renormalize and check a candidate density matrix.
inline DensityMatrix finalize_density_matrix(DensityMatrix rho) {
  rho = 0.5 * (rho + rho.adjoint()).eval();
  const Complex tr = rho.trace();
  if (!std::isfinite(tr.real()) || std::abs(tr) < 1e-300)
    fail(ErrorKind::SolverFailure, "density matrix has vanishing trace");
  rho /= tr.real();
  Eigen::SelfAdjointEigenSolver<DensityMatrix> es(rho, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -1e-8)
    fail(ErrorKind::SolverFailure,
         "steady state is not positive semidefinite (min eigenvalue " +
             std::to_string(es.eigenvalues().minCoeff()) + ")");
  return rho;
}

inline DensityMatrix steady_state(
    const Superoperator& l,
    SteadyStateMethod method = SteadyStateMethod::RowReplacement) {
  const int d = l.hilbert_dim;
  const Eigen::Index n = static_cast<Eigen::Index>(d) * d;
  if (d <= 0 || l.matrix.rows() != n || l.matrix.cols() != n)
    fail(ErrorKind::InvalidArgument, "steady_state: malformed superoperator");
  const double scale = std::max(1.0, detail::max_abs_entry(l.matrix));
  if (detail::trace_defect(l) > 1e-10 * scale)
    fail(ErrorKind::InvalidArgument,
         "steady_state: generator is not trace preserving");

  if (method == SteadyStateMethod::NullVector) {
    const SlowModes modes = slowest_modes(l, 2);
    const double tol = detail::kernel_threshold(l);
    if (modes.eigenvalues.size() > 1 && std::abs(modes.eigenvalues[1]) < tol)
      fail(ErrorKind::AmbiguousSteadyState,
           "two Liouvillian eigenvalues vanish; steady state is not unique");
    if (modes.eigenvalues.empty() || std::abs(modes.eigenvalues[0]) > tol)
      fail(ErrorKind::SolverFailure, "no zero eigenvalue found");
    return finalize_density_matrix(unvec(modes.null_vector, d));
  }

  // Row 0 of L is minus the sum of the other diagonal rows when L preserves
  // the trace, so it carries no information and is replaced by tr(rho) = 1.
  std::vector<Eigen::Triplet<Complex>> entries;
  entries.reserve(static_cast<size_t>(l.matrix.nonZeros() + d));
  for (int k = 0; k < l.matrix.outerSize(); ++k)
    for (SparseMatrix::InnerIterator it(l.matrix, k); it; ++it)
      if (it.row() != 0) entries.emplace_back(it.row(), it.col(), it.value());
  for (int i = 0; i < d; ++i) entries.emplace_back(0, i * (d + 1), scale);
  SparseMatrix system(n, n);
  system.setFromTriplets(entries.begin(), entries.end());
  system.makeCompressed();

  Eigen::SparseLU<SparseMatrix> lu;
  lu.compute(system);
  if (lu.info() != Eigen::Success)
    fail(ErrorKind::AmbiguousSteadyState,
         "trace-constrained system is singular: kernel of L is degenerate");
  Vector rhs = Vector::Zero(n);
  rhs(0) = scale;
  const Vector x = lu.solve(rhs);
  if (lu.info() != Eigen::Success || !x.allFinite())
    fail(ErrorKind::AmbiguousSteadyState,
         "trace-constrained solve failed: kernel of L is degenerate");
  const double residual = (system * x - rhs).norm() / scale;
  if (residual > 1e-8)
    fail(ErrorKind::AmbiguousSteadyState,
         "trace-constrained solve is inconsistent (residual " +
             std::to_string(residual) + ")");
  return finalize_density_matrix(unvec(x, d));
}

inline Complex expectation(const DensityMatrix& rho, const Operator& op) {
  if (rho.rows() != op.rows() || rho.cols() != op.cols() ||
      rho.rows() != rho.cols())
    fail(ErrorKind::InvalidArgument, "expectation: dimension mismatch");
  Complex acc = 0.0;
  for (int k = 0; k < op.outerSize(); ++k)
    for (Operator::InnerIterator it(op, k); it; ++it)
      acc += rho(it.col(), it.row()) * it.value();
  return acc;
}

}  // namespace jcb
