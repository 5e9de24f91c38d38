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

// Master-equation generators in superoperator form.
//
// Vectorization is column stacking: vec(rho)[i + j*dim] = rho(i, j), which is
// the memory layout of a column-major Eigen matrix. With this convention
//   vec(A rho B) = (B^T (x) A) vec(rho).

#pragma once

#include <optional>

#include "jcb/hilbert.hpp"
#include "jcb/types.hpp"

namespace jcb {

struct Superoperator {
  SparseMatrix matrix;  // dim^2 x dim^2
  int hilbert_dim = 0;
  std::optional<ModelParams> params;  // set when built from a model
};

inline Vector vec(const DenseMatrix& rho) {
  return Eigen::Map<const Vector>(rho.data(), rho.size());
}

inline DenseMatrix unvec(const Vector& v, int dim) {
  if (v.size() != static_cast<Eigen::Index>(dim) * dim)
    fail(ErrorKind::InvalidArgument, "unvec: length is not dim^2");
  return Eigen::Map<const DenseMatrix>(v.data(), dim, dim);
}

/// rho -> A rho
inline SparseMatrix spre(const Operator& a) {
  return tensor(identity(static_cast<int>(a.rows())), a);
}

/// rho -> rho B
inline SparseMatrix spost(const Operator& b) {
  return tensor(Operator(b.transpose()), identity(static_cast<int>(b.rows())));
}

/// rho -> -i [H, rho]
inline Superoperator hamiltonian_term(const Operator& h) {
  if (h.rows() != h.cols())
    fail(ErrorKind::InvalidArgument, "Hamiltonian must be square");
  Superoperator out;
  out.hilbert_dim = static_cast<int>(h.rows());
  out.matrix = Complex(0.0, -1.0) * (spre(h) - spost(h));
  return out;
}

/// D[X](rho) = X rho X^dag - (1/2){X^dag X, rho}
inline Superoperator dissipator(const Operator& x) {
  if (x.rows() != x.cols())
    fail(ErrorKind::InvalidArgument, "dissipator: operator must be square");
  const Operator xdx = x.adjoint() * x;
  Superoperator out;
  out.hilbert_dim = static_cast<int>(x.rows());
  out.matrix = tensor(Operator(x.conjugate()), x) - 0.5 * spre(xdx) -
               0.5 * spost(xdx);
  out.matrix.prune(Complex(0.0));
  return out;
}

/// H = -dw (a^dag a + sigma_+ sigma_-) + g (a sigma_+ + a^dag sigma_-)
///     + eps_d (a + a^dag),  in the frame rotating at the drive frequency.
inline Operator rotating_frame_hamiltonian(const ModelParams& p) {
  const JcOperators ops = jc_operators(p.n_max);
  Operator coupling = ops.a * ops.sm.adjoint();
  coupling += Operator(coupling.adjoint());
  Operator drive = ops.a + Operator(ops.a.adjoint());
  Operator h = -p.delta_omega * (ops.number + ops.excitation) +
               p.g * coupling + p.eps_d * drive;
  h.prune(Complex(0.0));
  return h;
}

/// Full Jaynes-Cummings master equation generator. Cavity loss enters as
/// kappa (2 a rho a^dag - ...), i.e. 2 kappa D[a]; atomic loss as gamma D[sigma_-].
inline Superoperator build_liouvillian(const ModelParams& p) {
  validate(p);
  const JcOperators ops = jc_operators(p.n_max);
  Superoperator out = hamiltonian_term(rotating_frame_hamiltonian(p));
  out.matrix += 2.0 * p.kappa * dissipator(ops.a).matrix;
  if (p.gamma > 0.0) out.matrix += p.gamma * dissipator(ops.sm).matrix;
  out.matrix.prune(Complex(0.0));
  out.matrix.makeCompressed();
  out.params = p;
  return out;
}

inline DensityMatrix apply(const Superoperator& l, const DensityMatrix& rho) {
  if (rho.rows() != l.hilbert_dim || rho.cols() != l.hilbert_dim)
    fail(ErrorKind::InvalidArgument, "apply: density matrix dimension mismatch");
  return unvec(l.matrix * vec(rho), l.hilbert_dim);
}

}  // namespace jcb
