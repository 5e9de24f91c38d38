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

// Truncated cavity (x) two-level-atom Hilbert space.
//
// Basis ordering is cavity first, atom second: the composite index of
// |n, s> is 2*n + s, with s = 0 the lower atomic state |-> and s = 1 the
// upper state |+>. All rates are expressed in units of the cavity decay
// rate kappa; the atomic and cavity transition frequency never appears
// because dynamics run in the frame rotating at the drive frequency.

#pragma once

#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "jcb/types.hpp"

namespace jcb {

inline constexpr int kDefaultFockCutoff = 30;

struct ModelParams {
  double g = 1000.0;         // dipole coupling
  double kappa = 1.0;        // cavity field decay; photon loss rate is 2*kappa
  double gamma = 2.0;        // atomic spontaneous emission to non-cavity modes
  double eps_d = 40.0;       // drive amplitude
  double delta_omega = 0.0;  // drive-cavity detuning omega_d - omega_0
  int n_max = kDefaultFockCutoff;

  int hilbert_dim() const { return 2 * (n_max + 1); }
};

inline void validate(const ModelParams& p) {
  auto finite = [](double x) { return std::isfinite(x); };
  if (!finite(p.g) || !finite(p.kappa) || !finite(p.gamma) ||
      !finite(p.eps_d) || !finite(p.delta_omega))
    fail(ErrorKind::InvalidArgument, "model parameters must be finite");
  if (p.g <= 0.0) fail(ErrorKind::InvalidArgument, "g must be positive");
  if (p.kappa <= 0.0)
    fail(ErrorKind::InvalidArgument, "kappa must be positive");
  if (p.eps_d <= 0.0)
    fail(ErrorKind::InvalidArgument, "drive amplitude must be positive");
  if (p.gamma < 0.0)
    fail(ErrorKind::InvalidArgument, "gamma must be non-negative");
  if (p.n_max < 3)
    fail(ErrorKind::InvalidArgument, "Fock cutoff n_max must be at least 3");
}

/// Soft checks of the strong-coupling, weak-drive regime. Never fatal.
inline std::vector<std::string> regime_warnings(const ModelParams& p) {
  std::vector<std::string> out;
  if (p.g / p.kappa < 10.0)
    out.push_back("g/kappa = " + std::to_string(p.g / p.kappa) +
                  " is not >> 1; dressed-state picture is poor");
  if (p.eps_d / p.g > 0.1)
    out.push_back("eps_d/g = " + std::to_string(p.eps_d / p.g) +
                  " is not << 1; perturbative drive shifts are unreliable");
  return out;
}

inline Operator identity(int dim) {
  Operator id(dim, dim);
  id.setIdentity();
  return id;
}

/// Photon annihilation operator on Fock states 0..n_max.
inline Operator fock_annihilation(int n_max) {
  if (n_max < 1)
    fail(ErrorKind::InvalidArgument,
         "invalid truncation: n_max must be at least 1");
  const int dim = n_max + 1;
  std::vector<Eigen::Triplet<Complex>> entries;
  entries.reserve(n_max);
  for (int n = 1; n <= n_max; ++n)
    entries.emplace_back(n - 1, n, std::sqrt(static_cast<double>(n)));
  Operator a(dim, dim);
  a.setFromTriplets(entries.begin(), entries.end());
  return a;
}

/// sigma_- = |-><+| on the two-level atom (index 0 lower, 1 upper).
inline Operator atomic_lowering() {
  Operator sm(2, 2);
  sm.insert(0, 1) = 1.0;
  sm.makeCompressed();
  return sm;
}

/// Kronecker product left (x) right. The only place composite operators
/// are formed.
inline Operator tensor(const Operator& left, const Operator& right) {
  const Eigen::Index rr = right.rows(), rc = right.cols();
  std::vector<Eigen::Triplet<Complex>> entries;
  entries.reserve(static_cast<size_t>(left.nonZeros() * right.nonZeros()));
  for (int lk = 0; lk < left.outerSize(); ++lk)
    for (Operator::InnerIterator l(left, lk); l; ++l)
      for (int rk = 0; rk < right.outerSize(); ++rk)
        for (Operator::InnerIterator r(right, rk); r; ++r)
          entries.emplace_back(static_cast<int>(l.row() * rr + r.row()),
                               static_cast<int>(l.col() * rc + r.col()),
                               l.value() * r.value());
  Operator out(left.rows() * rr, left.cols() * rc);
  out.setFromTriplets(entries.begin(), entries.end());
  return out;
}

inline Operator adjoint(const Operator& op) { return op.adjoint(); }

inline bool is_hermitian(const Operator& op, double tol = 1e-12) {
  if (op.rows() != op.cols()) return false;
  Operator diff = op - Operator(op.adjoint());
  for (int k = 0; k < diff.outerSize(); ++k)
    for (Operator::InnerIterator it(diff, k); it; ++it)
      if (std::abs(it.value()) > tol) return false;
  return true;
}

/// Elementary composite operators for a given Fock cutoff.
struct JcOperators {
  int n_max = 0;
  Operator a;            // a (x) 1
  Operator sm;           // 1 (x) sigma_-
  Operator number;       // a^dag a
  Operator excitation;   // sigma_+ sigma_-
  Operator sigma_z;      // 2 sigma_+ sigma_- - 1
  Operator id;

  int dim() const { return 2 * (n_max + 1); }
};

inline JcOperators jc_operators(int n_max) {
  JcOperators ops;
  ops.n_max = n_max;
  const Operator a = fock_annihilation(n_max);
  const Operator sm = atomic_lowering();
  ops.a = tensor(a, identity(2));
  ops.sm = tensor(identity(n_max + 1), sm);
  ops.number = ops.a.adjoint() * ops.a;
  ops.excitation = ops.sm.adjoint() * ops.sm;
  ops.id = identity(ops.dim());
  ops.sigma_z = 2.0 * ops.excitation - ops.id;
  return ops;
}

/// omega0 (sigma_+ sigma_- + a^dag a) + g (a sigma_+ + a^dag sigma_-).
inline Operator undriven_jc_hamiltonian(int n_max, double omega0, double g) {
  const JcOperators ops = jc_operators(n_max);
  Operator coupling = ops.a * ops.sm.adjoint();
  coupling += Operator(coupling.adjoint());
  return omega0 * (ops.excitation + ops.number) + g * coupling;
}

/// Basis ket |n, s> in the composite space.
inline Vector basis_ket(int n_max, int photons, int upper) {
  Vector v = Vector::Zero(2 * (n_max + 1));
  v(2 * photons + upper) = 1.0;
  return v;
}

/// The ground state and the lowest three excited dressed states:
///   |0> = |0,->,  |1> = (|1,-> - |0,+>)/sqrt2,
///   |2> = (|1,-> + |0,+>)/sqrt2,  |3> = (|2,-> - |1,+>)/sqrt2.
inline std::array<Vector, 4> dressed_states(int n_max) {
  if (n_max < 2)
    fail(ErrorKind::InvalidArgument,
         "dressed states need n_max >= 2 to hold the second couplet");
  const double r = 1.0 / std::sqrt(2.0);
  auto ket = [n_max](int n, int s) { return basis_ket(n_max, n, s); };
  return {ket(0, 0), r * (ket(1, 0) - ket(0, 1)), r * (ket(1, 0) + ket(0, 1)),
          r * (ket(2, 0) - ket(1, 1))};
}

}  // namespace jcb
