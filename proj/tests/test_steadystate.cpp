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

#include <cmath>

#include <gtest/gtest.h>

#include "jcb/four_level.hpp"
#include "jcb/steadystate.hpp"

namespace jcb {
namespace {

ModelParams shifted_resonance(double eps) {
  ModelParams p;
  p.eps_d = eps;
  p.delta_omega = resonant_drive_frequency(p);
  return p;
}

double min_eigenvalue(const DensityMatrix& rho) {
  return Eigen::SelfAdjointEigenSolver<DensityMatrix>(rho).eigenvalues().minCoeff();
}

// Resonance fluorescence of a driven two-level atom has a textbook steady
// state: rho_ee = (W^2/4) / (D^2 + gamma^2/4 + W^2/2).
TEST(SteadyState, DrivenTwoLevelAtomOracle) {
  const double rabi = 1.7, detuning = 0.6, gamma = 0.9;
  DenseMatrix h(2, 2);
  h << 0.0, rabi / 2, rabi / 2, -detuning;
  Superoperator l = hamiltonian_term(Operator(h.sparseView()));
  l.matrix += gamma * dissipator(atomic_lowering()).matrix;
  const double expected =
      (rabi * rabi / 4) / (detuning * detuning + gamma * gamma / 4 + rabi * rabi / 2);
  for (auto method : {SteadyStateMethod::RowReplacement, SteadyStateMethod::NullVector}) {
    const DensityMatrix rho = steady_state(l, method);
    EXPECT_NEAR(rho(1, 1).real(), expected, 1e-12);
    EXPECT_NEAR(rho.trace().real(), 1.0, 1e-14);
  }
}

// A driven damped cavity relaxes to a coherent state with
// <a> = eps / (Delta + i kappa).
TEST(SteadyState, DrivenCavityOracle) {
  const int n_max = 25;
  const double eps = 0.8, delta = 0.5, kappa = 1.0;
  const DenseMatrix a(fock_annihilation(n_max));
  const DenseMatrix h = -delta * a.adjoint() * a + eps * (a + a.adjoint());
  Superoperator l = hamiltonian_term(Operator(h.sparseView()));
  l.matrix += 2.0 * kappa * dissipator(Operator(a.sparseView())).matrix;
  const DensityMatrix rho = steady_state(l);
  const Complex alpha = eps / Complex(delta, kappa);
  EXPECT_LT(std::abs(expectation(rho, Operator(a.sparseView())) - alpha), 1e-10);
  const double n = expectation(rho, Operator((a.adjoint() * a).sparseView())).real();
  EXPECT_NEAR(n, std::norm(alpha), 1e-10);
}

TEST(SteadyState, StrategiesAgreeAtOperatingPoint) {
  const Superoperator l = build_liouvillian(shifted_resonance(40.0));
  const DensityMatrix direct = steady_state(l, SteadyStateMethod::RowReplacement);
  const DensityMatrix kernel = steady_state(l, SteadyStateMethod::NullVector);
  EXPECT_LT((direct - kernel).cwiseAbs().maxCoeff(), 1e-8);
  EXPECT_LT((l.matrix * vec(direct)).norm(), 1e-9 * l.matrix.norm());
}

TEST(SteadyStateProperty, ValidDensityMatrixAcrossDetunings) {
  for (double d : {-1.0, -0.75, -1.0 / std::sqrt(2.0), -0.6}) {
    ModelParams p;
    p.eps_d = 40.0;
    p.delta_omega = d * p.g;
    const DensityMatrix rho = steady_state(build_liouvillian(p));
    EXPECT_NEAR(rho.trace().real(), 1.0, 1e-12);
    EXPECT_LT((rho - rho.adjoint()).norm(), 1e-14);
    EXPECT_GE(min_eigenvalue(rho), -1e-8) << "detuning " << d;
  }
}

TEST(SteadyState, SpectralGapAtOperatingPoint) {
  const Superoperator l = build_liouvillian(shifted_resonance(40.0));
  const SlowModes modes = slowest_modes(l, 2);
  ASSERT_EQ(modes.eigenvalues.size(), 2u);
  EXPECT_LT(std::abs(modes.eigenvalues[0]), 1e-8);
  EXPECT_GE(std::abs(modes.eigenvalues[1]), 1e-4);
}

TEST(SteadyState, TruncationConverged) {
  ModelParams p = shifted_resonance(40.0);
  const JcOperators ops30 = jc_operators(30);
  const double n30 = expectation(steady_state(build_liouvillian(p)), ops30.number).real();
  p.n_max = 35;
  const JcOperators ops35 = jc_operators(35);
  const double n35 = expectation(steady_state(build_liouvillian(p)), ops35.number).real();
  EXPECT_NEAR(n30, n35, 1e-6);
}

TEST(SteadyState, DegenerateKernelIsReported) {
  // Pure Hamiltonian dynamics with a diagonal H: every diagonal rho is stationary.
  DenseMatrix h = DenseMatrix::Zero(3, 3);
  h(1, 1) = 1.0;
  h(2, 2) = 2.5;
  const Superoperator l = hamiltonian_term(Operator(h.sparseView()));
  for (auto method : {SteadyStateMethod::RowReplacement, SteadyStateMethod::NullVector}) {
    try {
      steady_state(l, method);
      FAIL() << "expected an ambiguous-steady-state error";
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::AmbiguousSteadyState);
    }
  }
}

TEST(SteadyState, RejectsNonTracePreservingGenerator) {
  Superoperator l = build_liouvillian(shifted_resonance(10.0));
  for (Eigen::Index i = 0; i < l.matrix.rows(); ++i) l.matrix.coeffRef(i, i) -= 1.0;
  try {
    steady_state(l);
    FAIL() << "expected an invalid-argument error";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::InvalidArgument);
  }
}

TEST(SteadyState, FinalizeRejectsNegativeStates) {
  DensityMatrix bad = DensityMatrix::Zero(2, 2);
  bad(0, 0) = 1.2;
  bad(1, 1) = -0.2;
  EXPECT_THROW(finalize_density_matrix(bad), Error);
}

TEST(SteadyState, ExpectationChecksDimensions) {
  EXPECT_THROW(expectation(DensityMatrix::Identity(4, 4), identity(3)), Error);
  DensityMatrix rho = DensityMatrix::Zero(2, 2);
  rho(1, 1) = 1.0;
  EXPECT_EQ(expectation(rho, Operator(atomic_lowering().adjoint() * atomic_lowering())),
            Complex(1.0));
}

}  // namespace
}  // namespace jcb
