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
#include <limits>

#include <gtest/gtest.h>
#include <unsupported/Eigen/KroneckerProduct>

#include "jcb/hilbert.hpp"

namespace jcb {
namespace {

DenseMatrix dense(const Operator& op) { return DenseMatrix(op); }

TEST(Hilbert, AnnihilationHasSqrtNEntries) {
  const DenseMatrix a = dense(fock_annihilation(5));
  ASSERT_EQ(a.rows(), 6);
  for (int n = 1; n <= 5; ++n) EXPECT_DOUBLE_EQ(a(n - 1, n).real(), std::sqrt(n));
  EXPECT_DOUBLE_EQ(a.cwiseAbs().sum(), [] {
    double s = 0;
    for (int n = 1; n <= 5; ++n) s += std::sqrt(n);
    return s;
  }());
}

TEST(Hilbert, CommutatorIsIdentityBelowCutoff) {
  const int n_max = 8;
  const DenseMatrix a = dense(fock_annihilation(n_max));
  const DenseMatrix comm = a * a.adjoint() - a.adjoint() * a;
  for (int n = 0; n < n_max; ++n) EXPECT_NEAR(comm(n, n).real(), 1.0, 1e-14);
  // The truncation shows up only in the last Fock state.
  EXPECT_NEAR(comm(n_max, n_max).real(), -n_max, 1e-12);
}

TEST(Hilbert, AnnihilationRejectsEmptyCutoff) {
  try {
    fock_annihilation(0);
    FAIL() << "expected an invalid-argument error";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::InvalidArgument);
  }
}

TEST(Hilbert, AtomicLoweringSquaresToZero) {
  const DenseMatrix sm = dense(atomic_lowering());
  EXPECT_EQ((sm * sm).norm(), 0.0);
  EXPECT_EQ(sm(0, 1), Complex(1.0));
  const DenseMatrix excitation = sm.adjoint() * sm;
  EXPECT_EQ(excitation(1, 1), Complex(1.0));
  EXPECT_EQ(excitation(0, 0), Complex(0.0));
}

TEST(Hilbert, TensorMatchesKroneckerProduct) {
  DenseMatrix left(3, 3), right(2, 2);
  left << 1.0, Complex(0, 2), 0.0, 3.0, 0.0, -1.0, 0.0, 0.5, Complex(1, 1);
  right << 0.0, 1.0, Complex(0, -1), 2.0;
  const DenseMatrix expected = Eigen::kroneckerProduct(left, right).eval();
  const DenseMatrix got =
      dense(tensor(Operator(left.sparseView()), Operator(right.sparseView())));
  EXPECT_LT((got - expected).norm(), 1e-15);
}

TEST(Hilbert, CompositeOperatorsUseCavityMajorOrdering) {
  const JcOperators ops = jc_operators(30);
  EXPECT_EQ(ops.dim(), 62);
  EXPECT_EQ(ops.a.rows(), 62);
  // a |2, +> = sqrt2 |1, +>
  const Vector out = ops.a * basis_ket(30, 2, 1);
  EXPECT_NEAR(std::abs(out(2 * 1 + 1)), std::sqrt(2.0), 1e-15);
  // sigma_- |3, +> = |3, ->
  const Vector down = ops.sm * basis_ket(30, 3, 1);
  EXPECT_EQ(down(2 * 3), Complex(1.0));
  EXPECT_TRUE(is_hermitian(ops.number));
  EXPECT_TRUE(is_hermitian(ops.sigma_z));
}

TEST(Hilbert, DressedStatesDiagonalizeJaynesCummings) {
  const double omega0 = 7.0, g = 1.3;
  const Operator h = undriven_jc_hamiltonian(6, omega0, g);
  EXPECT_TRUE(is_hermitian(h));
  const auto states = dressed_states(6);
  const double energies[] = {0.0, omega0 - g, omega0 + g,
                             2.0 * omega0 - std::sqrt(2.0) * g};
  for (int k = 0; k < 4; ++k) {
    EXPECT_NEAR(states[k].norm(), 1.0, 1e-15);
    const Vector residual = h * states[k] - energies[k] * states[k];
    EXPECT_LT(residual.norm(), 1e-13) << "state " << k;
  }
}

TEST(Hilbert, DressedStatesNeedTwoPhotons) {
  EXPECT_THROW(dressed_states(1), Error);
}

TEST(Hilbert, ValidateRejectsNonPhysicalParameters) {
  const auto rejects = [](auto mutate) {
    ModelParams p;
    mutate(p);
    try {
      validate(p);
    } catch (const Error& e) {
      return e.kind() == ErrorKind::InvalidArgument;
    }
    return false;
  };
  EXPECT_TRUE(rejects([](ModelParams& p) { p.g = 0.0; }));
  EXPECT_TRUE(rejects([](ModelParams& p) { p.kappa = -1.0; }));
  EXPECT_TRUE(rejects([](ModelParams& p) { p.gamma = -0.1; }));
  EXPECT_TRUE(rejects([](ModelParams& p) { p.eps_d = 0.0; }));
  EXPECT_TRUE(rejects([](ModelParams& p) { p.n_max = 2; }));
  EXPECT_TRUE(rejects(
      [](ModelParams& p) { p.delta_omega = std::numeric_limits<double>::quiet_NaN(); }));
  EXPECT_NO_THROW(validate(ModelParams{}));
}

TEST(Hilbert, RegimeWarningsFlagStrongDriveAndWeakCoupling) {
  ModelParams p;
  EXPECT_TRUE(regime_warnings(p).empty());
  p.eps_d = 150.0;
  EXPECT_EQ(regime_warnings(p).size(), 1u);
  p.g = 5.0;
  EXPECT_EQ(regime_warnings(p).size(), 2u);
}

}  // namespace
}  // namespace jcb
