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

// Four-level cascade model of the driven two-photon resonance.
//
// The levels are the dressed states |0>, |1>, |2>, |3> of dressed_states().
// A weak drive couples |0> and |3> at second order with Rabi frequency
//   Omega = 2 sqrt2 eps^2 / g
// and shifts all four energies by delta_k ~ eps^2/g. |3> decays to |1> and
// |2>, which decay to |0>. Everything is written in the frame rotating at
// the drive frequency (one drive quantum per excitation), where the
// generator is time independent.

#pragma once

#include <array>
#include <cmath>
#include <vector>

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include "jcb/hilbert.hpp"
#include "jcb/liouvillian.hpp"
#include "jcb/regression.hpp"
#include "jcb/types.hpp"

namespace jcb {

using Operator4 = Eigen::Matrix4cd;
using FourLevelState = Eigen::Matrix4cd;

struct FourLevelParams {
  double g = 0.0;
  double kappa = 0.0;
  double gamma = 0.0;
  double eps_d = 0.0;
  double delta_omega = 0.0;
  double omega = 0.0;              // two-photon Rabi frequency
  std::array<double, 4> shifts{};  // delta_0..delta_3
  double gamma31 = 0.0;
  double gamma32 = 0.0;
  double gamma_cascade = 0.0;      // decay of |1> and |2> to |0>
  double nu = 0.0;                 // quantum-beat frequency E2 - E1

  /// Shifted energies in the drive frame: E_k + delta_k - n_k omega_d with
  /// the bare transition frequency eliminated.
  std::array<double, 4> rotating_energies() const {
    const double s2 = std::sqrt(2.0);
    return {shifts[0], -delta_omega - g + shifts[1],
            -delta_omega + g + shifts[2],
            -2.0 * delta_omega - s2 * g + shifts[3]};
  }

  /// Residual detuning of the driven 0 <-> 3 transition; zero on resonance.
  double two_photon_detuning() const {
    const auto e = rotating_energies();
    return e[3] - e[0];
  }
};

inline FourLevelParams derive_params(const ModelParams& p) {
  validate(p);
  const double s2 = std::sqrt(2.0);
  const double x = p.eps_d * p.eps_d / p.g;
  FourLevelParams fp;
  fp.g = p.g;
  fp.kappa = p.kappa;
  fp.gamma = p.gamma;
  fp.eps_d = p.eps_d;
  fp.delta_omega = p.delta_omega;
  fp.omega = 2.0 * s2 * x;
  fp.shifts = {s2 * x, -(20.0 + 19.0 * s2) / 7.0 * x,
               (20.0 - 19.0 * s2) / 7.0 * x, -s2 * x};
  fp.gamma31 = p.gamma / 4.0 + (s2 + 1.0) * (s2 + 1.0) * p.kappa / 2.0;
  fp.gamma32 = p.gamma / 4.0 + (s2 - 1.0) * (s2 - 1.0) * p.kappa / 2.0;
  fp.gamma_cascade = p.gamma / 2.0 + p.kappa;
  fp.nu = 2.0 * p.g + fp.shifts[2] - fp.shifts[1];
  return fp;
}

enum class ResonanceConvention {
  ShiftedEnergies,  // E~3 - E~0 = 2 omega_d with the computed level shifts
  DoubledShift,     // -g/sqrt2 - 2 sqrt2 eps^2/g, twice the shifted-energy offset
};

/// Drive detuning omega_d - omega_0 that resonantly drives |0> <-> |3>.
inline double resonant_drive_frequency(
    const ModelParams& p,
    ResonanceConvention convention = ResonanceConvention::ShiftedEnergies) {
  const double s2 = std::sqrt(2.0);
  const double x = p.eps_d * p.eps_d / p.g;
  if (convention == ResonanceConvention::DoubledShift)
    return -p.g / s2 - 2.0 * s2 * x;
  const FourLevelParams fp = derive_params(p);
  return -p.g / s2 + 0.5 * (fp.shifts[3] - fp.shifts[0]);
}

struct TruncatedOperators {
  Operator4 a;
  Operator4 sm;
};

inline TruncatedOperators truncated_operators() {
  const double r = 1.0 / std::sqrt(2.0);
  const double s2 = std::sqrt(2.0);
  TruncatedOperators out{Operator4::Zero(), Operator4::Zero()};
  out.a(0, 1) = r;
  out.a(0, 2) = r;
  out.a(1, 3) = 0.5 * (s2 + 1.0);
  out.a(2, 3) = 0.5 * (s2 - 1.0);
  out.sm(0, 1) = -r;
  out.sm(0, 2) = r;
  out.sm(1, 3) = -0.5;
  out.sm(2, 3) = -0.5;
  return out;
}

struct SteadyOccupations {
  std::array<double, 4> p{};
  double atomic_excitation = 0.0;
};

/// Stationary populations on two-photon resonance.
inline SteadyOccupations steady_occupations(const FourLevelParams& fp) {
  const double o2 = fp.omega * fp.omega;
  const double denom = fp.gamma * fp.gamma + 4.0 * o2;
  SteadyOccupations out;
  const double p3 = denom > 0.0 ? o2 / denom : 0.0;
  const double p1 = fp.gamma_cascade > 0.0 ? fp.gamma31 * p3 / fp.gamma_cascade : 0.0;
  const double p2 = fp.gamma_cascade > 0.0 ? fp.gamma32 * p3 / fp.gamma_cascade : 0.0;
  out.p = {1.0 - p1 - p2 - p3, p1, p2, p3};
  out.atomic_excitation = 0.5 * (p1 + p2 + p3);
  return out;
}

/// State just after an atomic emission from the stationary state:
/// (2/3)|0><0| + (1/3)|psi><psi| with |psi> = (|1> + |2>)/sqrt2.
inline FourLevelState conditional_state() {
  FourLevelState rho = FourLevelState::Zero();
  rho(0, 0) = 2.0 / 3.0;
  rho(1, 1) = rho(2, 2) = rho(1, 2) = rho(2, 1) = 1.0 / 6.0;
  return rho;
}

/// Lindblad generator of the effective cascade (16 x 16, drive frame).
inline Superoperator effective_liouvillian(const FourLevelParams& fp) {
  const auto e = fp.rotating_energies();
  Operator4 h = Operator4::Zero();
  for (int k = 0; k < 4; ++k) h(k, k) = e[k];
  h(0, 3) = h(3, 0) = fp.omega;
  auto jump = [](int to, int from) {
    Operator4 x = Operator4::Zero();
    x(to, from) = 1.0;
    return Operator(x.sparseView());
  };
  Superoperator l = hamiltonian_term(Operator(h.sparseView()));
  l.matrix += fp.gamma31 * dissipator(jump(1, 3)).matrix;
  l.matrix += fp.gamma32 * dissipator(jump(2, 3)).matrix;
  l.matrix += fp.gamma_cascade * dissipator(jump(0, 1)).matrix;
  l.matrix += fp.gamma_cascade * dissipator(jump(0, 2)).matrix;
  l.matrix.prune(Complex(0.0));
  l.matrix.makeCompressed();
  return l;
}

/// rho(tau) = exp(L tau) rho0 for each tau in the grid (any order, tau >= 0).
inline std::vector<FourLevelState> evolve_effective(
    const FourLevelParams& fp, const FourLevelState& rho0,
    const std::vector<double>& tau) {
  const DenseMatrix l = DenseMatrix(effective_liouvillian(fp).matrix);
  std::vector<FourLevelState> out;
  out.reserve(tau.size());
  for (double t : tau) {
    if (!(t >= 0.0) || !std::isfinite(t))
      fail(ErrorKind::InvalidArgument, "evolve_effective: tau must be >= 0");
    const DenseMatrix prop = (t * l).exp();
    const Vector v = prop * vec(DenseMatrix(rho0));
    out.emplace_back(Eigen::Map<const FourLevelState>(v.data()));
  }
  return out;
}

struct BlochSample {
  double tau = 0.0;
  double sigma = 0.0;          // rho33 - rho00
  double rho33 = 0.0;
  double intermediate = 0.0;   // rho11 + rho22
  Complex coherence = 0.0;     // slowly varying rho03
};

/// Closed-form solution of the population/coherence system that follows an
/// emission, u = (D, D*, Sigma) with du/dtau = M u + B, together with the
/// intermediate population s = rho11 + rho22, which obeys
/// ds/dtau = -gamma s + 2 gamma rho33, rho33 = (1 - s + Sigma)/2.
/// Rates are those of gamma = 2 kappa, where every cascade rate is a multiple
/// of gamma.
inline std::vector<BlochSample> bloch_solution(const FourLevelParams& fp,
                                               const std::vector<double>& tau) {
  const double gam = fp.gamma;
  const double om = fp.omega;
  if (gam == 0.0 && om == 0.0)
    fail(ErrorKind::DegenerateParameters,
         "bloch_solution: gamma = Omega = 0 leaves the system without dynamics");
  // Augmented generator on (D, D*, Sigma, s, 1); the constant column holds
  // the inhomogeneous terms, so no inverse of M is needed and gamma = 0 works.
  Eigen::Matrix<Complex, 5, 5> g = Eigen::Matrix<Complex, 5, 5>::Zero();
  g(0, 0) = -gam;
  g(0, 2) = -kI * om;
  g(1, 1) = -gam;
  g(1, 2) = kI * om;
  g(2, 0) = -2.0 * kI * om;
  g(2, 1) = 2.0 * kI * om;
  g(2, 2) = -gam;
  g(2, 4) = -gam;
  g(3, 2) = gam;
  g(3, 3) = -2.0 * gam;
  g(3, 4) = gam;
  Eigen::Matrix<Complex, 5, 1> u0;
  u0 << 0.0, 0.0, -2.0 / 3.0, 1.0 / 3.0, 1.0;
  std::vector<BlochSample> out;
  out.reserve(tau.size());
  for (double t : tau) {
    const double at = std::abs(t);
    const Eigen::Matrix<Complex, 5, 5> e = (at * g).exp();
    const Eigen::Matrix<Complex, 5, 1> u = e * u0;
    BlochSample s;
    s.tau = t;
    s.coherence = u(0);
    s.sigma = u(2).real();
    s.intermediate = u(3).real();
    s.rho33 = 0.5 * (1.0 - s.intermediate + s.sigma);
    out.push_back(s);
  }
  return out;
}

/// Stationary value -M^{-1}B of u: the long-time limit of Sigma and D.
inline Eigen::Vector3cd bloch_fixed_point(const FourLevelParams& fp) {
  const double gam = fp.gamma;
  const double om = fp.omega;
  Eigen::Matrix3cd m;
  m << -gam, 0.0, -kI * om, 0.0, -gam, kI * om, -2.0 * kI * om, 2.0 * kI * om,
      -gam;
  // det M = -gamma (gamma^2 + 4 Omega^2).
  if (std::abs(gam * (gam * gam + 4.0 * om * om)) < 1e-300)
    fail(ErrorKind::DegenerateParameters,
         "bloch_fixed_point: M is singular at gamma = 0");
  const Eigen::Vector3cd b(0.0, 0.0, -gam);
  return -m.partialPivLu().solve(b);
}

struct G2Coefficients {
  double c1 = 0.0, c2 = 0.0, c3 = 0.0, c4 = 0.0;
};

inline G2Coefficients g2_coefficients(const FourLevelParams& fp) {
  if (!(fp.omega > 0.0))
    fail(ErrorKind::InvalidArgument, "g2 coefficients need Omega > 0");
  const double o2 = fp.omega * fp.omega;
  const double y2 = fp.gamma * fp.gamma;
  G2Coefficients c;
  c.c1 = (y2 - 4.0 * o2) / (9.0 * o2);
  c.c2 = -5.0 * fp.gamma / (9.0 * fp.omega);
  c.c3 = -1.0 / 9.0;
  c.c4 = -(y2 + 4.0 * o2) / (9.0 * o2);
  return c;
}

/// The beat between |1> and |2> seeded by an emission: c4 e^{-gamma tau} cos(nu tau).
inline double quantum_beat_term(const FourLevelParams& fp, double tau) {
  const G2Coefficients c = g2_coefficients(fp);
  const double at = std::abs(tau);
  return c.c4 * std::exp(-fp.gamma * at) * std::cos(fp.nu * at);
}

inline double g2_analytic_at(const FourLevelParams& fp, double tau,
                             bool include_beat = true) {
  const G2Coefficients c = g2_coefficients(fp);
  const double at = std::abs(tau);
  const double decay = std::exp(-fp.gamma * at);
  const double w = 2.0 * fp.omega * at;
  double bracket = c.c1 * std::cos(w) + c.c2 * std::sin(w) + c.c3 * decay;
  if (include_beat) bracket += c.c4 * std::cos(fp.nu * at);
  return 1.0 + decay * bracket;
}

/// Closed-form side-scattering g2 on resonance. Negative tau is mapped to
/// |tau|. With include_beat false the fast quantum beat is averaged out.
inline CorrelationTrace g2_analytic(const FourLevelParams& fp,
                                    const std::vector<double>& tau,
                                    bool include_beat = true) {
  CorrelationTrace out;
  out.kind = CorrelationKind::AtomicG2;
  out.tau = tau;
  out.values.reserve(tau.size());
  for (double t : tau) out.values.emplace_back(g2_analytic_at(fp, t, include_beat));
  return out;
}

/// g2 from the effective master equation: tr{s+s- exp(L tau) rho_cond} /
/// <s+s->_ss, with the truncated excitation operator.
inline CorrelationTrace g2_effective(const FourLevelParams& fp,
                                     const std::vector<double>& tau) {
  const SteadyOccupations occ = steady_occupations(fp);
  if (!(occ.atomic_excitation > 0.0))
    fail(ErrorKind::UndefinedCorrelation,
         "g2_effective: stationary atomic excitation vanishes");
  const TruncatedOperators ops = truncated_operators();
  const Operator4 excitation = ops.sm.adjoint() * ops.sm;
  const auto states = evolve_effective(fp, conditional_state(), tau);
  CorrelationTrace out;
  out.kind = CorrelationKind::AtomicG2;
  out.tau = tau;
  for (const auto& rho : states)
    out.values.push_back((excitation * rho).trace() / occ.atomic_excitation);
  return out;
}

}  // namespace jcb
