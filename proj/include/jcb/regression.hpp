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

// Time evolution, two-time correlations via the quantum regression theorem,
// and one-sided Fourier transforms of the resulting traces.
//
// For tau >= 0 the regression theorem gives
//   <A(0) B(tau) C(0)> = tr{ B exp(L tau)[C rho_ss A] }.

#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "jcb/hilbert.hpp"
#include "jcb/liouvillian.hpp"
#include "jcb/propagation.hpp"
#include "jcb/steadystate.hpp"
#include "jcb/types.hpp"

namespace jcb {

enum class CorrelationKind { AtomicG2, FieldG2, FirstOrderAtomic };

inline const char* to_string(CorrelationKind kind) {
  switch (kind) {
    case CorrelationKind::AtomicG2: return "atomic-g2";
    case CorrelationKind::FieldG2: return "field-g2";
    case CorrelationKind::FirstOrderAtomic: return "first-order-atomic";
  }
  return "unknown";
}

struct CorrelationTrace {
  std::vector<double> tau;      // starts at 0, strictly increasing; 1/kappa
  std::vector<Complex> values;
  CorrelationKind kind = CorrelationKind::AtomicG2;

  std::vector<double> real_values() const {
    std::vector<double> out(values.size());
    std::transform(values.begin(), values.end(), out.begin(),
                   [](Complex c) { return c.real(); });
    return out;
  }
};

struct SpectrumTrace {
  std::vector<double> omega;  // angular frequency in units of kappa
  std::vector<double> values;
};

inline void validate_tau_grid(const std::vector<double>& tau) {
  if (tau.empty() || tau.front() != 0.0)
    fail(ErrorKind::InvalidArgument, "tau grid must start at 0");
  for (size_t i = 1; i < tau.size(); ++i)
    if (!(tau[i] > tau[i - 1]) || !std::isfinite(tau[i]))
      fail(ErrorKind::InvalidArgument, "tau grid must be strictly increasing");
}

/// Uniform grid 0..tau_max with spacing no larger than max_step.
inline std::vector<double> uniform_tau_grid(double tau_max, double max_step) {
  if (!(tau_max > 0.0) || !(max_step > 0.0))
    fail(ErrorKind::InvalidArgument, "tau grid needs tau_max, step > 0");
  const auto steps = static_cast<size_t>(std::ceil(tau_max / max_step - 1e-9));
  std::vector<double> tau(steps + 1);
  for (size_t i = 0; i <= steps; ++i)
    tau[i] = tau_max * static_cast<double>(i) / static_cast<double>(steps);
  return tau;
}

/// Grid resolving a beat of angular frequency nu with >= 20 points per period.
inline std::vector<double> beat_resolving_grid(double nu, double tau_max) {
  if (!(nu > 0.0)) fail(ErrorKind::InvalidArgument, "beat frequency must be > 0");
  return uniform_tau_grid(tau_max, 2.0 * std::numbers::pi / nu / 20.0);
}

inline std::vector<double> linear_grid(double lo, double hi, double step) {
  if (!(hi > lo) || !(step > 0.0))
    fail(ErrorKind::InvalidArgument, "frequency grid needs hi > lo, step > 0");
  const auto n = static_cast<size_t>(std::floor((hi - lo) / step + 1e-9));
  std::vector<double> out(n + 1);
  for (size_t i = 0; i <= n; ++i) out[i] = lo + step * static_cast<double>(i);
  return out;
}

namespace detail {

inline bool is_uniform(const std::vector<double>& tau) {
  if (tau.size() < 3) return true;
  const double h = tau[1] - tau[0];
  for (size_t i = 2; i < tau.size(); ++i)
    if (std::abs((tau[i] - tau[i - 1]) - h) > 1e-9 * h) return false;
  return true;
}

/// Functional f with f^T vec(rho) = tr(O rho).
inline Vector trace_functional(const Operator& op) {
  return vec(DenseMatrix(Operator(op.transpose())));
}

inline int fock_cutoff_of(int hilbert_dim) {
  if (hilbert_dim < 4 || hilbert_dim % 2 != 0)
    fail(ErrorKind::InvalidArgument,
         "expected a cavity (x) atom space of even dimension >= 4");
  return hilbert_dim / 2 - 1;
}

}  // namespace detail

/// tr(O_i exp(L tau) x0) on a tau grid, for each observable O_i.
inline std::vector<std::vector<Complex>> propagate_expectations(
    const Superoperator& l, const DenseMatrix& x0,
    const std::vector<double>& tau, const std::vector<Operator>& observables,
    KrylovOptions opts = {}) {
  validate_tau_grid(tau);
  std::vector<Vector> functionals;
  for (const auto& o : observables) {
    if (o.rows() != l.hilbert_dim)
      fail(ErrorKind::InvalidArgument, "observable dimension mismatch");
    functionals.push_back(detail::trace_functional(o));
  }
  KrylovPropagator prop(l.matrix, opts);
  const int count = static_cast<int>(tau.size());
  if (count > 1 && detail::is_uniform(tau))
    return prop.sample(vec(x0), tau[1] - tau[0], count, functionals);

  std::vector<std::vector<Complex>> out(functionals.size());
  Vector v = vec(x0);
  for (size_t k = 0; k < tau.size(); ++k) {
    if (k > 0) v = prop.apply(v, tau[k] - tau[k - 1]);
    for (size_t i = 0; i < functionals.size(); ++i)
      out[i].push_back(functionals[i].transpose() * v);
  }
  return out;
}

/// exp(L t) rho0.
inline DensityMatrix evolve(const Superoperator& l, const DensityMatrix& rho0,
                            double t, KrylovOptions opts = {}) {
  if (t < 0.0) fail(ErrorKind::InvalidArgument, "evolve: t must be >= 0");
  if (rho0.rows() != l.hilbert_dim || rho0.cols() != l.hilbert_dim)
    fail(ErrorKind::InvalidArgument, "evolve: dimension mismatch");
  if (t == 0.0) return rho0;
  KrylovPropagator prop(l.matrix, opts);
  DensityMatrix out = unvec(prop.apply(vec(rho0), t), l.hilbert_dim);
  const double drift = std::abs(out.trace() - rho0.trace());
  if (drift > 1e-8 * std::max(1.0, std::abs(rho0.trace())))
    fail(ErrorKind::Propagation,
         "trace drifted by " + std::to_string(drift) + " over t=" +
             std::to_string(t));
  return out;
}

namespace detail {

// tr{X^dag X exp(L tau)[X rho X^dag]} / <X^dag X>^2 (tau >= 0).
inline CorrelationTrace normalized_g2(const Superoperator& l,
                                      const DensityMatrix& rho_ss,
                                      const Operator& x,
                                      const std::vector<double>& tau,
                                      CorrelationKind kind) {
  validate_tau_grid(tau);
  const Operator xdx = x.adjoint() * x;
  const double mean = expectation(rho_ss, xdx).real();
  if (!(mean > 1e-12))
    fail(ErrorKind::UndefinedCorrelation,
         std::string(to_string(kind)) +
             ": steady-state intensity vanishes, g2 undefined");
  const DenseMatrix conditioned = (x * rho_ss) * DenseMatrix(x.adjoint()) / mean;
  auto series = propagate_expectations(l, conditioned, tau, {xdx});
  CorrelationTrace out{tau, std::move(series[0]), kind};
  for (auto& v : out.values) v /= mean;
  return out;
}

}  // namespace detail

/// Side-scattering intensity correlation
/// <s+(0) s+(tau) s-(tau) s-(0)> / <s+ s->^2.
inline CorrelationTrace g2_atomic(const Superoperator& l,
                                  const DensityMatrix& rho_ss,
                                  const std::vector<double>& tau) {
  const JcOperators ops = jc_operators(detail::fock_cutoff_of(l.hilbert_dim));
  return detail::normalized_g2(l, rho_ss, ops.sm, tau,
                               CorrelationKind::AtomicG2);
}

/// Intensity correlation of the light transmitted by the cavity.
inline CorrelationTrace g2_field(const Superoperator& l,
                                 const DensityMatrix& rho_ss,
                                 const std::vector<double>& tau) {
  const JcOperators ops = jc_operators(detail::fock_cutoff_of(l.hilbert_dim));
  return detail::normalized_g2(l, rho_ss, ops.a, tau, CorrelationKind::FieldG2);
}

/// <a^dag^n a^n> / <a^dag a>^n of the intracavity field.
inline double gn_zero_delay(const DensityMatrix& rho, int n) {
  if (n < 2) fail(ErrorKind::InvalidArgument, "gn_zero_delay: need n >= 2");
  const JcOperators ops =
      jc_operators(detail::fock_cutoff_of(static_cast<int>(rho.rows())));
  const double mean = expectation(rho, ops.number).real();
  if (!(mean > 1e-12))
    fail(ErrorKind::UndefinedCorrelation,
         "gn_zero_delay: photon number vanishes");
  Operator an = ops.a;
  for (int k = 1; k < n; ++k) an = an * ops.a;
  const double moment = expectation(rho, Operator(an.adjoint() * an)).real();
  return moment / std::pow(mean, n);
}

/// <s+(0) s-(tau)> by regression. With incoherent set, the fluctuation
/// operators s- - <s-> are used, which removes the constant |<s->|^2.
inline CorrelationTrace first_order_atomic(const Superoperator& l,
                                           const DensityMatrix& rho_ss,
                                           const std::vector<double>& tau,
                                           bool incoherent = true) {
  validate_tau_grid(tau);
  const JcOperators ops = jc_operators(detail::fock_cutoff_of(l.hilbert_dim));
  const Operator sp = ops.sm.adjoint();
  DenseMatrix x = rho_ss * DenseMatrix(sp);
  // exp(L tau) rho_ss = rho_ss, so subtracting <s+> rho_ss from the seed
  // subtracts <s+><s-> from every sample.
  if (incoherent) x -= expectation(rho_ss, sp) * rho_ss;
  auto series = propagate_expectations(l, x, tau, {ops.sm});
  return {tau, std::move(series[0]), CorrelationKind::FirstOrderAtomic};
}

namespace detail {

/// Trapezoid weights w_k of a possibly nonuniform grid.
inline std::vector<double> trapezoid_weights(const std::vector<double>& tau) {
  std::vector<double> w(tau.size(), 0.0);
  for (size_t k = 1; k < tau.size(); ++k) {
    const double h = tau[k] - tau[k - 1];
    w[k - 1] += 0.5 * h;
    w[k] += 0.5 * h;
  }
  return w;
}

/// sum_k w_k f_k exp(i omega tau_k) for each omega.
inline std::vector<Complex> one_sided_transform(
    const std::vector<double>& tau, const std::vector<Complex>& f,
    const std::vector<double>& omega) {
  const std::vector<double> w = trapezoid_weights(tau);
  std::vector<Complex> wf(f.size());
  for (size_t k = 0; k < f.size(); ++k) wf[k] = w[k] * f[k];
  const bool uniform = is_uniform(tau);
  const double h = tau.size() > 1 ? tau[1] - tau[0] : 0.0;
  std::vector<Complex> out(omega.size());
  for (size_t j = 0; j < omega.size(); ++j) {
    Complex acc = 0.0;
    if (uniform) {
      const Complex rot = std::polar(1.0, omega[j] * h);
      Complex phase = 1.0;
      for (size_t k = 0; k < wf.size(); ++k) {
        // Re-anchor periodically so the rotation cannot drift.
        if ((k & 1023) == 0) phase = std::polar(1.0, omega[j] * tau[k]);
        acc += wf[k] * phase;
        phase *= rot;
      }
    } else {
      for (size_t k = 0; k < wf.size(); ++k)
        acc += wf[k] * std::polar(1.0, omega[j] * tau[k]);
    }
    out[j] = acc;
  }
  return out;
}

inline void require_decay(const std::vector<Complex>& f, double tol,
                          const char* what) {
  double peak = 0.0;
  for (const auto& v : f) peak = std::max(peak, std::abs(v));
  const double tail = std::abs(f.back());
  if (peak > 0.0 && tail > tol * peak)
    fail(ErrorKind::WindowTooShort,
         std::string(what) + ": correlation has only decayed to " +
             std::to_string(tail / peak) + " of its peak at the end of the " +
             "window (need " + std::to_string(tol) + "); extend tau_max");
}

}  // namespace detail

/// S(omega) = (1/pi) Re int_0^T exp(i omega tau) c(tau) dtau, trapezoid rule.
/// omega is measured from the drive frequency (rotating frame).
inline SpectrumTrace spectrum(const CorrelationTrace& corr,
                              const std::vector<double>& omega,
                              double decay_tolerance = 1e-6) {
  validate_tau_grid(corr.tau);
  if (corr.values.size() != corr.tau.size() || corr.tau.size() < 2)
    fail(ErrorKind::InvalidArgument, "spectrum: malformed correlation trace");
  detail::require_decay(corr.values, decay_tolerance, "spectrum");
  const auto transform = detail::one_sided_transform(corr.tau, corr.values, omega);
  SpectrumTrace out{omega, std::vector<double>(omega.size())};
  for (size_t j = 0; j < omega.size(); ++j)
    out.values[j] = transform[j].real() / std::numbers::pi;
  return out;
}

/// Frequency resolution 2 pi / T of a transform over a window of length T.
inline double fourier_bin(const CorrelationTrace& corr) {
  return 2.0 * std::numbers::pi / corr.tau.back();
}

/// |int_0^T (g2(tau) - 1) exp(i omega tau) dtau| for an intensity correlation;
/// other kinds are transformed as-is. The decay check applies to g2 - 1
/// relative to its largest excursion.
inline SpectrumTrace fourier_magnitude(const CorrelationTrace& corr,
                                       const std::vector<double>& omega,
                                       double decay_tolerance = 1e-6) {
  validate_tau_grid(corr.tau);
  if (corr.values.size() != corr.tau.size() || corr.tau.size() < 2)
    fail(ErrorKind::InvalidArgument,
         "fourier_magnitude: malformed correlation trace");
  std::vector<Complex> f = corr.values;
  if (corr.kind != CorrelationKind::FirstOrderAtomic)
    for (auto& v : f) v -= 1.0;
  detail::require_decay(f, decay_tolerance, "fourier_magnitude");
  const auto transform = detail::one_sided_transform(corr.tau, f, omega);
  SpectrumTrace out{omega, std::vector<double>(omega.size())};
  for (size_t j = 0; j < omega.size(); ++j) out.values[j] = std::abs(transform[j]);
  return out;
}

/// Indices of strict interior local maxima, sorted by decreasing height.
inline std::vector<size_t> local_maxima(const std::vector<double>& values) {
  std::vector<size_t> idx;
  for (size_t i = 1; i + 1 < values.size(); ++i)
    if (values[i] > values[i - 1] && values[i] >= values[i + 1]) idx.push_back(i);
  std::sort(idx.begin(), idx.end(),
            [&](size_t a, size_t b) { return values[a] > values[b]; });
  return idx;
}

/// Highest grid point of a trace inside [lo, hi]; returns index.
inline size_t argmax_in(const SpectrumTrace& s, double lo, double hi) {
  size_t best = s.omega.size();
  for (size_t i = 0; i < s.omega.size(); ++i)
    if (s.omega[i] >= lo && s.omega[i] <= hi &&
        (best == s.omega.size() || s.values[i] > s.values[best]))
      best = i;
  if (best == s.omega.size())
    fail(ErrorKind::InvalidArgument, "argmax_in: empty frequency window");
  return best;
}

}  // namespace jcb
