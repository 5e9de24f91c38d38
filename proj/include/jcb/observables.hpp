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
#include <numbers>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "jcb/hilbert.hpp"
#include "jcb/steadystate.hpp"
#include "jcb/types.hpp"

namespace jcb {

/// Reduced state of the cavity field, tracing out the atom.
inline DensityMatrix partial_trace_atom(const DensityMatrix& rho) {
  if (rho.rows() != rho.cols() || rho.rows() < 2 || rho.rows() % 2 != 0)
    fail(ErrorKind::InvalidArgument,
         "partial_trace_atom: expected a square cavity (x) atom state");
  const Eigen::Index nf = rho.rows() / 2;
  DensityMatrix out(nf, nf);
  for (Eigen::Index j = 0; j < nf; ++j)
    for (Eigen::Index i = 0; i < nf; ++i)
      out(i, j) = rho(2 * i, 2 * j) + rho(2 * i + 1, 2 * j + 1);
  return out;
}

/// P_n = <n|rho|n> of a field density matrix.
inline std::vector<double> fock_occupations(const DensityMatrix& rho_field) {
  std::vector<double> p(static_cast<size_t>(rho_field.rows()));
  for (Eigen::Index n = 0; n < rho_field.rows(); ++n) p[n] = rho_field(n, n).real();
  return p;
}

/// F_m = P_0 + ... + P_m.
inline double fidelity_m(const DensityMatrix& rho_field, int m) {
  if (m < 0 || m >= rho_field.rows())
    fail(ErrorKind::InvalidArgument, "fidelity_m: need 0 <= m <= n_max");
  double sum = 0.0;
  for (int n = 0; n <= m; ++n) sum += rho_field(n, n).real();
  return sum;
}

/// <sigma_z> = <2 sigma_+ sigma_- - 1> of a composite state.
inline double atomic_inversion(const DensityMatrix& rho) {
  if (rho.rows() != rho.cols() || rho.rows() < 2 || rho.rows() % 2 != 0)
    fail(ErrorKind::InvalidArgument, "atomic_inversion: expected a composite state");
  double upper = 0.0;
  for (Eigen::Index i = 1; i < rho.rows(); i += 2) upper += rho(i, i).real();
  return 2.0 * upper - rho.trace().real();
}

inline double mean_photon_number(const DensityMatrix& rho_field) {
  double sum = 0.0;
  for (Eigen::Index n = 1; n < rho_field.rows(); ++n)
    sum += static_cast<double>(n) * rho_field(n, n).real();
  return sum;
}

/// W(alpha) = (2/pi) tr[rho D(alpha) P D(alpha)^dag] for a field state,
/// P the photon-number parity, with alpha = x + i y. Uses the closed form
/// of the displaced-parity matrix elements in terms of associated Laguerre
/// polynomials, so the result is exact for the given truncated rho.
inline double wigner_at(const DensityMatrix& rho_field, double x, double y) {
  const Eigen::Index dim = rho_field.rows();
  const Complex two_alpha(2.0 * x, 2.0 * y);
  const double b = std::norm(two_alpha);
  double w = 0.0;
  for (Eigen::Index m = 0; m < dim; ++m) {
    const double sign = (m % 2 == 0) ? 1.0 : -1.0;
    const auto um = static_cast<unsigned>(m);
    w += sign * rho_field(m, m).real() * std::assoc_laguerre(um, 0u, b);
    // sqrt(m!/n!) (2 alpha)^(n-m), built incrementally in n.
    Complex factor = 1.0;
    for (Eigen::Index n = m + 1; n < dim; ++n) {
      factor *= two_alpha / std::sqrt(static_cast<double>(n));
      const Complex elem = rho_field(m, n);
      if (elem == Complex(0.0)) continue;
      const auto k = static_cast<unsigned>(n - m);
      w += 2.0 * sign * (elem * factor).real() * std::assoc_laguerre(um, k, b);
    }
  }
  return w * std::exp(-0.5 * b) * 2.0 / std::numbers::pi;
}

struct WignerGrid {
  std::vector<double> x;
  std::vector<double> y;
  Eigen::MatrixXd values;  // values(i, j) = W(x[i] + i y[j])
  double normalization = 0.0;
  std::vector<std::string> warnings;
};

namespace detail {

// Trapezoid rule on a possibly nonuniform 1D grid.
inline std::vector<double> quadrature_weights(const std::vector<double>& t) {
  std::vector<double> w(t.size(), 0.0);
  for (size_t k = 1; k < t.size(); ++k) {
    const double h = t[k] - t[k - 1];
    w[k - 1] += 0.5 * h;
    w[k] += 0.5 * h;
  }
  return w;
}

inline void check_axis(const std::vector<double>& t, const char* name) {
  if (t.size() < 2)
    fail(ErrorKind::InvalidArgument, std::string(name) + " needs >= 2 points");
  for (size_t k = 1; k < t.size(); ++k)
    if (!(t[k] > t[k - 1]))
      fail(ErrorKind::InvalidArgument,
           std::string(name) + " must be strictly increasing");
}

}  // namespace detail

inline std::vector<double> symmetric_axis(double half_width, int points) {
  if (!(half_width > 0.0) || points < 2)
    fail(ErrorKind::InvalidArgument, "axis needs half_width > 0, >= 2 points");
  std::vector<double> t(static_cast<size_t>(points));
  for (int i = 0; i < points; ++i)
    t[i] = -half_width + 2.0 * half_width * i / (points - 1);
  return t;
}

/// Wigner function on a rectangular grid, with its trapezoid normalization.
/// A normalization off by more than 1e-2 produces a truncation warning.
inline WignerGrid wigner(const DensityMatrix& rho_field,
                         const std::vector<double>& x_grid,
                         const std::vector<double>& y_grid) {
  if (rho_field.rows() != rho_field.cols() || rho_field.rows() < 1)
    fail(ErrorKind::InvalidArgument, "wigner: expected a square field state");
  detail::check_axis(x_grid, "wigner x grid");
  detail::check_axis(y_grid, "wigner y grid");
  WignerGrid out;
  out.x = x_grid;
  out.y = y_grid;
  out.values.resize(static_cast<Eigen::Index>(x_grid.size()),
                    static_cast<Eigen::Index>(y_grid.size()));
  for (size_t i = 0; i < x_grid.size(); ++i)
    for (size_t j = 0; j < y_grid.size(); ++j)
      out.values(i, j) = wigner_at(rho_field, x_grid[i], y_grid[j]);
  const auto wx = detail::quadrature_weights(x_grid);
  const auto wy = detail::quadrature_weights(y_grid);
  for (size_t i = 0; i < x_grid.size(); ++i)
    for (size_t j = 0; j < y_grid.size(); ++j)
      out.normalization += wx[i] * wy[j] * out.values(i, j);
  if (std::abs(out.normalization - 1.0) > 1e-2)
    out.warnings.push_back(
        "Wigner grid integral is " + std::to_string(out.normalization) +
        "; the grid misses part of the distribution or the Fock cutoff is "
        "too small");
  return out;
}

inline WignerGrid wigner(const DensityMatrix& rho_field) {
  const auto axis = symmetric_axis(3.0, 121);
  return wigner(rho_field, axis, axis);
}

struct PhasePoint {
  double x = 0.0;
  double y = 0.0;
  double value = 0.0;

  double angle() const { return std::atan2(y, x); }
  double distance(const PhasePoint& o) const { return std::hypot(x - o.x, y - o.y); }
};

/// Interior grid points at least as high as all eight neighbours and higher
/// than some, sorted by decreasing value.
inline std::vector<PhasePoint> local_maxima(const WignerGrid& w) {
  std::vector<PhasePoint> out;
  const Eigen::Index nx = w.values.rows(), ny = w.values.cols();
  for (Eigen::Index i = 1; i + 1 < nx; ++i)
    for (Eigen::Index j = 1; j + 1 < ny; ++j) {
      const double v = w.values(i, j);
      bool peak = true, strict = false;
      for (int di = -1; di <= 1 && peak; ++di)
        for (int dj = -1; dj <= 1; ++dj) {
          if (di == 0 && dj == 0) continue;
          const double n = w.values(i + di, j + dj);
          if (n > v) { peak = false; break; }
          if (n < v) strict = true;
        }
      if (peak && strict) out.push_back({w.x[i], w.y[j], v});
    }
  std::sort(out.begin(), out.end(),
            [](const PhasePoint& a, const PhasePoint& b) { return a.value > b.value; });
  return out;
}

/// Off-grid location of a maximum by compass search from a starting point.
inline PhasePoint refine_peak(const DensityMatrix& rho_field, PhasePoint start,
                              double step = 0.05, double tolerance = 1e-7) {
  PhasePoint best{start.x, start.y, wigner_at(rho_field, start.x, start.y)};
  static constexpr int dx[] = {1, -1, 0, 0};
  static constexpr int dy[] = {0, 0, 1, -1};
  while (step > tolerance) {
    bool moved = false;
    for (int k = 0; k < 4; ++k) {
      const double x = best.x + step * dx[k], y = best.y + step * dy[k];
      const double v = wigner_at(rho_field, x, y);
      if (v > best.value) {
        best = {x, y, v};
        moved = true;
      }
    }
    if (!moved) step *= 0.5;
  }
  return best;
}

}  // namespace jcb
