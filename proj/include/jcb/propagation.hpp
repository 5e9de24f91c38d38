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

// Action of exp(t L) on a vector by restarted Arnoldi (Krylov) projection.
//
// A Krylov basis V_m of {v, Lv, ..., L^{m-1}v} does not depend on the step
// length, so one basis serves every time h for which the a posteriori error
// estimate
//   beta * h_{m+1,m} * |e_m^T exp(h H_m) e_1|
// is below tolerance. apply() uses this to shrink a failing step without
// rebuilding; sample() uses it to emit several uniformly spaced outputs from
// a single basis.

#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include <unsupported/Eigen/MatrixFunctions>

#include "jcb/types.hpp"

namespace jcb {

struct KrylovOptions {
  double tolerance = 1e-12;  // local error per basis, relative to |v|
  int max_dim = 40;
  int max_substeps = 1 << 20;
};

class KrylovPropagator {
 public:
  explicit KrylovPropagator(const SparseMatrix& generator,
                            KrylovOptions opts = {})
      : gen_(generator), opts_(opts) {
    if (gen_.rows() != gen_.cols())
      fail(ErrorKind::InvalidArgument, "propagator: generator must be square");
    opts_.max_dim = std::max(
        2, std::min<int>(opts_.max_dim, static_cast<int>(gen_.rows())));
    basis_.resize(gen_.rows(), opts_.max_dim + 1);
    hess_.resize(opts_.max_dim + 1, opts_.max_dim);
  }

  /// exp(t L) v for t >= 0.
  Vector apply(const Vector& v, double t) {
    if (t < 0.0 || !std::isfinite(t))
      fail(ErrorKind::InvalidArgument, "propagation time must be >= 0");
    check_length(v);
    Vector w = v;
    double done = 0.0;
    double h = t;
    int substeps = 0;
    while (done < t) {
      if (++substeps > opts_.max_substeps) stiffness_failure(done);
      const double remaining = t - done;
      h = std::min(h, remaining);
      // Snap the final sliver so rounding cannot leave a zero-length tail.
      if (remaining - h < 1e-14 * t) h = remaining;
      const double taken = advance(w, h);
      done = (taken == remaining) ? t : done + taken;
      h = (taken < h) ? taken : 2.0 * taken;
    }
    return w;
  }

  /// Samples <f_i, exp(k dt L) v> for k = 0..count-1 and every functional
  /// f_i (a row vector applied by plain summation, no conjugation).
  /// Returns one series per functional.
  std::vector<std::vector<Complex>> sample(
      const Vector& v, double dt, int count,
      const std::vector<Vector>& functionals) {
    if (!(dt > 0.0) || !std::isfinite(dt) || count < 1)
      fail(ErrorKind::InvalidArgument, "sample: need dt > 0 and count >= 1");
    check_length(v);
    for (const auto& f : functionals) check_length(f);
    std::vector<std::vector<Complex>> out(functionals.size());
    for (size_t i = 0; i < functionals.size(); ++i) {
      out[i].reserve(count);
      out[i].push_back(functionals[i].transpose() * v);
    }
    Vector w = v;
    int done = 0;
    int stride = 1;
    int bases = 0;
    while (done + 1 < count) {
      if (++bases > opts_.max_substeps) stiffness_failure(done * dt);
      stride = std::min(stride, count - 1 - done);
      const double beta = w.norm();
      if (beta == 0.0) {
        for (auto& series : out) series.resize(count, Complex(0.0));
        return out;
      }
      int m = 0;
      double next = 0.0;
      bool breakdown = false;
      int accepted = 0;
      DenseMatrix step_exp;
      basis_.col(0) = w / beta;
      hess_.setZero();
      for (int j = 0; j < opts_.max_dim; ++j) {
        extend(j, next, breakdown);
        m = j + 1;
        if (!breakdown && m < opts_.max_dim && !is_checkpoint(m)) continue;
        const DenseMatrix scaled = dt * hess_.topLeftCorner(m, m);
        step_exp = scaled.exp();
        // Largest number of dt-steps (<= stride) whose estimate passes.
        Vector y = Vector::Zero(m);
        y(0) = 1.0;
        accepted = 0;
        for (int k = 1; k <= stride; ++k) {
          y = step_exp * y;
          const double rel_err = breakdown ? 0.0 : next * std::abs(y(m - 1));
          if (!(rel_err <= opts_.tolerance)) break;
          accepted = k;
        }
        if (accepted == stride || breakdown || m == opts_.max_dim) break;
      }
      if (accepted == 0) {
        // Not even one output step fits in a full basis: substep it.
        w = apply(w, dt);
        ++done;
        for (size_t i = 0; i < functionals.size(); ++i)
          out[i].push_back(functionals[i].transpose() * w);
        stride = 1;
        continue;
      }
      // Project the functionals once, then emit each accepted step.
      std::vector<Eigen::RowVectorXcd> projected;
      projected.reserve(functionals.size());
      for (const auto& f : functionals)
        projected.push_back(f.transpose() * basis_.leftCols(m));
      Vector y = Vector::Zero(m);
      y(0) = beta;
      for (int k = 1; k <= accepted; ++k) {
        y = step_exp * y;
        for (size_t i = 0; i < functionals.size(); ++i)
          out[i].push_back((projected[i] * y)(0));
      }
      w = basis_.leftCols(m) * y;
      done += accepted;
      if (accepted == stride && m <= (3 * opts_.max_dim) / 4)
        stride = std::min(2 * stride, 64);
      else if (accepted < stride)
        stride = std::max(1, accepted);
    }
    return out;
  }

  long matvec_count() const { return matvecs_; }

 private:
  static bool is_checkpoint(int m) {
    return m >= 6 && (m <= 20 || m % 4 == 0);
  }

  void check_length(const Vector& v) const {
    if (v.size() != gen_.rows())
      fail(ErrorKind::InvalidArgument, "propagator: vector length mismatch");
  }

  [[noreturn]] void stiffness_failure(double t) const {
    fail(ErrorKind::Propagation,
         "Krylov propagation exceeded " + std::to_string(opts_.max_substeps) +
             " substeps near t=" + std::to_string(t) + " (tolerance " +
             std::to_string(opts_.tolerance) + ", max Krylov dimension " +
             std::to_string(opts_.max_dim) + ")");
  }

  // One Arnoldi step: column j of H and basis vector j+1.
  void extend(int j, double& next, bool& breakdown) {
    Vector p = gen_ * basis_.col(j);
    ++matvecs_;
    for (int i = 0; i <= j; ++i) {
      const Complex c = basis_.col(i).dot(p);
      hess_(i, j) = c;
      p -= c * basis_.col(i);
    }
    next = p.norm();
    hess_(j + 1, j) = next;
    const double scale = hess_.col(j).head(j + 1).cwiseAbs().maxCoeff();
    breakdown = next <= 1e-13 * std::max(1.0, scale);
    if (!breakdown) basis_.col(j + 1) = p / next;
  }

  // Advances w by at most h; returns the step actually taken.
  double advance(Vector& w, double h) {
    const double beta = w.norm();
    if (beta == 0.0) return h;
    basis_.col(0) = w / beta;
    hess_.setZero();
    double next = 0.0;
    bool breakdown = false;
    for (int j = 0; j < opts_.max_dim; ++j) {
      extend(j, next, breakdown);
      const int m = j + 1;
      if (!breakdown && m < opts_.max_dim && !is_checkpoint(m)) continue;
      double step = h;
      for (int tries = 0; tries < 60; ++tries) {
        const DenseMatrix scaled = step * hess_.topLeftCorner(m, m);
        const DenseMatrix e = scaled.exp();
        const double err =
            breakdown ? 0.0 : beta * next * std::abs(e(m - 1, 0));
        if (err <= opts_.tolerance * beta) {
          w = beta * (basis_.leftCols(m) * e.col(0));
          return step;
        }
        if (m < opts_.max_dim && !breakdown) break;  // grow the basis first
        step *= 0.5;
      }
      if (m == opts_.max_dim || breakdown) break;
    }
    fail(ErrorKind::Propagation,
         "Krylov step failed to reach tolerance after step reduction");
  }

  // Row-major storage makes the sparse matrix-vector product markedly faster.
  Eigen::SparseMatrix<Complex, Eigen::RowMajor> gen_;
  KrylovOptions opts_;
  DenseMatrix basis_;
  DenseMatrix hess_;
  long matvecs_ = 0;
};

}  // namespace jcb
