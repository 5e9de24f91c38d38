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

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>
#include <Eigen/Sparse>

namespace jcb {

using Complex = std::complex<double>;

/// Sparse complex matrix; column-major, as every Eigen default in this library.
using SparseMatrix = Eigen::SparseMatrix<Complex>;
using DenseMatrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Operators on a Hilbert space are stored sparse. Every composite operator
/// is built through tensor() in hilbert.hpp.
using Operator = SparseMatrix;

/// Density matrices are small (dim 62 at the default truncation) and dense.
using DensityMatrix = DenseMatrix;

inline constexpr Complex kI{0.0, 1.0};

/// Failure categories. The CLI maps these onto process exit codes.
enum class ErrorKind {
  InvalidArgument,     // malformed input: bad truncation, dim mismatch, bad grid
  AmbiguousSteadyState,
  SolverFailure,
  UndefinedCorrelation,
  Propagation,         // integrator step failure
  WindowTooShort,
  DegenerateParameters,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, what);
}

}  // namespace jcb
