// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>
#include <complex>
#include <string>

namespace opsys {

using Cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;
using Index = Eigen::Index;

// Solver defaults shared across modules. CLI flags may override them.
namespace defaults {
inline constexpr double feasibility_tol = 1e-7;
inline constexpr double bisection_tol = 1e-5;
inline constexpr int max_iterations = 50000;
inline constexpr int level_cap = 4;
inline constexpr int restarts = 16;
inline constexpr std::uint64_t seed = 0x5EED;
inline constexpr double decomposition_cap = 1e3;
}  // namespace defaults

// Prints a value at the 9-significant-digit precision used by all reports.
std::string fmt9(double v);

}  // namespace opsys
