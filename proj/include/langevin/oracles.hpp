// Copyright 2026 The langevin-bias Authors.
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

#include <functional>
#include <string>
#include <vector>

// Reference values for the test suite. Nothing here shares code with the
// stationary module: integrals use Romberg extrapolation instead of the
// Simpson/trapezoid grid, and the constants come from special functions.

namespace langevin::oracles {

enum class Method { kRomberg, kAnalytic };

struct OracleResult {
  double value = 0.0;
  double error_bound = 0.0;
  Method method = Method::kAnalytic;
};

/// Romberg integration of f over [lo, hi]. The error bound is the change
/// between the last two diagonal entries. Throws langevin::NumericalError if
/// tol is not reached within max_levels halvings.
OracleResult romberg_integrate(const std::function<double(double)>& f,
                               double lo, double hi, double tol,
                               int max_levels = 24);

/// Standard normal CDF, Abramowitz & Stegun 26.2.17 (|error| < 7.5e-8).
double normal_cdf(double x);

/// Unnormalized stationary densities of the standard-normal experiments,
/// written out independently of the library's metric code.
double raw_psgld(double x, double lambda, double alpha);
double raw_shampoo(double x);
double raw_monge(double x, double beta2);
double raw_adam(double x, double a, double lambda);

struct ReferenceConstant {
  std::string name;
  OracleResult z;
  double published_value;
};

/// Z for PSGLD (lambda -> 0, alpha = 0.9), Shampoo, Monge (beta2 = 1) and
/// Adam SGLD (a = 1, lambda -> 0), in that order.
std::vector<ReferenceConstant> analytic_constants();

}  // namespace langevin::oracles
