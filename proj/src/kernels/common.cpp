// Copyright 2026 The qfno Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>
#include <numbers>

#include "qfno/error.hpp"
#include "qfno/kernels/kernels.hpp"

namespace qfno::kernels {

std::vector<std::size_t> mode_band(std::size_t modes, std::size_t n) {
  if (modes == 0 || modes > n) {
    throw ValidationError("mode band: need 1 <= modes <= grid length, got modes=" +
                          std::to_string(modes) + " n=" + std::to_string(n));
  }
  std::vector<std::size_t> band;
  band.reserve(modes);
  const std::size_t low = (modes + 1) / 2;
  const std::size_t high = modes / 2;
  for (std::size_t k = 0; k < low; ++k) band.push_back(k);
  for (std::size_t k = n - high; k < n; ++k) band.push_back(k);
  return band;
}

double gelu(double x) { return 0.5 * x * (1.0 + std::erf(x * std::numbers::sqrt2 / 2.0)); }

double gelu_grad(double x) {
  const double cdf = 0.5 * (1.0 + std::erf(x * std::numbers::sqrt2 / 2.0));
  const double pdf = std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi);
  return cdf + x * pdf;
}

}  // namespace qfno::kernels
