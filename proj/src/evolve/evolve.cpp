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

#include "qfno/evolve/evolve.hpp"

#include <cmath>

#include "qfno/error.hpp"
#include "qfno/states/states.hpp"

namespace qfno::evolve {

std::vector<double> TimeGrid::points() const {
  std::vector<double> p(m);
  for (std::size_t j = 0; j < m; ++j) p[j] = point(j);
  return p;
}

void TimeGrid::validate() const {
  if (!(dt > 0.0) || !std::isfinite(dt) || !std::isfinite(t0)) {
    throw ValidationError("time grid needs finite t0 and dt > 0");
  }
  if (m < 1) throw ValidationError("time grid needs at least one point");
}

WaveFunction Trajectory::column(std::size_t j) const {
  const std::size_t c = channels(), m = values.dim(1);
  if (j >= m) throw ValidationError("trajectory column out of range");
  WaveFunction psi{ComplexTensor({c}), order};
  for (std::size_t i = 0; i < c; ++i) psi.amplitudes[i] = values[i * m + j];
  return psi;
}

void Trajectory::set_column(std::size_t j, const WaveFunction& psi) {
  const std::size_t c = channels(), m = values.dim(1);
  if (j >= m || psi.dim() != c) throw ValidationError("trajectory column shape mismatch");
  for (std::size_t i = 0; i < c; ++i) values[i * m + j] = psi.amplitudes[i];
}

namespace {

constexpr double kInputNormTolerance = 1e-10;

WaveFunction as_binary_unit(const spin::HamiltonianMatrix& h, const WaveFunction& psi0) {
  if (psi0.dim() != h.dim()) throw ValidationError("evolve: state and Hamiltonian sizes differ");
  if (std::abs(psi0.norm() - 1.0) > kInputNormTolerance) {
    throw ValidationError("evolve: initial state is not normalized");
  }
  return states::to_binary_order(psi0, h);
}

}  // namespace

ComplexTensor evolve_to_times(const spin::HamiltonianMatrix& h, const WaveFunction& psi0,
                              const std::vector<double>& times) {
  const WaveFunction start = as_binary_unit(h, psi0);
  const std::size_t d = h.dim(), m = times.size();
  const ComplexTensor& v = h.eigenvectors();
  const auto& lambda = h.eigenvalues();

  // c = V^dagger psi0
  std::vector<Complex> c(d);
  for (std::size_t k = 0; k < d; ++k) {
    Complex acc{};
    for (std::size_t r = 0; r < d; ++r) acc += std::conj(v.at(r, k)) * start.amplitudes[r];
    c[k] = acc;
  }
  // phased(k, j) = e^{-i lambda_k t_j} c_k
  ComplexTensor phased({d, m});
  for (std::size_t k = 0; k < d; ++k)
    for (std::size_t j = 0; j < m; ++j) phased.at(k, j) = std::polar(1.0, -lambda[k] * times[j]) * c[k];

  ComplexTensor out = numerics::matmul(v, phased);
  if (psi0.order == BasisOrder::kEnergy) {
    const auto& perm = h.energy_order();
    ComplexTensor reordered({d, m});
    for (std::size_t k = 0; k < d; ++k)
      for (std::size_t j = 0; j < m; ++j) reordered.at(k, j) = out.at(perm[k], j);
    return reordered;
  }
  return out;
}

WaveFunction evolve_state(const spin::HamiltonianMatrix& h, const WaveFunction& psi0, double t) {
  if (t == 0.0) {
    as_binary_unit(h, psi0);
    return psi0;
  }
  ComplexTensor col = evolve_to_times(h, psi0, {t});
  return WaveFunction{col.reshaped({h.dim()}), psi0.order};
}

Trajectory evolve_on_grid(const spin::HamiltonianMatrix& h, const WaveFunction& psi0,
                          const TimeGrid& grid) {
  grid.validate();
  return Trajectory{grid, evolve_to_times(h, psi0, grid.points()), psi0.order};
}

}  // namespace qfno::evolve
