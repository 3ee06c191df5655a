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

#pragma once

#include <cstddef>
#include <vector>

#include "qfno/numerics/complex_tensor.hpp"
#include "qfno/spin/hamiltonian.hpp"
#include "qfno/states/wavefunction.hpp"

namespace qfno::evolve {

// Points t_j = t0 + j dt for j = 0..m-1; the endpoint t0 + m dt is excluded.
struct TimeGrid {
  double t0 = 0.0;
  double dt = 1.0;
  std::size_t m = 1;

  double point(std::size_t j) const { return t0 + static_cast<double>(j) * dt; }
  double end() const { return t0 + static_cast<double>(m) * dt; }
  std::vector<double> points() const;
  void validate() const;
  bool operator==(const TimeGrid&) const = default;
};

// values has shape (channels, m): one column per grid point.
struct Trajectory {
  TimeGrid grid;
  ComplexTensor values;
  BasisOrder order = BasisOrder::kBinary;  // meaningful for wavefunction channels

  std::size_t channels() const { return values.dim(0); }
  WaveFunction column(std::size_t j) const;
  void set_column(std::size_t j, const WaveFunction& psi);
};

// psi(t) = V e^{-i lambda t} V^dagger psi(0), using the cached
// eigendecomposition. The result keeps the basis order of psi0.
WaveFunction evolve_state(const spin::HamiltonianMatrix& h, const WaveFunction& psi0, double t);

// Column j is evolve_state(h, psi0, grid.point(j)); one projection onto the
// eigenbasis is shared by all columns.
Trajectory evolve_on_grid(const spin::HamiltonianMatrix& h, const WaveFunction& psi0,
                          const TimeGrid& grid);

// Evolves to arbitrary times, returning a (dim, times) matrix.
ComplexTensor evolve_to_times(const spin::HamiltonianMatrix& h, const WaveFunction& psi0,
                              const std::vector<double>& times);

}  // namespace qfno::evolve
