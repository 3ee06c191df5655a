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

#include "qfno/numerics/rng.hpp"
#include "qfno/spin/hamiltonian.hpp"
#include "qfno/states/wavefunction.hpp"

namespace qfno::states {

inline constexpr double kDefaultLowEnergyFraction = 0.25;

// Re and Im of every amplitude i.i.d. U[-1, 1), then normalized.
WaveFunction random_state(std::size_t qubits, numerics::RngStream& stream);

// Same construction restricted to the ceil(fraction * 2^n) basis states of
// lowest diagonal energy; all other amplitudes are exactly zero. Binary order.
WaveFunction low_energy_state(std::size_t qubits, const spin::HamiltonianMatrix& h,
                              double fraction, numerics::RngStream& stream);

std::size_t low_energy_support(std::size_t dim, double fraction);

// out[k] = psi[perm[k]] and the basis order flips. Undo with the inverse
// permutation.
WaveFunction reorder(const WaveFunction& psi, const std::vector<std::size_t>& perm);

WaveFunction to_energy_order(const WaveFunction& psi, const spin::HamiltonianMatrix& h);
WaveFunction to_binary_order(const WaveFunction& psi, const spin::HamiltonianMatrix& h);

}  // namespace qfno::states
