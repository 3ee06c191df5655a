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
#include <cstdint>
#include <numbers>
#include <string>

#include "qfno/evolve/evolve.hpp"
#include "qfno/numerics/complex_tensor.hpp"
#include "qfno/spin/hamiltonian.hpp"

namespace qfno {

enum class Arch { kEnergy, kTime, kObservables };
enum class InputType { kRandom, kLowEnergy };

const char* arch_name(Arch a);
Arch parse_arch(const std::string& s);
const char* input_type_name(InputType t);
InputType parse_input_type(const std::string& s);

}  // namespace qfno

namespace qfno::evolve {

inline constexpr double kDefaultPeriod = std::numbers::pi;
inline constexpr double kDefaultStep = std::numbers::pi / 10.0;

struct DatasetOptions {
  std::size_t count = 1;  // initial states (per interval for VTI energy data)
  InputType input_type = InputType::kRandom;
  std::size_t intervals = 1;  // energy arch: consecutive [kT, (k+1)T] pairs
  double fraction = 0.25;     // low-energy support fraction
  double period = kDefaultPeriod;
  double dt = kDefaultStep;
  // Sample i draws its state from stream first_sample + i, so a held-out set
  // for the same Hamiltonian is just a later offset.
  std::uint64_t first_sample = 0;
};

// Samples for one fixed Hamiltonian. inputs and targets carry the sample
// index as their leading axis; per-sample shapes are
//   energy:       (2^n)     -> (2^n)        energy-ordered states
//   time:         (2^n, m)  -> (2^n, m)     energy-ordered trajectories
//   observables:  (6n, m)   -> (6n, m)      real expectation values
struct Dataset {
  spin::SpinChainSpec spec;
  Arch arch = Arch::kTime;
  DatasetOptions options;
  TimeGrid input_grid;
  TimeGrid target_grid;
  std::size_t channels = 0;
  ComplexTensor inputs;
  ComplexTensor targets;

  std::size_t size() const { return inputs.empty() ? 0 : inputs.dim(0); }
  Shape sample_input_shape() const;
  Shape sample_target_shape() const;
  ComplexTensor input(std::size_t i) const;
  ComplexTensor target(std::size_t i) const;
  void validate() const;
};

WaveFunction initial_state(const spin::HamiltonianMatrix& h, const DatasetOptions& options,
                           std::uint64_t sample_index);

// Pairs (psi(kT), psi((k+1)T)) for k < intervals, interval-major.
Dataset build_energy_dataset(const spin::HamiltonianMatrix& h, const DatasetOptions& options);
// Input window [0, 3T/2), target window [T, 5T/2), both with step dt.
Dataset build_time_dataset(const spin::HamiltonianMatrix& h, const DatasetOptions& options);
// Same windows as the time data, channels are the 6n default observables.
Dataset build_observables_dataset(const spin::HamiltonianMatrix& h, const DatasetOptions& options);

Dataset build_dataset(Arch arch, const spin::HamiltonianMatrix& h, const DatasetOptions& options);

// Number of grid steps in a window of the given length; throws unless the
// ratio is an integer.
std::size_t steps_in(double length, double dt);

}  // namespace qfno::evolve
