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

#include "qfno/evolve/dataset.hpp"

#include <cmath>

#include "qfno/error.hpp"
#include "qfno/numerics/rng.hpp"
#include "qfno/spin/pauli.hpp"
#include "qfno/states/states.hpp"

namespace qfno {

const char* arch_name(Arch a) {
  switch (a) {
    case Arch::kEnergy: return "energy";
    case Arch::kTime: return "time";
    case Arch::kObservables: return "observables";
  }
  return "unknown";
}

Arch parse_arch(const std::string& s) {
  if (s == "energy") return Arch::kEnergy;
  if (s == "time") return Arch::kTime;
  if (s == "observables") return Arch::kObservables;
  throw ValidationError("unknown arch '" + s + "' (expected energy, time or observables)");
}

const char* input_type_name(InputType t) {
  return t == InputType::kRandom ? "random" : "low-energy";
}

InputType parse_input_type(const std::string& s) {
  if (s == "random") return InputType::kRandom;
  if (s == "low-energy" || s == "low_energy") return InputType::kLowEnergy;
  throw ValidationError("unknown input type '" + s + "' (expected random or low-energy)");
}

}  // namespace qfno

namespace qfno::evolve {

std::size_t steps_in(double length, double dt) {
  const double ratio = length / dt;
  const double rounded = std::round(ratio);
  if (rounded < 1.0 || std::abs(ratio - rounded) > 1e-9 * std::max(1.0, ratio)) {
    throw ValidationError("window length " + std::to_string(length) +
                          " is not an integer number of steps of " + std::to_string(dt));
  }
  return static_cast<std::size_t>(rounded);
}

Shape Dataset::sample_input_shape() const {
  Shape s(inputs.shape().begin() + 1, inputs.shape().end());
  return s;
}

Shape Dataset::sample_target_shape() const {
  Shape s(targets.shape().begin() + 1, targets.shape().end());
  return s;
}

namespace {

ComplexTensor slice(const ComplexTensor& all, std::size_t i) {
  if (i >= all.dim(0)) throw ValidationError("dataset sample index out of range");
  Shape s(all.shape().begin() + 1, all.shape().end());
  const std::size_t per = shape_size(s);
  std::vector<Complex> data(all.storage().begin() + static_cast<std::ptrdiff_t>(i * per),
                            all.storage().begin() + static_cast<std::ptrdiff_t>((i + 1) * per));
  return ComplexTensor(std::move(s), std::move(data));
}

void write_slice(ComplexTensor& all, std::size_t i, const ComplexTensor& sample) {
  const std::size_t per = sample.size();
  std::copy(sample.storage().begin(), sample.storage().end(),
            all.storage().begin() + static_cast<std::ptrdiff_t>(i * per));
}

Shape prepend(std::size_t n, const Shape& s) {
  Shape out{n};
  out.insert(out.end(), s.begin(), s.end());
  return out;
}

void check_options(const DatasetOptions& o) {
  if (o.count < 1) throw ValidationError("dataset needs at least one sample");
  if (o.intervals < 1) throw ValidationError("dataset needs at least one interval");
  if (!(o.period > 0.0) || !(o.dt > 0.0)) throw ValidationError("period and dt must be positive");
  if (o.input_type == InputType::kLowEnergy) states::low_energy_support(2, o.fraction);
}

}  // namespace

ComplexTensor Dataset::input(std::size_t i) const { return slice(inputs, i); }
ComplexTensor Dataset::target(std::size_t i) const { return slice(targets, i); }

void Dataset::validate() const {
  spec.validate();
  if (inputs.empty() || targets.empty() || inputs.dim(0) != targets.dim(0)) {
    throw ValidationError("dataset inputs and targets disagree on sample count");
  }
  const std::size_t dim = std::size_t{1} << spec.qubits;
  const std::size_t expect_channels = arch == Arch::kObservables ? 6 * spec.qubits : dim;
  if (channels != expect_channels) throw ValidationError("dataset channel count mismatch");
  const Shape in = sample_input_shape(), out = sample_target_shape();
  if (arch == Arch::kEnergy) {
    if (in != Shape{dim} || out != Shape{dim}) throw ValidationError("energy dataset shape mismatch");
  } else if (in != Shape{channels, input_grid.m} || out != Shape{channels, target_grid.m}) {
    throw ValidationError("time-gridded dataset shape mismatch");
  }
}

WaveFunction initial_state(const spin::HamiltonianMatrix& h, const DatasetOptions& options,
                           std::uint64_t sample_index) {
  numerics::RngStream stream(h.spec().seed, options.first_sample + sample_index);
  if (options.input_type == InputType::kLowEnergy) {
    return states::low_energy_state(h.qubits(), h, options.fraction, stream);
  }
  return states::random_state(h.qubits(), stream);
}

Dataset build_energy_dataset(const spin::HamiltonianMatrix& h, const DatasetOptions& options) {
  check_options(options);
  const std::size_t d = h.dim(), count = options.count, intervals = options.intervals;
  const double period = options.period;
  Dataset ds;
  ds.spec = h.spec();
  ds.arch = Arch::kEnergy;
  ds.options = options;
  ds.input_grid = TimeGrid{0.0, period, intervals};
  ds.target_grid = TimeGrid{period, period, intervals};
  ds.channels = d;
  ds.inputs = ComplexTensor({count * intervals, d});
  ds.targets = ComplexTensor({count * intervals, d});

  std::vector<double> times(intervals + 1);
  for (std::size_t k = 0; k <= intervals; ++k) times[k] = static_cast<double>(k) * period;

  const auto total = static_cast<std::ptrdiff_t>(count);
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t s = 0; s < total; ++s) {
    const auto i = static_cast<std::size_t>(s);
    const WaveFunction psi0 = states::to_energy_order(initial_state(h, options, i), h);
    const ComplexTensor traj = evolve_to_times(h, psi0, times);
    auto column = [&](std::size_t k) {
      ComplexTensor c({d});
      for (std::size_t r = 0; r < d; ++r) c[r] = traj.at(r, k);
      return c;
    };
    for (std::size_t k = 0; k < intervals; ++k) {
      // The first input is the exact initial state, not its round trip.
      write_slice(ds.inputs, k * count + i, k == 0 ? psi0.amplitudes : column(k));
      write_slice(ds.targets, k * count + i, column(k + 1));
    }
  }
  return ds;
}

namespace {

// Shared by the time and observables archs: one oracle trajectory on the
// union grid [0, T + m dt), sliced into the input and target windows so the
// overlap is bitwise identical.
template <typename Channels>
Dataset build_windowed(Arch arch, const spin::HamiltonianMatrix& h, const DatasetOptions& options,
                       std::size_t channels, Channels&& to_channels) {
  check_options(options);
  const std::size_t m = steps_in(1.5 * options.period, options.dt);
  const std::size_t shift = steps_in(options.period, options.dt);
  const std::size_t total_points = shift + m;

  Dataset ds;
  ds.spec = h.spec();
  ds.arch = arch;
  ds.options = options;
  ds.input_grid = TimeGrid{0.0, options.dt, m};
  ds.target_grid = TimeGrid{options.period, options.dt, m};
  ds.channels = channels;
  ds.inputs = ComplexTensor({options.count, channels, m});
  ds.targets = ComplexTensor({options.count, channels, m});

  std::vector<double> times(total_points);
  for (std::size_t j = 0; j < total_points; ++j) times[j] = static_cast<double>(j) * options.dt;

  const auto total = static_cast<std::ptrdiff_t>(options.count);
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t s = 0; s < total; ++s) {
    const auto i = static_cast<std::size_t>(s);
    const WaveFunction psi0 = initial_state(h, options, i);
    const ComplexTensor traj = to_channels(evolve_to_times(h, psi0, times));
    ComplexTensor in({channels, m}), out({channels, m});
    for (std::size_t c = 0; c < channels; ++c)
      for (std::size_t j = 0; j < m; ++j) {
        in.at(c, j) = traj.at(c, j);
        out.at(c, j) = traj.at(c, shift + j);
      }
    write_slice(ds.inputs, i, in);
    write_slice(ds.targets, i, out);
  }
  return ds;
}

}  // namespace

Dataset build_time_dataset(const spin::HamiltonianMatrix& h, const DatasetOptions& options) {
  const auto& perm = h.energy_order();
  const std::size_t d = h.dim();
  return build_windowed(Arch::kTime, h, options, d, [&](const ComplexTensor& binary) {
    ComplexTensor energy(binary.shape());
    const std::size_t m = binary.dim(1);
    for (std::size_t k = 0; k < d; ++k)
      for (std::size_t j = 0; j < m; ++j) energy.at(k, j) = binary.at(perm[k], j);
    return energy;
  });
}

Dataset build_observables_dataset(const spin::HamiltonianMatrix& h, const DatasetOptions& options) {
  const spin::ObservableSet obs = spin::default_observables(h.qubits());
  const std::size_t d = h.dim();
  return build_windowed(Arch::kObservables, h, options, obs.size(), [&](const ComplexTensor& binary) {
    const std::size_t m = binary.dim(1);
    ComplexTensor values({obs.size(), m});
    std::vector<Complex> column(d);
    for (std::size_t j = 0; j < m; ++j) {
      for (std::size_t r = 0; r < d; ++r) column[r] = binary.at(r, j);
      for (std::size_t o = 0; o < obs.size(); ++o) values.at(o, j) = obs.operators[o].expectation(column);
    }
    return values;
  });
}

Dataset build_dataset(Arch arch, const spin::HamiltonianMatrix& h, const DatasetOptions& options) {
  switch (arch) {
    case Arch::kEnergy: return build_energy_dataset(h, options);
    case Arch::kTime: return build_time_dataset(h, options);
    case Arch::kObservables: return build_observables_dataset(h, options);
  }
  throw ValidationError("unknown arch");
}

}  // namespace qfno::evolve
