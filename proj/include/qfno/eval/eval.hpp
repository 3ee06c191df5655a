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
#include <functional>
#include <string>
#include <vector>

#include "qfno/evolve/dataset.hpp"
#include "qfno/evolve/evolve.hpp"
#include "qfno/fno/model.hpp"
#include "qfno/numerics/complex_tensor.hpp"
#include "qfno/spin/hamiltonian.hpp"
#include "qfno/spin/pauli.hpp"

namespace qfno::eval {

// One CSV row. sample is the index as text, or "mean", "std" or "all" for
// aggregates; point metrics use t_start == t_end.
struct EvalRow {
  std::string sample;
  double t_start = 0.0;
  double t_end = 0.0;
  std::string metric;
  double value = 0.0;
};

struct EvalReport {
  std::vector<EvalRow> rows;

  void add(std::string sample, double t_start, double t_end, std::string metric, double value);
  void add(std::size_t sample, double t_start, double t_end, std::string metric, double value);
  // Per-sample rows (numeric sample field) of a metric whose interval lies
  // inside [lo, hi]; a small slack absorbs grid rounding.
  std::vector<double> values(const std::string& metric, double lo, double hi) const;
  std::vector<double> values(const std::string& metric) const;
  // First aggregate row with this sample label and metric; throws if absent.
  double aggregate(const std::string& sample, const std::string& metric) const;
};

// Batched one-step maps. States are (B, d) energy-ordered; windows are
// (B, C, m) on the training grid spacing.
using StateStepper = std::function<ComplexTensor(const ComplexTensor&)>;
using WindowStepper = std::function<ComplexTensor(const ComplexTensor&)>;

// Model output with every state renormalized.
StateStepper fno_state_stepper(const fno::FnoModel& model);
// Exact evolution by one period.
StateStepper oracle_state_stepper(const spin::HamiltonianMatrix& h, double period);
// Model output on the window shifted by one period. Wavefunction windows are
// renormalized column by column.
WindowStepper fno_window_stepper(const fno::FnoModel& model, double dt, bool normalize);
// Exact window map: column 0 of the input is evolved to period + j dt.
WindowStepper oracle_window_stepper(const spin::HamiltonianMatrix& h, double period, double dt);

// Predictions at T, 2T, ..., steps T; prediction k is fed to step k + 1.
std::vector<ComplexTensor> rollout_energy(const StateStepper& step, const ComplexTensor& psi0, std::size_t steps);

struct TimeRollout {
  std::vector<ComplexTensor> windows;  // round k output starts at (k + 1) T
  ComplexTensor trajectory;            // (B, C, m + rounds * shift)
  evolve::TimeGrid grid;               // grid of the trajectory
};

// rounds = 0 is the single forward pass; each further round feeds the last
// output back in and appends the columns that extend past the previous end.
TimeRollout rollout_time(const WindowStepper& step, const ComplexTensor& input, const evolve::TimeGrid& input_grid,
                         double period, std::size_t rounds);

// The exact trajectory of each sample's initial state on arbitrary times:
// (B, C, times), energy-ordered states for wavefunction data and the default
// observables otherwise.
ComplexTensor exact_windows(const spin::HamiltonianMatrix& h, const evolve::Dataset& data,
                            const std::vector<std::size_t>& samples, const std::vector<double>& times);

// Output-window quality over the whole dataset: per-sample fidelity (mean
// over the window's columns for time data) or MRE, plus aggregates.
EvalReport eval_output(const fno::FnoModel& model, const evolve::Dataset& data);

// Energy: `rounds` applications from each initial state. Time and
// observables: `rounds` extra windows after the first output. gt_fed feeds
// observables models the exact previous window instead of their own output.
EvalReport eval_rollout(const fno::FnoModel& model, const evolve::Dataset& data, std::size_t rounds,
                        bool gt_fed = false);

// Time data only: first output window at dt and at dt / factor, compared
// with the exact evolution on each grid. Rows fidelity_coarse and
// fidelity_fine per sample, and the relative degradation aggregate.
EvalReport eval_superres(const fno::FnoModel& model, const evolve::Dataset& data, std::size_t factor);

struct BenchResult {
  double decomposition_seconds = 0.0;
  double exact_seconds = 0.0;  // evolution to every rollout point, decomposition excluded
  double fno_seconds = 0.0;    // rollout of the same horizon
  std::size_t samples = 0;
  std::size_t rounds = 0;
  double ratio() const { return fno_seconds > 0.0 ? exact_seconds / fno_seconds : 0.0; }
};

BenchResult bench(const fno::FnoModel& model, const evolve::Dataset& data, std::size_t rounds,
                  std::size_t max_samples = 0);
EvalReport bench_report(const BenchResult& result, double t_end);

}  // namespace qfno::eval
