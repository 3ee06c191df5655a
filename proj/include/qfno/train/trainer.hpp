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
#include <functional>
#include <span>
#include <vector>

#include "qfno/autodiff/tape.hpp"
#include "qfno/evolve/dataset.hpp"
#include "qfno/fno/model.hpp"
#include "qfno/train/adam.hpp"
#include "qfno/train/loss.hpp"

namespace qfno::train {

struct EpochMetrics {
  std::size_t epoch = 0;
  double train_loss = 0.0;
  double val_loss = 0.0;
  double val_fidelity = 0.0;  // NaN for observables
};

struct TrainConfig {
  double lr = 1e-3;
  std::size_t epochs = 500;
  std::size_t batch_size = 64;
  std::uint64_t seed = 0;
  LossKind loss = LossKind::kRelL2;
  std::size_t lr_step = 100;  // epochs between halvings
  double lr_decay = 0.5;
  double clip_norm = 5.0;
  double val_fraction = 0.1;
  autodiff::KernelPath kernels = autodiff::KernelPath::kParallel;
  std::function<void(const EpochMetrics&)> on_epoch;

  void validate() const;
  double lr_at(std::size_t epoch) const;
};

// Relative L2 for wavefunction data, MSE for observables.
LossKind default_loss(Arch arch);

// A mini-batch in model layout: input (C_in, B, N), target (C_out, B, N).
struct Batch {
  ComplexTensor input;
  ComplexTensor target;
};

// Rows of a (S, ...) tensor, in the order given.
ComplexTensor gather_samples(const ComplexTensor& samples, std::span<const std::size_t> indices);
Batch make_batch(const evolve::Dataset& data, std::span<const std::size_t> indices);

struct Split {
  std::vector<std::size_t> train;
  std::vector<std::size_t> validation;
};

// Seeded shuffle, then the last floor(fraction * S) indices (at least one
// when S >= 2) are held out. A single-sample set validates on itself.
Split split_indices(std::size_t count, double val_fraction, std::uint64_t seed);

struct EvalResult {
  double loss = 0.0;
  double fidelity = 0.0;  // NaN for observables
};

// Forward-only pass over the given samples in chunks of batch_size.
EvalResult evaluate(const fno::FnoModel& model, const evolve::Dataset& data,
                    std::span<const std::size_t> indices, LossKind loss, std::size_t batch_size = 256);

struct TrainResult {
  fno::FnoModel model;  // best-validation parameters
  std::vector<EpochMetrics> metrics;
  std::size_t best_epoch = 0;
  Split split;
};

// Mini-batch Adam with global-norm clipping and a step-halving learning
// rate. Batches run in a fixed order, so a fixed seed gives a fixed result
// for a fixed thread count.
TrainResult train(fno::FnoModel model, const evolve::Dataset& data, const TrainConfig& config);

}  // namespace qfno::train
