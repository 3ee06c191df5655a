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

#include "qfno/train/trainer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "qfno/error.hpp"
#include "qfno/eval/metrics.hpp"
#include "qfno/numerics/rng.hpp"

namespace qfno::train {

namespace {

constexpr std::uint64_t kSplitStream = 0x5eed0001ULL;
constexpr std::uint64_t kShuffleStream = 0x5eed1000ULL;

void shuffle(std::vector<std::size_t>& v, numerics::RngStream& rng) {
  for (std::size_t i = v.size(); i > 1; --i) {
    const std::size_t j = rng.below(i);
    std::swap(v[i - 1], v[j]);
  }
}

autodiff::Var record_loss(autodiff::Tape& tape, autodiff::Var pred, const ComplexTensor& target, LossKind kind) {
  return kind == LossKind::kMse ? tape.mse(pred, target) : tape.rel_l2(pred, target, 1);
}

}  // namespace

void TrainConfig::validate() const {
  if (!(lr > 0.0) || !std::isfinite(lr)) throw ValidationError("train: learning rate must be positive");
  if (epochs == 0) throw ValidationError("train: epochs must be positive");
  if (batch_size == 0) throw ValidationError("train: batch size must be positive");
  if (lr_step == 0) throw ValidationError("train: lr step must be positive");
  if (!(lr_decay > 0.0 && lr_decay <= 1.0)) throw ValidationError("train: lr decay must lie in (0, 1]");
  if (!(clip_norm > 0.0)) throw ValidationError("train: clip norm must be positive");
  if (!(val_fraction >= 0.0 && val_fraction < 1.0)) throw ValidationError("train: validation fraction must lie in [0, 1)");
}

double TrainConfig::lr_at(std::size_t epoch) const {
  return lr * std::pow(lr_decay, static_cast<double>(epoch / lr_step));
}

LossKind default_loss(Arch arch) { return arch == Arch::kObservables ? LossKind::kMse : LossKind::kRelL2; }

ComplexTensor gather_samples(const ComplexTensor& samples, std::span<const std::size_t> indices) {
  if (samples.rank() < 2) throw ValidationError("gather_samples: expected a leading sample axis");
  const std::size_t stride = samples.size() / samples.dim(0);
  Shape shape = samples.shape();
  shape[0] = indices.size();
  ComplexTensor out(shape);
  for (std::size_t k = 0; k < indices.size(); ++k) {
    if (indices[k] >= samples.dim(0)) throw ValidationError("gather_samples: index out of range");
    std::copy_n(samples.data().begin() + static_cast<std::ptrdiff_t>(indices[k] * stride), stride,
                out.data().begin() + static_cast<std::ptrdiff_t>(k * stride));
  }
  return out;
}

Batch make_batch(const evolve::Dataset& data, std::span<const std::size_t> indices) {
  if (indices.empty()) throw ValidationError("make_batch: empty batch");
  ComplexTensor in = gather_samples(data.inputs, indices);
  ComplexTensor tg = gather_samples(data.targets, indices);
  Batch b;
  if (data.arch == Arch::kEnergy) {
    b.input = fno::energy_model_input(in);
  } else {
    b.input = fno::window_model_input(in, data.input_grid.dt);
  }
  b.target = fno::to_channel_major(tg);
  return b;
}

Split split_indices(std::size_t count, double val_fraction, std::uint64_t seed) {
  if (count == 0) throw ValidationError("train: empty dataset");
  std::vector<std::size_t> all(count);
  std::iota(all.begin(), all.end(), std::size_t{0});
  numerics::RngStream rng(seed, kSplitStream);
  shuffle(all, rng);
  Split s;
  if (count == 1) {
    s.train = all;
    s.validation = all;
    return s;
  }
  std::size_t nval = static_cast<std::size_t>(std::floor(val_fraction * static_cast<double>(count)));
  if (val_fraction > 0.0) nval = std::max<std::size_t>(nval, 1);
  if (nval == 0) {
    s.train = all;
    s.validation = all;
    return s;
  }
  s.train.assign(all.begin(), all.end() - static_cast<std::ptrdiff_t>(nval));
  s.validation.assign(all.end() - static_cast<std::ptrdiff_t>(nval), all.end());
  return s;
}

EvalResult evaluate(const fno::FnoModel& model, const evolve::Dataset& data,
                    std::span<const std::size_t> indices, LossKind loss, std::size_t batch_size) {
  if (indices.empty()) throw ValidationError("evaluate: no samples");
  if (batch_size == 0) throw ValidationError("evaluate: batch size must be positive");
  double loss_sum = 0.0, fid_sum = 0.0;
  for (std::size_t start = 0; start < indices.size(); start += batch_size) {
    const auto chunk = indices.subspan(start, std::min(batch_size, indices.size() - start));
    const Batch b = make_batch(data, chunk);
    const ComplexTensor pred = fno::fno_forward_batch(model, b.input);
    const double w = static_cast<double>(chunk.size());
    loss_sum += w * (loss == LossKind::kMse ? loss_mse(pred, b.target) : loss_rel_l2(pred, b.target, 1));
    if (data.arch != Arch::kObservables) {
      for (double f : eval::batch_fidelity(data.arch, pred, b.target)) fid_sum += f;
    }
  }
  const double n = static_cast<double>(indices.size());
  EvalResult r;
  r.loss = loss_sum / n;
  r.fidelity = data.arch == Arch::kObservables ? std::numeric_limits<double>::quiet_NaN() : fid_sum / n;
  return r;
}

TrainResult train(fno::FnoModel model, const evolve::Dataset& data, const TrainConfig& config) {
  config.validate();
  data.validate();
  if (data.size() == 0) throw ValidationError("train: empty dataset");
  if (model.config().arch != data.arch) {
    throw ValidationError(std::string("train: model architecture ") + arch_name(model.config().arch) +
                          " does not match dataset architecture " + arch_name(data.arch));
  }
  if (model.config().qubits != data.spec.qubits) throw ValidationError("train: qubit count mismatch");

  TrainResult result{model, {}, 0, split_indices(data.size(), config.val_fraction, config.seed)};
  std::vector<std::size_t> order = result.split.train;
  AdamState adam;
  double best = std::numeric_limits<double>::infinity();
  std::vector<autodiff::Param*> params = model.parameters();

  for (std::size_t epoch = 0; epoch < config.epochs; ++epoch) {
    numerics::RngStream rng(config.seed, kShuffleStream + epoch);
    shuffle(order, rng);
    const double lr = config.lr_at(epoch);
    double loss_sum = 0.0;
    for (std::size_t start = 0; start < order.size(); start += config.batch_size) {
      const std::span<const std::size_t> idx(order.data() + start,
                                             std::min(config.batch_size, order.size() - start));
      const Batch b = make_batch(data, idx);
      autodiff::Tape tape(config.kernels);
      model.zero_grad();
      const autodiff::Var out = model.forward(tape, tape.constant(b.input));
      const autodiff::Var loss = record_loss(tape, out, b.target, config.loss);
      const double value = tape.scalar(loss);
      if (!std::isfinite(value)) {
        throw NumericError("train: non-finite loss at epoch " + std::to_string(epoch) + ", batch starting at " +
                           std::to_string(start));
      }
      tape.backward(loss);
      clip_grad_norm(params, config.clip_norm);
      adam_step(params, adam, lr);
      loss_sum += value * static_cast<double>(idx.size());
    }
    EpochMetrics m;
    m.epoch = epoch;
    m.train_loss = loss_sum / static_cast<double>(order.size());
    const EvalResult v = evaluate(model, data, result.split.validation, config.loss);
    m.val_loss = v.loss;
    m.val_fidelity = v.fidelity;
    if (!std::isfinite(m.val_loss)) {
      throw NumericError("train: non-finite validation loss at epoch " + std::to_string(epoch));
    }
    if (m.val_loss < best) {
      best = m.val_loss;
      result.model = model;
      result.best_epoch = epoch;
    }
    result.metrics.push_back(m);
    if (config.on_epoch) config.on_epoch(m);
  }
  return result;
}

}  // namespace qfno::train
