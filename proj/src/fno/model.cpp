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

#include "qfno/fno/model.hpp"

#include <algorithm>
#include <cmath>

#include "qfno/error.hpp"
#include "qfno/numerics/rng.hpp"

namespace qfno::fno {

using autodiff::Param;
using autodiff::Tape;
using autodiff::Var;

void FnoConfig::validate() const {
  if (in_channels == 0 || out_channels == 0) throw ValidationError("FnoConfig: channels must be positive");
  if (blocks < 1) throw ValidationError("FnoConfig: need at least one block");
  if (modes < 1) throw ValidationError("FnoConfig: need at least one mode");
  if (width < out_channels) throw ValidationError("FnoConfig: width must be >= out_channels");
  if (qubits < spin::kMinQubits || qubits > spin::kMaxQubits) {
    throw ValidationError("FnoConfig: qubit count out of range");
  }
}

std::size_t parameter_count(const FnoConfig& c) {
  const std::size_t w = c.width;
  return (w * c.in_channels + w) + c.blocks * (w * w + w + c.modes * w * w) +
         (w * w + w + c.out_channels * w + c.out_channels);
}

FnoModel::FnoModel(FnoConfig config) : config_(config) {
  config_.validate();
  const std::size_t w = config_.width;
  lift_weight_ = Param("lift.weight", ComplexTensor({w, config_.in_channels}));
  lift_bias_ = Param("lift.bias", ComplexTensor({w}));
  blocks_.resize(config_.blocks);
  for (std::size_t l = 0; l < config_.blocks; ++l) {
    const std::string p = "blocks." + std::to_string(l) + ".";
    blocks_[l].weight = Param(p + "weight", ComplexTensor({w, w}));
    blocks_[l].bias = Param(p + "bias", ComplexTensor({w}));
    blocks_[l].spectral = Param(p + "spectral", ComplexTensor({config_.modes, w, w}));
  }
  proj0_weight_ = Param("proj.0.weight", ComplexTensor({w, w}));
  proj0_bias_ = Param("proj.0.bias", ComplexTensor({w}));
  proj1_weight_ = Param("proj.1.weight", ComplexTensor({config_.out_channels, w}));
  proj1_bias_ = Param("proj.1.bias", ComplexTensor({config_.out_channels}));
}

std::vector<Param*> FnoModel::parameters() {
  std::vector<Param*> ps{&lift_weight_, &lift_bias_};
  for (auto& b : blocks_) {
    ps.push_back(&b.weight);
    ps.push_back(&b.bias);
    ps.push_back(&b.spectral);
  }
  ps.insert(ps.end(), {&proj0_weight_, &proj0_bias_, &proj1_weight_, &proj1_bias_});
  return ps;
}

std::vector<const Param*> FnoModel::parameters() const {
  auto ps = mut().parameters();
  return {ps.begin(), ps.end()};
}

std::size_t FnoModel::parameter_count() const {
  std::size_t n = 0;
  for (const Param* p : parameters()) n += p->value.size();
  return n;
}

void FnoModel::zero_grad() {
  for (Param* p : parameters()) p->zero_grad();
}

void FnoModel::initialize(std::uint64_t seed) {
  const auto ps = parameters();
  for (std::size_t idx = 0; idx < ps.size(); ++idx) {
    Param& p = *ps[idx];
    std::fill(p.value.storage().begin(), p.value.storage().end(), Complex{});
    if (p.value.rank() == 1) continue;  // biases start at zero
    double variance;
    if (p.value.rank() == 3) {
      const auto k = static_cast<double>(p.value.dim(0));
      variance = 1.0 / (static_cast<double>(p.value.dim(1) * p.value.dim(2)) * k);
    } else {
      variance = 1.0 / static_cast<double>(p.value.dim(1));
    }
    const double sd = std::sqrt(variance);
    numerics::RngStream rng(seed, idx);
    for (auto& v : p.value.storage()) {
      const double re = rng.normal() * sd;
      const double im = rng.normal() * sd;
      v = {re, im};
    }
  }
  zero_grad();
}

namespace {

Var spectral_path(Tape& tape, Var r, Var v, std::size_t modes) {
  const std::size_t axis = tape.value(v).rank() - 1;
  const std::size_t n = tape.value(v).shape().back();
  Var spec = tape.truncate_modes(tape.dft_forward(v, axis), modes);
  Var mixed = tape.spectral_mix(r, spec);
  return tape.dft_inverse(tape.pad_modes(mixed, n), axis);
}

}  // namespace

Var FnoModel::forward(Tape& tape, Var input) const {
  const ComplexTensor& x = tape.value(input);
  if (x.rank() < 2 || x.shape()[0] != config_.in_channels) {
    throw ValidationError("fno_forward: expected " + std::to_string(config_.in_channels) +
                          " input channels, got shape " + shape_to_string(x.shape()));
  }
  if (x.shape().back() < config_.modes) {
    throw ValidationError("fno_forward: grid length " + std::to_string(x.shape().back()) +
                          " is shorter than the mode count " + std::to_string(config_.modes));
  }
  FnoModel& self = mut();
  Var v = tape.channel_mix(tape.param(self.lift_weight_), tape.param(self.lift_bias_), input);
  for (auto& block : self.blocks_) {
    Var local = tape.channel_mix(tape.param(block.weight), tape.param(block.bias), v);
    Var global = spectral_path(tape, tape.param(block.spectral), v, config_.modes);
    v = tape.split_gelu(tape.add(local, global));
  }
  Var hidden = tape.split_gelu(
      tape.channel_mix(tape.param(self.proj0_weight_), tape.param(self.proj0_bias_), v));
  return tape.channel_mix(tape.param(self.proj1_weight_), tape.param(self.proj1_bias_), hidden);
}

namespace {

FnoConfig base_config(Arch arch, std::size_t qubits, std::size_t in, std::size_t out,
                      std::size_t width, std::size_t modes, const ModelOptions& o) {
  FnoConfig c;
  c.arch = arch;
  c.qubits = qubits;
  c.in_channels = in;
  c.out_channels = out;
  c.width = o.width ? o.width : width;
  c.blocks = o.blocks;
  c.modes = o.modes ? o.modes : modes;
  c.validate();
  return c;
}

std::size_t dim_of(std::size_t qubits) {
  if (qubits < spin::kMinQubits || qubits > spin::kMaxQubits) {
    throw ValidationError("qubit count out of range");
  }
  return std::size_t{1} << qubits;
}

}  // namespace

FnoConfig energy_config(std::size_t qubits, const ModelOptions& o) {
  const std::size_t d = dim_of(qubits);
  return base_config(Arch::kEnergy, qubits, 2, 1, 32, d / 2, o);
}

FnoConfig time_config(std::size_t qubits, const ModelOptions& o) {
  const std::size_t d = dim_of(qubits);
  return base_config(Arch::kTime, qubits, d + 2, d, std::max<std::size_t>(d, 32), 7, o);
}

FnoConfig observables_config(std::size_t qubits, const ModelOptions& o) {
  dim_of(qubits);
  const std::size_t c = 6 * qubits;
  return base_config(Arch::kObservables, qubits, c + 2, c, std::max<std::size_t>(c, 32), 7, o);
}

FnoConfig config_for(Arch arch, std::size_t qubits, const ModelOptions& o) {
  switch (arch) {
    case Arch::kEnergy: return energy_config(qubits, o);
    case Arch::kTime: return time_config(qubits, o);
    case Arch::kObservables: return observables_config(qubits, o);
  }
  throw ValidationError("unknown arch");
}

namespace {

FnoModel make(FnoConfig c, std::uint64_t seed) {
  FnoModel m(c);
  m.initialize(seed);
  return m;
}

}  // namespace

FnoModel make_energy_model(std::size_t qubits, const ModelOptions& o) {
  return make(energy_config(qubits, o), o.seed);
}
FnoModel make_time_model(std::size_t qubits, const ModelOptions& o) {
  return make(time_config(qubits, o), o.seed);
}
FnoModel make_observables_model(std::size_t qubits, const ModelOptions& o) {
  return make(observables_config(qubits, o), o.seed);
}

double embed_state(std::size_t k, std::size_t qubits) {
  const std::size_t d = dim_of(qubits);
  if (k >= d) throw ValidationError("embed_state: index out of range");
  return static_cast<double>(k) / static_cast<double>(d);
}

ComplexTensor embed_time(const evolve::TimeGrid& grid) {
  grid.validate();
  ComplexTensor e({2, grid.m});
  for (std::size_t j = 0; j < grid.m; ++j) {
    const double t = grid.point(j);
    e.at(0, j) = std::sin(t);
    e.at(1, j) = std::cos(t);
  }
  return e;
}

ComplexTensor spectral_conv(const ComplexTensor& v, const ComplexTensor& r) {
  if (r.rank() != 3) throw ValidationError("spectral_conv: weights must be (K, out, in)");
  if (r.dim(0) > v.shape().back()) throw ValidationError("spectral_conv: more modes than grid points");
  Tape tape;
  Var out = spectral_path(tape, tape.constant(r), tape.constant(v), r.dim(0));
  return tape.value(out);
}

ComplexTensor fno_forward_batch(const FnoModel& model, const ComplexTensor& input) {
  Tape tape;
  return tape.value(model.forward(tape, tape.constant(input)));
}

ComplexTensor fno_forward(const FnoModel& model, const ComplexTensor& input) {
  if (input.rank() != 2) throw ValidationError("fno_forward: expected (channels, N) input");
  const std::size_t c = input.dim(0), n = input.dim(1);
  ComplexTensor out = fno_forward_batch(model, input.reshaped({c, 1, n}));
  return out.reshaped({out.dim(0), n});
}

ComplexTensor energy_model_input(const ComplexTensor& states) {
  if (states.rank() != 2) throw ValidationError("energy_model_input: expected (B, 2^n)");
  const std::size_t b = states.dim(0), d = states.dim(1);
  ComplexTensor x({2, b, d});
  for (std::size_t s = 0; s < b; ++s)
    for (std::size_t k = 0; k < d; ++k) {
      x[(0 * b + s) * d + k] = static_cast<double>(k) / static_cast<double>(d);
      x[(1 * b + s) * d + k] = states[s * d + k];
    }
  return x;
}

ComplexTensor window_model_input(const ComplexTensor& windows, double dt) {
  if (windows.rank() != 3) throw ValidationError("window_model_input: expected (B, C, m)");
  const std::size_t b = windows.dim(0), c = windows.dim(1), m = windows.dim(2);
  const ComplexTensor embed = embed_time(evolve::TimeGrid{0.0, dt, m});
  ComplexTensor x({c + 2, b, m});
  for (std::size_t s = 0; s < b; ++s) {
    for (std::size_t j = 0; j < m; ++j) {
      x[(0 * b + s) * m + j] = embed.at(0, j);
      x[(1 * b + s) * m + j] = embed.at(1, j);
    }
    for (std::size_t ch = 0; ch < c; ++ch)
      for (std::size_t j = 0; j < m; ++j) x[((ch + 2) * b + s) * m + j] = windows[(s * c + ch) * m + j];
  }
  return x;
}

ComplexTensor to_channel_major(const ComplexTensor& samples) {
  if (samples.rank() == 2) return samples.reshaped({1, samples.dim(0), samples.dim(1)});
  if (samples.rank() != 3) throw ValidationError("to_channel_major: expected (B, C, N)");
  const std::size_t b = samples.dim(0), c = samples.dim(1), n = samples.dim(2);
  ComplexTensor out({c, b, n});
  for (std::size_t s = 0; s < b; ++s)
    for (std::size_t ch = 0; ch < c; ++ch)
      std::copy_n(&samples[(s * c + ch) * n], n, &out[(ch * b + s) * n]);
  return out;
}

ComplexTensor to_sample_major(const ComplexTensor& x) {
  if (x.rank() != 3) throw ValidationError("to_sample_major: expected (C, B, N)");
  const std::size_t c = x.dim(0), b = x.dim(1), n = x.dim(2);
  ComplexTensor out({b, c, n});
  for (std::size_t ch = 0; ch < c; ++ch)
    for (std::size_t s = 0; s < b; ++s) std::copy_n(&x[(ch * b + s) * n], n, &out[(s * c + ch) * n]);
  return out;
}

}  // namespace qfno::fno
