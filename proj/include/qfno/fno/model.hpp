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
#include <vector>

#include "qfno/autodiff/tape.hpp"
#include "qfno/evolve/dataset.hpp"
#include "qfno/evolve/evolve.hpp"
#include "qfno/numerics/complex_tensor.hpp"

namespace qfno::fno {

enum class Activation { kSplitGelu };

struct FnoConfig {
  Arch arch = Arch::kTime;
  std::size_t in_channels = 0;
  std::size_t out_channels = 0;
  std::size_t width = 32;
  std::size_t blocks = 4;
  std::size_t modes = 7;
  std::size_t qubits = 4;
  Activation activation = Activation::kSplitGelu;

  void validate() const;
  bool operator==(const FnoConfig&) const = default;
};

struct ModelOptions {
  std::size_t width = 0;   // 0 picks the architecture default
  std::size_t blocks = 4;
  std::size_t modes = 0;   // 0 picks the architecture default
  std::uint64_t seed = 0;
};

struct FnoBlock {
  autodiff::Param weight;    // (width, width) pointwise map W
  autodiff::Param bias;      // (width)
  autodiff::Param spectral;  // (modes, width, width) R
};

// Lift -> blocks x sigma(W V + b + K V) -> Proj(width -> width -> out),
// complex throughout with split GELU as sigma.
class FnoModel {
 public:
  FnoModel() = default;
  // Parameters zero-initialized with the shapes the config implies.
  explicit FnoModel(FnoConfig config);

  const FnoConfig& config() const noexcept { return config_; }

  // Complex Glorot-style draw: re, im ~ N(0, 1/fan_in) for pointwise maps,
  // N(0, 1/(fan_in fan_out K)) for spectral weights, zero biases.
  void initialize(std::uint64_t seed);

  // input is (in_channels, B, N) in channel-major batch layout; returns
  // (out_channels, B, N).
  autodiff::Var forward(autodiff::Tape& tape, autodiff::Var input) const;

  // Declaration order, which is also the checkpoint order.
  std::vector<autodiff::Param*> parameters();
  std::vector<const autodiff::Param*> parameters() const;
  std::size_t parameter_count() const;
  void zero_grad();

 private:
  FnoConfig config_;
  autodiff::Param lift_weight_, lift_bias_;
  std::vector<FnoBlock> blocks_;
  autodiff::Param proj0_weight_, proj0_bias_, proj1_weight_, proj1_bias_;
  // forward() records params on a tape that takes non-const pointers.
  FnoModel& mut() const { return const_cast<FnoModel&>(*this); }
};

// Closed form: lift (w*in + w) + L (w^2 + w + K w^2) + proj (w^2 + w + out*w + out).
std::size_t parameter_count(const FnoConfig& config);

FnoConfig energy_config(std::size_t qubits, const ModelOptions& options = {});
FnoConfig time_config(std::size_t qubits, const ModelOptions& options = {});
FnoConfig observables_config(std::size_t qubits, const ModelOptions& options = {});
FnoConfig config_for(Arch arch, std::size_t qubits, const ModelOptions& options = {});

FnoModel make_energy_model(std::size_t qubits, const ModelOptions& options = {});
FnoModel make_time_model(std::size_t qubits, const ModelOptions& options = {});
FnoModel make_observables_model(std::size_t qubits, const ModelOptions& options = {});

// Embed_state(k) = k / 2^n.
double embed_state(std::size_t k, std::size_t qubits);
// Rows (sin t_j, cos t_j), shape (2, m), real-valued.
ComplexTensor embed_time(const evolve::TimeGrid& grid);

// F^{-1}(R . F(V)) on the retained band; V is (width, N) or (width, B, N).
ComplexTensor spectral_conv(const ComplexTensor& v, const ComplexTensor& r);

// Single-sample inference: input (in_channels, N) -> (out_channels, N).
ComplexTensor fno_forward(const FnoModel& model, const ComplexTensor& input);
// Batched inference in channel-major layout.
ComplexTensor fno_forward_batch(const FnoModel& model, const ComplexTensor& input);

// Layout helpers between dataset samples (B, ...) and model tensors (C, B, N).
// Energy: (B, 2^n) states -> (2, B, 2^n) with the state embedding first.
ComplexTensor energy_model_input(const ComplexTensor& states);
// Windows: (B, C, m) -> (C + 2, B, m) with (sin, cos) of the window-local
// times j * dt first. Local times make every rollout round and every grid
// refinement see the embedding the model was trained on.
ComplexTensor window_model_input(const ComplexTensor& windows, double dt);
// (B, C, N) -> (C, B, N); a rank-2 (B, N) input becomes (1, B, N).
ComplexTensor to_channel_major(const ComplexTensor& samples);
// (C, B, N) -> (B, C, N).
ComplexTensor to_sample_major(const ComplexTensor& model_layout);

}  // namespace qfno::fno
