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

#include <cstdint>
#include <span>
#include <vector>

#include "qfno/autodiff/tape.hpp"

namespace qfno::train {

struct AdamConfig {
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
};

// Moments are kept per real component: re and im of each complex slot hold
// the accumulator for that component.
struct AdamState {
  std::vector<ComplexTensor> first;
  std::vector<ComplexTensor> second;
  std::uint64_t step = 0;
};

void adam_step(std::span<autodiff::Param* const> params, AdamState& state, double lr,
               const AdamConfig& config = {});

// Global L2 norm over every real component of every gradient.
double grad_norm(std::span<autodiff::Param* const> params);
// Rescales gradients so the global norm is at most max_norm; returns the
// norm before clipping.
double clip_grad_norm(std::span<autodiff::Param* const> params, double max_norm);

}  // namespace qfno::train
