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
#include <string>

#include "qfno/numerics/complex_tensor.hpp"

namespace qfno::train {

enum class LossKind { kRelL2, kMse };

const char* loss_name(LossKind k);
LossKind parse_loss(const std::string& s);

inline constexpr double kRelL2Floor = 1e-12;

// Mean over samples (indexed along batch_axis) of |pred - target|_2 /
// max(|target|_2, 1e-12), with complex entries as (re, im) pairs.
double loss_rel_l2(const ComplexTensor& pred, const ComplexTensor& target, std::size_t batch_axis = 1);

// Mean squared modulus of the difference over all entries.
double loss_mse(const ComplexTensor& pred, const ComplexTensor& target);

}  // namespace qfno::train
