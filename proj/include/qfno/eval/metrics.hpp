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
#include <span>
#include <vector>

#include "qfno/evolve/dataset.hpp"
#include "qfno/numerics/complex_tensor.hpp"
#include "qfno/states/wavefunction.hpp"

namespace qfno::eval {

// |<a|b>|^2 with b renormalized first; a must already be unit norm. Both
// states must share a basis order.
double fidelity(const WaveFunction& a, const WaveFunction& b);

// |<a|b>|^2 / (|a|^2 |b|^2), clamped to [0, 1]; 0 when either is zero.
double overlap_fidelity(std::span<const Complex> a, std::span<const Complex> b);

// Per-sample fidelity between model-layout prediction and target. Energy:
// the state lies along the grid axis of the single channel. Time: each grid
// column is a state and the per-sample value is the mean over columns.
std::vector<double> batch_fidelity(Arch arch, const ComplexTensor& pred, const ComplexTensor& target);

// Per-column fidelities of one (C, m) window pair.
std::vector<double> column_fidelities(const ComplexTensor& pred, const ComplexTensor& target);

// Rescale every column of a (B, C, m) or (C, m) tensor to unit norm.
void normalize_columns(ComplexTensor& windows);

struct MreResult {
  double value = 0.0;
  std::size_t included = 0;
};

inline constexpr double kMreThreshold = 1e-2;

// Mean of |pred - true| / |true| over entries with |true| > threshold.
MreResult mre(std::span<const double> pred, std::span<const double> truth,
              double threshold = kMreThreshold);

// Running MRE over several calls.
class MreAccumulator {
 public:
  explicit MreAccumulator(double threshold = kMreThreshold) : threshold_(threshold) {}
  void add(std::span<const double> pred, std::span<const double> truth);
  void add(const ComplexTensor& pred, const ComplexTensor& truth);  // real parts
  MreResult result() const;
  bool empty() const noexcept { return count_ == 0; }

 private:
  double threshold_;
  double sum_ = 0.0;
  std::size_t count_ = 0;
};

struct MeanStd {
  double mean = 0.0;
  double std = 0.0;
};

MeanStd mean_std(std::span<const double> values);

}  // namespace qfno::eval
