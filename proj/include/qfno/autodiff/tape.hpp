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
#include <optional>
#include <string>
#include <vector>

#include "qfno/numerics/complex_tensor.hpp"

namespace qfno::autodiff {

// A learnable complex tensor. Gradients follow the split-real convention:
// grad = dL/d(re) + i dL/d(im), so for a linear map y = A x the input
// gradient is A^H g_y.
struct Param {
  std::string name;
  ComplexTensor value;
  ComplexTensor grad;

  Param() = default;
  Param(std::string n, ComplexTensor v);
  void zero_grad();
};

struct Var {
  std::size_t id = 0;
};

enum class Primitive {
  kConstant,
  kParam,
  kAdd,
  kMul,
  kScale,
  kChannelMix,
  kDftForward,
  kDftInverse,
  kTruncateModes,
  kPadModes,
  kSpectralMix,
  kSplitGelu,
  kSumSquares,
  kMse,
  kRelL2,
};

const char* primitive_name(Primitive p);

enum class KernelPath { kParallel, kReference };

// Define-by-run tape: every call records one node, nodes are appended in
// topological order and backward() walks them once in reverse.
class Tape {
 public:
  explicit Tape(KernelPath path = KernelPath::kParallel) : path_(path) {}

  Var constant(ComplexTensor value);
  Var param(Param& p);

  Var add(Var a, Var b);
  // Pointwise complex product of equal shapes.
  Var mul(Var a, Var b);
  Var scale(Var a, double alpha);

  // y[o, ...] = sum_i w[o, i] x[i, ...] + bias[o]; w is (Cout, Cin).
  Var channel_mix(Var w, std::optional<Var> bias, Var x);

  // Transforms along `axis` with the 1/N-forward convention of numerics::dft_forward.
  Var dft_forward(Var x, std::size_t axis);
  Var dft_inverse(Var x, std::size_t axis);

  // Keep the symmetric low-frequency band of the last axis, and its adjoint.
  Var truncate_modes(Var x, std::size_t modes);
  Var pad_modes(Var x, std::size_t length);

  // r is (K, Cout, Cin), x is (Cin, ..., K); mixes channels mode by mode.
  Var spectral_mix(Var r, Var x);

  Var split_gelu(Var x);

  // Real scalar reductions, stored as a one-element tensor.
  Var sum_squares(Var x);
  Var mse(Var pred, const ComplexTensor& target);
  // Mean over samples along batch_axis of |pred - target| / max(|target|, 1e-12).
  Var rel_l2(Var pred, const ComplexTensor& target, std::size_t batch_axis);

  const ComplexTensor& value(Var v) const { return nodes_.at(v.id).value; }
  double scalar(Var v) const;
  Primitive kind(Var v) const { return nodes_.at(v.id).kind; }
  std::size_t size() const noexcept { return nodes_.size(); }

  // Populates Param::grad (accumulating) for every param that reaches loss.
  void backward(Var loss);
  void reset();

 private:
  struct Node {
    Primitive kind;
    ComplexTensor value;
    ComplexTensor grad;
    bool has_grad = false;
    bool requires_grad = false;
    Param* param = nullptr;
    std::vector<std::size_t> inputs;
    std::function<void(Tape&, std::size_t)> backward;
  };

  Var push(Primitive kind, ComplexTensor value, std::vector<std::size_t> inputs,
           std::function<void(Tape&, std::size_t)> backward);
  bool needs_grad(std::size_t id) const { return nodes_[id].requires_grad; }
  ComplexTensor& grad_slot(std::size_t id);
  const ComplexTensor& grad(std::size_t id) const { return nodes_[id].grad; }
  void accumulate(std::size_t id, const ComplexTensor& g);

  KernelPath path_;
  std::vector<Node> nodes_;
  bool backward_done_ = false;
};

}  // namespace qfno::autodiff
