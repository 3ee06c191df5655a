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

// Central-difference gradient checks shared by the unit and acceptance
// suites.

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include "qfno/autodiff/tape.hpp"
#include "qfno/fno/model.hpp"
#include "qfno/numerics/rng.hpp"
#include "qfno/train/loss.hpp"

namespace qfno::testing {

struct GradCheck {
  double max_abs_error = 0.0;
  double max_abs_grad = 0.0;
  double relative() const { return max_abs_grad > 0.0 ? max_abs_error / max_abs_grad : max_abs_error; }
};

// loss(tape) records a scalar on the tape using the params; value_only
// evaluates the same scalar for perturbed params.
inline GradCheck check_gradients(const std::vector<autodiff::Param*>& params,
                                 const std::function<autodiff::Var(autodiff::Tape&)>& loss,
                                 const std::function<double()>& value_only, double h = 1e-5) {
  for (auto* p : params) p->zero_grad();
  autodiff::Tape tape;
  tape.backward(loss(tape));
  GradCheck r;
  for (auto* p : params) {
    for (std::size_t i = 0; i < p->value.size(); ++i) {
      const Complex orig = p->value[i];
      double fd[2];
      for (int part = 0; part < 2; ++part) {
        const Complex step = part == 0 ? Complex(h, 0) : Complex(0, h);
        p->value[i] = orig + step;
        const double up = value_only();
        p->value[i] = orig - step;
        const double down = value_only();
        p->value[i] = orig;
        fd[part] = (up - down) / (2 * h);
      }
      const Complex g = p->grad[i];
      r.max_abs_error = std::max({r.max_abs_error, std::abs(g.real() - fd[0]), std::abs(g.imag() - fd[1])});
      r.max_abs_grad = std::max({r.max_abs_grad, std::abs(fd[0]), std::abs(fd[1])});
    }
  }
  return r;
}

inline ComplexTensor random_complex(Shape shape, numerics::RngStream& rng, double scale = 1.0) {
  ComplexTensor t(std::move(shape));
  for (auto& z : t.data()) z = {scale * rng.normal(), scale * rng.normal()};
  return t;
}

// Full model check: random model of the given size, random input and
// target, relative-L2 loss.
inline GradCheck check_model_gradients(std::uint64_t seed, std::size_t blocks, std::size_t width,
                                       std::size_t modes, std::size_t n, std::size_t batch = 2) {
  fno::FnoConfig c;
  c.arch = Arch::kTime;
  c.in_channels = 3;
  c.out_channels = 2;
  c.width = width;
  c.blocks = blocks;
  c.modes = modes;
  c.qubits = 2;
  fno::FnoModel model(c);
  model.initialize(seed);
  numerics::RngStream rng(seed, 77);
  // Biases start at zero; perturb them so their gradients are exercised at
  // a generic point.
  for (auto* p : model.parameters()) {
    if (p->value.rank() == 1) p->value = random_complex(p->value.shape(), rng, 0.3);
  }
  const ComplexTensor input = random_complex({c.in_channels, batch, n}, rng);
  const ComplexTensor target = random_complex({c.out_channels, batch, n}, rng);
  auto loss = [&](autodiff::Tape& t) { return t.rel_l2(model.forward(t, t.constant(input)), target, 1); };
  auto value = [&] { return train::loss_rel_l2(fno::fno_forward_batch(model, input), target, 1); };
  return check_gradients(model.parameters(), loss, value);
}

}  // namespace qfno::testing
