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

#include "qfno/train/adam.hpp"

#include <cmath>

#include "qfno/error.hpp"

namespace qfno::train {

void adam_step(std::span<autodiff::Param* const> params, AdamState& state, double lr,
               const AdamConfig& config) {
  if (state.first.size() != params.size()) {
    state.first.clear();
    state.second.clear();
    for (const auto* p : params) {
      state.first.emplace_back(p->value.shape());
      state.second.emplace_back(p->value.shape());
    }
    state.step = 0;
  }
  ++state.step;
  const double t = static_cast<double>(state.step);
  const double bc1 = 1.0 - std::pow(config.beta1, t);
  const double bc2 = 1.0 - std::pow(config.beta2, t);
  for (std::size_t k = 0; k < params.size(); ++k) {
    autodiff::Param& p = *params[k];
    if (p.grad.shape() != p.value.shape()) throw ValidationError("adam_step: gradient shape mismatch");
    ComplexTensor& m = state.first[k];
    ComplexTensor& v = state.second[k];
    auto update = [&](double& theta, double g, double& mk, double& vk) {
      mk = config.beta1 * mk + (1.0 - config.beta1) * g;
      vk = config.beta2 * vk + (1.0 - config.beta2) * g * g;
      theta -= lr * (mk / bc1) / (std::sqrt(vk / bc2) + config.eps);
    };
    for (std::size_t i = 0; i < p.value.size(); ++i) {
      double re = p.value[i].real(), im = p.value[i].imag();
      double mre = m[i].real(), mim = m[i].imag(), vre = v[i].real(), vim = v[i].imag();
      update(re, p.grad[i].real(), mre, vre);
      update(im, p.grad[i].imag(), mim, vim);
      p.value[i] = {re, im};
      m[i] = {mre, mim};
      v[i] = {vre, vim};
    }
  }
}

double grad_norm(std::span<autodiff::Param* const> params) {
  double s = 0.0;
  for (const auto* p : params)
    for (const auto& g : p->grad.data()) s += std::norm(g);
  return std::sqrt(s);
}

double clip_grad_norm(std::span<autodiff::Param* const> params, double max_norm) {
  const double norm = grad_norm(params);
  if (norm > max_norm && norm > 0.0) {
    const double f = max_norm / norm;
    for (auto* p : params) p->grad *= f;
  }
  return norm;
}

}  // namespace qfno::train
