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

#include "qfno/train/loss.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "qfno/error.hpp"

namespace qfno::train {

const char* loss_name(LossKind k) { return k == LossKind::kMse ? "mse" : "rel_l2"; }

LossKind parse_loss(const std::string& s) {
  if (s == "rel_l2") return LossKind::kRelL2;
  if (s == "mse") return LossKind::kMse;
  throw ValidationError("unknown loss '" + s + "' (expected rel_l2 or mse)");
}

double loss_rel_l2(const ComplexTensor& pred, const ComplexTensor& target, std::size_t batch_axis) {
  if (pred.shape() != target.shape()) throw ValidationError("loss_rel_l2: shape mismatch");
  if (batch_axis >= target.rank()) throw ValidationError("loss_rel_l2: invalid batch axis");
  const std::size_t batch = target.dim(batch_axis);
  std::size_t inner = 1;
  for (std::size_t a = batch_axis + 1; a < target.rank(); ++a) inner *= target.dim(a);
  const std::size_t outer = target.size() / (batch * inner);
  std::vector<double> num(batch, 0.0), den(batch, 0.0);
  for (std::size_t o = 0; o < outer; ++o)
    for (std::size_t b = 0; b < batch; ++b)
      for (std::size_t i = 0; i < inner; ++i) {
        const std::size_t e = (o * batch + b) * inner + i;
        num[b] += std::norm(pred[e] - target[e]);
        den[b] += std::norm(target[e]);
      }
  double loss = 0.0;
  for (std::size_t b = 0; b < batch; ++b) {
    loss += std::sqrt(num[b]) / std::max(std::sqrt(den[b]), kRelL2Floor);
  }
  return loss / static_cast<double>(batch);
}

double loss_mse(const ComplexTensor& pred, const ComplexTensor& target) {
  if (pred.shape() != target.shape()) throw ValidationError("loss_mse: shape mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < pred.size(); ++i) s += std::norm(pred[i] - target[i]);
  return s / static_cast<double>(pred.size());
}

}  // namespace qfno::train
