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

#include "qfno/eval/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "qfno/error.hpp"

namespace qfno::eval {

double overlap_fidelity(std::span<const Complex> a, std::span<const Complex> b) {
  if (a.size() != b.size()) throw ValidationError("fidelity: length mismatch");
  Complex ov{};
  double na = 0.0, nb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ov += std::conj(a[i]) * b[i];
    na += std::norm(a[i]);
    nb += std::norm(b[i]);
  }
  if (na == 0.0 || nb == 0.0) return 0.0;
  return std::clamp(std::norm(ov) / (na * nb), 0.0, 1.0);
}

double fidelity(const WaveFunction& a, const WaveFunction& b) {
  if (a.dim() != b.dim()) throw ValidationError("fidelity: length mismatch");
  if (a.order != b.order) throw ValidationError("fidelity: basis order mismatch");
  if (std::abs(a.norm() - 1.0) > 1e-8) throw ValidationError("fidelity: reference state is not normalized");
  return overlap_fidelity(a.amplitudes.data(), b.amplitudes.data());
}

std::vector<double> column_fidelities(const ComplexTensor& pred, const ComplexTensor& target) {
  if (pred.shape() != target.shape() || pred.rank() != 2) {
    throw ValidationError("column_fidelities: expected matching (C, m) windows");
  }
  const std::size_t c = pred.dim(0), m = pred.dim(1);
  std::vector<double> out(m);
  std::vector<Complex> p(c), t(c);
  for (std::size_t j = 0; j < m; ++j) {
    for (std::size_t i = 0; i < c; ++i) {
      p[i] = pred[i * m + j];
      t[i] = target[i * m + j];
    }
    out[j] = overlap_fidelity(t, p);
  }
  return out;
}

std::vector<double> batch_fidelity(Arch arch, const ComplexTensor& pred, const ComplexTensor& target) {
  if (pred.shape() != target.shape() || pred.rank() != 3) {
    throw ValidationError("batch_fidelity: expected matching (C, B, N) tensors");
  }
  const std::size_t c = pred.dim(0), b = pred.dim(1), n = pred.dim(2);
  std::vector<double> out(b, 0.0);
  if (arch == Arch::kEnergy) {
    for (std::size_t s = 0; s < b; ++s) {
      // single channel: the sample is one contiguous state
      out[s] = overlap_fidelity(std::span(&target[s * n], n), std::span(&pred[s * n], n));
    }
    return out;
  }
  std::vector<Complex> p(c), t(c);
  for (std::size_t s = 0; s < b; ++s) {
    double acc = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t i = 0; i < c; ++i) {
        p[i] = pred[(i * b + s) * n + j];
        t[i] = target[(i * b + s) * n + j];
      }
      acc += overlap_fidelity(t, p);
    }
    out[s] = acc / static_cast<double>(n);
  }
  return out;
}

void normalize_columns(ComplexTensor& w) {
  if (w.rank() != 2 && w.rank() != 3) throw ValidationError("normalize_columns: expected (B, C, m)");
  const std::size_t b = w.rank() == 3 ? w.dim(0) : 1;
  const std::size_t c = w.shape()[w.rank() - 2], m = w.shape().back();
  for (std::size_t s = 0; s < b; ++s)
    for (std::size_t j = 0; j < m; ++j) {
      double nn = 0.0;
      for (std::size_t i = 0; i < c; ++i) nn += std::norm(w[(s * c + i) * m + j]);
      if (nn == 0.0) continue;
      const double inv = 1.0 / std::sqrt(nn);
      for (std::size_t i = 0; i < c; ++i) w[(s * c + i) * m + j] *= inv;
    }
}

MreResult mre(std::span<const double> pred, std::span<const double> truth, double threshold) {
  MreAccumulator acc(threshold);
  acc.add(pred, truth);
  return acc.result();
}

void MreAccumulator::add(std::span<const double> pred, std::span<const double> truth) {
  if (pred.size() != truth.size()) throw ValidationError("mre: length mismatch");
  for (std::size_t i = 0; i < pred.size(); ++i) {
    const double t = std::abs(truth[i]);
    if (t > threshold_) {
      sum_ += std::abs(pred[i] - truth[i]) / t;
      ++count_;
    }
  }
}

void MreAccumulator::add(const ComplexTensor& pred, const ComplexTensor& truth) {
  if (pred.shape() != truth.shape()) throw ValidationError("mre: shape mismatch");
  std::vector<double> p(pred.size()), t(truth.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    p[i] = pred[i].real();
    t[i] = truth[i].real();
  }
  add(p, t);
}

MreResult MreAccumulator::result() const {
  if (count_ == 0) throw ValidationError("mre: no entries above the threshold");
  return {sum_ / static_cast<double>(count_), count_};
}

MeanStd mean_std(std::span<const double> values) {
  if (values.empty()) return {};
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= static_cast<double>(values.size());
  double var = 0.0;
  for (double v : values) var += (v - mean) * (v - mean);
  var /= static_cast<double>(values.size());
  return {mean, std::sqrt(var)};
}

}  // namespace qfno::eval
