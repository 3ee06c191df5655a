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

#include "qfno/autodiff/tape.hpp"

#include <algorithm>
#include <cmath>

#include "qfno/error.hpp"
#include "qfno/kernels/kernels.hpp"
#include "qfno/numerics/dft.hpp"

namespace qfno::autodiff {

namespace {

struct KernelTable {
  decltype(&kernels::reference::channel_mix) channel_mix;
  decltype(&kernels::reference::channel_mix_grad_input) channel_mix_grad_input;
  decltype(&kernels::reference::channel_mix_grad_weight) channel_mix_grad_weight;
  decltype(&kernels::reference::dft_lines) dft_lines;
  decltype(&kernels::reference::spectral_mix) spectral_mix;
  decltype(&kernels::reference::spectral_mix_grad_input) spectral_mix_grad_input;
  decltype(&kernels::reference::spectral_mix_grad_weight) spectral_mix_grad_weight;
  decltype(&kernels::reference::split_gelu) split_gelu;
  decltype(&kernels::reference::split_gelu_grad) split_gelu_grad;
};

#define QFNO_TABLE(ns)                                                                   \
  KernelTable {                                                                          \
    &ns::channel_mix, &ns::channel_mix_grad_input, &ns::channel_mix_grad_weight,         \
        &ns::dft_lines, &ns::spectral_mix, &ns::spectral_mix_grad_input,                 \
        &ns::spectral_mix_grad_weight, &ns::split_gelu, &ns::split_gelu_grad             \
  }

const KernelTable kParallelTable = QFNO_TABLE(kernels::parallel);
const KernelTable kReferenceTable = QFNO_TABLE(kernels::reference);
#undef QFNO_TABLE

const KernelTable& table(KernelPath p) {
  return p == KernelPath::kReference ? kReferenceTable : kParallelTable;
}

constexpr double kRelL2Floor = 1e-12;

void require_same(const ComplexTensor& a, const ComplexTensor& b, const char* op) {
  if (a.shape() != b.shape()) {
    throw ValidationError(std::string(op) + ": shape mismatch " + shape_to_string(a.shape()) +
                          " vs " + shape_to_string(b.shape()));
  }
}

Shape with_last(const Shape& s, std::size_t last) {
  Shape out = s;
  out.back() = last;
  return out;
}

// Transform along any axis; the last axis goes through the kernel table.
ComplexTensor transform(const KernelTable& kt, const ComplexTensor& x, std::size_t axis, int sign,
                        double scale) {
  if (axis >= x.rank()) {
    throw ValidationError("dft: axis " + std::to_string(axis) + " invalid for shape " +
                          shape_to_string(x.shape()));
  }
  if (axis + 1 == x.rank()) {
    ComplexTensor y(x.shape());
    const std::size_t n = x.shape().back();
    kt.dft_lines(x.data(), y.data(), x.size() / n, n, sign, scale);
    return y;
  }
  const double n = static_cast<double>(x.shape()[axis]);
  ComplexTensor y = sign < 0 ? numerics::dft_forward(x, axis) : numerics::dft_inverse(x, axis);
  const double adjust = sign < 0 ? scale * n : scale;
  if (adjust != 1.0) y *= adjust;
  return y;
}

}  // namespace

Param::Param(std::string n, ComplexTensor v)
    : name(std::move(n)), value(std::move(v)), grad(value.shape()) {}

void Param::zero_grad() {
  if (grad.shape() != value.shape()) {
    grad = ComplexTensor(value.shape());
  } else {
    std::fill(grad.storage().begin(), grad.storage().end(), Complex{});
  }
}

const char* primitive_name(Primitive p) {
  switch (p) {
    case Primitive::kConstant: return "constant";
    case Primitive::kParam: return "param";
    case Primitive::kAdd: return "add";
    case Primitive::kMul: return "mul";
    case Primitive::kScale: return "scale";
    case Primitive::kChannelMix: return "channel_mix";
    case Primitive::kDftForward: return "dft_forward";
    case Primitive::kDftInverse: return "dft_inverse";
    case Primitive::kTruncateModes: return "truncate_modes";
    case Primitive::kPadModes: return "pad_modes";
    case Primitive::kSpectralMix: return "spectral_mix";
    case Primitive::kSplitGelu: return "split_gelu";
    case Primitive::kSumSquares: return "sum_squares";
    case Primitive::kMse: return "mse";
    case Primitive::kRelL2: return "rel_l2";
  }
  return "unknown";
}

Var Tape::push(Primitive kind, ComplexTensor value, std::vector<std::size_t> inputs,
               std::function<void(Tape&, std::size_t)> backward) {
  if (backward_done_) throw ValidationError("tape: record after backward without reset");
  Node node;
  node.kind = kind;
  node.value = std::move(value);
  node.requires_grad = std::any_of(inputs.begin(), inputs.end(),
                                   [this](std::size_t i) { return nodes_[i].requires_grad; });
  node.inputs = std::move(inputs);
  node.backward = std::move(backward);
  nodes_.push_back(std::move(node));
  return Var{nodes_.size() - 1};
}

ComplexTensor& Tape::grad_slot(std::size_t id) {
  Node& n = nodes_[id];
  if (!n.has_grad) {
    n.grad = ComplexTensor(n.value.shape());
    n.has_grad = true;
  }
  return n.grad;
}

void Tape::accumulate(std::size_t id, const ComplexTensor& g) {
  if (!needs_grad(id)) return;
  Node& n = nodes_[id];
  if (!n.has_grad) {
    n.grad = g;
    n.has_grad = true;
  } else {
    n.grad += g;
  }
}

double Tape::scalar(Var v) const {
  const ComplexTensor& t = value(v);
  if (t.size() != 1) throw ValidationError("tape: node is not a scalar");
  return t[0].real();
}

Var Tape::constant(ComplexTensor value) {
  return push(Primitive::kConstant, std::move(value), {}, nullptr);
}

Var Tape::param(Param& p) {
  Var v = push(Primitive::kParam, p.value, {}, nullptr);
  nodes_[v.id].param = &p;
  nodes_[v.id].requires_grad = true;
  return v;
}

Var Tape::add(Var a, Var b) {
  require_same(value(a), value(b), "add");
  return push(Primitive::kAdd, value(a) + value(b), {a.id, b.id}, [a, b](Tape& t, std::size_t self) {
    t.accumulate(a.id, t.grad(self));
    t.accumulate(b.id, t.grad(self));
  });
}

Var Tape::mul(Var a, Var b) {
  require_same(value(a), value(b), "mul");
  ComplexTensor y = value(a);
  for (std::size_t i = 0; i < y.size(); ++i) y[i] *= value(b)[i];
  return push(Primitive::kMul, std::move(y), {a.id, b.id}, [a, b](Tape& t, std::size_t self) {
    const ComplexTensor& g = t.grad(self);
    if (t.needs_grad(a.id)) {
      ComplexTensor ga = g;
      for (std::size_t i = 0; i < ga.size(); ++i) ga[i] *= std::conj(t.value(b)[i]);
      t.accumulate(a.id, ga);
    }
    if (t.needs_grad(b.id)) {
      ComplexTensor gb = g;
      for (std::size_t i = 0; i < gb.size(); ++i) gb[i] *= std::conj(t.value(a)[i]);
      t.accumulate(b.id, gb);
    }
  });
}

Var Tape::scale(Var a, double alpha) {
  return push(Primitive::kScale, alpha * value(a), {a.id}, [a, alpha](Tape& t, std::size_t self) {
    t.accumulate(a.id, alpha * t.grad(self));
  });
}

Var Tape::channel_mix(Var w, std::optional<Var> bias, Var x) {
  const ComplexTensor& wv = value(w);
  const ComplexTensor& xv = value(x);
  if (wv.rank() != 2 || xv.rank() < 1 || xv.shape()[0] != wv.shape()[1]) {
    throw ValidationError("channel_mix: weight " + shape_to_string(wv.shape()) +
                          " does not match input " + shape_to_string(xv.shape()));
  }
  const std::size_t out = wv.shape()[0], in = wv.shape()[1], cols = xv.size() / in;
  if (bias && value(*bias).size() != out) throw ValidationError("channel_mix: bias length mismatch");
  Shape ys = xv.shape();
  ys[0] = out;
  ComplexTensor y(ys);
  const KernelTable& kt = table(path_);
  kt.channel_mix(wv.data(), bias ? value(*bias).data() : std::span<const Complex>{}, xv.data(),
                 y.data(), out, in, cols);
  std::vector<std::size_t> inputs{w.id, x.id};
  if (bias) inputs.push_back(bias->id);
  return push(Primitive::kChannelMix, std::move(y), std::move(inputs),
              [w, bias, x, out, in, cols, &kt](Tape& t, std::size_t self) {
                const ComplexTensor& g = t.grad(self);
                if (t.needs_grad(x.id)) {
                  ComplexTensor gx(t.value(x).shape());
                  kt.channel_mix_grad_input(t.value(w).data(), g.data(), gx.data(), out, in, cols);
                  t.accumulate(x.id, gx);
                }
                const bool gw = t.needs_grad(w.id);
                const bool gb = bias && t.needs_grad(bias->id);
                if (gw || gb) {
                  ComplexTensor scratch_w;
                  std::span<Complex> wslot;
                  if (gw) {
                    wslot = t.grad_slot(w.id).data();
                  } else {
                    scratch_w = ComplexTensor(t.value(w).shape());
                    wslot = scratch_w.data();
                  }
                  std::span<Complex> bslot = gb ? t.grad_slot(bias->id).data() : std::span<Complex>{};
                  kt.channel_mix_grad_weight(g.data(), t.value(x).data(), wslot, bslot, out, in, cols);
                }
              });
}

Var Tape::dft_forward(Var x, std::size_t axis) {
  const KernelTable& kt = table(path_);
  const ComplexTensor& xv = value(x);
  if (axis >= xv.rank()) throw ValidationError("dft_forward: invalid axis");
  const double n = static_cast<double>(xv.shape()[axis]);
  ComplexTensor y = transform(kt, xv, axis, -1, 1.0 / n);
  // Adjoint of (1/N) F is (1/N) F^H.
  return push(Primitive::kDftForward, std::move(y), {x.id}, [x, axis, n, &kt](Tape& t, std::size_t self) {
    t.accumulate(x.id, transform(kt, t.grad(self), axis, +1, 1.0 / n));
  });
}

Var Tape::dft_inverse(Var x, std::size_t axis) {
  const KernelTable& kt = table(path_);
  const ComplexTensor& xv = value(x);
  if (axis >= xv.rank()) throw ValidationError("dft_inverse: invalid axis");
  ComplexTensor y = transform(kt, xv, axis, +1, 1.0);
  return push(Primitive::kDftInverse, std::move(y), {x.id}, [x, axis, &kt](Tape& t, std::size_t self) {
    t.accumulate(x.id, transform(kt, t.grad(self), axis, -1, 1.0));
  });
}

namespace {

ComplexTensor gather_band(const ComplexTensor& x, const std::vector<std::size_t>& band) {
  const std::size_t n = x.shape().back(), k = band.size(), lines = x.size() / n;
  ComplexTensor y(with_last(x.shape(), k));
  for (std::size_t l = 0; l < lines; ++l)
    for (std::size_t m = 0; m < k; ++m) y[l * k + m] = x[l * n + band[m]];
  return y;
}

ComplexTensor scatter_band(const ComplexTensor& x, const std::vector<std::size_t>& band,
                           std::size_t n) {
  const std::size_t k = band.size(), lines = x.size() / k;
  ComplexTensor y(with_last(x.shape(), n));
  for (std::size_t l = 0; l < lines; ++l)
    for (std::size_t m = 0; m < k; ++m) y[l * n + band[m]] = x[l * k + m];
  return y;
}

}  // namespace

Var Tape::truncate_modes(Var x, std::size_t modes) {
  const std::size_t n = value(x).shape().back();
  auto band = kernels::mode_band(modes, n);
  ComplexTensor y = gather_band(value(x), band);
  return push(Primitive::kTruncateModes, std::move(y), {x.id},
              [x, band = std::move(band), n](Tape& t, std::size_t self) {
                t.accumulate(x.id, scatter_band(t.grad(self), band, n));
              });
}

Var Tape::pad_modes(Var x, std::size_t length) {
  const std::size_t k = value(x).shape().back();
  auto band = kernels::mode_band(k, length);
  ComplexTensor y = scatter_band(value(x), band, length);
  return push(Primitive::kPadModes, std::move(y), {x.id},
              [x, band = std::move(band)](Tape& t, std::size_t self) {
                t.accumulate(x.id, gather_band(t.grad(self), band));
              });
}

Var Tape::spectral_mix(Var r, Var x) {
  const ComplexTensor& rv = value(r);
  const ComplexTensor& xv = value(x);
  if (rv.rank() != 3 || xv.rank() < 2 || xv.shape()[0] != rv.shape()[2] ||
      xv.shape().back() != rv.shape()[0]) {
    throw ValidationError("spectral_mix: weights " + shape_to_string(rv.shape()) +
                          " do not match input " + shape_to_string(xv.shape()));
  }
  const std::size_t modes = rv.shape()[0], out = rv.shape()[1], in = rv.shape()[2];
  const std::size_t batch = xv.size() / (in * modes);
  Shape ys = xv.shape();
  ys[0] = out;
  ComplexTensor y(ys);
  const KernelTable& kt = table(path_);
  kt.spectral_mix(rv.data(), xv.data(), y.data(), modes, out, in, batch);
  return push(Primitive::kSpectralMix, std::move(y), {r.id, x.id},
              [r, x, modes, out, in, batch, &kt](Tape& t, std::size_t self) {
                const ComplexTensor& g = t.grad(self);
                if (t.needs_grad(x.id)) {
                  ComplexTensor gx(t.value(x).shape());
                  kt.spectral_mix_grad_input(t.value(r).data(), g.data(), gx.data(), modes, out, in,
                                             batch);
                  t.accumulate(x.id, gx);
                }
                if (t.needs_grad(r.id)) {
                  kt.spectral_mix_grad_weight(g.data(), t.value(x).data(), t.grad_slot(r.id).data(),
                                              modes, out, in, batch);
                }
              });
}

Var Tape::split_gelu(Var x) {
  const KernelTable& kt = table(path_);
  ComplexTensor y(value(x).shape());
  kt.split_gelu(value(x).data(), y.data());
  return push(Primitive::kSplitGelu, std::move(y), {x.id}, [x, &kt](Tape& t, std::size_t self) {
    if (!t.needs_grad(x.id)) return;
    ComplexTensor gx(t.value(x).shape());
    kt.split_gelu_grad(t.value(x).data(), t.grad(self).data(), gx.data());
    t.accumulate(x.id, gx);
  });
}

Var Tape::sum_squares(Var x) {
  double s = 0.0;
  for (const auto& v : value(x).data()) s += std::norm(v);
  return push(Primitive::kSumSquares, ComplexTensor({1}, {Complex(s, 0.0)}), {x.id},
              [x](Tape& t, std::size_t self) {
                const double up = t.grad(self)[0].real();
                t.accumulate(x.id, (2.0 * up) * t.value(x));
              });
}

Var Tape::mse(Var pred, const ComplexTensor& target) {
  require_same(value(pred), target, "mse");
  const double count = static_cast<double>(target.size());
  ComplexTensor diff = value(pred) - target;
  double s = 0.0;
  for (const auto& v : diff.data()) s += std::norm(v);
  return push(Primitive::kMse, ComplexTensor({1}, {Complex(s / count, 0.0)}), {pred.id},
              [pred, diff = std::move(diff), count](Tape& t, std::size_t self) {
                const double up = t.grad(self)[0].real();
                t.accumulate(pred.id, (2.0 * up / count) * diff);
              });
}

Var Tape::rel_l2(Var pred, const ComplexTensor& target, std::size_t batch_axis) {
  require_same(value(pred), target, "rel_l2");
  if (batch_axis >= target.rank()) throw ValidationError("rel_l2: invalid batch axis");
  const std::size_t batch = target.shape()[batch_axis];
  std::size_t inner = 1;
  for (std::size_t a = batch_axis + 1; a < target.rank(); ++a) inner *= target.shape()[a];
  const std::size_t outer = target.size() / (batch * inner);

  ComplexTensor diff = value(pred) - target;
  std::vector<double> dnorm(batch, 0.0), tnorm(batch, 0.0);
  for (std::size_t o = 0; o < outer; ++o)
    for (std::size_t b = 0; b < batch; ++b)
      for (std::size_t i = 0; i < inner; ++i) {
        const std::size_t e = (o * batch + b) * inner + i;
        dnorm[b] += std::norm(diff[e]);
        tnorm[b] += std::norm(target[e]);
      }
  double loss = 0.0;
  for (std::size_t b = 0; b < batch; ++b) {
    dnorm[b] = std::sqrt(dnorm[b]);
    tnorm[b] = std::max(std::sqrt(tnorm[b]), kRelL2Floor);
    loss += dnorm[b] / tnorm[b];
  }
  loss /= static_cast<double>(batch);
  return push(Primitive::kRelL2, ComplexTensor({1}, {Complex(loss, 0.0)}), {pred.id},
              [pred, diff = std::move(diff), dnorm = std::move(dnorm), tnorm = std::move(tnorm),
               outer, batch, inner](Tape& t, std::size_t self) {
                const double up = t.grad(self)[0].real() / static_cast<double>(batch);
                ComplexTensor g(diff.shape());
                for (std::size_t o = 0; o < outer; ++o)
                  for (std::size_t b = 0; b < batch; ++b) {
                    if (dnorm[b] == 0.0) continue;
                    const double f = up / (dnorm[b] * tnorm[b]);
                    for (std::size_t i = 0; i < inner; ++i) {
                      const std::size_t e = (o * batch + b) * inner + i;
                      g[e] = f * diff[e];
                    }
                  }
                t.accumulate(pred.id, g);
              });
}

void Tape::backward(Var loss) {
  if (backward_done_) throw ValidationError("tape: backward called twice without reset");
  if (loss.id >= nodes_.size() || nodes_[loss.id].value.size() != 1) {
    throw ValidationError("tape: backward needs a scalar node");
  }
  backward_done_ = true;
  if (!nodes_[loss.id].requires_grad) return;
  grad_slot(loss.id)[0] = 1.0;
  for (std::size_t id = loss.id + 1; id-- > 0;) {
    Node& n = nodes_[id];
    if (!n.has_grad) continue;
    if (n.param != nullptr) {
      if (n.param->grad.shape() != n.param->value.shape()) n.param->zero_grad();
      n.param->grad += n.grad;
    } else if (n.backward) {
      n.backward(*this, id);
    }
    // Intermediate grads are no longer needed once propagated.
    if (id != loss.id) n.grad = ComplexTensor();
  }
}

void Tape::reset() {
  nodes_.clear();
  backward_done_ = false;
}

}  // namespace qfno::autodiff
