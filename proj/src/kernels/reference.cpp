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

#include <cmath>
#include <numbers>

#include "qfno/kernels/kernels.hpp"

namespace qfno::kernels::reference {

void channel_mix(std::span<const Complex> w, std::span<const Complex> bias,
                 std::span<const Complex> x, std::span<Complex> y, std::size_t out,
                 std::size_t in, std::size_t cols) {
  for (std::size_t o = 0; o < out; ++o) {
    for (std::size_t c = 0; c < cols; ++c) {
      Complex acc = bias.empty() ? Complex{} : bias[o];
      for (std::size_t i = 0; i < in; ++i) acc += w[o * in + i] * x[i * cols + c];
      y[o * cols + c] = acc;
    }
  }
}

void channel_mix_grad_input(std::span<const Complex> w, std::span<const Complex> gy,
                            std::span<Complex> gx, std::size_t out, std::size_t in,
                            std::size_t cols) {
  for (std::size_t i = 0; i < in; ++i) {
    for (std::size_t c = 0; c < cols; ++c) {
      Complex acc{};
      for (std::size_t o = 0; o < out; ++o) acc += std::conj(w[o * in + i]) * gy[o * cols + c];
      gx[i * cols + c] = acc;
    }
  }
}

void channel_mix_grad_weight(std::span<const Complex> gy, std::span<const Complex> x,
                             std::span<Complex> gw, std::span<Complex> gbias, std::size_t out,
                             std::size_t in, std::size_t cols) {
  for (std::size_t o = 0; o < out; ++o) {
    for (std::size_t i = 0; i < in; ++i) {
      Complex acc{};
      for (std::size_t c = 0; c < cols; ++c) acc += gy[o * cols + c] * std::conj(x[i * cols + c]);
      gw[o * in + i] += acc;
    }
    if (!gbias.empty()) {
      Complex acc{};
      for (std::size_t c = 0; c < cols; ++c) acc += gy[o * cols + c];
      gbias[o] += acc;
    }
  }
}

void dft_lines(std::span<const Complex> x, std::span<Complex> y, std::size_t lines,
               std::size_t n, int sign, double scale) {
  const double base = sign * 2.0 * std::numbers::pi / static_cast<double>(n);
  for (std::size_t l = 0; l < lines; ++l) {
    for (std::size_t k = 0; k < n; ++k) {
      Complex acc{};
      for (std::size_t j = 0; j < n; ++j) {
        acc += x[l * n + j] * std::polar(1.0, base * static_cast<double>((j * k) % n));
      }
      y[l * n + k] = acc * scale;
    }
  }
}

void spectral_mix(std::span<const Complex> r, std::span<const Complex> x, std::span<Complex> y,
                  std::size_t modes, std::size_t out, std::size_t in, std::size_t batch) {
  for (std::size_t o = 0; o < out; ++o)
    for (std::size_t b = 0; b < batch; ++b)
      for (std::size_t k = 0; k < modes; ++k) {
        Complex acc{};
        for (std::size_t i = 0; i < in; ++i) {
          acc += r[(k * out + o) * in + i] * x[(i * batch + b) * modes + k];
        }
        y[(o * batch + b) * modes + k] = acc;
      }
}

void spectral_mix_grad_input(std::span<const Complex> r, std::span<const Complex> gy,
                             std::span<Complex> gx, std::size_t modes, std::size_t out,
                             std::size_t in, std::size_t batch) {
  for (std::size_t i = 0; i < in; ++i)
    for (std::size_t b = 0; b < batch; ++b)
      for (std::size_t k = 0; k < modes; ++k) {
        Complex acc{};
        for (std::size_t o = 0; o < out; ++o) {
          acc += std::conj(r[(k * out + o) * in + i]) * gy[(o * batch + b) * modes + k];
        }
        gx[(i * batch + b) * modes + k] = acc;
      }
}

void spectral_mix_grad_weight(std::span<const Complex> gy, std::span<const Complex> x,
                              std::span<Complex> gr, std::size_t modes, std::size_t out,
                              std::size_t in, std::size_t batch) {
  for (std::size_t k = 0; k < modes; ++k)
    for (std::size_t o = 0; o < out; ++o)
      for (std::size_t i = 0; i < in; ++i) {
        Complex acc{};
        for (std::size_t b = 0; b < batch; ++b) {
          acc += gy[(o * batch + b) * modes + k] * std::conj(x[(i * batch + b) * modes + k]);
        }
        gr[(k * out + o) * in + i] += acc;
      }
}

void split_gelu(std::span<const Complex> x, std::span<Complex> y) {
  for (std::size_t i = 0; i < x.size(); ++i) y[i] = {gelu(x[i].real()), gelu(x[i].imag())};
}

void split_gelu_grad(std::span<const Complex> x, std::span<const Complex> gy,
                     std::span<Complex> gx) {
  for (std::size_t i = 0; i < x.size(); ++i) {
    gx[i] = {gelu_grad(x[i].real()) * gy[i].real(), gelu_grad(x[i].imag()) * gy[i].imag()};
  }
}

}  // namespace qfno::kernels::reference
