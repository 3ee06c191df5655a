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

// Hot loops of the FNO forward and backward passes. Activations use the
// channel-major batch layout (C, B, N): channel, sample, grid point, so a
// pointwise channel map over a whole batch is a single (Cout x Cin) by
// (Cin x B*N) product.
//
// Every kernel exists twice with identical signatures: `reference` is a
// plain serial loop nest kept as the test oracle, `parallel` is the
// OpenMP/Eigen version used in training. Tests pin the two together.

#include <cstddef>
#include <span>
#include <vector>

#include "qfno/numerics/complex_tensor.hpp"

namespace qfno::kernels {

// Retained frequency bins for K of N modes: {0..ceil(K/2)-1} followed by
// {N-floor(K/2)..N-1}. Position p in the truncated axis always maps to the
// same physical frequency whatever N is.
std::vector<std::size_t> mode_band(std::size_t modes, std::size_t n);

double gelu(double x);
double gelu_grad(double x);

#define QFNO_KERNEL_SET                                                                         \
  /* y(out, cols) = w(out, in) * x(in, cols) + bias(out); bias may be empty. */                 \
  void channel_mix(std::span<const Complex> w, std::span<const Complex> bias,                   \
                   std::span<const Complex> x, std::span<Complex> y, std::size_t out,           \
                   std::size_t in, std::size_t cols);                                           \
  /* gx(in, cols) = w^H * gy */                                                                 \
  void channel_mix_grad_input(std::span<const Complex> w, std::span<const Complex> gy,          \
                              std::span<Complex> gx, std::size_t out, std::size_t in,           \
                              std::size_t cols);                                                \
  /* gw += gy * x^H; gbias += row sums of gy (skipped when empty) */                           \
  void channel_mix_grad_weight(std::span<const Complex> gy, std::span<const Complex> x,         \
                               std::span<Complex> gw, std::span<Complex> gbias,                 \
                               std::size_t out, std::size_t in, std::size_t cols);              \
  /* Unnormalized transform of each contiguous length-n line, times scale. */                   \
  void dft_lines(std::span<const Complex> x, std::span<Complex> y, std::size_t lines,           \
                 std::size_t n, int sign, double scale);                                        \
  /* y(out, B, K)[o,b,k] = sum_i r(K, out, in)[k,o,i] x(in, B, K)[i,b,k] */                     \
  void spectral_mix(std::span<const Complex> r, std::span<const Complex> x,                     \
                    std::span<Complex> y, std::size_t modes, std::size_t out, std::size_t in,   \
                    std::size_t batch);                                                         \
  void spectral_mix_grad_input(std::span<const Complex> r, std::span<const Complex> gy,         \
                               std::span<Complex> gx, std::size_t modes, std::size_t out,       \
                               std::size_t in, std::size_t batch);                              \
  /* gr[k,o,i] += sum_b gy[o,b,k] conj(x[i,b,k]) */                                            \
  void spectral_mix_grad_weight(std::span<const Complex> gy, std::span<const Complex> x,        \
                                std::span<Complex> gr, std::size_t modes, std::size_t out,      \
                                std::size_t in, std::size_t batch);                             \
  /* GELU on real and imaginary parts independently. */                                         \
  void split_gelu(std::span<const Complex> x, std::span<Complex> y);                            \
  void split_gelu_grad(std::span<const Complex> x, std::span<const Complex> gy,                 \
                       std::span<Complex> gx);

namespace reference {
QFNO_KERNEL_SET
}  // namespace reference

namespace parallel {
QFNO_KERNEL_SET
}  // namespace parallel

#undef QFNO_KERNEL_SET

}  // namespace qfno::kernels
