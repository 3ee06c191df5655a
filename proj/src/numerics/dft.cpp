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

#include "qfno/numerics/dft.hpp"

#include <cmath>
#include <numbers>
#include <vector>

#include "qfno/error.hpp"

namespace qfno::numerics {

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

namespace {

void fft_radix2(std::span<Complex> a, int sign) {
  const std::size_t n = a.size();
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const double ang = sign * 2.0 * std::numbers::pi / static_cast<double>(len);
    const std::size_t half = len / 2;
    for (std::size_t i = 0; i < n; i += len) {
      for (std::size_t k = 0; k < half; ++k) {
        // Twiddles evaluated directly rather than by recurrence to keep
        // round-off at the 1e-15 level for long transforms.
        const Complex w = std::polar(1.0, ang * static_cast<double>(k));
        const Complex u = a[i + k];
        const Complex v = a[i + k + half] * w;
        a[i + k] = u + v;
        a[i + k + half] = u - v;
      }
    }
  }
}

void dft_direct(std::span<Complex> a, int sign) {
  const std::size_t n = a.size();
  std::vector<Complex> out(n);
  const double base = sign * 2.0 * std::numbers::pi / static_cast<double>(n);
  for (std::size_t k = 0; k < n; ++k) {
    Complex acc{};
    for (std::size_t j = 0; j < n; ++j) {
      acc += a[j] * std::polar(1.0, base * static_cast<double>((j * k) % n));
    }
    out[k] = acc;
  }
  std::copy(out.begin(), out.end(), a.begin());
}

ComplexTensor transform_axis(const ComplexTensor& x, std::size_t axis, int sign, double scale) {
  if (axis >= x.rank()) {
    throw ValidationError("dft: axis " + std::to_string(axis) + " invalid for shape " +
                          shape_to_string(x.shape()));
  }
  const std::size_t n = x.shape()[axis];
  std::size_t inner = 1;
  for (std::size_t a = axis + 1; a < x.rank(); ++a) inner *= x.shape()[a];
  const std::size_t outer = x.size() / (n * inner);

  ComplexTensor out = x;
  std::vector<Complex> line(n);
  for (std::size_t o = 0; o < outer; ++o) {
    for (std::size_t i = 0; i < inner; ++i) {
      const std::size_t base = o * n * inner + i;
      for (std::size_t j = 0; j < n; ++j) line[j] = out[base + j * inner];
      transform_line(line, sign);
      for (std::size_t j = 0; j < n; ++j) out[base + j * inner] = line[j] * scale;
    }
  }
  return out;
}

}  // namespace

void transform_line(std::span<Complex> line, int sign) {
  if (line.size() <= 1) return;
  if (is_power_of_two(line.size())) {
    fft_radix2(line, sign);
  } else {
    dft_direct(line, sign);
  }
}

ComplexTensor dft_forward(const ComplexTensor& x, std::size_t axis) {
  const double n = axis < x.rank() ? static_cast<double>(x.shape()[axis]) : 1.0;
  return transform_axis(x, axis, -1, 1.0 / n);
}

ComplexTensor dft_inverse(const ComplexTensor& x, std::size_t axis) {
  return transform_axis(x, axis, +1, 1.0);
}

}  // namespace qfno::numerics
