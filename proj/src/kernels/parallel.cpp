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

#include <Eigen/Dense>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <vector>

#include "qfno/kernels/kernels.hpp"
#include "qfno/numerics/dft.hpp"

namespace qfno::kernels::parallel {

namespace {

using RowMat = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using ColVec = Eigen::Matrix<Complex, Eigen::Dynamic, 1>;
using DynStride = Eigen::Stride<Eigen::Dynamic, Eigen::Dynamic>;
using MatView = Eigen::Map<RowMat>;
using ConstMatView = Eigen::Map<const RowMat>;
using StridedView = Eigen::Map<RowMat, 0, DynStride>;
using ConstStridedView = Eigen::Map<const RowMat, 0, DynStride>;

ConstMatView view(std::span<const Complex> s, std::size_t rows, std::size_t cols) {
  return ConstMatView(s.data(), static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
}
MatView view(std::span<Complex> s, std::size_t rows, std::size_t cols) {
  return MatView(s.data(), static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
}

// Mode k of a (C, B, K) tensor as a C x B matrix.
ConstStridedView mode_view(std::span<const Complex> s, std::size_t k, std::size_t channels,
                           std::size_t batch, std::size_t modes) {
  return ConstStridedView(s.data() + k, static_cast<Eigen::Index>(channels),
                          static_cast<Eigen::Index>(batch),
                          DynStride(static_cast<Eigen::Index>(batch * modes),
                                    static_cast<Eigen::Index>(modes)));
}
StridedView mode_view(std::span<Complex> s, std::size_t k, std::size_t channels,
                      std::size_t batch, std::size_t modes) {
  return StridedView(s.data() + k, static_cast<Eigen::Index>(channels),
                     static_cast<Eigen::Index>(batch),
                     DynStride(static_cast<Eigen::Index>(batch * modes),
                               static_cast<Eigen::Index>(modes)));
}

// Direct-DFT kernel as an n x n matrix, cached per (n, sign).
const RowMat& twiddles(std::size_t n, int sign) {
  static std::mutex mu;
  static std::map<std::pair<std::size_t, int>, RowMat> cache;
  std::lock_guard lock(mu);
  auto [it, inserted] = cache.try_emplace({n, sign});
  if (inserted) {
    RowMat& t = it->second;
    t.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    const double base = sign * 2.0 * std::numbers::pi / static_cast<double>(n);
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        t(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(k)) =
            std::polar(1.0, base * static_cast<double>((j * k) % n));
  }
  return it->second;
}

}  // namespace

void channel_mix(std::span<const Complex> w, std::span<const Complex> bias,
                 std::span<const Complex> x, std::span<Complex> y, std::size_t out,
                 std::size_t in, std::size_t cols) {
  auto ym = view(y, out, cols);
  ym.noalias() = view(w, out, in) * view(x, in, cols);
  if (!bias.empty()) {
    Eigen::Map<const ColVec> b(bias.data(), static_cast<Eigen::Index>(out));
    ym.colwise() += b;
  }
}

void channel_mix_grad_input(std::span<const Complex> w, std::span<const Complex> gy,
                            std::span<Complex> gx, std::size_t out, std::size_t in,
                            std::size_t cols) {
  view(gx, in, cols).noalias() = view(w, out, in).adjoint() * view(gy, out, cols);
}

void channel_mix_grad_weight(std::span<const Complex> gy, std::span<const Complex> x,
                             std::span<Complex> gw, std::span<Complex> gbias, std::size_t out,
                             std::size_t in, std::size_t cols) {
  const auto gym = view(gy, out, cols);
  view(gw, out, in).noalias() += gym * view(x, in, cols).adjoint();
  if (!gbias.empty()) {
    Eigen::Map<ColVec> gb(gbias.data(), static_cast<Eigen::Index>(out));
    gb += gym.rowwise().sum();
  }
}

void dft_lines(std::span<const Complex> x, std::span<Complex> y, std::size_t lines,
               std::size_t n, int sign, double scale) {
  if (numerics::is_power_of_two(n)) {
    const auto total = static_cast<std::ptrdiff_t>(lines);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t l = 0; l < total; ++l) {
      std::span<Complex> line = y.subspan(static_cast<std::size_t>(l) * n, n);
      std::copy_n(x.begin() + l * static_cast<std::ptrdiff_t>(n), n, line.begin());
      numerics::transform_line(line, sign);
      if (scale != 1.0)
        for (auto& v : line) v *= scale;
    }
    return;
  }
  const RowMat& t = twiddles(n, sign);
  auto ym = view(y, lines, n);
  ym.noalias() = view(x, lines, n) * t;
  if (scale != 1.0) ym *= scale;
}

void spectral_mix(std::span<const Complex> r, std::span<const Complex> x, std::span<Complex> y,
                  std::size_t modes, std::size_t out, std::size_t in, std::size_t batch) {
  const auto total = static_cast<std::ptrdiff_t>(modes);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t k = 0; k < total; ++k) {
    const auto ku = static_cast<std::size_t>(k);
    mode_view(y, ku, out, batch, modes).noalias() =
        view(r.subspan(ku * out * in, out * in), out, in) * mode_view(x, ku, in, batch, modes);
  }
}

void spectral_mix_grad_input(std::span<const Complex> r, std::span<const Complex> gy,
                             std::span<Complex> gx, std::size_t modes, std::size_t out,
                             std::size_t in, std::size_t batch) {
  const auto total = static_cast<std::ptrdiff_t>(modes);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t k = 0; k < total; ++k) {
    const auto ku = static_cast<std::size_t>(k);
    mode_view(gx, ku, in, batch, modes).noalias() =
        view(r.subspan(ku * out * in, out * in), out, in).adjoint() *
        mode_view(gy, ku, out, batch, modes);
  }
}

void spectral_mix_grad_weight(std::span<const Complex> gy, std::span<const Complex> x,
                              std::span<Complex> gr, std::size_t modes, std::size_t out,
                              std::size_t in, std::size_t batch) {
  const auto total = static_cast<std::ptrdiff_t>(modes);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t k = 0; k < total; ++k) {
    const auto ku = static_cast<std::size_t>(k);
    view(gr.subspan(ku * out * in, out * in), out, in).noalias() +=
        mode_view(gy, ku, out, batch, modes) * mode_view(x, ku, in, batch, modes).adjoint();
  }
}

void split_gelu(std::span<const Complex> x, std::span<Complex> y) {
  const auto total = static_cast<std::ptrdiff_t>(x.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < total; ++i) y[i] = {gelu(x[i].real()), gelu(x[i].imag())};
}

void split_gelu_grad(std::span<const Complex> x, std::span<const Complex> gy,
                     std::span<Complex> gx) {
  const auto total = static_cast<std::ptrdiff_t>(x.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < total; ++i) {
    gx[i] = {gelu_grad(x[i].real()) * gy[i].real(), gelu_grad(x[i].imag()) * gy[i].imag()};
  }
}

}  // namespace qfno::kernels::parallel
