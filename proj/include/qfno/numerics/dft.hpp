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
#include <span>

#include "qfno/numerics/complex_tensor.hpp"

namespace qfno::numerics {

// Normalization convention: the forward transform carries 1/N and the
// inverse carries none, so X_k = (1/N) sum_j x_j e^{-2 pi i jk/N} and
// x_j = sum_k X_k e^{+2 pi i jk/N}. Retained low modes are then Fourier
// series coefficients that do not depend on the grid length.
ComplexTensor dft_forward(const ComplexTensor& x, std::size_t axis);
ComplexTensor dft_inverse(const ComplexTensor& x, std::size_t axis);

bool is_power_of_two(std::size_t n);

// Unnormalized 1-D transform of a contiguous line, in place. sign = -1 is
// the forward kernel e^{-2 pi i jk/N}, sign = +1 the inverse kernel.
// Radix-2 when the length is a power of two, direct summation otherwise.
void transform_line(std::span<Complex> line, int sign);

}  // namespace qfno::numerics
