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

#include "qfno/numerics/complex_tensor.hpp"

namespace qfno {

enum class BasisOrder { kBinary, kEnergy };

const char* basis_order_name(BasisOrder o);

// Pure state of n qubits. Qubit 1 is the most significant bit of the basis
// index, matching I^{(i-1)} (x) sigma (x) I^{(n-i)}.
struct WaveFunction {
  ComplexTensor amplitudes;  // shape {2^n}
  BasisOrder order = BasisOrder::kBinary;

  std::size_t dim() const noexcept { return amplitudes.size(); }
  std::size_t qubits() const;
  double norm() const { return norm2(amplitudes); }
  void normalize();
};

}  // namespace qfno
