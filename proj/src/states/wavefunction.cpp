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

#include "qfno/states/wavefunction.hpp"

#include <bit>

#include "qfno/error.hpp"

namespace qfno {

const char* basis_order_name(BasisOrder o) {
  return o == BasisOrder::kBinary ? "binary" : "energy";
}

std::size_t WaveFunction::qubits() const {
  const std::size_t d = dim();
  if (d == 0 || !std::has_single_bit(d)) throw ValidationError("wavefunction length is not 2^n");
  return static_cast<std::size_t>(std::countr_zero(d));
}

void WaveFunction::normalize() {
  const double nrm = norm();
  if (nrm == 0.0) throw NumericError("cannot normalize a zero wavefunction");
  amplitudes *= 1.0 / nrm;
}

}  // namespace qfno
