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

#include "qfno/states/states.hpp"

#include <cmath>

#include "qfno/error.hpp"

namespace qfno::states {

namespace {

Complex draw_amplitude(numerics::RngStream& stream) {
  const double re = stream.uniform(-1.0, 1.0);
  const double im = stream.uniform(-1.0, 1.0);
  return {re, im};
}

}  // namespace

WaveFunction random_state(std::size_t qubits, numerics::RngStream& stream) {
  if (qubits < 1 || qubits > spin::kMaxQubits) throw ValidationError("random_state: bad qubit count");
  const std::size_t d = std::size_t{1} << qubits;
  WaveFunction psi{ComplexTensor({d}), BasisOrder::kBinary};
  for (std::size_t i = 0; i < d; ++i) psi.amplitudes[i] = draw_amplitude(stream);
  psi.normalize();
  return psi;
}

std::size_t low_energy_support(std::size_t dim, double fraction) {
  if (!(fraction > 0.0 && fraction <= 1.0)) {
    throw ValidationError("low-energy fraction must lie in (0, 1]");
  }
  const double raw = fraction * static_cast<double>(dim);
  // Absorb representation error so 0.25 * 16 stays exactly 4.
  auto support = static_cast<std::size_t>(std::ceil(raw - 1e-9));
  return std::max<std::size_t>(1, std::min(support, dim));
}

WaveFunction low_energy_state(std::size_t qubits, const spin::HamiltonianMatrix& h,
                              double fraction, numerics::RngStream& stream) {
  if (h.qubits() != qubits) throw ValidationError("low_energy_state: Hamiltonian size mismatch");
  const std::size_t d = h.dim();
  const std::size_t support = low_energy_support(d, fraction);
  WaveFunction psi{ComplexTensor({d}), BasisOrder::kBinary};
  const auto& order = h.energy_order();
  for (std::size_t k = 0; k < support; ++k) psi.amplitudes[order[k]] = draw_amplitude(stream);
  psi.normalize();
  return psi;
}

WaveFunction reorder(const WaveFunction& psi, const std::vector<std::size_t>& perm) {
  if (perm.size() != psi.dim()) throw ValidationError("reorder: permutation length mismatch");
  WaveFunction out{ComplexTensor({psi.dim()}),
                   psi.order == BasisOrder::kBinary ? BasisOrder::kEnergy : BasisOrder::kBinary};
  for (std::size_t k = 0; k < perm.size(); ++k) {
    if (perm[k] >= perm.size()) throw ValidationError("reorder: index out of range");
    out.amplitudes[k] = psi.amplitudes[perm[k]];
  }
  return out;
}

WaveFunction to_energy_order(const WaveFunction& psi, const spin::HamiltonianMatrix& h) {
  if (psi.order == BasisOrder::kEnergy) return psi;
  return reorder(psi, h.energy_order());
}

WaveFunction to_binary_order(const WaveFunction& psi, const spin::HamiltonianMatrix& h) {
  if (psi.order == BasisOrder::kBinary) return psi;
  return reorder(psi, h.inverse_energy_order());
}

}  // namespace qfno::states
