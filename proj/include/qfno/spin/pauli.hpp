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
#include <cstdint>
#include <string>
#include <vector>

#include "qfno/numerics/complex_tensor.hpp"
#include "qfno/states/wavefunction.hpp"

namespace qfno::spin {

// Tensor product of single-qubit Paulis stored as bit masks over basis
// indices: P|b> = i^{#Y} (-1)^{popcount(b & z)} |b ^ x>.
class PauliString {
 public:
  PauliString(std::size_t qubits, const std::string& ops);
  // One- or two-site string, sites are 1-based.
  static PauliString site(std::size_t qubits, char op, std::size_t i);
  static PauliString pair(std::size_t qubits, char op, std::size_t i, std::size_t j);

  std::size_t qubits() const noexcept { return qubits_; }
  std::uint64_t x_mask() const noexcept { return x_; }
  std::uint64_t z_mask() const noexcept { return z_; }
  const std::string& ops() const noexcept { return ops_; }

  // Column image: P|b> = coefficient(b) |flip(b)>.
  std::uint64_t flip(std::uint64_t b) const noexcept { return b ^ x_; }
  Complex coefficient(std::uint64_t b) const noexcept;

  ComplexTensor to_dense() const;
  // <psi|P|psi>, real for Hermitian P.
  double expectation(std::span<const Complex> psi) const;

 private:
  std::size_t qubits_;
  std::string ops_;
  std::uint64_t x_ = 0;
  std::uint64_t z_ = 0;
  int y_count_ = 0;
};

std::size_t bit_of_site(std::size_t qubits, std::size_t site);

// Nearest-neighbour AA for A in {X,Y,Z} (periodic), then single-site A, for
// 6n operators in a fixed order.
struct ObservableSet {
  std::size_t qubits = 0;
  std::vector<std::string> labels;
  std::vector<PauliString> operators;

  std::size_t size() const noexcept { return operators.size(); }
};

ObservableSet default_observables(std::size_t qubits);

}  // namespace qfno::spin
