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
#include "qfno/numerics/linalg.hpp"
#include "qfno/spin/pauli.hpp"
#include "qfno/states/wavefunction.hpp"

namespace qfno::spin {

enum class Model { kHeisenberg, kIsing };

const char* model_name(Model m);
Model parse_model(const std::string& s);

inline constexpr std::size_t kMinQubits = 2;
inline constexpr std::size_t kMaxQubits = 10;

// Periodic nearest-neighbour chain. Ising uses only jz and h (field along x);
// Heisenberg uses all four (field along z). Dimensionless units, hbar = 1.
struct SpinChainSpec {
  std::size_t qubits = 4;
  Model model = Model::kHeisenberg;
  double jx = 0.0;
  double jy = 0.0;
  double jz = 0.0;
  double h = 0.0;
  std::uint64_t seed = 0;

  // Couplings drawn from U[-2, 2) on a stream reserved for couplings.
  static SpinChainSpec random(Model model, std::size_t qubits, std::uint64_t seed);
  void validate() const;
};

// Stream id reserved for coupling draws; sample streams use their index.
inline constexpr std::uint64_t kCouplingStream = ~std::uint64_t{0};

struct PauliTerm {
  double coefficient;
  PauliString op;
};

// The literal sum over i = 1..n with sigma_{n+1} = sigma_1, so the single
// bond of a 2-site chain is counted twice.
std::vector<PauliTerm> hamiltonian_terms(const SpinChainSpec& spec);

class HamiltonianMatrix {
 public:
  HamiltonianMatrix(SpinChainSpec spec, ComplexTensor matrix);

  const SpinChainSpec& spec() const noexcept { return spec_; }
  std::size_t qubits() const noexcept { return spec_.qubits; }
  std::size_t dim() const noexcept { return matrix_.dim(0); }
  const ComplexTensor& matrix() const noexcept { return matrix_; }
  const std::vector<double>& eigenvalues() const noexcept { return eig_.eigenvalues; }
  const ComplexTensor& eigenvectors() const noexcept { return eig_.eigenvectors; }
  // energy_order()[k] is the binary index of the k-th lowest diagonal energy.
  const std::vector<std::size_t>& energy_order() const noexcept { return order_; }
  const std::vector<std::size_t>& inverse_energy_order() const noexcept { return inverse_order_; }

 private:
  SpinChainSpec spec_;
  ComplexTensor matrix_;
  numerics::EighResult eig_;
  std::vector<std::size_t> order_;
  std::vector<std::size_t> inverse_order_;
};

HamiltonianMatrix build_hamiltonian(const SpinChainSpec& spec);

// Stable sort of basis indices by Re(H_ii); ties keep the original order.
std::vector<std::size_t> energy_order(const ComplexTensor& h);
std::vector<std::size_t> invert_permutation(const std::vector<std::size_t>& perm);

// <psi|O|psi> for a binary-ordered, unit-norm psi. The imaginary part is
// discarded.
double expectation(const WaveFunction& psi, const ComplexTensor& op);
double expectation(const WaveFunction& psi, const PauliString& op);

}  // namespace qfno::spin
