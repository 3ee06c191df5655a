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

#include "qfno/spin/hamiltonian.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "qfno/error.hpp"
#include "qfno/numerics/rng.hpp"

namespace qfno::spin {

const char* model_name(Model m) { return m == Model::kIsing ? "ising" : "heisenberg"; }

Model parse_model(const std::string& s) {
  if (s == "heisenberg") return Model::kHeisenberg;
  if (s == "ising") return Model::kIsing;
  throw ValidationError("unknown model '" + s + "' (expected heisenberg or ising)");
}

SpinChainSpec SpinChainSpec::random(Model model, std::size_t qubits, std::uint64_t seed) {
  SpinChainSpec spec;
  spec.model = model;
  spec.qubits = qubits;
  spec.seed = seed;
  numerics::RngStream rng(seed, kCouplingStream);
  if (model == Model::kHeisenberg) {
    spec.jx = rng.uniform(-2.0, 2.0);
    spec.jy = rng.uniform(-2.0, 2.0);
    spec.jz = rng.uniform(-2.0, 2.0);
    spec.h = rng.uniform(-2.0, 2.0);
  } else {
    spec.jz = rng.uniform(-2.0, 2.0);
    spec.h = rng.uniform(-2.0, 2.0);
  }
  spec.validate();
  return spec;
}

void SpinChainSpec::validate() const {
  if (qubits < kMinQubits || qubits > kMaxQubits) {
    throw ValidationError("qubit count " + std::to_string(qubits) + " outside [" +
                          std::to_string(kMinQubits) + ", " + std::to_string(kMaxQubits) + "]");
  }
  for (double v : {jx, jy, jz, h}) {
    if (!std::isfinite(v)) throw ValidationError("non-finite coupling constant");
  }
  if (model == Model::kIsing && (jx != 0.0 || jy != 0.0)) {
    throw ValidationError("Ising chain takes only jz and h");
  }
}

std::vector<PauliTerm> hamiltonian_terms(const SpinChainSpec& spec) {
  spec.validate();
  const std::size_t n = spec.qubits;
  std::vector<PauliTerm> terms;
  for (std::size_t i = 1; i <= n; ++i) {
    const std::size_t j = i % n + 1;
    if (spec.model == Model::kHeisenberg) {
      terms.push_back({spec.jz, PauliString::pair(n, 'Z', i, j)});
      terms.push_back({spec.jx, PauliString::pair(n, 'X', i, j)});
      terms.push_back({spec.jy, PauliString::pair(n, 'Y', i, j)});
      terms.push_back({spec.h, PauliString::site(n, 'Z', i)});
    } else {
      terms.push_back({spec.jz, PauliString::pair(n, 'Z', i, j)});
      terms.push_back({spec.h, PauliString::site(n, 'X', i)});
    }
  }
  return terms;
}

HamiltonianMatrix::HamiltonianMatrix(SpinChainSpec spec, ComplexTensor matrix)
    : spec_(std::move(spec)), matrix_(std::move(matrix)) {
  if (matrix_.rank() != 2 || matrix_.dim(0) != matrix_.dim(1) ||
      matrix_.dim(0) != (std::size_t{1} << spec_.qubits)) {
    throw ValidationError("Hamiltonian matrix shape does not match qubit count");
  }
  eig_ = numerics::eigh(matrix_);
  order_ = spin::energy_order(matrix_);
  inverse_order_ = invert_permutation(order_);
}

HamiltonianMatrix build_hamiltonian(const SpinChainSpec& spec) {
  const std::size_t d = std::size_t{1} << spec.qubits;
  ComplexTensor h({d, d});
  for (const auto& term : hamiltonian_terms(spec)) {
    if (term.coefficient == 0.0) continue;
    for (std::uint64_t b = 0; b < d; ++b) {
      h.at(term.op.flip(b), b) += term.coefficient * term.op.coefficient(b);
    }
  }
  return HamiltonianMatrix(spec, std::move(h));
}

std::vector<std::size_t> energy_order(const ComplexTensor& h) {
  if (h.rank() != 2 || h.dim(0) != h.dim(1)) throw ValidationError("energy_order: need square matrix");
  std::vector<std::size_t> order(h.dim(0));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return h.at(a, a).real() < h.at(b, b).real();
  });
  return order;
}

std::vector<std::size_t> invert_permutation(const std::vector<std::size_t>& perm) {
  std::vector<std::size_t> inv(perm.size(), perm.size());
  for (std::size_t i = 0; i < perm.size(); ++i) {
    if (perm[i] >= perm.size() || inv[perm[i]] != perm.size()) {
      throw ValidationError("invert_permutation: not a permutation");
    }
    inv[perm[i]] = i;
  }
  return inv;
}

namespace {

constexpr double kNormTolerance = 1e-10;

void require_binary_unit(const WaveFunction& psi) {
  if (psi.order != BasisOrder::kBinary) {
    throw ValidationError("expectation: operators act on binary-ordered states");
  }
  if (std::abs(psi.norm() - 1.0) > kNormTolerance) {
    throw ValidationError("expectation: state is not normalized");
  }
}

}  // namespace

double expectation(const WaveFunction& psi, const ComplexTensor& op) {
  require_binary_unit(psi);
  if (op.rank() != 2 || op.dim(0) != psi.dim() || op.dim(1) != psi.dim()) {
    throw ValidationError("expectation: operator shape mismatch");
  }
  return numerics::inner(psi.amplitudes, numerics::matvec(op, psi.amplitudes)).real();
}

double expectation(const WaveFunction& psi, const PauliString& op) {
  require_binary_unit(psi);
  return op.expectation(psi.amplitudes.data());
}

}  // namespace qfno::spin
