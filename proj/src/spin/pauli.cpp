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

#include "qfno/spin/pauli.hpp"

#include <bit>

#include "qfno/error.hpp"

namespace qfno::spin {

std::size_t bit_of_site(std::size_t qubits, std::size_t site) {
  if (site < 1 || site > qubits) {
    throw ValidationError("site " + std::to_string(site) + " outside 1.." + std::to_string(qubits));
  }
  return qubits - site;
}

PauliString::PauliString(std::size_t qubits, const std::string& ops) : qubits_(qubits), ops_(ops) {
  if (qubits == 0 || qubits > 62) throw ValidationError("PauliString: unsupported qubit count");
  if (ops.size() != qubits) throw ValidationError("PauliString: expected one symbol per qubit");
  for (std::size_t s = 1; s <= qubits; ++s) {
    const std::uint64_t bit = std::uint64_t{1} << bit_of_site(qubits, s);
    switch (ops[s - 1]) {
      case 'I': break;
      case 'X': x_ |= bit; break;
      case 'Z': z_ |= bit; break;
      case 'Y':
        x_ |= bit;
        z_ |= bit;
        ++y_count_;
        break;
      default: throw ValidationError(std::string("PauliString: bad symbol '") + ops[s - 1] + "'");
    }
  }
}

PauliString PauliString::site(std::size_t qubits, char op, std::size_t i) {
  std::string s(qubits, 'I');
  bit_of_site(qubits, i);
  s[i - 1] = op;
  return PauliString(qubits, s);
}

PauliString PauliString::pair(std::size_t qubits, char op, std::size_t i, std::size_t j) {
  if (i == j) throw ValidationError("PauliString::pair: sites must differ");
  std::string s(qubits, 'I');
  bit_of_site(qubits, i);
  bit_of_site(qubits, j);
  s[i - 1] = op;
  s[j - 1] = op;
  return PauliString(qubits, s);
}

Complex PauliString::coefficient(std::uint64_t b) const noexcept {
  static constexpr Complex kIPow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  const double sign = (std::popcount(b & z_) & 1) ? -1.0 : 1.0;
  return sign * kIPow[y_count_ & 3];
}

ComplexTensor PauliString::to_dense() const {
  const std::size_t d = std::size_t{1} << qubits_;
  ComplexTensor m({d, d});
  for (std::uint64_t b = 0; b < d; ++b) m.at(flip(b), b) = coefficient(b);
  return m;
}

double PauliString::expectation(std::span<const Complex> psi) const {
  if (psi.size() != (std::size_t{1} << qubits_)) {
    throw ValidationError("PauliString::expectation: state length mismatch");
  }
  Complex acc{};
  for (std::uint64_t b = 0; b < psi.size(); ++b) {
    acc += std::conj(psi[flip(b)]) * coefficient(b) * psi[b];
  }
  return acc.real();
}

ObservableSet default_observables(std::size_t qubits) {
  if (qubits < 2) throw ValidationError("default_observables: need at least 2 qubits");
  ObservableSet set;
  set.qubits = qubits;
  for (char op : {'X', 'Y', 'Z'}) {
    for (std::size_t i = 1; i <= qubits; ++i) {
      const std::size_t j = i % qubits + 1;
      set.labels.push_back(std::string{op} + std::to_string(i) + op + std::to_string(j));
      set.operators.push_back(PauliString::pair(qubits, op, i, j));
    }
  }
  for (char op : {'X', 'Y', 'Z'}) {
    for (std::size_t i = 1; i <= qubits; ++i) {
      set.labels.push_back(std::string{op} + std::to_string(i));
      set.operators.push_back(PauliString::site(qubits, op, i));
    }
  }
  return set;
}

}  // namespace qfno::spin
