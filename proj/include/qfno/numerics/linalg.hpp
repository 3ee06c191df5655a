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
#include <vector>

#include "qfno/numerics/complex_tensor.hpp"

namespace qfno::numerics {

ComplexTensor matmul(const ComplexTensor& a, const ComplexTensor& b);
ComplexTensor matvec(const ComplexTensor& a, const ComplexTensor& x);
ComplexTensor kron(const ComplexTensor& a, const ComplexTensor& b);
ComplexTensor adjoint(const ComplexTensor& a);

// <a|b> = sum conj(a_i) b_i over all entries.
Complex inner(const ComplexTensor& a, const ComplexTensor& b);

// max |H - H^dagger| entrywise; H must be square.
double hermitian_defect(const ComplexTensor& h);

struct EighResult {
  std::vector<double> eigenvalues;  // ascending
  ComplexTensor eigenvectors;       // columns are eigenvectors
  int sweeps = 0;
};

struct EighOptions {
  int max_sweeps = 100;
  double hermitian_tolerance = 1e-10;
};

// Cyclic complex Jacobi eigensolver for Hermitian matrices.
EighResult eigh(const ComplexTensor& h, EighOptions options = {});

}  // namespace qfno::numerics
