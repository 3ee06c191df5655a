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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "qfno/error.hpp"
#include "qfno/numerics/complex_tensor.hpp"
#include "qfno/numerics/dft.hpp"
#include "qfno/numerics/linalg.hpp"
#include "qfno/numerics/rng.hpp"

using namespace qfno;
using namespace qfno::numerics;

namespace {

ComplexTensor random_tensor(Shape shape, std::uint64_t seed) {
  RngStream rng(seed, 0);
  ComplexTensor t(std::move(shape));
  for (auto& z : t.data()) z = {rng.uniform(-1, 1), rng.uniform(-1, 1)};
  return t;
}

ComplexTensor random_hermitian(std::size_t n, std::uint64_t seed) {
  const ComplexTensor a = random_tensor({n, n}, seed);
  return a + adjoint(a);
}

// Direct summation with the 1/N-forward convention, independent of the library.
std::vector<Complex> naive_dft(const std::vector<Complex>& x, int sign) {
  const std::size_t n = x.size();
  std::vector<Complex> out(n);
  for (std::size_t k = 0; k < n; ++k) {
    Complex acc{};
    for (std::size_t j = 0; j < n; ++j) {
      const double ang = sign * 2.0 * std::numbers::pi * static_cast<double>(j * k % n) / static_cast<double>(n);
      acc += x[j] * std::polar(1.0, ang);
    }
    out[k] = sign < 0 ? acc / static_cast<double>(n) : acc;
  }
  return out;
}

ComplexTensor naive_kron(const ComplexTensor& a, const ComplexTensor& b) {
  const std::size_t ar = a.dim(0), ac = a.dim(1), br = b.dim(0), bc = b.dim(1);
  ComplexTensor out({ar * br, ac * bc});
  for (std::size_t i = 0; i < ar * br; ++i)
    for (std::size_t j = 0; j < ac * bc; ++j) out.at(i, j) = a.at(i / br, j / bc) * b.at(i % br, j % bc);
  return out;
}

}  // namespace

TEST(ComplexTensor, RejectsEmptyAxes) {
  EXPECT_THROW(ComplexTensor(Shape{}), ValidationError);
  EXPECT_THROW(ComplexTensor(Shape{2, 0}), ValidationError);
  EXPECT_THROW(ComplexTensor(Shape{2}, std::vector<Complex>(3)), ValidationError);
}

TEST(ComplexTensor, ReshapeKeepsData) {
  const ComplexTensor t = random_tensor({2, 3}, 1);
  const ComplexTensor r = t.reshaped({3, 2});
  EXPECT_EQ(r.shape(), (Shape{3, 2}));
  for (std::size_t i = 0; i < 6; ++i) EXPECT_EQ(r[i], t[i]);
  EXPECT_THROW(t.reshaped({4}), ValidationError);
}

TEST(Dft, ConstantSignalIsDcOnly) {
  const ComplexTensor x = ComplexTensor::vector({1, 1, 1, 1});
  const ComplexTensor y = dft_forward(x, 0);
  EXPECT_NEAR(std::abs(y[0] - Complex(1, 0)), 0.0, 1e-15);
  for (std::size_t k = 1; k < 4; ++k) EXPECT_NEAR(std::abs(y[k]), 0.0, 1e-15);
}

TEST(Dft, ImpulseHasFlatSpectrum) {
  const ComplexTensor y = dft_forward(ComplexTensor::vector({1, 0, 0, 0}), 0);
  for (std::size_t k = 0; k < 4; ++k) EXPECT_NEAR(std::abs(y[k] - Complex(0.25, 0)), 0.0, 1e-15);
}

TEST(Dft, InverseExamples) {
  const ComplexTensor a = dft_inverse(ComplexTensor::vector({1, 0, 0, 0}), 0);
  for (std::size_t k = 0; k < 4; ++k) EXPECT_NEAR(std::abs(a[k] - Complex(1, 0)), 0.0, 1e-15);
  const ComplexTensor b = dft_inverse(ComplexTensor::vector({0.25, 0.25, 0.25, 0.25}), 0);
  EXPECT_NEAR(std::abs(b[0] - Complex(1, 0)), 0.0, 1e-15);
  for (std::size_t k = 1; k < 4; ++k) EXPECT_NEAR(std::abs(b[k]), 0.0, 1e-15);
}

TEST(Dft, MatchesDirectSummation) {
  for (std::size_t n : {1u, 2u, 3u, 7u, 8u, 15u, 16u, 64u, 150u}) {
    const ComplexTensor x = random_tensor({n}, 10 + n);
    const std::vector<Complex> xv(x.data().begin(), x.data().end());
    const std::vector<Complex> f = naive_dft(xv, -1), g = naive_dft(xv, +1);
    const ComplexTensor fy = dft_forward(x, 0), gy = dft_inverse(x, 0);
    for (std::size_t k = 0; k < n; ++k) {
      EXPECT_NEAR(std::abs(fy[k] - f[k]), 0.0, 1e-12) << "n=" << n;
      EXPECT_NEAR(std::abs(gy[k] - g[k]), 0.0, 1e-10) << "n=" << n;
    }
  }
}

TEST(Dft, RoundTripLengths15And7) {
  for (std::size_t n : {7u, 15u}) {
    const ComplexTensor x = random_tensor({n}, n);
    EXPECT_LE(max_abs_diff(dft_inverse(dft_forward(x, 0), 0), x), 1e-12);
  }
}

TEST(Dft, RoundTripAndParsevalProperty) {
  std::vector<std::size_t> lengths;
  for (std::size_t n = 1; n <= 64; ++n) lengths.push_back(n);
  lengths.push_back(256);
  for (std::size_t n : lengths) {
    const ComplexTensor x = random_tensor({n}, 100 + n);
    const ComplexTensor y = dft_forward(x, 0);
    EXPECT_LE(max_abs_diff(dft_inverse(y, 0), x), 1e-12) << "n=" << n;
    double ex = 0.0, ey = 0.0;
    for (const auto& z : x.data()) ex += std::norm(z);
    for (const auto& z : y.data()) ey += std::norm(z);
    EXPECT_NEAR(ex, static_cast<double>(n) * ey, 1e-10 * std::max(1.0, ex)) << "n=" << n;
  }
}

TEST(Dft, TransformsAlongAnyAxis) {
  const ComplexTensor x = random_tensor({3, 5, 4}, 5);
  for (std::size_t axis = 0; axis < 3; ++axis) {
    const ComplexTensor y = dft_forward(x, axis);
    const std::size_t n = x.dim(axis);
    // Check one line against the direct sum.
    std::vector<Complex> line(n);
    auto idx = [&](std::size_t t) {
      std::size_t i[3] = {1, 2, 3};
      i[axis] = t;
      return (i[0] * 5 + i[1]) * 4 + i[2];
    };
    for (std::size_t t = 0; t < n; ++t) line[t] = x[idx(t)];
    const auto ref = naive_dft(line, -1);
    for (std::size_t t = 0; t < n; ++t) EXPECT_NEAR(std::abs(y[idx(t)] - ref[t]), 0.0, 1e-13);
  }
  EXPECT_THROW(dft_forward(x, 3), ValidationError);
}

TEST(Eigh, PauliX) {
  const EighResult r = eigh(ComplexTensor::matrix(2, 2, {0, 1, 1, 0}));
  EXPECT_NEAR(r.eigenvalues[0], -1.0, 1e-14);
  EXPECT_NEAR(r.eigenvalues[1], 1.0, 1e-14);
}

TEST(Eigh, DiagonalGivesPermutation) {
  ComplexTensor h({4, 4});
  h.at(0, 0) = 2;
  h.at(1, 1) = -2;
  h.at(2, 2) = -2;
  h.at(3, 3) = 2;
  const EighResult r = eigh(h);
  const std::vector<double> want{-2, -2, 2, 2};
  for (std::size_t i = 0; i < 4; ++i) EXPECT_NEAR(r.eigenvalues[i], want[i], 1e-15);
  for (std::size_t j = 0; j < 4; ++j) {
    int ones = 0;
    for (std::size_t i = 0; i < 4; ++i) {
      const double a = std::abs(r.eigenvectors.at(i, j));
      EXPECT_TRUE(a < 1e-15 || std::abs(a - 1.0) < 1e-15);
      ones += a > 0.5;
    }
    EXPECT_EQ(ones, 1);
  }
}

TEST(Eigh, ReconstructionAndUnitarity) {
  for (std::size_t n : {2u, 4u, 16u, 64u, 256u}) {
    const ComplexTensor h = random_hermitian(n, 7 * n);
    const EighResult r = eigh(h);
    for (std::size_t i = 1; i < n; ++i) EXPECT_LE(r.eigenvalues[i - 1], r.eigenvalues[i]);
    ComplexTensor d({n, n});
    for (std::size_t i = 0; i < n; ++i) d.at(i, i) = r.eigenvalues[i];
    const ComplexTensor& v = r.eigenvectors;
    const ComplexTensor rec = matmul(matmul(v, d), adjoint(v));
    EXPECT_LE(max_abs_diff(rec, h), 1e-9 * max_abs(h)) << "n=" << n;
    EXPECT_LE(max_abs_diff(matmul(adjoint(v), v), ComplexTensor::identity(n)), 1e-10) << "n=" << n;
  }
}

TEST(Eigh, RejectsNonHermitian) {
  EXPECT_THROW(eigh(ComplexTensor::matrix(2, 2, {0, 1, 0, 0})), ValidationError);
  EXPECT_THROW(eigh(ComplexTensor({2, 3})), ValidationError);
}

TEST(Eigh, SweepCapRaisesNumericError) {
  EighOptions o;
  o.max_sweeps = 0;
  EXPECT_THROW(eigh(random_hermitian(8, 3), o), NumericError);
}

TEST(Linalg, KronExamples) {
  EXPECT_EQ(kron(ComplexTensor::identity(2), ComplexTensor::identity(2)), ComplexTensor::identity(4));
  const ComplexTensor z = ComplexTensor::matrix(2, 2, {1, 0, 0, -1});
  const ComplexTensor k = kron(z, ComplexTensor::identity(2));
  const std::vector<double> diag{1, 1, -1, -1};
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) EXPECT_EQ(k.at(i, j), Complex(i == j ? diag[i] : 0.0, 0.0));
  EXPECT_EQ(kron(ComplexTensor::identity(2), z).shape(), (Shape{4, 4}));
}

TEST(Linalg, KronAssociativityAndMixedProduct) {
  for (std::uint64_t s = 0; s < 10; ++s) {
    const ComplexTensor a = random_tensor({2, 2}, 4 * s), b = random_tensor({2, 2}, 4 * s + 1),
                        c = random_tensor({2, 2}, 4 * s + 2), d = random_tensor({2, 2}, 4 * s + 3);
    EXPECT_LE(max_abs_diff(kron(kron(a, b), c), kron(a, kron(b, c))), 1e-14);
    EXPECT_LE(max_abs_diff(kron(a, b), naive_kron(a, b)), 1e-15);
    EXPECT_LE(max_abs_diff(matmul(kron(a, b), kron(c, d)), kron(matmul(a, c), matmul(b, d))), 1e-13);
  }
}

TEST(Linalg, ShapeMismatchThrows) {
  EXPECT_THROW(matmul(ComplexTensor({2, 3}), ComplexTensor({2, 3})), ValidationError);
  EXPECT_THROW(matvec(ComplexTensor({2, 3}), ComplexTensor({2})), ValidationError);
}

TEST(Linalg, MatvecMatchesLoop) {
  const ComplexTensor a = random_tensor({3, 4}, 1), x = random_tensor({4}, 2);
  const ComplexTensor y = matvec(a, x);
  for (std::size_t i = 0; i < 3; ++i) {
    Complex acc{};
    for (std::size_t j = 0; j < 4; ++j) acc += a.at(i, j) * x[j];
    EXPECT_NEAR(std::abs(y[i] - acc), 0.0, 1e-15);
  }
}

TEST(Rng, SameSeedSameSequence) {
  RngStream a(42, 3), b(42, 3), c(42, 4);
  bool differs = false;
  for (int i = 0; i < 100; ++i) {
    const auto x = a.next_u64();
    EXPECT_EQ(x, b.next_u64());
    differs |= x != c.next_u64();
  }
  EXPECT_TRUE(differs);
}

TEST(Rng, UniformRangeAndMean) {
  RngStream s(9, 0);
  const auto v = rng_uniform(s, -2.0, 2.0, 100000);
  double mean = 0.0;
  for (double x : v) {
    EXPECT_GE(x, -2.0);
    EXPECT_LT(x, 2.0);
    mean += x;
  }
  EXPECT_NEAR(mean / static_cast<double>(v.size()), 0.0, 0.02);
  EXPECT_THROW(rng_uniform(s, 1.0, 1.0, 3), ValidationError);
}

TEST(Rng, NormalMoments) {
  RngStream s(5, 1);
  double m = 0.0, v = 0.0;
  const int n = 100000;
  for (int i = 0; i < n; ++i) {
    const double x = s.normal();
    m += x;
    v += x * x;
  }
  m /= n;
  v = v / n - m * m;
  EXPECT_NEAR(m, 0.0, 0.02);
  EXPECT_NEAR(v, 1.0, 0.03);
}
