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

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <new>
#include <span>
#include <string>
#include <vector>

namespace qfno {

using Complex = std::complex<double>;
using Shape = std::vector<std::size_t>;

// Fixed 64-byte alignment: the vectorized kernels choose their loop split
// from the buffer address, so a stable alignment keeps results bit-identical
// from run to run.
template <typename T>
struct AlignedAllocator {
  using value_type = T;
  static constexpr std::align_val_t kAlignment{64};

  AlignedAllocator() noexcept = default;
  template <typename U>
  AlignedAllocator(const AlignedAllocator<U>&) noexcept {}

  T* allocate(std::size_t n) { return static_cast<T*>(::operator new(n * sizeof(T), kAlignment)); }
  void deallocate(T* p, std::size_t) noexcept { ::operator delete(p, kAlignment); }

  template <typename U>
  bool operator==(const AlignedAllocator<U>&) const noexcept {
    return true;
  }
};

using ComplexStorage = std::vector<Complex, AlignedAllocator<Complex>>;

std::size_t shape_size(const Shape& shape);
std::string shape_to_string(const Shape& shape);

// Dense row-major array of complex doubles with an arbitrary number of axes.
class ComplexTensor {
 public:
  ComplexTensor() = default;
  explicit ComplexTensor(Shape shape);
  ComplexTensor(Shape shape, std::vector<Complex> data);

  static ComplexTensor zeros(Shape shape) { return ComplexTensor(std::move(shape)); }
  static ComplexTensor identity(std::size_t n);
  static ComplexTensor vector(std::initializer_list<Complex> values);
  static ComplexTensor matrix(std::size_t rows, std::size_t cols, std::initializer_list<Complex> values);

  const Shape& shape() const noexcept { return shape_; }
  std::size_t rank() const noexcept { return shape_.size(); }
  std::size_t dim(std::size_t axis) const;
  std::size_t size() const noexcept { return data_.size(); }
  bool empty() const noexcept { return data_.empty(); }

  std::span<Complex> data() noexcept { return data_; }
  std::span<const Complex> data() const noexcept { return data_; }
  ComplexStorage& storage() noexcept { return data_; }
  const ComplexStorage& storage() const noexcept { return data_; }

  Complex& operator[](std::size_t i) { return data_[i]; }
  const Complex& operator[](std::size_t i) const { return data_[i]; }

  // Two-axis element access; no bounds checking beyond the debug assert.
  Complex& at(std::size_t r, std::size_t c) { return data_[r * shape_[1] + c]; }
  const Complex& at(std::size_t r, std::size_t c) const { return data_[r * shape_[1] + c]; }

  // Same data, new shape with an equal element count.
  ComplexTensor reshaped(Shape shape) const;

  ComplexTensor& operator+=(const ComplexTensor& other);
  ComplexTensor& operator-=(const ComplexTensor& other);
  ComplexTensor& operator*=(Complex s);

  bool operator==(const ComplexTensor& other) const = default;

 private:
  Shape shape_;
  ComplexStorage data_;
};

ComplexTensor operator+(ComplexTensor a, const ComplexTensor& b);
ComplexTensor operator-(ComplexTensor a, const ComplexTensor& b);
ComplexTensor operator*(Complex s, ComplexTensor a);

// max_i |a_i - b_i|; shapes must match.
double max_abs_diff(const ComplexTensor& a, const ComplexTensor& b);
double max_abs(const ComplexTensor& a);
// Euclidean norm over all entries.
double norm2(const ComplexTensor& a);
bool all_finite(const ComplexTensor& a);

}  // namespace qfno
