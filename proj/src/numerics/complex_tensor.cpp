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

#include "qfno/numerics/complex_tensor.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "qfno/error.hpp"

namespace qfno {

std::size_t shape_size(const Shape& shape) {
  return std::accumulate(shape.begin(), shape.end(), std::size_t{1}, std::multiplies<>());
}

std::string shape_to_string(const Shape& shape) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < shape.size(); ++i) os << (i ? "," : "") << shape[i];
  os << ')';
  return os.str();
}

namespace {

void check_shape(const Shape& shape) {
  if (shape.empty()) throw ValidationError("tensor shape must have at least one axis");
  for (auto d : shape) {
    if (d == 0) throw ValidationError("tensor axes must be positive: " + shape_to_string(shape));
  }
}

void require_same_shape(const ComplexTensor& a, const ComplexTensor& b, const char* op) {
  if (a.shape() != b.shape()) {
    throw ValidationError(std::string(op) + ": shape mismatch " + shape_to_string(a.shape()) +
                          " vs " + shape_to_string(b.shape()));
  }
}

}  // namespace

ComplexTensor::ComplexTensor(Shape shape) : shape_(std::move(shape)) {
  check_shape(shape_);
  data_.assign(shape_size(shape_), Complex{});
}

ComplexTensor::ComplexTensor(Shape shape, std::vector<Complex> data)
    : shape_(std::move(shape)), data_(data.begin(), data.end()) {
  check_shape(shape_);
  if (shape_size(shape_) != data_.size()) {
    throw ValidationError("tensor data length " + std::to_string(data_.size()) +
                          " does not match shape " + shape_to_string(shape_));
  }
}

ComplexTensor ComplexTensor::identity(std::size_t n) {
  ComplexTensor t({n, n});
  for (std::size_t i = 0; i < n; ++i) t.at(i, i) = 1.0;
  return t;
}

ComplexTensor ComplexTensor::vector(std::initializer_list<Complex> values) {
  return ComplexTensor({values.size()}, std::vector<Complex>(values));
}

ComplexTensor ComplexTensor::matrix(std::size_t rows, std::size_t cols,
                                    std::initializer_list<Complex> values) {
  return ComplexTensor({rows, cols}, std::vector<Complex>(values));
}

std::size_t ComplexTensor::dim(std::size_t axis) const {
  if (axis >= shape_.size()) {
    throw ValidationError("axis " + std::to_string(axis) + " out of range for shape " +
                          shape_to_string(shape_));
  }
  return shape_[axis];
}

ComplexTensor ComplexTensor::reshaped(Shape shape) const {
  check_shape(shape);
  if (shape_size(shape) != data_.size()) {
    throw ValidationError("cannot reshape " + shape_to_string(shape_) + " to " + shape_to_string(shape));
  }
  ComplexTensor out;
  out.shape_ = std::move(shape);
  out.data_ = data_;
  return out;
}

ComplexTensor& ComplexTensor::operator+=(const ComplexTensor& other) {
  require_same_shape(*this, other, "add");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
  return *this;
}

ComplexTensor& ComplexTensor::operator-=(const ComplexTensor& other) {
  require_same_shape(*this, other, "sub");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
  return *this;
}

ComplexTensor& ComplexTensor::operator*=(Complex s) {
  for (auto& v : data_) v *= s;
  return *this;
}

ComplexTensor operator+(ComplexTensor a, const ComplexTensor& b) { return a += b; }
ComplexTensor operator-(ComplexTensor a, const ComplexTensor& b) { return a -= b; }
ComplexTensor operator*(Complex s, ComplexTensor a) { return a *= s; }

double max_abs_diff(const ComplexTensor& a, const ComplexTensor& b) {
  require_same_shape(a, b, "max_abs_diff");
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

double max_abs(const ComplexTensor& a) {
  double m = 0.0;
  for (const auto& v : a.data()) m = std::max(m, std::abs(v));
  return m;
}

double norm2(const ComplexTensor& a) {
  double s = 0.0;
  for (const auto& v : a.data()) s += std::norm(v);
  return std::sqrt(s);
}

bool all_finite(const ComplexTensor& a) {
  return std::all_of(a.data().begin(), a.data().end(),
                     [](const Complex& v) { return std::isfinite(v.real()) && std::isfinite(v.imag()); });
}

}  // namespace qfno
