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

#include "qfno/numerics/rng.hpp"

#include <cmath>
#include <numbers>

#include "qfno/error.hpp"

namespace qfno::numerics {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream_id)
    : seed_(seed), stream_id_(stream_id), key_(mix64(mix64(seed + kGolden) ^ (stream_id * 0xD1B54A32D192ED03ULL + 1))) {}

std::uint64_t RngStream::next_u64() {
  const std::uint64_t x = key_ + (counter_++ + 1) * kGolden;
  return mix64(mix64(x) ^ key_);
}

double RngStream::next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

double RngStream::uniform(double lo, double hi) {
  const double v = lo + (hi - lo) * next_unit();
  return v < hi ? v : lo;  // guard the rounding edge so the result stays in [lo, hi)
}

double RngStream::normal() {
  // Box-Muller, one output per pair of draws so the counter stays simple.
  double u1 = next_unit();
  const double u2 = next_unit();
  if (u1 <= 0.0) u1 = 0x1.0p-53;
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

std::uint64_t RngStream::below(std::uint64_t n) {
  if (n == 0) throw ValidationError("RngStream::below: n must be positive");
  // Rejection keeps the draw unbiased.
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  for (;;) {
    const std::uint64_t x = next_u64();
    if (x < limit) return x % n;
  }
}

std::vector<double> rng_uniform(RngStream& stream, double lo, double hi, std::size_t count) {
  if (!(lo < hi)) throw ValidationError("rng_uniform: require lo < hi");
  std::vector<double> out(count);
  for (auto& v : out) v = stream.uniform(lo, hi);
  return out;
}

}  // namespace qfno::numerics
