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

#include "qfno/numerics/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "qfno/error.hpp"

namespace qfno::numerics {

namespace {

void require_matrix(const ComplexTensor& a, const char* op) {
  if (a.rank() != 2) {
    throw ValidationError(std::string(op) + ": expected 2-axis tensor, got " +
                          shape_to_string(a.shape()));
  }
}

}  // namespace

ComplexTensor matmul(const ComplexTensor& a, const ComplexTensor& b) {
  require_matrix(a, "matmul");
  require_matrix(b, "matmul");
  const std::size_t n = a.dim(0), k = a.dim(1), m = b.dim(1);
  if (b.dim(0) != k) {
    throw ValidationError("matmul: shape mismatch " + shape_to_string(a.shape()) + " x " +
                          shape_to_string(b.shape()));
  }
  ComplexTensor c({n, m});
  for (std::size_t i = 0; i < n; ++i) {
    Complex* crow = &c[i * m];
    for (std::size_t l = 0; l < k; ++l) {
      const Complex s = a[i * k + l];
      if (s == Complex{}) continue;
      const Complex* brow = &b[l * m];
      for (std::size_t j = 0; j < m; ++j) crow[j] += s * brow[j];
    }
  }
  return c;
}

ComplexTensor matvec(const ComplexTensor& a, const ComplexTensor& x) {
  require_matrix(a, "matvec");
  const std::size_t n = a.dim(0), k = a.dim(1);
  if (x.size() != k) {
    throw ValidationError("matvec: shape mismatch " + shape_to_string(a.shape()) + " x " +
                          shape_to_string(x.shape()));
  }
  ComplexTensor y({n});
  for (std::size_t i = 0; i < n; ++i) {
    Complex acc{};
    const Complex* row = &a[i * k];
    for (std::size_t j = 0; j < k; ++j) acc += row[j] * x[j];
    y[i] = acc;
  }
  return y;
}

ComplexTensor kron(const ComplexTensor& a, const ComplexTensor& b) {
  require_matrix(a, "kron");
  require_matrix(b, "kron");
  const std::size_t ar = a.dim(0), ac = a.dim(1), br = b.dim(0), bc = b.dim(1);
  ComplexTensor out({ar * br, ac * bc});
  for (std::size_t i = 0; i < ar; ++i)
    for (std::size_t j = 0; j < ac; ++j) {
      const Complex s = a.at(i, j);
      for (std::size_t k = 0; k < br; ++k)
        for (std::size_t l = 0; l < bc; ++l) out.at(i * br + k, j * bc + l) = s * b.at(k, l);
    }
  return out;
}

ComplexTensor adjoint(const ComplexTensor& a) {
  require_matrix(a, "adjoint");
  ComplexTensor out({a.dim(1), a.dim(0)});
  for (std::size_t i = 0; i < a.dim(0); ++i)
    for (std::size_t j = 0; j < a.dim(1); ++j) out.at(j, i) = std::conj(a.at(i, j));
  return out;
}

Complex inner(const ComplexTensor& a, const ComplexTensor& b) {
  if (a.size() != b.size()) throw ValidationError("inner: length mismatch");
  Complex acc{};
  for (std::size_t i = 0; i < a.size(); ++i) acc += std::conj(a[i]) * b[i];
  return acc;
}

double hermitian_defect(const ComplexTensor& h) {
  require_matrix(h, "hermitian_defect");
  if (h.dim(0) != h.dim(1)) throw ValidationError("hermitian_defect: matrix is not square");
  double m = 0.0;
  for (std::size_t i = 0; i < h.dim(0); ++i)
    for (std::size_t j = i; j < h.dim(1); ++j)
      m = std::max(m, std::abs(h.at(i, j) - std::conj(h.at(j, i))));
  return m;
}

namespace {

struct Rotation {
  std::size_t p, q;
  double c;
  Complex s;  // sin(theta) e^{i phi}
  double app, aqq;
};

// Plain product; std::complex multiplication adds inf/nan recovery that
// costs a library call per multiply.
inline Complex mul(Complex a, Complex b) {
  return {a.real() * b.real() - a.imag() * b.imag(), a.real() * b.imag() + a.imag() * b.real()};
}

}  // namespace

EighResult eigh(const ComplexTensor& h, EighOptions options) {
  require_matrix(h, "eigh");
  const std::size_t n = h.dim(0);
  if (h.dim(1) != n) throw ValidationError("eigh: matrix is not square");
  if (!all_finite(h)) throw ValidationError("eigh: non-finite entries");
  if (double d = hermitian_defect(h); d > options.hermitian_tolerance) {
    throw ValidationError("eigh: matrix is not Hermitian (defect " + std::to_string(d) + ")");
  }

  // Work on the exactly Hermitian part.
  ComplexTensor a({n, n});
  for (std::size_t i = 0; i < n; ++i) {
    a.at(i, i) = h.at(i, i).real();
    for (std::size_t j = i + 1; j < n; ++j) {
      const Complex v = 0.5 * (h.at(i, j) + std::conj(h.at(j, i)));
      a.at(i, j) = v;
      a.at(j, i) = std::conj(v);
    }
  }
  // Row k of vt is eigenvector k, so column updates of V are contiguous.
  ComplexTensor vt = ComplexTensor::identity(n);

  double frob2 = 0.0;
  for (const auto& v : a.data()) frob2 += std::norm(v);
  const double target = 1e-30 * frob2;

  // Round-robin pairing: each round holds up to n/2 disjoint (p, q) pairs,
  // and a sweep of n - 1 (or n for odd n) rounds visits every pair once.
  // Disjoint rotations commute, so a round is applied as one pass over the
  // rows followed by one pass over the columns.
  const std::size_t players = n + (n % 2);
  std::vector<std::size_t> ring(players);
  std::iota(ring.begin(), ring.end(), 0);
  std::vector<Rotation> round;
  round.reserve(players / 2);

  int sweep = 0;
  for (;; ++sweep) {
    double off2 = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off2 += std::norm(a.at(p, q));
    if (off2 <= target || off2 == 0.0) break;
    if (sweep >= options.max_sweeps) {
      throw NumericError("eigh: no convergence after " + std::to_string(options.max_sweeps) +
                         " sweeps");
    }
    for (std::size_t r = 0; r + 1 < players; ++r) {
      round.clear();
      for (std::size_t k = 0; k < players / 2; ++k) {
        std::size_t p = ring[k], q = ring[players - 1 - k];
        if (p >= n || q >= n) continue;  // odd n: the dummy player sits out
        if (p > q) std::swap(p, q);
        const Complex apq = a.at(p, q);
        const double g = std::abs(apq);
        if (g == 0.0) continue;
        const double app = a.at(p, p).real();
        const double aqq = a.at(q, q).real();
        // Skip rotations that cannot change the diagonal in floating point.
        if (sweep > 3 && std::abs(app) + 1e3 * g == std::abs(app) &&
            std::abs(aqq) + 1e3 * g == std::abs(aqq)) {
          a.at(p, q) = 0.0;
          a.at(q, p) = 0.0;
          continue;
        }
        const Complex phase = apq / g;  // e^{i phi}
        const double theta = (aqq - app) / (2.0 * g);
        double t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        if (theta < 0.0) t = -t;
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double sn = t * c;
        round.push_back({p, q, c, sn * phase, app - t * g, aqq + t * g});
      }
      std::rotate(ring.begin() + 1, ring.end() - 1, ring.end());
      if (round.empty()) continue;

      // rows: A <- G A
      for (const Rotation& j : round) {
        Complex* rp = &a[j.p * n];
        Complex* rq = &a[j.q * n];
        const Complex sc = std::conj(j.s);
        for (std::size_t x = 0; x < n; ++x) {
          const Complex xp = rp[x], xq = rq[x];
          rp[x] = j.c * xp - mul(j.s, xq);
          rq[x] = mul(sc, xp) + j.c * xq;
        }
      }
      // columns: A <- A G^H, and the same update for the eigenvector rows
      for (std::size_t x = 0; x < n; ++x) {
        Complex* row = &a[x * n];
        for (const Rotation& j : round) {
          const Complex xp = row[j.p], xq = row[j.q];
          row[j.p] = j.c * xp - mul(std::conj(j.s), xq);
          row[j.q] = mul(j.s, xp) + j.c * xq;
        }
      }
      for (const Rotation& j : round) {
        Complex* vp = &vt[j.p * n];
        Complex* vq = &vt[j.q * n];
        const Complex sc = std::conj(j.s);
        for (std::size_t x = 0; x < n; ++x) {
          const Complex xp = vp[x], xq = vq[x];
          vp[x] = j.c * xp - mul(sc, xq);
          vq[x] = mul(j.s, xp) + j.c * xq;
        }
        a.at(j.p, j.p) = j.app;
        a.at(j.q, j.q) = j.aqq;
        a.at(j.p, j.q) = 0.0;
        a.at(j.q, j.p) = 0.0;
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    return a.at(i, i).real() < a.at(j, j).real();
  });

  EighResult result;
  result.sweeps = sweep;
  result.eigenvalues.resize(n);
  result.eigenvectors = ComplexTensor({n, n});
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t src = order[k];
    result.eigenvalues[k] = a.at(src, src).real();
    for (std::size_t r = 0; r < n; ++r) result.eigenvectors.at(r, k) = vt[src * n + r];
  }
  return result;
}

}  // namespace qfno::numerics
