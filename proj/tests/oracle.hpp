// Copyright 2026 The CoPu Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Reference computations for the tests. Nothing here calls into copu: the
// Choi matrix is built from explicit state vectors and all metrics are
// plain loops over nested arrays.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <vector>

namespace oracle {

using C = std::complex<double>;
using Op2 = std::array<std::array<C, 2>, 2>;
using Rho4 = std::array<std::array<C, 4>, 4>;

/// sum_i |v_i><v_i| with v_i = (K_i (x) I)(|01> - |10>)/sqrt 2, basis index 2a + b.
inline Rho4 choi(const std::vector<Op2>& kraus) {
  const double s = 1.0 / std::sqrt(2.0);
  std::array<C, 4> psi{0.0, s, -s, 0.0};
  Rho4 rho{};
  for (const auto& k : kraus) {
    std::array<C, 4> v{};
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b)
        for (int a2 = 0; a2 < 2; ++a2) v[2 * a + b] += k[a][a2] * psi[2 * a2 + b];
    for (int r = 0; r < 4; ++r)
      for (int c = 0; c < 4; ++c) rho[r][c] += v[r] * std::conj(v[c]);
  }
  return rho;
}

/// ((I + tau.sigma) (x) I - sum lambda_i sigma_i (x) sigma_i)/4 written out entrywise.
inline Rho4 affine_choi(const std::array<double, 3>& l, const std::array<double, 3>& t) {
  const C i(0.0, 1.0);
  Rho4 r{};
  // A factor (I + tau.sigma)/4 on the output qubit, identity on the reference.
  const C a00 = 1.0 + t[2], a01 = t[0] - i * t[1], a10 = t[0] + i * t[1], a11 = 1.0 - t[2];
  const std::array<std::array<C, 2>, 2> a{{{a00, a01}, {a10, a11}}};
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y)
      for (int b = 0; b < 2; ++b) r[2 * x + b][2 * y + b] += a[x][y];
  // sigma_x (x) sigma_x, sigma_y (x) sigma_y, sigma_z (x) sigma_z.
  r[0][3] -= l[0];
  r[1][2] -= l[0];
  r[2][1] -= l[0];
  r[3][0] -= l[0];
  r[0][3] -= -l[1];
  r[1][2] -= l[1];
  r[2][1] -= l[1];
  r[3][0] -= -l[1];
  r[0][0] -= l[2];
  r[1][1] -= -l[2];
  r[2][2] -= -l[2];
  r[3][3] -= l[2];
  for (auto& row : r)
    for (auto& x : row) x *= 0.25;
  return r;
}

inline double l1(const Rho4& r) {
  double c = 0.0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      if (i != j) c += std::abs(r[i][j]);
  return c;
}

inline double purity(const Rho4& r) {
  C p = 0.0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) p += r[i][j] * r[j][i];
  return p.real();
}

/// Reduced state on the output qubit.
inline std::array<std::array<C, 2>, 2> reduce_a(const Rho4& r) {
  std::array<std::array<C, 2>, 2> out{};
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y) out[x][y] = r[2 * x][2 * y] + r[2 * x + 1][2 * y + 1];
  return out;
}

inline double max_diff(const Rho4& a, const Rho4& b) {
  double d = 0.0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) d = std::max(d, std::abs(a[i][j] - b[i][j]));
  return d;
}

/// Unital tetrahedron as linear inequalities, written independently of the library witness.
inline bool in_tetrahedron(double x, double y, double z, double eps) {
  return 1 + x + y + z >= -eps && 1 + x - y - z >= -eps && 1 - x - y + z >= -eps && 1 - x + y - z >= -eps;
}

/// Maximum of max(|lx|, |ly|) over unital channels at purity p: full grid
/// over (lx, ly) in [-1, 1]^2 with lz = +-sqrt(4p - 1 - lx^2 - ly^2).
inline double unital_cmax_grid(double p, double step = 1e-3) {
  const double r2 = 4.0 * p - 1.0;
  const int n = static_cast<int>(std::lround(1.0 / step));
  double best = -1.0;
  for (int i = -n; i <= n; ++i) {
    const double x = i * step;
    for (int j = -n; j <= n; ++j) {
      const double y = j * step;
      const double z2 = r2 - x * x - y * y;
      if (z2 < 0.0) continue;
      const double c = std::max(std::abs(x), std::abs(y));
      if (c <= best) continue;
      const double z = std::sqrt(z2);
      if (in_tetrahedron(x, y, z, 1e-9) || in_tetrahedron(x, y, -z, 1e-9)) best = c;
    }
  }
  return best;
}

}  // namespace oracle
