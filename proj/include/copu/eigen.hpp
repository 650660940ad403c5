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

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>

#include "copu/matrix.hpp"

namespace copu {

template <std::size_t N>
struct EigenSystem {
  std::array<double, N> values;  // descending
  Matrix<N> vectors;             // column k pairs with values[k]
};

namespace detail {

template <std::size_t N>
double off_diagonal_mass(const Matrix<N>& a) {
  double s = 0.0;
  for (std::size_t r = 0; r < N; ++r)
    for (std::size_t c = 0; c < N; ++c)
      if (r != c) s += std::norm(a(r, c));
  return std::sqrt(s);
}

template <std::size_t N>
double diagonal_mass(const Matrix<N>& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < N; ++i) s += std::norm(a(i, i));
  return std::sqrt(s);
}

// One complex Jacobi rotation annihilating a(p, q). The rotation is
// U = D R with D = diag(.., e^{-i arg a_pq} at q, ..) making the pivot real
// and R the classical real Jacobi rotation; a <- U^H a U, v <- v U.
template <std::size_t N>
void jacobi_rotate(Matrix<N>& a, Matrix<N>& v, std::size_t p, std::size_t q) {
  const Complex apq = a(p, q);
  const double mag = std::abs(apq);
  if (mag == 0.0) return;
  const Complex phase = apq / mag;  // e^{i alpha}
  const double theta = (a(q, q).real() - a(p, p).real()) / (2.0 * mag);
  const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
  const double c = 1.0 / std::sqrt(t * t + 1.0);
  const double s = t * c;

  // U restricted to the (p, q) block.
  const Complex u_pp = c;
  const Complex u_pq = s;
  const Complex u_qp = -s * std::conj(phase);
  const Complex u_qq = c * std::conj(phase);

  // a <- a U (columns p, q)
  for (std::size_t k = 0; k < N; ++k) {
    const Complex akp = a(k, p);
    const Complex akq = a(k, q);
    a(k, p) = akp * u_pp + akq * u_qp;
    a(k, q) = akp * u_pq + akq * u_qq;
  }
  // a <- U^H a (rows p, q)
  for (std::size_t k = 0; k < N; ++k) {
    const Complex apk = a(p, k);
    const Complex aqk = a(q, k);
    a(p, k) = std::conj(u_pp) * apk + std::conj(u_qp) * aqk;
    a(q, k) = std::conj(u_pq) * apk + std::conj(u_qq) * aqk;
  }
  a(p, q) = 0.0;
  a(q, p) = 0.0;
  a(p, p) = a(p, p).real();
  a(q, q) = a(q, q).real();

  for (std::size_t k = 0; k < N; ++k) {
    const Complex vkp = v(k, p);
    const Complex vkq = v(k, q);
    v(k, p) = vkp * u_pp + vkq * u_qp;
    v(k, q) = vkp * u_pq + vkq * u_qq;
  }
}

}  // namespace detail

/// Eigen-decomposition of a Hermitian matrix by cyclic Jacobi sweeps.
///
/// Sweeps stop once the off-diagonal Frobenius mass drops below 1e-14 of the
/// diagonal mass. Throws `Errc::NotHermitian` when `m` is not Hermitian within
/// `eps_herm`.
template <std::size_t N>
EigenSystem<N> hermitian_eigen(const Matrix<N>& m, double eps_herm = Tolerance{}.eps_herm) {
  require_hermitian(m, eps_herm);
  Matrix<N> a = m;
  // Symmetrize so roundoff in the input cannot leak into the rotations.
  for (std::size_t r = 0; r < N; ++r) {
    a(r, r) = a(r, r).real();
    for (std::size_t c = r + 1; c < N; ++c) {
      const Complex avg = 0.5 * (a(r, c) + std::conj(a(c, r)));
      a(r, c) = avg;
      a(c, r) = std::conj(avg);
    }
  }
  Matrix<N> v = Matrix<N>::identity();

  constexpr int kMaxSweeps = 64;
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    const double off = detail::off_diagonal_mass(a);
    if (off == 0.0 || off < 1e-14 * detail::diagonal_mass(a)) break;
    for (std::size_t p = 0; p + 1 < N; ++p)
      for (std::size_t q = p + 1; q < N; ++q) detail::jacobi_rotate(a, v, p, q);
  }

  std::array<std::size_t, N> order;
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t i, std::size_t j) { return a(i, i).real() > a(j, j).real(); });

  EigenSystem<N> out;
  for (std::size_t k = 0; k < N; ++k) {
    out.values[k] = a(order[k], order[k]).real();
    for (std::size_t r = 0; r < N; ++r) out.vectors(r, k) = v(r, order[k]);
  }
  return out;
}

/// Real eigenvalues of a Hermitian matrix, descending.
template <std::size_t N>
std::array<double, N> hermitian_eigenvalues(const Matrix<N>& m,
                                            double eps_herm = Tolerance{}.eps_herm) {
  return hermitian_eigen(m, eps_herm).values;
}

/// Eigenvalues of a density matrix with values in [-eps_psd, 0) clamped to
/// zero. Throws `Errc::NotAState` for larger negative eigenvalues or a trace
/// away from one.
template <std::size_t N>
std::array<double, N> state_spectrum(const Matrix<N>& rho, const Tolerance& tol = {}) {
  auto ev = hermitian_eigenvalues(rho, tol.eps_herm);
  const double tr = trace(rho).real();
  if (std::abs(tr - 1.0) > 1e-10) throw Error(Errc::NotAState, "trace differs from 1");
  for (double& e : ev) {
    if (e < -tol.eps_psd) throw Error(Errc::NotAState, "negative eigenvalue");
    e = std::clamp(e, 0.0, 1.0);
  }
  return ev;
}

inline double shannon_bits(double p) { return p > 0.0 ? -p * std::log2(p) : 0.0; }

/// Von Neumann entropy in bits.
template <std::size_t N>
double von_neumann_entropy(const Matrix<N>& rho, const Tolerance& tol = {}) {
  double s = 0.0;
  for (double e : state_spectrum(rho, tol)) s += shannon_bits(e);
  return s;
}

template <std::size_t N>
double min_eigenvalue(const Matrix<N>& m, double eps_herm = Tolerance{}.eps_herm) {
  return hermitian_eigenvalues(m, eps_herm)[N - 1];
}

template <std::size_t N>
bool is_psd(const Matrix<N>& m, const Tolerance& tol = {}) {
  return min_eigenvalue(m, tol.eps_herm) >= -tol.eps_psd;
}

}  // namespace copu
