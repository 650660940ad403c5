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
#include <cmath>
#include <optional>

#include "copu/channel.hpp"
#include "copu/eigen.hpp"

namespace copu {

/// Sum of |rho_ij| over i != j in the computational basis.
template <std::size_t N>
double l1_coherence(const Matrix<N>& rho, double eps_herm = Tolerance{}.eps_herm) {
  require_hermitian(rho, eps_herm);
  double c = 0.0;
  for (std::size_t r = 0; r < N; ++r)
    for (std::size_t k = 0; k < N; ++k)
      if (r != k) c += std::abs(rho(r, k));
  return c;
}

/// Tr(rho^2), evaluated as the squared Frobenius norm of a Hermitian matrix.
template <std::size_t N>
double purity(const Matrix<N>& rho) {
  double p = 0.0;
  for (const auto& v : rho.data()) p += std::norm(v);
  return p;
}

/// S(diag(rho)) - S(rho) in bits, clipped at zero.
template <std::size_t N>
double rel_entropy_coherence(const Matrix<N>& rho, const Tolerance& tol = {}) {
  const double s = von_neumann_entropy(rho, tol);
  double s_diag = 0.0;
  for (std::size_t i = 0; i < N; ++i) {
    double p = rho(i, i).real();
    if (p < -tol.eps_psd) throw Error(Errc::NotAState, "negative diagonal entry");
    s_diag += shannon_bits(std::clamp(p, 0.0, 1.0));
  }
  return std::max(0.0, s_diag - s);
}

// Closed forms in the canonical affine frame.

/// (|lx + ly| + |lx - ly| + 2 sqrt(tx^2 + ty^2)) / 2; blind to lambda_z, tau_z.
inline double channel_l1_closed(const AffineChannel& ch) {
  const auto& l = ch.lambda;
  return 0.5 * (std::abs(l[0] + l[1]) + std::abs(l[0] - l[1]) +
                2.0 * std::hypot(ch.tau[0], ch.tau[1]));
}

/// (1 + |lambda|^2 + |tau|^2) / 4
inline double channel_purity_closed(const AffineChannel& ch) {
  double s = 1.0;
  for (std::size_t i = 0; i < 3; ++i) s += ch.lambda[i] * ch.lambda[i] + ch.tau[i] * ch.tau[i];
  return 0.25 * s;
}

/// l1 coherence of the reduced output state (I + tau.sigma)/2.
inline double subsystem_coherence(const AffineChannel& ch) { return std::hypot(ch.tau[0], ch.tau[1]); }

/// |C(channel) - C(same lambda, tau = 0) - C(subsystem A)|; zero up to roundoff.
inline double decomposition_residual(const AffineChannel& ch) {
  const AffineChannel unital{ch.lambda, {0.0, 0.0, 0.0}};
  return std::abs(channel_l1_closed(ch) - channel_l1_closed(unital) - subsystem_coherence(ch));
}

/// Wootters concurrence max(0, s1 - s2 - s3 - s4), s_i the descending square
/// roots of the eigenvalues of rho (sy (x) sy) rho* (sy (x) sy).
///
/// The spectrum is taken from the Hermitian matrix sqrt(rho) R~ sqrt(rho),
/// which shares it, so only the Hermitian solver is needed.
inline double concurrence(const Mat4& rho, const Tolerance& tol = {}) {
  const auto es = hermitian_eigen(rho, tol.eps_herm);
  if (std::abs(trace(rho).real() - 1.0) > 1e-10) throw Error(Errc::NotAState, "trace differs from 1");
  if (es.values[3] < -tol.eps_psd) throw Error(Errc::NotAState, "negative eigenvalue");

  Mat4 sqrt_rho;
  for (std::size_t k = 0; k < 4; ++k) {
    const double w = std::sqrt(std::max(0.0, es.values[k]));
    for (std::size_t r = 0; r < 4; ++r)
      for (std::size_t c = 0; c < 4; ++c)
        sqrt_rho(r, c) += w * es.vectors(r, k) * std::conj(es.vectors(c, k));
  }
  const Mat4 yy = kron(pauli(1), pauli(1));
  const Mat4 flipped = yy * conj(rho) * yy;
  Mat4 h = sqrt_rho * flipped * sqrt_rho;
  // Restore exact Hermiticity lost to roundoff in the triple product.
  h = (h + dagger(h)) * 0.5;

  auto ev = hermitian_eigenvalues(h, tol.eps_herm);
  std::array<double, 4> s{};
  for (std::size_t i = 0; i < 4; ++i) s[i] = std::sqrt(std::max(0.0, ev[i]));
  return std::max(0.0, s[0] - s[1] - s[2] - s[3]);
}

struct CoherenceReport {
  double c_l1 = 0.0;
  double c_rel = 0.0;
  double purity = 0.0;
  std::optional<double> c_subsystem;
};

template <std::size_t N>
CoherenceReport coherence_report(const Matrix<N>& rho, const Tolerance& tol = {}) {
  return {l1_coherence(rho, tol.eps_herm), rel_entropy_coherence(rho, tol), purity(rho), std::nullopt};
}

inline CoherenceReport coherence_report(const ChoiMatrix& choi, const Tolerance& tol = {}) {
  auto rep = coherence_report(choi.rho, tol);
  rep.c_subsystem = l1_coherence(subsystem_A(choi), tol.eps_herm);
  return rep;
}

}  // namespace copu
