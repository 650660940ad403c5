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
#include <optional>

#include "copu/channel.hpp"
#include "copu/eigen.hpp"

namespace copu {

/// q_ij = 1 + (-1)^i lx + (-1)^(i+j) ly + (-1)^j lz, stored as {q00, q01, q10, q11}.
/// For a unital channel these are four times the Choi eigenvalues.
struct UnitalCPWitness {
  std::array<double, 4> q{};

  double min() const { return *std::min_element(q.begin(), q.end()); }
  double sum() const { return std::accumulate(q.begin(), q.end(), 0.0); }
};

struct NonunitalCPWitness {
  std::array<double, 4> q{};
  double u = 0.0;
  double qprod = 0.0;
  double tau_norm_sq = 0.0;
  std::optional<Vec3> n_hat;  // empty when tau vanishes
  double bound = 0.0;         // u - sqrt(u^2 - qprod)
  bool radicand_clamped = false;
};

template <typename Witness>
struct CPVerdict {
  bool cp = false;
  Witness witness;
};

inline UnitalCPWitness unital_witness(const Vec3& l) {
  UnitalCPWitness w;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      const double si = i == 0 ? 1.0 : -1.0;
      const double sj = j == 0 ? 1.0 : -1.0;
      w.q[2 * i + j] = 1.0 + si * l[0] + si * sj * l[1] + sj * l[2];
    }
  return w;
}

/// Tetrahedron test: every q_ij >= -eps_psd.
inline CPVerdict<UnitalCPWitness> unital_cp(const Vec3& lambda, const Tolerance& tol = {}) {
  auto w = unital_witness(lambda);
  return {w.min() >= -tol.eps_psd, w};
}

/// Complete positivity of the affine map (lambda, tau):
/// q_ij >= 0 and |tau|^2 <= u - sqrt(u^2 - prod q_ij) with
/// u = 1 - sum lambda_i^2 + 2 sum lambda_i^2 n_i^2, n = tau/|tau|.
/// Width of the band where the closed-form CP bound defers to the Choi spectrum.
inline constexpr double kRootAmbiguity = 1e-6;

namespace detail {

// u - sqrt(u^2 - prod) without cancellation: for u > 0 the conjugate form
// prod / (u + sqrt(u^2 - prod)) keeps full precision when prod << u^2.
inline double smaller_root(double u, double rad, double prod) {
  const double s = std::sqrt(std::max(0.0, rad));
  if (u > 0.0 && u + s > 0.0) return (rad < 0.0 ? u * u : prod) / (u + s);
  return u - s;
}

}  // namespace detail

inline CPVerdict<NonunitalCPWitness> nonunital_cp(const Vec3& lambda, const Vec3& tau,
                                                  const Tolerance& tol = {}) {
  NonunitalCPWitness w;
  const auto uw = unital_witness(lambda);
  w.q = uw.q;
  w.qprod = uw.q[0] * uw.q[1] * uw.q[2] * uw.q[3];
  w.tau_norm_sq = tau[0] * tau[0] + tau[1] * tau[1] + tau[2] * tau[2];
  const double tnorm = std::sqrt(w.tau_norm_sq);

  const bool q_ok = uw.min() >= -tol.eps_psd;
  if (tnorm < 1e-15) {
    // n is undefined; the tau condition degenerates to 0 <= bound.
    w.u = 1.0 - (lambda[0] * lambda[0] + lambda[1] * lambda[1] + lambda[2] * lambda[2]);
    const double rad = w.u * w.u - w.qprod;
    w.radicand_clamped = rad < 0.0;
    w.bound = detail::smaller_root(w.u, rad, w.qprod);
    return {q_ok, w};
  }

  Vec3 n{tau[0] / tnorm, tau[1] / tnorm, tau[2] / tnorm};
  w.n_hat = n;
  double sum_l2 = 0.0;
  double sum_l2n2 = 0.0;
  for (std::size_t i = 0; i < 3; ++i) {
    sum_l2 += lambda[i] * lambda[i];
    sum_l2n2 += lambda[i] * lambda[i] * n[i] * n[i];
  }
  w.u = 1.0 - sum_l2 + 2.0 * sum_l2n2;
  const double rad = w.u * w.u - w.qprod;
  w.radicand_clamped = rad < 0.0;
  w.bound = detail::smaller_root(w.u, rad, w.qprod);
  bool cp = q_ok && w.tau_norm_sq <= w.bound + tol.eps_psd;
  // Near a double root the square root magnifies rounding in the radicand to
  // about sqrt(machine epsilon), so a narrow miss is settled by the Choi spectrum.
  if (q_ok && !cp && w.tau_norm_sq - w.bound <= kRootAmbiguity) {
    cp = min_eigenvalue(affine_to_choi(AffineChannel{lambda, tau}).rho, tol.eps_herm) >= -tol.eps_psd;
  }
  return {cp, w};
}

inline bool is_cp(const AffineChannel& ch, const Tolerance& tol = {}) {
  return nonunital_cp(ch.lambda, ch.tau, tol).cp;
}

/// sum_i K_i K_i^H = I within eps_tp.
inline bool is_unital(const KrausChannel& ch, const Tolerance& tol = {}) {
  return ch.unital_deviation() <= tol.eps_tp;
}

/// lambda_x = lambda_y = tau_x = tau_y = 0, i.e. every output is diagonal.
inline bool is_coherence_breaking(const AffineChannel& ch, double tol = 1e-12) {
  return std::abs(ch.lambda[0]) <= tol && std::abs(ch.lambda[1]) <= tol &&
         std::abs(ch.tau[0]) <= tol && std::abs(ch.tau[1]) <= tol;
}

/// PPT of the Choi state, exact for two qubits.
inline bool is_entanglement_breaking(const ChoiMatrix& choi, const Tolerance& tol = {}) {
  return is_psd(partial_transpose(choi.rho, Subsystem::B), tol);
}

namespace detail {

inline bool columns_single_support(const Mat2& k, double tol) {
  for (std::size_t c = 0; c < 2; ++c) {
    int nonzero = 0;
    for (std::size_t r = 0; r < 2; ++r)
      if (std::abs(k(r, c)) > tol) ++nonzero;
    if (nonzero > 1) return false;
  }
  return true;
}

}  // namespace detail

/// Every column of every Kraus operator has at most one nonzero entry.
inline bool is_incoherent_kraus(const KrausChannel& ch, double tol = 1e-12) {
  return std::all_of(ch.ops().begin(), ch.ops().end(),
                     [&](const Mat2& k) { return detail::columns_single_support(k, tol); });
}

/// Incoherent form holds for both K_i and K_i^H.
inline bool is_strictly_incoherent_kraus(const KrausChannel& ch, double tol = 1e-12) {
  return std::all_of(ch.ops().begin(), ch.ops().end(), [&](const Mat2& k) {
    return detail::columns_single_support(k, tol) && detail::columns_single_support(dagger(k), tol);
  });
}

enum class Degradability { Degradable, AntiDegradable, Undefined, Unsupported };

inline const char* to_string(Degradability d) {
  switch (d) {
    case Degradability::Degradable: return "degradable";
    case Degradability::AntiDegradable: return "anti-degradable";
    case Degradability::Undefined: return "undefined";
    case Degradability::Unsupported: return "unsupported";
  }
  return "?";
}

/// Sign of cos(2 theta) / cos(2 phi) for the two-Kraus family
/// K1 = diag(cos theta, cos phi), K2 = antidiag(sin phi, sin theta).
/// cos(2 phi) = 0 is reported as Undefined.
inline Degradability is_degradable_family(double theta, double phi) {
  const double num = std::cos(2.0 * theta);
  const double den = std::cos(2.0 * phi);
  if (std::abs(den) < 1e-12) return Degradability::Undefined;
  return num / den >= 0.0 ? Degradability::Degradable : Degradability::AntiDegradable;
}

}  // namespace copu
