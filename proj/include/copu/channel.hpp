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

// Qubit channel representations and the conversions between them.
//
// Three views of the same map are supported:
//   KrausChannel   rho -> sum_i K_i rho K_i^H
//   AffineChannel  r -> diag(lambda) r + tau on the Bloch vector
//   ChoiMatrix     (channel (x) id)(|psi-><psi-|) with the singlet as input
//
// The singlet (not |phi+>) is the reference state everywhere. The closed
// forms in metrics.hpp are only valid for this choice.

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "copu/eigen.hpp"
#include "copu/matrix.hpp"

namespace copu {

/// |psi-><psi-| = (I (x) I - sum_i sigma_i (x) sigma_i) / 4
inline Mat4 singlet() {
  Mat4 s = Mat4::identity();
  for (std::size_t i = 0; i < 3; ++i) s -= kron(pauli(i), pauli(i));
  return s * 0.25;
}

class KrausChannel {
 public:
  /// Validates finiteness and sum_i K_i^H K_i = I within `eps_tp`.
  explicit KrausChannel(std::vector<Mat2> ops, const Tolerance& tol = {}) : ops_(std::move(ops)) {
    if (ops_.empty()) throw Error(Errc::InvalidArgument, "a channel needs at least one Kraus operator");
    for (const auto& k : ops_) {
      if (!all_finite(k)) throw Error(Errc::NonFinite, "Kraus operator has non-finite entries");
    }
    const double dev = tp_deviation();
    if (dev > tol.eps_tp) {
      throw Error(Errc::TraceNotPreserved,
                  "sum K^H K deviates from identity by " + std::to_string(dev));
    }
  }

  const std::vector<Mat2>& ops() const { return ops_; }
  std::size_t size() const { return ops_.size(); }

  Mat2 apply(const Mat2& rho) const {
    Mat2 out;
    for (const auto& k : ops_) out += k * rho * dagger(k);
    return out;
  }

  /// max entrywise |sum K^H K - I|
  double tp_deviation() const {
    Mat2 s;
    for (const auto& k : ops_) s += dagger(k) * k;
    return max_abs_diff(s, Mat2::identity());
  }

  /// max entrywise |sum K K^H - I|
  double unital_deviation() const {
    Mat2 s;
    for (const auto& k : ops_) s += k * dagger(k);
    return max_abs_diff(s, Mat2::identity());
  }

 private:
  std::vector<Mat2> ops_;
};

/// Bloch-space image r -> M r + tau with a general 3x3 M.
struct GeneralAffine {
  RealMatrix3 m{};
  Vec3 tau{};
};

/// Canonical affine form: M = diag(lambda).
struct AffineChannel {
  Vec3 lambda{};
  Vec3 tau{};

  bool is_unital(double tol = 0.0) const {
    return std::abs(tau[0]) <= tol && std::abs(tau[1]) <= tol && std::abs(tau[2]) <= tol;
  }
};

struct ChoiMatrix {
  Mat4 rho;
  std::string source;
};

/// Sum_i (K_i (x) I) |psi-><psi-| (K_i (x) I)^H.
inline ChoiMatrix kraus_to_choi(const KrausChannel& ch, std::string source = "kraus") {
  const Mat4 s = singlet();
  const Mat2 id = Mat2::identity();
  Mat4 rho;
  for (const auto& k : ch.ops()) {
    const Mat4 kk = kron(k, id);
    rho += kk * s * dagger(kk);
  }
  return {rho, std::move(source)};
}

/// ((I + tau.sigma) (x) I - sum_i lambda_i sigma_i (x) sigma_i) / 4.
///
/// No positivity requirement; non-CP points produce a non-PSD matrix.
inline ChoiMatrix affine_to_choi(const AffineChannel& ch, std::string source = "affine") {
  Mat2 a = Mat2::identity();
  for (std::size_t i = 0; i < 3; ++i) a += pauli(i) * ch.tau[i];
  Mat4 rho = kron(a, Mat2::identity());
  for (std::size_t i = 0; i < 3; ++i) rho -= kron(pauli(i), pauli(i)) * ch.lambda[i];
  return {rho * 0.25, std::move(source)};
}

/// Choi matrix of a general affine map; sigma_j -> sum_i M_ij sigma_i.
inline ChoiMatrix affine_to_choi(const GeneralAffine& ch, std::string source = "affine") {
  Mat2 a = Mat2::identity();
  for (std::size_t i = 0; i < 3; ++i) a += pauli(i) * ch.tau[i];
  Mat4 rho = kron(a, Mat2::identity());
  for (std::size_t j = 0; j < 3; ++j) {
    Mat2 image;
    for (std::size_t i = 0; i < 3; ++i) image += pauli(i) * ch.m[i][j];
    rho -= kron(image, pauli(j));
  }
  return {rho * 0.25, std::move(source)};
}

/// M_ij = Tr(sigma_i Phi(sigma_j)) / 2, tau_i = Tr(sigma_i Phi(I)) / 2.
inline GeneralAffine kraus_to_affine(const KrausChannel& ch) {
  GeneralAffine out;
  const Mat2 image_id = ch.apply(Mat2::identity());
  for (std::size_t i = 0; i < 3; ++i) {
    out.tau[i] = 0.5 * trace(pauli(i) * image_id).real();
  }
  for (std::size_t j = 0; j < 3; ++j) {
    const Mat2 image = ch.apply(pauli(j));
    for (std::size_t i = 0; i < 3; ++i) out.m[i][j] = 0.5 * trace(pauli(i) * image).real();
  }
  return out;
}

/// Reads the canonical form off a diagonal M. Throws `Errc::NotDiagonal` when
/// any off-diagonal entry exceeds `tol`; callers should then fall back to
/// Choi-based metrics.
inline AffineChannel diagonal_affine(const GeneralAffine& ga, double tol = 1e-10) {
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      if (i != j && std::abs(ga.m[i][j]) > tol) {
        throw Error(Errc::NotDiagonal, "M[" + std::to_string(i) + "][" + std::to_string(j) +
                                           "] = " + std::to_string(ga.m[i][j]));
      }
  return {{ga.m[0][0], ga.m[1][1], ga.m[2][2]}, ga.tau};
}

inline Vec3 apply_channel(const AffineChannel& ch, const Vec3& bloch) {
  const double norm2 = bloch[0] * bloch[0] + bloch[1] * bloch[1] + bloch[2] * bloch[2];
  if (norm2 > 1.0 + 1e-12) throw Error(Errc::InvalidArgument, "Bloch vector outside the unit ball");
  return {ch.lambda[0] * bloch[0] + ch.tau[0], ch.lambda[1] * bloch[1] + ch.tau[1],
          ch.lambda[2] * bloch[2] + ch.tau[2]};
}

/// Reduced state of the channel output factor; (I + tau.sigma)/2 for affine sources.
inline Mat2 subsystem_A(const ChoiMatrix& choi) { return partial_trace(choi.rho, Subsystem::A); }

}  // namespace copu
