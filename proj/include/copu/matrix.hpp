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
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <ostream>

#include "copu/error.hpp"

namespace copu {

using Complex = std::complex<double>;
using Vec3 = std::array<double, 3>;
using RealMatrix3 = std::array<Vec3, 3>;

using namespace std::complex_literals;

/// Numerical tolerances shared by every validation in the library.
struct Tolerance {
  double eps_herm = 1e-12;  ///< entrywise Hermiticity
  double eps_psd = 1e-10;   ///< smallest admissible negative eigenvalue
  double eps_tp = 1e-10;    ///< entrywise trace preservation

  void validate() const {
    if (!(eps_herm > 0.0) || !(eps_psd > 0.0) || !(eps_tp > 0.0)) {
      throw Error(Errc::InvalidArgument, "tolerances must be strictly positive");
    }
  }
};

/// Dense square complex matrix with compile-time dimension, row-major.
///
/// States, Kraus operators and Choi matrices are all `Matrix<2>` or
/// `Matrix<4>`; mixing dimensions is a compile error rather than a runtime
/// check.
template <std::size_t N>
class Matrix {
 public:
  static constexpr std::size_t dim = N;

  constexpr Matrix() : data_{} {}

  /// Row-major initializer; missing entries stay zero.
  Matrix(std::initializer_list<std::initializer_list<Complex>> rows) : data_{} {
    std::size_t r = 0;
    for (const auto& row : rows) {
      if (r >= N) break;
      std::size_t c = 0;
      for (const auto& v : row) {
        if (c >= N) break;
        (*this)(r, c++) = v;
      }
      ++r;
    }
  }

  static Matrix identity() {
    Matrix m;
    for (std::size_t i = 0; i < N; ++i) m(i, i) = 1.0;
    return m;
  }

  static Matrix diagonal(const std::array<Complex, N>& d) {
    Matrix m;
    for (std::size_t i = 0; i < N; ++i) m(i, i) = d[i];
    return m;
  }

  Complex& operator()(std::size_t r, std::size_t c) { return data_[r * N + c]; }
  const Complex& operator()(std::size_t r, std::size_t c) const { return data_[r * N + c]; }

  const std::array<Complex, N * N>& data() const { return data_; }

  Matrix& operator+=(const Matrix& o) {
    for (std::size_t i = 0; i < N * N; ++i) data_[i] += o.data_[i];
    return *this;
  }
  Matrix& operator-=(const Matrix& o) {
    for (std::size_t i = 0; i < N * N; ++i) data_[i] -= o.data_[i];
    return *this;
  }
  Matrix& operator*=(Complex s) {
    for (auto& v : data_) v *= s;
    return *this;
  }

  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(Matrix a, Complex s) { return a *= s; }
  friend Matrix operator*(Complex s, Matrix a) { return a *= s; }
  friend Matrix operator*(Matrix a, double s) { return a *= Complex(s); }
  friend Matrix operator*(double s, Matrix a) { return a *= Complex(s); }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    Matrix out;
    for (std::size_t i = 0; i < N; ++i) {
      for (std::size_t k = 0; k < N; ++k) {
        const Complex aik = a(i, k);
        if (aik == Complex{}) continue;
        for (std::size_t j = 0; j < N; ++j) out(i, j) += aik * b(k, j);
      }
    }
    return out;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) { return a.data_ == b.data_; }

  friend std::ostream& operator<<(std::ostream& os, const Matrix& m) {
    for (std::size_t r = 0; r < N; ++r) {
      os << (r == 0 ? "[[" : " [");
      for (std::size_t c = 0; c < N; ++c) {
        os << m(r, c).real() << (m(r, c).imag() < 0 ? "" : "+") << m(r, c).imag() << "i";
        if (c + 1 < N) os << ", ";
      }
      os << (r + 1 == N ? "]]" : "]\n");
    }
    return os;
  }

 private:
  std::array<Complex, N * N> data_;
};

using Mat2 = Matrix<2>;
using Mat4 = Matrix<4>;

template <std::size_t N>
Matrix<N> mat_mul(const Matrix<N>& a, const Matrix<N>& b) {
  return a * b;
}

template <std::size_t N>
Matrix<N> dagger(const Matrix<N>& a) {
  Matrix<N> out;
  for (std::size_t r = 0; r < N; ++r)
    for (std::size_t c = 0; c < N; ++c) out(c, r) = std::conj(a(r, c));
  return out;
}

template <std::size_t N>
Matrix<N> transpose(const Matrix<N>& a) {
  Matrix<N> out;
  for (std::size_t r = 0; r < N; ++r)
    for (std::size_t c = 0; c < N; ++c) out(c, r) = a(r, c);
  return out;
}

template <std::size_t N>
Matrix<N> conj(const Matrix<N>& a) {
  Matrix<N> out;
  for (std::size_t r = 0; r < N; ++r)
    for (std::size_t c = 0; c < N; ++c) out(r, c) = std::conj(a(r, c));
  return out;
}

template <std::size_t N>
Complex trace(const Matrix<N>& a) {
  Complex t{};
  for (std::size_t i = 0; i < N; ++i) t += a(i, i);
  return t;
}

/// Kronecker product; `a` acts on the left (subsystem A) factor.
template <std::size_t N, std::size_t M>
Matrix<N * M> kron(const Matrix<N>& a, const Matrix<M>& b) {
  Matrix<N * M> out;
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j)
      for (std::size_t k = 0; k < M; ++k)
        for (std::size_t l = 0; l < M; ++l) out(i * M + k, j * M + l) = a(i, j) * b(k, l);
  return out;
}

template <std::size_t N>
double max_abs_diff(const Matrix<N>& a, const Matrix<N>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < N * N; ++i) m = std::max(m, std::abs(a.data()[i] - b.data()[i]));
  return m;
}

template <std::size_t N>
bool all_finite(const Matrix<N>& a) {
  return std::all_of(a.data().begin(), a.data().end(), [](const Complex& v) {
    return std::isfinite(v.real()) && std::isfinite(v.imag());
  });
}

template <std::size_t N>
bool is_hermitian(const Matrix<N>& a, double tol = Tolerance{}.eps_herm) {
  for (std::size_t r = 0; r < N; ++r)
    for (std::size_t c = r; c < N; ++c)
      if (std::abs(a(r, c) - std::conj(a(c, r))) > tol) return false;
  return true;
}

template <std::size_t N>
void require_hermitian(const Matrix<N>& a, double tol = Tolerance{}.eps_herm) {
  if (!all_finite(a)) throw Error(Errc::NonFinite, "matrix has non-finite entries");
  if (!is_hermitian(a, tol)) throw Error(Errc::NotHermitian, "matrix is not Hermitian");
}

// Pauli matrices, indexed x=0, y=1, z=2.
inline const Mat2& pauli(std::size_t i) {
  static const std::array<Mat2, 3> p = {
      Mat2{{0.0, 1.0}, {1.0, 0.0}},
      Mat2{{0.0, -1.0i}, {1.0i, 0.0}},
      Mat2{{1.0, 0.0}, {0.0, -1.0}},
  };
  return p.at(i);
}

inline Mat2 hadamard() {
  const double s = 1.0 / std::sqrt(2.0);
  return Mat2{{s, s}, {s, -s}};
}

enum class Subsystem { A, B };

/// Reduced 2x2 state of a two-qubit matrix; `keep` names the factor kept.
inline Mat2 partial_trace(const Mat4& rho, Subsystem keep) {
  Mat2 out;
  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t j = 0; j < 2; ++j) {
      Complex s{};
      for (std::size_t k = 0; k < 2; ++k) {
        s += keep == Subsystem::A ? rho(i * 2 + k, j * 2 + k) : rho(k * 2 + i, k * 2 + j);
      }
      out(i, j) = s;
    }
  }
  return out;
}

/// Transpose of the indices of one factor of a two-qubit matrix.
inline Mat4 partial_transpose(const Mat4& rho, Subsystem on = Subsystem::B) {
  Mat4 out;
  for (std::size_t a = 0; a < 2; ++a)
    for (std::size_t b = 0; b < 2; ++b)
      for (std::size_t c = 0; c < 2; ++c)
        for (std::size_t d = 0; d < 2; ++d) {
          // rho(a b, c d) with A indices a,c and B indices b,d
          if (on == Subsystem::B) {
            out(a * 2 + b, c * 2 + d) = rho(a * 2 + d, c * 2 + b);
          } else {
            out(a * 2 + b, c * 2 + d) = rho(c * 2 + b, a * 2 + d);
          }
        }
  return out;
}

}  // namespace copu
