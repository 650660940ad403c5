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

// Validated constructors for the named qubit channel families. Each returns
// the channel together with a closed-form (coherence, purity) prediction.
//
// Predictions marked trusted agree with the Choi matrix to 1e-9. Where the
// published closed form disagrees with the Choi matrix, the published value
// is kept separately in `published_claim` (trusted = false) so reports can show
// both.

#include <array>
#include <cmath>
#include <map>
#include <numbers>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "copu/channel.hpp"
#include "copu/metrics.hpp"
#include "copu/positivity.hpp"

namespace copu {

enum class Family {
  FIO1,
  FIO2,
  FIO3,
  FIO4,
  GIO,
  IO,
  SIO,
  PIO1,
  PIO2,
  PIO3,
  PIO4,
  PIO5,
  PIO6,
  CPO,
  CNC_FULL,
  CNC_INC,
  CMC,
  TWO_PARAM,
  AD,
  BIT_FLIP,
  BIT_PHASE_FLIP,
  PHASE_FLIP,
  DECOHERENCE,
  DEPOLARIZING,
  HOMOGENIZATION,
  UNITAL_RANDOM,
  NONUNITAL_RANDOM,
};

inline constexpr std::array<Family, 27> kAllFamilies = {
    Family::FIO1,        Family::FIO2,          Family::FIO3,           Family::FIO4,
    Family::GIO,         Family::IO,            Family::SIO,            Family::PIO1,
    Family::PIO2,        Family::PIO3,          Family::PIO4,           Family::PIO5,
    Family::PIO6,        Family::CPO,           Family::CNC_FULL,       Family::CNC_INC,
    Family::CMC,         Family::TWO_PARAM,     Family::AD,             Family::BIT_FLIP,
    Family::BIT_PHASE_FLIP, Family::PHASE_FLIP, Family::DECOHERENCE,    Family::DEPOLARIZING,
    Family::HOMOGENIZATION, Family::UNITAL_RANDOM, Family::NONUNITAL_RANDOM,
};

inline std::string_view family_name(Family f) {
  switch (f) {
    case Family::FIO1: return "fio1";
    case Family::FIO2: return "fio2";
    case Family::FIO3: return "fio3";
    case Family::FIO4: return "fio4";
    case Family::GIO: return "gio";
    case Family::IO: return "io";
    case Family::SIO: return "sio";
    case Family::PIO1: return "pio1";
    case Family::PIO2: return "pio2";
    case Family::PIO3: return "pio3";
    case Family::PIO4: return "pio4";
    case Family::PIO5: return "pio5";
    case Family::PIO6: return "pio6";
    case Family::CPO: return "cpo";
    case Family::CNC_FULL: return "cnc_full";
    case Family::CNC_INC: return "cnc_incoherent";
    case Family::CMC: return "cmc";
    case Family::TWO_PARAM: return "two_param";
    case Family::AD: return "amplitude_damping";
    case Family::BIT_FLIP: return "bit_flip";
    case Family::BIT_PHASE_FLIP: return "bit_phase_flip";
    case Family::PHASE_FLIP: return "phase_flip";
    case Family::DECOHERENCE: return "decoherence";
    case Family::DEPOLARIZING: return "depolarizing";
    case Family::HOMOGENIZATION: return "homogenization";
    case Family::UNITAL_RANDOM: return "unital";
    case Family::NONUNITAL_RANDOM: return "nonunital";
  }
  return "?";
}

inline std::optional<Family> parse_family(std::string_view name) {
  for (Family f : kAllFamilies)
    if (family_name(f) == name) return f;
  return std::nullopt;
}

inline Family family_or_throw(std::string_view name) {
  if (auto f = parse_family(name)) return *f;
  throw Error(Errc::UnknownFamily, std::string(name));
}

using Params = std::map<std::string, double>;

struct FamilySpec {
  Family family;
  Params params;
};

struct Prediction {
  std::optional<double> c_l1;
  std::optional<double> purity;
  std::string provenance;
  bool trusted = true;
};

template <typename Channel>
struct FamilyChannel {
  Channel channel;
  Prediction prediction;
  std::optional<Prediction> published_claim;
  std::optional<bool> incoherence_flag;
};

using KrausFamily = FamilyChannel<KrausChannel>;
using AffineFamily = FamilyChannel<AffineChannel>;

/// Parameter keys, in CSV column order.
inline std::vector<std::string> family_param_keys(Family f) {
  switch (f) {
    case Family::FIO1:
    case Family::FIO2:
      return {"a1_re", "a1_im", "b1_re", "b1_im", "a2_re", "a2_im", "b2_re", "b2_im"};
    case Family::FIO3:
    case Family::FIO4:
    case Family::GIO:
      return {"c1_re", "c1_im", "c2_re", "c2_im", "d1_re", "d1_im", "d2_re", "d2_im"};
    case Family::IO:
      return {"a1", "a2", "a3", "a4", "a5", "b1_re", "b1_im", "b2_re", "b2_im",
              "b3_re", "b3_im", "b4_re", "b4_im"};
    case Family::SIO:
      return {"a1", "a2", "a3", "a4", "b1_re", "b1_im", "b2_re", "b2_im"};
    case Family::PIO1:
    case Family::PIO2:
    case Family::PIO3:
    case Family::PIO4:
    case Family::PIO5:
    case Family::PIO6:
      return {"theta1", "theta2", "phi1", "phi2"};
    case Family::CPO: return {"swap", "phase1", "phase2"};
    case Family::CNC_FULL: return {"theta", "phi", "xi", "eta"};
    case Family::CNC_INC: return {"theta", "phi", "chi"};
    case Family::CMC: return {"theta1", "theta2", "phi1", "phi2"};
    case Family::TWO_PARAM: return {"theta", "phi"};
    case Family::AD: return {"eta"};
    case Family::BIT_FLIP:
    case Family::BIT_PHASE_FLIP:
    case Family::PHASE_FLIP: return {"theta"};
    case Family::DECOHERENCE:
    case Family::DEPOLARIZING: return {"t_over_T"};
    case Family::HOMOGENIZATION: return {"t", "T1", "T2", "omega"};
    case Family::UNITAL_RANDOM: return {"lambda_x", "lambda_y", "lambda_z"};
    case Family::NONUNITAL_RANDOM:
      return {"lambda_x", "lambda_y", "lambda_z", "tau_x", "tau_y", "tau_z"};
  }
  return {};
}

namespace detail {

inline constexpr double kConstraintTol = 1e-10;

inline void require_close(double value, double target, const char* what) {
  if (!std::isfinite(value) || std::abs(value - target) > kConstraintTol) {
    throw Error(Errc::ConstraintViolation,
                std::string(what) + " = " + std::to_string(value) + ", expected " + std::to_string(target));
  }
}

inline void require_finite(std::initializer_list<double> xs) {
  for (double x : xs)
    if (!std::isfinite(x)) throw Error(Errc::NonFinite, "family parameter is not finite");
}

inline Complex cis(double x) { return std::polar(1.0, x); }

/// Choi-based coherence and purity of a Kraus channel.
inline std::pair<double, double> choi_metrics(const KrausChannel& ch) {
  const auto choi = kraus_to_choi(ch);
  return {l1_coherence(choi.rho), purity(choi.rho)};
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Fully incoherent operations.

/// Variants 1-2 take coeffs (a1, b1, a2, b2): the two rows of a 2x2 unitary,
/// placed in the first (variant 1) or second (variant 2) output row.
/// Variants 3-4 take coeffs (c1, c2, d1, d2) with unit vectors c and d;
/// variant 3 is anti-diagonal, variant 4 diagonal (the genuinely incoherent case).
inline KrausFamily fio(int variant, const std::array<Complex, 4>& coeffs) {
  for (const auto& z : coeffs) detail::require_finite({z.real(), z.imag()});
  if (variant == 1 || variant == 2) {
    const auto [a1, b1, a2, b2] = coeffs;
    detail::require_close(std::norm(a1) + std::norm(b1), 1.0, "|a1|^2+|b1|^2");
    detail::require_close(std::norm(a2) + std::norm(b2), 1.0, "|a2|^2+|b2|^2");
    detail::require_close(std::abs(a1 * std::conj(b1) + a2 * std::conj(b2)), 0.0, "|a1 b1* + a2 b2*|");
    std::vector<Mat2> ops;
    if (variant == 1) {
      ops = {Mat2{{a1, b1}, {0.0, 0.0}}, Mat2{{a2, b2}, {0.0, 0.0}}};
    } else {
      ops = {Mat2{{0.0, 0.0}, {a1, b1}}, Mat2{{0.0, 0.0}, {a2, b2}}};
    }
    return {KrausChannel(std::move(ops)), {0.0, std::nullopt, "FIO rows: zero coherence", true}, {}, {}};
  }
  if (variant == 3 || variant == 4) {
    const auto [c1, c2, d1, d2] = coeffs;
    detail::require_close(std::norm(c1) + std::norm(c2), 1.0, "|c1|^2+|c2|^2");
    detail::require_close(std::norm(d1) + std::norm(d2), 1.0, "|d1|^2+|d2|^2");
    std::vector<Mat2> ops;
    if (variant == 3) {
      ops = {Mat2{{0.0, d1}, {c1, 0.0}}, Mat2{{0.0, d2}, {c2, 0.0}}};
    } else {
      ops = {Mat2{{c1, 0.0}, {0.0, d1}}, Mat2{{c2, 0.0}, {0.0, d2}}};
    }
    const double c = std::abs(d1 * std::conj(c1) + d2 * std::conj(c2));
    return {KrausChannel(std::move(ops)),
            {c, 0.5 * (1.0 + c * c), "FIO/GIO: C = |d1 c1* + d2 c2*|, 2P - C^2 = 1", true},
            {},
            {}};
  }
  throw Error(Errc::InvalidArgument, "FIO variant must be 1..4");
}

inline KrausFamily gio(const std::array<Complex, 2>& c, const std::array<Complex, 2>& d) {
  return fio(4, {c[0], c[1], d[0], d[1]});
}

// ---------------------------------------------------------------------------
// Incoherent and strictly incoherent operations in canonical Kraus form.

/// Five-operator IO form; requires sum a^2 = sum |b|^2 = 1 and a1 b1 + a2 b2 = 0.
inline KrausFamily io_canonical(const std::array<double, 5>& a, const std::array<Complex, 4>& b) {
  double sa = 0.0;
  double sb = 0.0;
  for (double x : a) {
    detail::require_finite({x});
    sa += x * x;
  }
  for (const auto& z : b) {
    detail::require_finite({z.real(), z.imag()});
    sb += std::norm(z);
  }
  detail::require_close(sa, 1.0, "sum a_i^2");
  detail::require_close(sb, 1.0, "sum |b_i|^2");
  detail::require_close(std::abs(a[0] * b[0] + a[1] * b[1]), 0.0, "|a1 b1 + a2 b2|");

  std::vector<Mat2> ops = {
      Mat2{{a[0], b[0]}, {0.0, 0.0}},
      Mat2{{0.0, 0.0}, {a[1], b[1]}},
      Mat2{{a[2], 0.0}, {0.0, b[2]}},
      Mat2{{0.0, b[3]}, {a[3], 0.0}},
      Mat2{{a[4], 0.0}, {0.0, 0.0}},
  };

  double c = 0.0;
  double cross = 0.0;
  for (std::size_t i = 0; i < 4; ++i) {
    c += std::abs(a[i]) * std::abs(b[i]);
    cross += a[i] * a[i] * std::norm(b[i]);
  }
  const double mu = a[1] * a[1] + a[3] * a[3];
  const double kappa = std::norm(b[0]) + std::norm(b[3]);
  const double p = 0.5 * (1.0 - mu * (1.0 - mu) - kappa * (1.0 - kappa) + cross);
  return {KrausChannel(std::move(ops)),
          {c, p, "IO: C = sum |a_i||b_i|, P = [1 - mu(1-mu) - kappa(1-kappa) + sum a_i^2|b_i|^2]/2", true},
          {},
          {}};
}

/// Four-operator SIO form; requires sum a^2 = sum |b|^2 = 1.
inline KrausFamily sio_canonical(const std::array<double, 4>& a, const std::array<Complex, 2>& b) {
  double sa = 0.0;
  for (double x : a) {
    detail::require_finite({x});
    sa += x * x;
  }
  for (const auto& z : b) detail::require_finite({z.real(), z.imag()});
  detail::require_close(sa, 1.0, "sum a_i^2");
  detail::require_close(std::norm(b[0]) + std::norm(b[1]), 1.0, "sum |b_i|^2");

  std::vector<Mat2> ops = {
      Mat2{{a[0], 0.0}, {0.0, b[0]}},
      Mat2{{0.0, b[1]}, {a[1], 0.0}},
      Mat2{{a[2], 0.0}, {0.0, 0.0}},
      Mat2{{0.0, 0.0}, {a[3], 0.0}},
  };
  const double b1 = std::norm(b[0]);
  const double b2 = std::norm(b[1]);
  const double c = std::abs(a[0]) * std::abs(b[0]) + std::abs(a[1]) * std::abs(b[1]);
  const double nu = a[0] * a[0] + a[2] * a[2];
  const double base = 1.0 - nu * (1.0 - nu) + a[0] * a[0] * b1 + a[1] * a[1] * b2;
  return {KrausChannel(std::move(ops)),
          {c, 0.5 * (base - b1 * b2),
           "SIO: C = a1|b1| + a2|b2|, P = [1 - nu(1-nu) - |b1|^2|b2|^2 + sum a_i^2|b_i|^2]/2", true},
          Prediction{c, 0.5 * (base + b1 * b2),
                     "SIO purity as published, with +|b1|^2|b2|^2", false},
          {}};
}

// ---------------------------------------------------------------------------
// Physical incoherent operations.

struct PioPhases {
  double theta1 = 0.0;
  double theta2 = 0.0;
  double phi1 = 0.0;
  double phi2 = 0.0;
};

inline KrausFamily pio(int variant, const PioPhases& ph) {
  using detail::cis;
  detail::require_finite({ph.theta1, ph.theta2, ph.phi1, ph.phi2});
  std::vector<Mat2> ops;
  switch (variant) {
    case 1:
      ops = {Mat2{{cis(ph.theta1), 0.0}, {0.0, 0.0}}, Mat2{{0.0, 0.0}, {0.0, cis(ph.theta2)}}};
      break;
    case 2:
      ops = {Mat2{{0.0, 0.0}, {cis(ph.phi2), 0.0}}, Mat2{{0.0, cis(ph.phi1)}, {0.0, 0.0}}};
      break;
    case 3:
      ops = {Mat2{{cis(ph.theta1), 0.0}, {0.0, 0.0}}, Mat2{{0.0, cis(ph.phi1)}, {0.0, 0.0}}};
      break;
    case 4:
      ops = {Mat2{{0.0, 0.0}, {cis(ph.phi2), 0.0}}, Mat2{{0.0, 0.0}, {0.0, cis(ph.theta2)}}};
      break;
    case 5: ops = {Mat2{{cis(ph.theta1), 0.0}, {0.0, cis(ph.theta2)}}}; break;
    case 6: ops = {Mat2{{0.0, cis(ph.phi1)}, {cis(ph.phi2), 0.0}}}; break;
    default: throw Error(Errc::InvalidArgument, "PIO variant must be 1..6");
  }
  if (variant <= 4) {
    return {KrausChannel(std::move(ops)), {0.0, std::nullopt, "PIO 1-4: coherence breaking, C = 0", true}, {}, {}};
  }
  return {KrausChannel(std::move(ops)), {1.0, 1.0, "CPO: unit coherence and unit purity", true}, {}, {}};
}

/// Coherence preserving operation: phase-decorated identity or swap.
inline KrausFamily cpo(bool swap, double phase1, double phase2) {
  return swap ? pio(6, {0.0, 0.0, phase1, phase2}) : pio(5, {phase1, phase2, 0.0, 0.0});
}

// ---------------------------------------------------------------------------
// Coherence non-generating and maximal-coherence channels.

/// Full-rank coherence non-generating channel. `incoherence_flag` records
/// sin(phi)cos(phi)sin(theta)cos(theta) = 0.
inline KrausFamily cnc_full_rank(double theta, double phi, double xi, double eta) {
  using detail::cis;
  detail::require_finite({theta, phi, xi, eta});
  const double ct = std::cos(theta), st = std::sin(theta);
  const double cp = std::cos(phi), sp = std::sin(phi);
  std::vector<Mat2> ops = {
      Mat2{{cis(eta) * ct * cp, 0.0}, {-st * sp, cis(xi) * cp}},
      Mat2{{st * cp, cis(xi) * sp}, {cis(-eta) * ct * sp, 0.0}},
  };
  const double c = std::abs(ct) + std::abs(st * std::sin(2.0 * phi));
  const double p = (5.0 + std::cos(2.0 * theta) + 2.0 * ct * ct * std::cos(4.0 * phi)) / 8.0;
  KrausFamily out{KrausChannel(std::move(ops)),
                  {c, p, "CNC full rank: C = |cos t| + |sin t sin 2p|, P = (5 + cos 2t + 2cos^2 t cos 4p)/8", true},
                  {},
                  std::abs(sp * cp * st * ct) < 1e-12};
  if (ct < 0.0) {
    out.published_claim = Prediction{ct + std::abs(st * std::sin(2.0 * phi)), p,
                                 "CNC full rank as published: C = cos t + |sin t sin 2p|", false};
  }
  return out;
}

inline KrausFamily cnc_incoherent(double theta, double phi, double chi) {
  using detail::cis;
  detail::require_finite({theta, phi, chi});
  const double ct = std::cos(theta), st = std::sin(theta);
  const double cp = std::cos(phi), sp = std::sin(phi);
  std::vector<Mat2> ops = {
      Mat2{{ct, 0.0}, {0.0, cis(chi) * cp}},
      Mat2{{0.0, sp}, {cis(chi) * st, 0.0}},
  };
  const double c = std::abs(ct * cp) + std::abs(st * sp);
  const double p = (10.0 + std::cos(4.0 * theta) + 4.0 * std::cos(2.0 * theta) * std::cos(2.0 * phi) +
                    std::cos(4.0 * phi)) / 16.0;
  KrausFamily out{KrausChannel(std::move(ops)),
                  {c, p, "CNC incoherent: C = |cos t cos p| + |sin t sin p|", true},
                  {},
                  true};
  if (ct * cp < 0.0) {
    out.published_claim = Prediction{ct * cp + std::abs(st * sp), p,
                                 "CNC incoherent as published: C = cos t cos p + |sin t sin p|", false};
  }
  return out;
}

/// Published CMC coherence: (2 + s + g+ + g- + f+ + f-)/4.
inline double cmc_published_coherence(double t1, double t2, double p1, double p2) {
  using detail::cis;
  const double s1 = std::sin(t1), s2 = std::sin(t2);
  const double sig = std::cos(2.0 * t1) + std::cos(2.0 * t2);
  double g = 0.0, f = 0.0;
  for (double sign : {1.0, -1.0}) {
    g += std::abs(cis(sign * 2.0 * p1) * s1 * s1 + cis(sign * 2.0 * p2) * s2 * s2);
    f += 2.0 * std::abs(cis(sign * p1) * std::sin(2.0 * t1) + cis(sign * p2) * std::sin(2.0 * t2));
  }
  return 0.25 * (2.0 + sig + g + f);
}

/// Published CMC purity. With `literal` the cosine factor of l_mn reads
/// cos m(phi1 - phi1) = 1 exactly as printed; otherwise cos m(phi1 - phi2).
inline double cmc_published_purity(double t1, double t2, double p1, double p2, bool literal) {
  const double dphi = literal ? 0.0 : p1 - p2;
  auto ell = [&](int m, int n) {
    return 4.0 * std::cos(m * dphi) * std::pow(std::sin(n * t1), m) * std::pow(std::sin(n * t2), m);
  };
  const double sig = std::cos(2.0 * t1) + std::cos(2.0 * t2);
  return (11.0 + 3.0 * std::cos(2.0 * t1) * std::cos(2.0 * t2) + sig + ell(2, 1) + ell(1, 2)) / 16.0;
}

/// Equal mixture of two reflections n_k . sigma. The prediction is the Choi
/// value itself; the published closed form is carried as the untrusted claim.
inline KrausFamily cmc(double theta1, double theta2, double phi1, double phi2) {
  using detail::cis;
  detail::require_finite({theta1, theta2, phi1, phi2});
  const double r = 1.0 / std::sqrt(2.0);
  auto reflection = [&](double t, double p) {
    return Mat2{{std::cos(t), cis(-p) * std::sin(t)}, {cis(p) * std::sin(t), -std::cos(t)}} * r;
  };
  KrausChannel ch({reflection(theta1, phi1), reflection(theta2, phi2)});
  const auto [c, p] = detail::choi_metrics(ch);
  return {std::move(ch),
          {c, p, "CMC: Choi matrix", true},
          Prediction{cmc_published_coherence(theta1, theta2, phi1, phi2),
                     cmc_published_purity(theta1, theta2, phi1, phi2, true),
                     "CMC as published (g, f, varsigma, l_mn with cos m(phi1-phi1))", false},
          {}};
}

// ---------------------------------------------------------------------------
// Two-Kraus family and its special cases.

namespace detail {

inline KrausChannel two_param_kraus(double theta, double phi) {
  return KrausChannel({Mat2{{std::cos(theta), 0.0}, {0.0, std::cos(phi)}},
                       Mat2{{0.0, std::sin(phi)}, {std::sin(theta), 0.0}}});
}

}  // namespace detail

/// K1 = diag(cos theta, cos phi), K2 = antidiag(sin phi, sin theta) with
/// theta, phi in [0, pi]. Affine image: lambda = (cos(phi-theta),
/// cos(phi+theta), (cos 2phi + cos 2theta)/2), tau_z = (cos 2theta - cos 2phi)/2.
inline KrausFamily two_param_family(double theta, double phi) {
  detail::require_finite({theta, phi});
  constexpr double kPi = std::numbers::pi;
  if (theta < -1e-12 || theta > kPi + 1e-12 || phi < -1e-12 || phi > kPi + 1e-12) {
    throw Error(Errc::ConstraintViolation, "two-parameter family needs theta, phi in [0, pi]");
  }
  const double ct = std::cos(theta), st = std::sin(theta);
  const double cp = std::cos(phi), sp = std::sin(phi);
  const double c = std::abs(ct * cp) + std::abs(st * sp);
  const double s = std::cos(2.0 * phi) + std::cos(2.0 * theta);
  KrausFamily out{detail::two_param_kraus(theta, phi),
                  {c, 0.5 + s * s / 8.0, "two-parameter family: C = |cos t cos p| + |sin t sin p|", true},
                  {},
                  {}};
  if (ct * cp < 0.0) {
    out.published_claim = Prediction{ct * cp + std::abs(st * sp), 0.5 + s * s / 8.0,
                                 "two-parameter family as published: C = cos t cos p + |sin t sin p|", false};
  }
  return out;
}

/// Amplitude damping with transmission eta: K1 = diag(1, sqrt eta), K2 = sqrt(1-eta)|0><1|.
inline KrausFamily amplitude_damping(double eta) {
  detail::require_finite({eta});
  if (eta < 0.0 || eta > 1.0) throw Error(Errc::ConstraintViolation, "eta must lie in [0, 1]");
  const double c = std::sqrt(eta);
  return {KrausChannel({Mat2{{1.0, 0.0}, {0.0, std::sqrt(eta)}}, Mat2{{0.0, std::sqrt(1.0 - eta)}, {0.0, 0.0}}}),
          {c, 0.5 * (1.0 + eta * eta), "AD: C = sqrt(eta), P = (1 + C^4)/2", true},
          {},
          {}};
}

enum class PauliKind { BitFlip, BitPhaseFlip, PhaseFlip };

/// Bit flip = two_param(theta, theta); bit-phase flip = two_param(theta, -theta);
/// phase flip = Hadamard-conjugated bit flip.
inline KrausFamily pauli_like(PauliKind kind, double theta) {
  detail::require_finite({theta});
  const double c2 = std::cos(2.0 * theta);
  if (kind == PauliKind::PhaseFlip) {
    const Mat2 h = hadamard();
    const KrausChannel bit = detail::two_param_kraus(theta, theta);
    std::vector<Mat2> ops;
    for (const auto& k : bit.ops()) ops.push_back(h * k * h);
    const double c = std::abs(c2);
    return {KrausChannel(std::move(ops)), {c, 0.5 * (1.0 + c * c), "phase flip: C = |cos 2t|, 2P - C^2 = 1", true}, {}, {}};
  }
  const KrausChannel ch = kind == PauliKind::BitFlip ? detail::two_param_kraus(theta, theta)
                                                     : detail::two_param_kraus(theta, -theta);
  // Affine image is lambda = (1, c2, c2) or (c2, 1, c2); apply the closed forms.
  return {ch,
          {1.0, 0.5 * (1.0 + c2 * c2), "bit / bit-phase flip: closed forms on the affine image", true},
          Prediction{c2, 0.25 * (1.0 + 2.0 * c2 * c2), "bit / bit-phase flip as published: C = cos 2t, 2P - C^2 = 1/2",
                     false},
          {}};
}

// ---------------------------------------------------------------------------
// Semigroup families in affine form.

inline AffineFamily decoherence(double t_over_T) {
  detail::require_finite({t_over_T});
  if (t_over_T < 0.0) throw Error(Errc::ConstraintViolation, "t/T must be >= 0");
  const double c = std::exp(-t_over_T);
  return {{{c, c, 1.0}, {0.0, 0.0, 0.0}}, {c, 0.5 * (1.0 + c * c), "decoherence: C = e^{-t/T}, 2P - C^2 = 1", true}, {}, {}};
}

inline AffineFamily depolarizing(double t_over_T) {
  detail::require_finite({t_over_T});
  if (t_over_T < 0.0) throw Error(Errc::ConstraintViolation, "t/T must be >= 0");
  const double c = std::exp(-t_over_T);
  return {{{c, c, c}, {0.0, 0.0, 0.0}}, {c, 0.25 * (1.0 + 3.0 * c * c), "depolarizing: C = e^{-t/T}, 4P - 3C^2 = 1", true}, {}, {}};
}

/// Contraction towards (0, 0, omega). Throws `Errc::NotCompletelyPositive`
/// for (T1, T2, t) outside the CP region (T2 > 2 T1 for t > 0).
inline AffineFamily homogenization(double t, double T1, double T2, double omega, const Tolerance& tol = {}) {
  detail::require_finite({t, T1, T2, omega});
  if (t < 0.0 || !(T1 > 0.0) || !(T2 > 0.0) || omega < 0.0 || omega > 1.0) {
    throw Error(Errc::ConstraintViolation, "homogenization needs t >= 0, T1, T2 > 0, omega in [0, 1]");
  }
  const double e1 = std::exp(-t / T1);
  const double e2 = std::exp(-t / T2);
  AffineChannel ch{{e2, e2, e1}, {0.0, 0.0, omega * (1.0 - e1)}};
  if (!nonunital_cp(ch.lambda, ch.tau, tol).cp) {
    throw Error(Errc::NotCompletelyPositive, "homogenization parameters leave the CP region (T2 > 2 T1?)");
  }
  const double p = 0.25 * (1.0 + e1 * e1 + 2.0 * e2 * e2 + omega * omega * (1.0 - e1) * (1.0 - e1));
  return {ch, {e2, p, "homogenization: C = e^{-t/T2}", true}, {}, {}};
}

inline AffineFamily affine_family(const Vec3& lambda, const Vec3& tau) {
  for (double x : lambda) detail::require_finite({x});
  for (double x : tau) detail::require_finite({x});
  AffineChannel ch{lambda, tau};
  return {ch, {channel_l1_closed(ch), channel_purity_closed(ch), "affine closed forms", true}, {}, {}};
}

// ---------------------------------------------------------------------------
// Generic construction from a parameter map.

using AnyChannel = std::variant<KrausChannel, AffineChannel>;

struct FamilyInstance {
  FamilySpec spec;
  AnyChannel channel;
  Prediction prediction;
  std::optional<Prediction> published_claim;
  std::optional<bool> incoherence_flag;
};

namespace detail {

inline double param(const Params& p, const std::string& key) {
  auto it = p.find(key);
  if (it == p.end()) throw Error(Errc::InvalidArgument, "missing parameter '" + key + "'");
  if (!std::isfinite(it->second)) throw Error(Errc::NonFinite, "parameter '" + key + "' is not finite");
  return it->second;
}

inline double param_or(const Params& p, const std::string& key, double fallback) {
  return p.count(key) ? param(p, key) : fallback;
}

inline Complex cparam(const Params& p, const std::string& stem) {
  return {param(p, stem + "_re"), param(p, stem + "_im")};
}

template <typename Channel>
FamilyInstance wrap(FamilySpec spec, FamilyChannel<Channel> fc) {
  return {std::move(spec), std::move(fc.channel), std::move(fc.prediction), std::move(fc.published_claim),
          fc.incoherence_flag};
}

}  // namespace detail

inline FamilyInstance build_family(const FamilySpec& spec, const Tolerance& tol = {}) {
  using detail::cparam;
  using detail::param;
  using detail::param_or;
  using detail::wrap;
  const auto& p = spec.params;
  switch (spec.family) {
    case Family::FIO1:
    case Family::FIO2:
      return wrap(spec, fio(spec.family == Family::FIO1 ? 1 : 2,
                            {cparam(p, "a1"), cparam(p, "b1"), cparam(p, "a2"), cparam(p, "b2")}));
    case Family::FIO3:
    case Family::FIO4:
    case Family::GIO:
      return wrap(spec, fio(spec.family == Family::FIO3 ? 3 : 4,
                            {cparam(p, "c1"), cparam(p, "c2"), cparam(p, "d1"), cparam(p, "d2")}));
    case Family::IO:
      return wrap(spec, io_canonical({param(p, "a1"), param(p, "a2"), param(p, "a3"), param(p, "a4"), param(p, "a5")},
                                     {cparam(p, "b1"), cparam(p, "b2"), cparam(p, "b3"), cparam(p, "b4")}));
    case Family::SIO:
      return wrap(spec, sio_canonical({param(p, "a1"), param(p, "a2"), param(p, "a3"), param(p, "a4")},
                                      {cparam(p, "b1"), cparam(p, "b2")}));
    case Family::PIO1:
    case Family::PIO2:
    case Family::PIO3:
    case Family::PIO4:
    case Family::PIO5:
    case Family::PIO6: {
      const int variant = static_cast<int>(spec.family) - static_cast<int>(Family::PIO1) + 1;
      return wrap(spec, pio(variant, {param_or(p, "theta1", 0.0), param_or(p, "theta2", 0.0),
                                      param_or(p, "phi1", 0.0), param_or(p, "phi2", 0.0)}));
    }
    case Family::CPO:
      return wrap(spec, cpo(param(p, "swap") >= 0.5, param(p, "phase1"), param(p, "phase2")));
    case Family::CNC_FULL:
      return wrap(spec, cnc_full_rank(param(p, "theta"), param(p, "phi"), param(p, "xi"), param(p, "eta")));
    case Family::CNC_INC:
      return wrap(spec, cnc_incoherent(param(p, "theta"), param(p, "phi"), param(p, "chi")));
    case Family::CMC:
      return wrap(spec, cmc(param(p, "theta1"), param(p, "theta2"), param(p, "phi1"), param(p, "phi2")));
    case Family::TWO_PARAM:
      return wrap(spec, two_param_family(param(p, "theta"), param(p, "phi")));
    case Family::AD:
      return wrap(spec, amplitude_damping(param(p, "eta")));
    case Family::BIT_FLIP:
      return wrap(spec, pauli_like(PauliKind::BitFlip, param(p, "theta")));
    case Family::BIT_PHASE_FLIP:
      return wrap(spec, pauli_like(PauliKind::BitPhaseFlip, param(p, "theta")));
    case Family::PHASE_FLIP:
      return wrap(spec, pauli_like(PauliKind::PhaseFlip, param(p, "theta")));
    case Family::DECOHERENCE:
      return wrap(spec, decoherence(param(p, "t_over_T")));
    case Family::DEPOLARIZING:
      return wrap(spec, depolarizing(param(p, "t_over_T")));
    case Family::HOMOGENIZATION:
      return wrap(spec, homogenization(param(p, "t"), param(p, "T1"), param(p, "T2"), param(p, "omega"), tol));
    case Family::UNITAL_RANDOM: {
      auto fc = affine_family({param(p, "lambda_x"), param(p, "lambda_y"), param(p, "lambda_z")}, {0.0, 0.0, 0.0});
      if (!unital_cp(fc.channel.lambda, tol).cp) throw Error(Errc::NotCompletelyPositive, "lambda outside the tetrahedron");
      return wrap(spec, std::move(fc));
    }
    case Family::NONUNITAL_RANDOM: {
      auto fc = affine_family({param(p, "lambda_x"), param(p, "lambda_y"), param(p, "lambda_z")},
                              {param(p, "tau_x"), param(p, "tau_y"), param(p, "tau_z")});
      if (!is_cp(fc.channel, tol)) throw Error(Errc::NotCompletelyPositive, "(lambda, tau) is not CP");
      return wrap(spec, std::move(fc));
    }
  }
  throw Error(Errc::UnknownFamily, "unhandled family");
}

/// Choi matrix of either representation.
inline ChoiMatrix to_choi(const AnyChannel& ch, std::string source = "channel") {
  return std::visit(
      [&](const auto& c) -> ChoiMatrix {
        using T = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<T, KrausChannel>) {
          return kraus_to_choi(c, std::move(source));
        } else {
          return affine_to_choi(c, std::move(source));
        }
      },
      ch);
}

/// Degradability of a family instance; only the two-parameter family is classified.
inline Degradability degradability(const FamilySpec& spec) {
  if (spec.family != Family::TWO_PARAM) return Degradability::Unsupported;
  return is_degradable_family(detail::param(spec.params, "theta"), detail::param(spec.params, "phi"));
}

// ---------------------------------------------------------------------------
// Parameter samplers.

using Rng = std::mt19937_64;

namespace detail {

inline double uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline double normal(Rng& rng) { return std::normal_distribution<double>(0.0, 1.0)(rng); }

/// Random nonempty subset of {0..k-1}, each member kept with probability 1/2.
inline std::vector<bool> support_mask(Rng& rng, std::size_t k) {
  std::vector<bool> m(k);
  for (;;) {
    bool any = false;
    for (std::size_t i = 0; i < k; ++i) {
      m[i] = std::bernoulli_distribution(0.5)(rng);
      any = any || m[i];
    }
    if (any) return m;
  }
}

inline void put_complex(Params& p, const std::string& stem, Complex z) {
  p[stem + "_re"] = z.real();
  p[stem + "_im"] = z.imag();
}

template <std::size_t K>
std::array<Complex, K> random_unit_cvec(Rng& rng) {
  for (;;) {
    std::array<Complex, K> v;
    double n = 0.0;
    for (auto& z : v) {
      z = {normal(rng), normal(rng)};
      n += std::norm(z);
    }
    if (n < 1e-12) continue;
    for (auto& z : v) z /= std::sqrt(n);
    return v;
  }
}

}  // namespace detail

/// Draws a valid parameter set for `f`. Angles are uniform over their
/// domains; constrained tuples are drawn on a random support and projected.
inline FamilySpec sample_spec(Family f, Rng& rng) {
  using detail::normal;
  using detail::uniform;
  constexpr double kPi = std::numbers::pi;
  constexpr double kTwoPi = 2.0 * std::numbers::pi;
  FamilySpec s{f, {}};
  auto& p = s.params;
  switch (f) {
    case Family::FIO1:
    case Family::FIO2: {
      const double alpha = uniform(rng, 0.0, kPi / 2.0);
      const double b1 = uniform(rng, 0.0, kTwoPi), b2 = uniform(rng, 0.0, kTwoPi), b3 = uniform(rng, 0.0, kTwoPi);
      detail::put_complex(p, "a1", std::polar(std::cos(alpha), b1));
      detail::put_complex(p, "b1", std::polar(std::sin(alpha), b2));
      detail::put_complex(p, "a2", std::polar(-std::sin(alpha), b3));
      detail::put_complex(p, "b2", std::polar(std::cos(alpha), b3 + b2 - b1));
      break;
    }
    case Family::FIO3:
    case Family::FIO4:
    case Family::GIO: {
      const auto c = detail::random_unit_cvec<2>(rng);
      const auto d = detail::random_unit_cvec<2>(rng);
      detail::put_complex(p, "c1", c[0]);
      detail::put_complex(p, "c2", c[1]);
      detail::put_complex(p, "d1", d[0]);
      detail::put_complex(p, "d2", d[1]);
      break;
    }
    case Family::IO: {
      for (;;) {
        std::array<double, 5> a{};
        const auto ma = detail::support_mask(rng, 5);
        double na = 0.0;
        for (std::size_t i = 0; i < 5; ++i) {
          a[i] = ma[i] ? std::abs(normal(rng)) : 0.0;
          na += a[i] * a[i];
        }
        if (na < 1e-12) continue;
        for (auto& x : a) x /= std::sqrt(na);
        std::array<Complex, 4> b{};
        const auto mb = detail::support_mask(rng, 4);
        for (std::size_t i = 0; i < 4; ++i) b[i] = mb[i] ? Complex(normal(rng), normal(rng)) : Complex{};
        // a1 b1 + a2 b2 = 0
        if (a[1] > 1e-12) {
          b[1] = -a[0] * b[0] / a[1];
        } else if (a[0] > 0.0) {
          b[0] = 0.0;
        }
        double nb = 0.0;
        for (const auto& z : b) nb += std::norm(z);
        if (nb < 1e-12) continue;
        for (auto& z : b) z /= std::sqrt(nb);
        for (std::size_t i = 0; i < 5; ++i) p["a" + std::to_string(i + 1)] = a[i];
        for (std::size_t i = 0; i < 4; ++i) detail::put_complex(p, "b" + std::to_string(i + 1), b[i]);
        break;
      }
      break;
    }
    case Family::SIO: {
      for (;;) {
        std::array<double, 4> a{};
        const auto ma = detail::support_mask(rng, 4);
        double na = 0.0;
        for (std::size_t i = 0; i < 4; ++i) {
          a[i] = ma[i] ? std::abs(normal(rng)) : 0.0;
          na += a[i] * a[i];
        }
        std::array<Complex, 2> b{};
        const auto mb = detail::support_mask(rng, 2);
        double nb = 0.0;
        for (std::size_t i = 0; i < 2; ++i) {
          b[i] = mb[i] ? Complex(normal(rng), normal(rng)) : Complex{};
          nb += std::norm(b[i]);
        }
        if (na < 1e-12 || nb < 1e-12) continue;
        for (std::size_t i = 0; i < 4; ++i) p["a" + std::to_string(i + 1)] = a[i] / std::sqrt(na);
        for (std::size_t i = 0; i < 2; ++i) detail::put_complex(p, "b" + std::to_string(i + 1), b[i] / std::sqrt(nb));
        break;
      }
      break;
    }
    case Family::PIO1:
    case Family::PIO2:
    case Family::PIO3:
    case Family::PIO4:
    case Family::PIO5:
    case Family::PIO6:
      p["theta1"] = uniform(rng, 0.0, kTwoPi);
      p["theta2"] = uniform(rng, 0.0, kTwoPi);
      p["phi1"] = uniform(rng, 0.0, kTwoPi);
      p["phi2"] = uniform(rng, 0.0, kTwoPi);
      break;
    case Family::CPO:
      p["swap"] = std::bernoulli_distribution(0.5)(rng) ? 1.0 : 0.0;
      p["phase1"] = uniform(rng, 0.0, kTwoPi);
      p["phase2"] = uniform(rng, 0.0, kTwoPi);
      break;
    case Family::CNC_FULL:
      p["theta"] = uniform(rng, 0.0, kTwoPi);
      p["phi"] = uniform(rng, 0.0, kTwoPi);
      p["xi"] = uniform(rng, 0.0, kTwoPi);
      p["eta"] = uniform(rng, 0.0, kTwoPi);
      break;
    case Family::CNC_INC:
      p["theta"] = uniform(rng, 0.0, kTwoPi);
      p["phi"] = uniform(rng, 0.0, kTwoPi);
      p["chi"] = uniform(rng, 0.0, kTwoPi);
      break;
    case Family::CMC:
      p["theta1"] = uniform(rng, 0.0, kPi / 4.0);
      p["theta2"] = uniform(rng, 0.0, kPi / 4.0);
      p["phi1"] = uniform(rng, 0.0, kTwoPi);
      p["phi2"] = uniform(rng, 0.0, kTwoPi);
      break;
    case Family::TWO_PARAM:
      p["theta"] = uniform(rng, 0.0, kPi);
      p["phi"] = uniform(rng, 0.0, kPi);
      break;
    case Family::AD: p["eta"] = uniform(rng, 0.0, 1.0); break;
    case Family::BIT_FLIP:
    case Family::BIT_PHASE_FLIP:
    case Family::PHASE_FLIP: p["theta"] = uniform(rng, 0.0, kPi); break;
    case Family::DECOHERENCE:
    case Family::DEPOLARIZING: p["t_over_T"] = uniform(rng, 0.0, 10.0); break;
    case Family::HOMOGENIZATION: {
      const double t1 = uniform(rng, 0.5, 2.0);
      p["t"] = uniform(rng, 0.0, 5.0);
      p["T1"] = t1;
      p["T2"] = uniform(rng, 0.1, 2.0 * t1);
      p["omega"] = uniform(rng, 0.0, 1.0);
      break;
    }
    case Family::UNITAL_RANDOM:
      for (;;) {
        const Vec3 l{uniform(rng, -1.0, 1.0), uniform(rng, -1.0, 1.0), uniform(rng, -1.0, 1.0)};
        if (!unital_cp(l).cp) continue;
        p = {{"lambda_x", l[0]}, {"lambda_y", l[1]}, {"lambda_z", l[2]}};
        break;
      }
      break;
    case Family::NONUNITAL_RANDOM:
      for (;;) {
        Vec3 l, t;
        for (auto& x : l) x = uniform(rng, -1.0, 1.0);
        for (auto& x : t) x = uniform(rng, -1.0, 1.0);
        if (!nonunital_cp(l, t).cp) continue;
        p = {{"lambda_x", l[0]}, {"lambda_y", l[1]}, {"lambda_z", l[2]},
             {"tau_x", t[0]},    {"tau_y", t[1]},    {"tau_z", t[2]}};
        break;
      }
      break;
  }
  return s;
}

}  // namespace copu
