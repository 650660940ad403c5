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

#include <gtest/gtest.h>

#include "copu/families.hpp"
#include "oracle.hpp"

using namespace copu;

namespace {

constexpr double kPi = std::numbers::pi;

struct Metrics {
  double c, p;
};

// Brute-force metrics through the state-vector oracle.
Metrics brute(const KrausChannel& k) {
  std::vector<oracle::Op2> ops;
  for (const auto& m : k.ops()) ops.push_back({{{m(0, 0), m(0, 1)}, {m(1, 0), m(1, 1)}}});
  const auto rho = oracle::choi(ops);
  return {oracle::l1(rho), oracle::purity(rho)};
}

Metrics brute(const AffineChannel& a) {
  const auto rho = oracle::affine_choi(a.lambda, a.tau);
  return {oracle::l1(rho), oracle::purity(rho)};
}

Metrics brute(const AnyChannel& ch) {
  return std::visit([](const auto& c) { return brute(c); }, ch);
}

}  // namespace

TEST(FamilyNames, RoundTripAndUnknown) {
  for (Family f : kAllFamilies) {
    EXPECT_EQ(parse_family(family_name(f)), f);
  }
  EXPECT_FALSE(parse_family("mio").has_value());
  try {
    family_or_throw("mio");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::UnknownFamily);
  }
}

// Every trusted prediction against the brute-force Choi metrics, 1e3 draws per family.
TEST(FamilyPredictions, TrustedMatchBruteForce) {
  for (Family f : kAllFamilies) {
    Rng rng(100 + static_cast<int>(f));
    for (int i = 0; i < 1000; ++i) {
      const auto inst = build_family(sample_spec(f, rng));
      ASSERT_TRUE(inst.prediction.trusted);
      const Metrics m = brute(inst.channel);
      if (inst.prediction.c_l1) {
        ASSERT_NEAR(*inst.prediction.c_l1, m.c, 1e-9) << family_name(f);
      }
      if (inst.prediction.purity) {
        ASSERT_NEAR(*inst.prediction.purity, m.p, 1e-9) << family_name(f);
      }
      if (inst.published_claim) {
        EXPECT_FALSE(inst.published_claim->trusted);
      }
    }
  }
}

TEST(FamilyInvariants, TracePreservingAndPSD) {
  for (Family f : kAllFamilies) {
    Rng rng(200 + static_cast<int>(f));
    for (int i = 0; i < 200; ++i) {
      const auto inst = build_family(sample_spec(f, rng));
      if (const auto* k = std::get_if<KrausChannel>(&inst.channel)) {
        EXPECT_LE(k->tp_deviation(), 1e-10);
      }
      EXPECT_GE(min_eigenvalue(to_choi(inst.channel).rho), -1e-10) << family_name(f);
    }
  }
}

TEST(FamilyInvariants, IncoherentKrausStructure) {
  for (Family f : {Family::IO, Family::SIO, Family::FIO1, Family::FIO2, Family::FIO3, Family::FIO4, Family::GIO,
                   Family::PIO1, Family::PIO2, Family::PIO3, Family::PIO4, Family::PIO5, Family::PIO6,
                   Family::CNC_INC}) {
    Rng rng(300 + static_cast<int>(f));
    for (int i = 0; i < 200; ++i) {
      const auto inst = build_family(sample_spec(f, rng));
      const auto& k = std::get<KrausChannel>(inst.channel);
      EXPECT_TRUE(is_incoherent_kraus(k)) << family_name(f);
      if (f == Family::SIO) {
        EXPECT_TRUE(is_strictly_incoherent_kraus(k));
      }
    }
  }
}

TEST(FamilyInvariants, IncoherentClassesHaveNoSubsystemCoherence) {
  for (Family f : {Family::IO, Family::SIO, Family::PIO1, Family::PIO2, Family::PIO3, Family::PIO4, Family::PIO5,
                   Family::PIO6, Family::FIO1, Family::FIO2, Family::FIO3, Family::FIO4, Family::GIO}) {
    Rng rng(400 + static_cast<int>(f));
    for (int i = 0; i < 500; ++i) {
      const auto inst = build_family(sample_spec(f, rng));
      const auto& k = std::get<KrausChannel>(inst.channel);
      EXPECT_LE(l1_coherence(subsystem_A(kraus_to_choi(k))), 1e-12) << family_name(f);
      const auto ga = kraus_to_affine(k);
      EXPECT_LE(std::abs(ga.tau[0]) + std::abs(ga.tau[1]), 1e-10);
    }
  }
}

TEST(Fio, Examples) {
  EXPECT_NEAR(*gio({1.0, 0.0}, {0.0, 1.0}).prediction.c_l1, 0.0, 1e-15);
  const auto id = fio(4, {1.0, 0.0, 1.0, 0.0});
  EXPECT_NEAR(brute(id.channel).c, 1.0, 1e-15);
  EXPECT_NEAR(brute(id.channel).p, 1.0, 1e-15);
  const double r = std::sqrt(0.5);
  EXPECT_NEAR(brute(fio(1, {r, r, r, -r}).channel).c, 0.0, 1e-15);
  EXPECT_NEAR(brute(fio(2, {r, r, r, -r}).channel).c, 0.0, 1e-15);
  EXPECT_THROW(fio(1, {1.0, 1.0, 0.0, 1.0}), Error);
  EXPECT_THROW(fio(5, {1.0, 0.0, 0.0, 1.0}), Error);
}

TEST(Io, Examples) {
  const auto diag = io_canonical({0, 0, 1, 0, 0}, {0.0, 0.0, 1.0, 0.0});
  EXPECT_NEAR(*diag.prediction.c_l1, 1.0, 1e-15);
  EXPECT_NEAR(brute(diag.channel).c, 1.0, 1e-15);
  const auto dead = io_canonical({0, 0, 0, 0, 1}, {0.0, 0.0, 0.0, 1.0});
  EXPECT_NEAR(*dead.prediction.c_l1, 0.0, 1e-15);
  EXPECT_NEAR(brute(dead.channel).c, 0.0, 1e-15);
  try {
    io_canonical({std::sqrt(0.5), std::sqrt(0.5), 0, 0, 0}, {std::sqrt(0.5), std::sqrt(0.5), 0.0, 0.0});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::ConstraintViolation);
  }
}

TEST(Sio, ExamplesAndPublishedPurityClaim) {
  const auto id = sio_canonical({1, 0, 0, 0}, {1.0, 0.0});
  EXPECT_NEAR(*id.prediction.c_l1, 1.0, 1e-15);
  EXPECT_NEAR(*id.prediction.purity, 1.0, 1e-15);
  EXPECT_NEAR(*sio_canonical({0, 0, 1, 0}, {1.0, 0.0}).prediction.c_l1, 0.0, 1e-15);
  EXPECT_NEAR(*sio_canonical({0, 0, 0, 1}, {0.0, 1.0}).prediction.c_l1, 0.0, 1e-15);
  // Both |b|^2 nonzero: the published sign differs from the Choi purity.
  const auto s = sio_canonical({0.6, 0.8, 0, 0}, {std::sqrt(0.5), Complex(0, std::sqrt(0.5))});
  ASSERT_TRUE(s.published_claim.has_value());
  EXPECT_NEAR(*s.prediction.purity, brute(s.channel).p, 1e-12);
  EXPECT_GT(std::abs(*s.published_claim->purity - brute(s.channel).p), 0.1);
}

TEST(Pio, Examples) {
  EXPECT_NEAR(brute(pio(1, {}).channel).c, 0.0, 1e-15);
  const auto v5 = pio(5, {0.0, kPi / 3, 0.0, 0.0});
  EXPECT_NEAR(brute(v5.channel).c, 1.0, 1e-12);
  EXPECT_NEAR(brute(v5.channel).p, 1.0, 1e-12);
  const auto v6 = pio(6, {});
  EXPECT_EQ(v6.channel.ops()[0], pauli(0));
  EXPECT_NEAR(brute(v6.channel).c, 1.0, 1e-12);
  EXPECT_THROW(pio(7, {}), Error);
}

TEST(CncFull, Examples) {
  EXPECT_NEAR(brute(cnc_full_rank(kPi / 4, kPi / 4, 0.2, 0.9).channel).c, std::sqrt(2.0), 1e-12);
  for (double phi : {0.0, 0.7, 2.0}) {
    EXPECT_NEAR(brute(cnc_full_rank(0.0, phi, 0.1, 0.2).channel).c, 1.0, 1e-12);
  }
  EXPECT_NEAR(brute(cnc_full_rank(kPi / 2, 0.0, 0.1, 0.2).channel).c, 0.0, 1e-12);
  EXPECT_TRUE(*cnc_full_rank(0.0, 0.3, 0.0, 0.0).incoherence_flag);
  EXPECT_FALSE(*cnc_full_rank(0.4, 0.3, 0.0, 0.0).incoherence_flag);
}

TEST(CncIncoherent, Examples) {
  EXPECT_NEAR(brute(cnc_incoherent(0, 0, 0).channel).c, 1.0, 1e-15);
  EXPECT_NEAR(brute(cnc_incoherent(0, kPi / 2, 0.3).channel).c, 0.0, 1e-15);
  EXPECT_NEAR(brute(cnc_incoherent(kPi / 4, kPi / 4, 0.3).channel).c, 1.0, 1e-12);
}

TEST(Cmc, Examples) {
  EXPECT_NEAR(brute(cmc(kPi / 4, kPi / 4, 0.0, 0.0).channel).c, 3.0, 1e-12);
  const auto zz = cmc(0, 0, 0, 0);
  EXPECT_NEAR(brute(zz.channel).c, 1.0, 1e-12);
  const double mixed = brute(cmc(kPi / 4, -kPi / 4, 0, 0).channel).c;
  EXPECT_GE(mixed, 1.0 - 1e-9);
  EXPECT_LE(mixed, 3.0 + 1e-9);
}

TEST(Cmc, PublishedCoherenceIsExactAndLiteralPurityIsNot) {
  Rng rng(7);
  std::uniform_real_distribution<double> t(0, kPi / 4), p(0, 2 * kPi);
  double literal_dev = 0.0;
  for (int i = 0; i < 500; ++i) {
    const double t1 = t(rng), t2 = t(rng), p1 = p(rng), p2 = p(rng);
    const auto m = brute(cmc(t1, t2, p1, p2).channel);
    EXPECT_NEAR(cmc_published_coherence(t1, t2, p1, p2), m.c, 1e-9);
    EXPECT_NEAR(cmc_published_purity(t1, t2, p1, p2, false), m.p, 1e-9);
    literal_dev = std::max(literal_dev, std::abs(cmc_published_purity(t1, t2, p1, p2, true) - m.p));
  }
  EXPECT_GT(literal_dev, 1e-3);
}

TEST(TwoParam, Examples) {
  const auto id = two_param_family(0, 0);
  EXPECT_NEAR(brute(id.channel).c, 1.0, 1e-15);
  EXPECT_NEAR(brute(id.channel).p, 1.0, 1e-15);
  const auto q = two_param_family(kPi / 4, kPi / 4);
  EXPECT_NEAR(brute(q.channel).c, 1.0, 1e-12);
  EXPECT_NEAR(brute(q.channel).p, 0.5, 1e-12);
  // theta = 0, cos 2phi = 2 eta - 1 is amplitude damping.
  const double eta = 0.3;
  const auto tp = two_param_family(0.0, std::acos(2 * eta - 1) / 2);
  EXPECT_LE(max_abs_diff(kraus_to_choi(tp.channel).rho, kraus_to_choi(amplitude_damping(eta).channel).rho), 1e-12);
  EXPECT_THROW(two_param_family(-0.5, 0.1), Error);
}

TEST(AmplitudeDamping, Examples) {
  EXPECT_NEAR(*amplitude_damping(0).prediction.c_l1, 0.0, 1e-15);
  EXPECT_NEAR(*amplitude_damping(0).prediction.purity, 0.5, 1e-15);
  EXPECT_NEAR(*amplitude_damping(1).prediction.c_l1, 1.0, 1e-15);
  EXPECT_NEAR(*amplitude_damping(1).prediction.purity, 1.0, 1e-15);
  const auto m = brute(amplitude_damping(0.49).channel);
  EXPECT_NEAR(m.c, 0.7, 1e-12);
  EXPECT_NEAR(m.p, (1 + 0.2401) / 2, 1e-12);
  EXPECT_THROW(amplitude_damping(1.5), Error);
}

TEST(PauliLike, OracleValuesAndPublishedClaim) {
  for (double th : {0.1, 0.5, 1.2, 2.0}) {
    EXPECT_NEAR(brute(pauli_like(PauliKind::PhaseFlip, th).channel).c, std::abs(std::cos(2 * th)), 1e-12);
    EXPECT_NEAR(brute(pauli_like(PauliKind::BitFlip, th).channel).c, 1.0, 1e-12);
    EXPECT_NEAR(brute(pauli_like(PauliKind::BitPhaseFlip, th).channel).c, 1.0, 1e-12);
  }
  EXPECT_NEAR(brute(pauli_like(PauliKind::BitFlip, kPi / 4).channel).c, 1.0, 1e-12);
  EXPECT_NEAR(brute(pauli_like(PauliKind::BitFlip, 0.0).channel).c, 1.0, 1e-15);
  const auto bf = pauli_like(PauliKind::BitFlip, 0.3);
  ASSERT_TRUE(bf.published_claim.has_value());
  EXPECT_NEAR(*bf.published_claim->c_l1, std::cos(0.6), 1e-15);
  EXPECT_FALSE(pauli_like(PauliKind::PhaseFlip, 0.3).published_claim.has_value());
}

TEST(Semigroups, DecoherenceAndDepolarizing) {
  EXPECT_NEAR(*decoherence(0).prediction.c_l1, 1.0, 1e-15);
  EXPECT_NEAR(*decoherence(0).prediction.purity, 1.0, 1e-15);
  const auto d = decoherence(std::log(2.0));
  EXPECT_NEAR(brute(d.channel).c, 0.5, 1e-15);
  EXPECT_NEAR(brute(d.channel).p, 0.625, 1e-15);
  EXPECT_NEAR(brute(decoherence(60).channel).c, 0.0, 1e-15);
  EXPECT_NEAR(brute(decoherence(60).channel).p, 0.5, 1e-15);
  EXPECT_NEAR(brute(depolarizing(0).channel).p, 1.0, 1e-15);
  EXPECT_NEAR(brute(depolarizing(60).channel).p, 0.25, 1e-15);
  const auto h = depolarizing(std::log(2.0));
  EXPECT_NEAR(brute(h.channel).p, 7.0 / 16, 1e-15);
  EXPECT_THROW(decoherence(-1), Error);
}

TEST(Homogenization, ExamplesAndCPRejection) {
  const auto id = homogenization(0, 1, 2, 0.5);
  EXPECT_NEAR(brute(id.channel).c, 1.0, 1e-15);
  EXPECT_NEAR(brute(id.channel).p, 1.0, 1e-15);
  const auto h = homogenization(1, 1, 2, 1);
  EXPECT_NEAR(brute(h.channel).c, std::exp(-0.5), 1e-12);
  EXPECT_NEAR(brute(h.channel).p, (1 + std::exp(-2.0)) / 2, 1e-12);
  const auto inf = homogenization(200, 1, 2, 1);
  EXPECT_NEAR(brute(inf.channel).c, 0.0, 1e-12);
  EXPECT_NEAR(brute(inf.channel).p, 0.5, 1e-12);
  try {
    homogenization(1, 1, 3, 0.5);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::NotCompletelyPositive);
  }
}

TEST(BuildFamily, MissingAndNonFiniteParameters) {
  EXPECT_THROW(build_family({Family::AD, {}}), Error);
  EXPECT_THROW(build_family({Family::AD, {{"eta", std::nan("")}}}), Error);
  EXPECT_THROW(build_family({Family::UNITAL_RANDOM, {{"lambda_x", 1}, {"lambda_y", 1}, {"lambda_z", -1}}}), Error);
  const auto ok = build_family({Family::AD, {{"eta", 0.25}}});
  EXPECT_NEAR(*ok.prediction.c_l1, 0.5, 1e-15);
}

TEST(Degradable, SplitByCosineRatio) {
  Rng rng(9);
  std::uniform_real_distribution<double> u(0, kPi);
  int deg = 0;
  for (int i = 0; i < 5000; ++i) {
    const double th = u(rng), ph = u(rng);
    if (is_degradable_family(th, ph) != Degradability::Degradable) continue;
    ++deg;
    const double c = brute(two_param_family(th, ph).channel).c;
    EXPECT_GE(c, 1 / std::sqrt(2.0) - 1e-9);
    EXPECT_LE(c, 1 + 1e-9);
  }
  EXPECT_GT(deg, 1000);
}
