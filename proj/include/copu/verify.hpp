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

// Named verification suites behind `copu verify`.
//
// A check is either trusted (a failure is a defect and makes the run exit
// nonzero) or a claim (a published statement compared against the Choi
// matrix; disagreement is reported as a finding only).

#include <functional>
#include <map>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "copu/explorer.hpp"
#include "copu/families.hpp"

namespace copu {

struct CheckResult {
  std::string suite;
  std::string name;
  bool pass = false;
  bool trusted = true;
  std::string detail;

  bool is_finding() const { return !trusted && !pass; }
};

struct VerifyOptions {
  std::uint64_t seed = 1;
  unsigned jobs = 1;
  Tolerance tol{};
};

using SuiteFn = std::function<std::vector<CheckResult>(const VerifyOptions&)>;

namespace detail {

template <typename... Ts>
std::string fmt(const Ts&... xs) {
  std::ostringstream ss;
  ss << std::setprecision(6);
  (ss << ... << xs);
  return ss.str();
}

struct Collector {
  std::string suite;
  std::vector<CheckResult> out;

  void trusted(std::string name, bool pass, std::string detail) {
    out.push_back({suite, std::move(name), pass, true, std::move(detail)});
  }
  void claim(std::string name, bool pass, std::string detail) {
    out.push_back({suite, std::move(name), pass, false, std::move(detail)});
  }
};

inline double choi_c(const ChoiMatrix& c) { return l1_coherence(c.rho); }
inline double choi_p(const ChoiMatrix& c) { return purity(c.rho); }

inline std::vector<CheckResult> suite_closed(const VerifyOptions& o) {
  Collector c{"closed", {}};
  Rng rng = stream_rng(o.seed, 101);
  double dc = 0.0, dp = 0.0;
  for (int i = 0; i < 10000; ++i) {
    auto spec = sample_spec(Family::NONUNITAL_RANDOM, rng);
    const auto inst = build_family(spec);
    const auto& ch = std::get<AffineChannel>(inst.channel);
    const auto choi = affine_to_choi(ch);
    dc = std::max(dc, std::abs(channel_l1_closed(ch) - choi_c(choi)));
    dp = std::max(dp, std::abs(channel_purity_closed(ch) - choi_p(choi)));
  }
  c.trusted("coherence closed form vs Choi (1e4 CP channels)", dc <= 1e-9, fmt("max |delta| = ", dc, " (tol 1e-9)"));
  c.trusted("purity closed form vs Choi (1e4 CP channels)", dp <= 1e-9, fmt("max |delta| = ", dp, " (tol 1e-9)"));
  return c.out;
}

inline std::vector<CheckResult> suite_cp(const VerifyOptions& o) {
  Collector c{"cp", {}};
  Rng rng = stream_rng(o.seed, 102);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  int disagreements = 0, positives = 0;
  for (int i = 0; i < 100000; ++i) {
    Vec3 l, t;
    for (auto& x : l) x = u(rng);
    for (auto& x : t) x = u(rng);
    const bool formula = nonunital_cp(l, t, o.tol).cp;
    const bool psd = is_psd(affine_to_choi(AffineChannel{l, t}).rho, o.tol);
    positives += psd;
    disagreements += formula != psd;
  }
  c.trusted("closed CP test == PSD(Choi) on 1e5 draws", disagreements == 0,
            fmt(disagreements, " disagreements, ", positives, " CP draws"));
  return c.out;
}

inline std::vector<CheckResult> suite_prop1(const VerifyOptions& o) {
  Collector c{"prop1", {}};
  Rng rng = stream_rng(o.seed, 103);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  double cmax = 0.0;
  int not_eb = 0, n = 0;
  while (n < 10000) {
    const AffineChannel ch{{0.0, 0.0, u(rng)}, {0.0, 0.0, u(rng)}};
    if (!is_cp(ch, o.tol)) continue;
    ++n;
    const auto choi = affine_to_choi(ch);
    cmax = std::max(cmax, choi_c(choi));
    not_eb += !is_entanglement_breaking(choi, o.tol);
  }
  c.trusted("coherence breaking => C <= 1e-12 (1e4 draws)", cmax <= 1e-12, fmt("max C = ", cmax));
  c.trusted("coherence breaking => entanglement breaking (PPT)", not_eb == 0, fmt(not_eb, " non-PPT"));
  const auto ce = affine_to_choi(AffineChannel{{0.0, 0.0, 0.0}, {1.0, 0.0, 0.0}});
  c.trusted("lambda = 0, tau = (1,0,0): PPT with C = 1",
            is_entanglement_breaking(ce, o.tol) && std::abs(choi_c(ce) - 1.0) <= 1e-12,
            fmt("C = ", choi_c(ce)));
  return c.out;
}

inline std::vector<CheckResult> suite_maxima(const VerifyOptions&) {
  Collector c{"maxima", {}};
  constexpr double q = std::numbers::pi / 4.0;
  const auto id = kraus_to_choi(KrausChannel({Mat2::identity()}));
  c.trusted("identity channel: C = 1, P = 1", choi_c(id) == 1.0 && std::abs(choi_p(id) - 1.0) <= 1e-15,
            fmt("C = ", choi_c(id), ", P = ", choi_p(id)));
  const auto cnc = kraus_to_choi(cnc_full_rank(q, q, 0.0, 0.0).channel);
  c.trusted("CNC full rank at theta = phi = pi/4: C = sqrt 2", std::abs(choi_c(cnc) - std::sqrt(2.0)) <= 1e-12,
            fmt("C = ", choi_c(cnc)));
  const auto m = kraus_to_choi(cmc(q, q, 0.3, 0.3).channel);
  c.trusted("CMC at theta1 = theta2 = pi/4, phi1 = phi2: C = 3", std::abs(choi_c(m) - 3.0) <= 1e-12,
            fmt("C = ", choi_c(m)));
  for (bool swap : {false, true}) {
    const auto p = kraus_to_choi(cpo(swap, 0.4, 1.9).channel);
    c.trusted(swap ? "CPO (swap): C = 1, P = 1" : "CPO (diagonal): C = 1, P = 1",
              std::abs(choi_c(p) - 1.0) <= 1e-12 && std::abs(choi_p(p) - 1.0) <= 1e-12,
              fmt("C = ", choi_c(p), ", P = ", choi_p(p)));
  }
  return c.out;
}

inline std::vector<CheckResult> suite_prop2(const VerifyOptions& o) {
  Collector c{"prop2", {}};
  const auto full = sample_family("cnc_full", 10000, o.seed, o.jobs).samples;
  Rng rng = stream_rng(o.seed, 104);
  double cmax = 0.0, flagged_max = 0.0, pmin = 1.0;
  int flagged = 0;
  for (const auto& s : full) {
    cmax = std::max(cmax, s.c_l1);
    pmin = std::min(pmin, s.purity);
  }
  // Incoherence flag: sample the flagged locus directly (theta or phi on a multiple of pi/2).
  std::uniform_real_distribution<double> ang(0.0, 2.0 * std::numbers::pi);
  std::uniform_int_distribution<int> which(0, 7);
  for (int i = 0; i < 2000; ++i) {
    double th = ang(rng), ph = ang(rng);
    const int k = which(rng);
    (k < 4 ? th : ph) = (k % 4) * std::numbers::pi / 2.0;
    const auto fc = cnc_full_rank(th, ph, ang(rng), ang(rng));
    if (fc.incoherence_flag.value_or(false)) {
      ++flagged;
      flagged_max = std::max(flagged_max, choi_c(kraus_to_choi(fc.channel)));
    }
  }
  c.trusted("CNC full rank: 0 <= C <= sqrt 2 (1e4 draws)", cmax <= std::sqrt(2.0) + 1e-9, fmt("max C = ", cmax));
  c.trusted("CNC full rank with incoherence flag: C <= 1", flagged > 0 && flagged_max <= 1.0 + 1e-9,
            fmt(flagged, " flagged, max C = ", flagged_max));
  c.trusted("CNC purity in [1/2, 1]", pmin >= 0.5 - 1e-9, fmt("min P = ", pmin));
  const auto nu = sample_nonunital(20000, o.seed, o.jobs).samples;
  double nmax = 0.0;
  for (const auto& s : nu) nmax = std::max(nmax, s.c_l1);
  c.trusted("nonunital channels: C <= sqrt 2", nmax <= std::sqrt(2.0) + 1e-9, fmt("max C = ", nmax));
  return c.out;
}

inline std::vector<CheckResult> suite_prop3(const VerifyOptions& o) {
  Collector c{"prop3", {}};
  const auto s = sample_family("cmc", 10000, o.seed, o.jobs).samples;
  double lo = 1e9, hi = 0.0, pmin = 1.0;
  for (const auto& x : s) {
    lo = std::min(lo, x.c_l1);
    hi = std::max(hi, x.c_l1);
    pmin = std::min(pmin, x.purity);
  }
  c.trusted("CMC: 1 <= C <= 3 (1e4 draws, theta in [0, pi/4])", lo >= 1.0 - 1e-9 && hi <= 3.0 + 1e-9,
            fmt("C in [", lo, ", ", hi, "]"));
  c.trusted("CMC purity in [1/2, 1]", pmin >= 0.5 - 1e-9, fmt("min P = ", pmin));
  return c.out;
}

inline std::vector<CheckResult> suite_obs1(const VerifyOptions& o) {
  Collector c{"obs1", {}};
  const auto un = sample_unital(20000, o.seed, o.jobs).samples;
  double umax = 0.0;
  for (const auto& s : un) umax = std::max(umax, s.c_l1);
  c.trusted("unital: C <= 1", umax <= 1.0 + 1e-12, fmt("max C = ", umax));
  const auto nu = sample_nonunital(20000, o.seed, o.jobs).samples;
  int above = 0, bad = 0;
  for (const auto& s : nu) {
    if (s.c_l1 <= 1.0) continue;
    ++above;
    const double tx = s.params.at("tau_x"), ty = s.params.at("tau_y");
    bad += !(tx * tx + ty * ty > 0.0);
  }
  c.trusted("nonunital with C > 1 has tau_x^2 + tau_y^2 > 0", bad == 0, fmt(above, " samples above 1, ", bad, " bad"));
  return c.out;
}

inline std::vector<CheckResult> suite_obs2(const VerifyOptions& o) {
  Collector c{"obs2", {}};
  Rng rng = stream_rng(o.seed, 105);
  int mismatches = 0;
  for (int i = 0; i < 5000; ++i) {
    const bool unital = i % 2 == 0;
    auto spec = sample_spec(unital ? Family::UNITAL_RANDOM : Family::NONUNITAL_RANDOM, rng);
    const auto inst = build_family(spec);
    const auto& ch = std::get<AffineChannel>(inst.channel);
    const Mat2 a = subsystem_A(affine_to_choi(ch));
    const bool half_identity = max_abs_diff(a, Mat2::identity() * 0.5) <= 1e-10;
    mismatches += half_identity != ch.is_unital(1e-10);
  }
  c.trusted("unital <=> subsystem A = I/2 (5e3 channels)", mismatches == 0, fmt(mismatches, " mismatches"));
  return c.out;
}

inline std::vector<CheckResult> suite_table1(const VerifyOptions& o) {
  Collector c{"table1", {}};
  for (const char* name : {"io", "sio", "pio", "fio1", "fio2", "fio3", "fio4", "gio"}) {
    const auto samples = sample_family(name, 1000, o.seed, o.jobs).samples;
    double sub = 0.0, txy = 0.0;
    for (const auto& s : samples) {
      const auto inst = build_family({family_or_throw(s.family), s.params});
      const auto& k = std::get<KrausChannel>(inst.channel);
      sub = std::max(sub, l1_coherence(subsystem_A(kraus_to_choi(k))));
      const auto ga = kraus_to_affine(k);
      txy = std::max({txy, std::abs(ga.tau[0]), std::abs(ga.tau[1])});
    }
    c.trusted(fmt(name, ": subsystem coherence 0, tau_x = tau_y = 0 (1e3 draws)"), sub <= 1e-12 && txy <= 1e-10,
              fmt("max C_A = ", sub, ", max |tau_xy| = ", txy));
  }
  return c.out;
}

inline std::vector<CheckResult> suite_obs5(const VerifyOptions& o) {
  Collector c{"obs5", {}};
  const auto s = sample_family("two_param", 10000, o.seed, o.jobs).samples;
  const double bound = 1.0 / std::sqrt(2.0);
  int deg = 0, anti = 0, deg_bad = 0, anti_bad = 0;
  double deg_min = 9.0, anti_max = 0.0;
  for (const auto& x : s) {
    const auto d = degradability({Family::TWO_PARAM, x.params});
    if (d == Degradability::Degradable) {
      ++deg;
      deg_min = std::min(deg_min, x.c_l1);
      deg_bad += x.c_l1 < bound - 1e-9 || x.c_l1 > 1.0 + 1e-9;
    } else if (d == Degradability::AntiDegradable) {
      ++anti;
      anti_max = std::max(anti_max, x.c_l1);
      anti_bad += x.c_l1 > bound + 1e-9;
    }
  }
  c.trusted("degradable: 1/sqrt2 <= C <= 1", deg_bad == 0, fmt(deg, " samples, min C = ", deg_min));
  c.claim("anti-degradable: C <= 1/sqrt2 (published)", anti_bad == 0,
          fmt(anti_bad, " of ", anti, " exceed 1/sqrt2, max C = ", anti_max));
  return c.out;
}

inline std::vector<CheckResult> suite_obs6(const VerifyOptions&) {
  Collector c{"obs6", {}};
  double worst = 0.0;
  for (int k = 0; k < 100; ++k) {
    const double x = 0.05 * k;
    const auto choi = affine_to_choi(decoherence(x).channel);
    worst = std::max(worst, std::abs(concurrence(choi.rho) - choi_c(choi)));
  }
  c.trusted("decoherence: concurrence = C (100-point t/T grid)", worst <= 1e-9, fmt("max |delta| = ", worst));
  return c.out;
}

inline std::vector<CheckResult> suite_duality(const VerifyOptions& o) {
  Collector c{"duality", {}};
  struct Case {
    const char* family;
    double varpi, varphi;
  };
  for (const Case& k : {Case{"decoherence", 2.0, 1.0}, Case{"depolarizing", 4.0, 3.0}, Case{"gio", 2.0, 1.0},
                        Case{"fio4", 2.0, 1.0}, Case{"phase_flip", 2.0, 1.0}}) {
    const auto s = sample_family(k.family, 1000, o.seed, o.jobs).samples;
    const auto f = duality_fit(s);
    const bool ok = std::abs(f.varpi - k.varpi) <= 1e-6 && std::abs(f.varphi - k.varphi) <= 1e-6 &&
                    f.residual_max <= 1e-9 && f.light_cone_ok;
    c.trusted(fmt(k.family, ": ", k.varpi, " P - ", k.varphi, " C^2 = 1"), ok,
              fmt("fit (", f.varpi, ", ", f.varphi, "), residual ", f.residual_max, ", light cone ",
                  f.light_cone_ok ? "ok" : "violated"));
  }
  return c.out;
}

inline std::vector<CheckResult> suite_relations(const VerifyOptions&) {
  Collector c{"relations", {}};
  double ad = 0.0, hom = 0.0;
  for (int k = 1; k <= 100; ++k) {
    const double eta = k / 100.0;
    const auto choi = kraus_to_choi(amplitude_damping(eta).channel);
    ad = std::max(ad, std::abs(choi_c(choi) - std::pow(2.0 * choi_p(choi) - 1.0, 0.25)));
  }
  for (int k = 0; k < 100; ++k) {
    const auto h = homogenization(0.05 * k, 1.0, 2.0, 1.0).channel;
    const auto choi = affine_to_choi(h);
    // Same transmission as AD with eta = e^{-t/T1}.
    const auto a = kraus_to_choi(amplitude_damping(std::exp(-0.05 * k)).channel);
    hom = std::max({hom, std::abs(choi_c(choi) - std::pow(2.0 * choi_p(choi) - 1.0, 0.25)),
                    std::abs(choi_c(choi) - choi_c(a)), std::abs(choi_p(choi) - choi_p(a))});
  }
  c.trusted("amplitude damping: C = (2P - 1)^(1/4) (100-point eta grid)", ad <= 1e-9, fmt("max |delta| = ", ad));
  c.trusted("homogenization (omega = 1, T2 = 2 T1) on the AD curve", hom <= 1e-9, fmt("max |delta| = ", hom));
  return c.out;
}

inline std::vector<CheckResult> suite_families(const VerifyOptions& o) {
  Collector c{"families", {}};
  for (Family f : kAllFamilies) {
    Rng rng = stream_rng(o.seed, 1000 + static_cast<std::uint64_t>(f));
    double dc = 0.0, dp = 0.0, min_eig = 1.0;
    bool structure = true;
    for (int i = 0; i < 1000; ++i) {
      const auto inst = build_family(sample_spec(f, rng));
      const auto choi = to_choi(inst.channel);
      if (inst.prediction.c_l1) dc = std::max(dc, std::abs(*inst.prediction.c_l1 - choi_c(choi)));
      if (inst.prediction.purity) dp = std::max(dp, std::abs(*inst.prediction.purity - choi_p(choi)));
      min_eig = std::min(min_eig, min_eigenvalue(choi.rho));
      if (const auto* k = std::get_if<KrausChannel>(&inst.channel)) {
        const bool must_be_incoherent = f <= Family::CPO || f == Family::CNC_INC;
        if (must_be_incoherent && !is_incoherent_kraus(*k)) structure = false;
        if (f == Family::SIO && !is_strictly_incoherent_kraus(*k)) structure = false;
      }
    }
    c.trusted(fmt(family_name(f), ": prediction matches Choi, Choi PSD"),
              dc <= 1e-9 && dp <= 1e-9 && min_eig >= -o.tol.eps_psd && structure,
              fmt("max dC = ", dc, ", max dP = ", dp, ", min eig = ", min_eig, structure ? "" : ", Kraus form broken"));
  }
  return c.out;
}

/// Published closed forms that disagree with the Choi matrix.
inline std::vector<CheckResult> suite_findings(const VerifyOptions& o) {
  Collector c{"findings", {}};
  auto compare = [&](const std::string& label, const FamilyInstance& inst) {
    const auto choi = to_choi(inst.channel);
    const double oc = choi_c(choi), op = choi_p(choi);
    const auto& pc = *inst.published_claim;
    const bool agree = std::abs(pc.c_l1.value_or(oc) - oc) <= 1e-9 && std::abs(pc.purity.value_or(op) - op) <= 1e-9;
    c.claim(label, agree,
            fmt("published C = ", pc.c_l1.value_or(oc), ", P = ", pc.purity.value_or(op), " | oracle C = ", oc,
                ", P = ", op));
  };
  compare("bit flip at theta = 0.3", build_family({Family::BIT_FLIP, {{"theta", 0.3}}}));
  compare("bit-phase flip at theta = 0.3", build_family({Family::BIT_PHASE_FLIP, {{"theta", 0.3}}}));

  const double t1 = 0.5, t2 = 0.3, p1 = 0.4, p2 = 1.7;
  compare("CMC at (0.5, 0.3, 0.4, 1.7), literal cos m(phi1 - phi1)",
          build_family({Family::CMC, {{"theta1", t1}, {"theta2", t2}, {"phi1", p1}, {"phi2", p2}}}));
  {
    const auto choi = kraus_to_choi(cmc(t1, t2, p1, p2).channel);
    const double corrected = cmc_published_purity(t1, t2, p1, p2, false);
    c.claim("CMC purity with cos m(phi1 - phi2) read as intended", std::abs(corrected - choi_p(choi)) <= 1e-9,
            fmt("published P (corrected) = ", corrected, " | oracle P = ", choi_p(choi)));
  }
  compare("SIO purity sign of |b1|^2|b2|^2",
          build_family({Family::SIO,
                        {{"a1", 0.6}, {"a2", 0.8}, {"a3", 0.0}, {"a4", 0.0}, {"b1_re", std::sqrt(0.5)},
                         {"b1_im", 0.0}, {"b2_re", 0.0}, {"b2_im", std::sqrt(0.5)}}}));
  compare("CNC full rank with cos theta < 0",
          build_family({Family::CNC_FULL, {{"theta", 2.5}, {"phi", 0.4}, {"xi", 0.0}, {"eta", 0.0}}}));
  compare("two-parameter family with cos theta cos phi < 0",
          build_family({Family::TWO_PARAM, {{"theta", 0.3}, {"phi", 2.2}}}));
  {
    const auto choi = kraus_to_choi(cmc(std::numbers::pi / 2.0, std::numbers::pi / 2.0, 0.0, std::numbers::pi / 2.0).channel);
    c.claim("CMC lower bound C >= 1 on the full angle domain", choi_c(choi) >= 1.0 - 1e-9,
            fmt("K ~ sigma_x, sigma_y gives C = ", choi_c(choi)));
  }
  for (auto& r : suite_obs5(o))
    if (!r.trusted) c.out.push_back({"findings", r.name, r.pass, false, r.detail});
  return c.out;
}

}  // namespace detail

/// Suite registry in display order.
inline const std::vector<std::pair<std::string, SuiteFn>>& verify_suites() {
  static const std::vector<std::pair<std::string, SuiteFn>> suites = {
      {"closed", detail::suite_closed},       {"cp", detail::suite_cp},
      {"prop1", detail::suite_prop1},         {"maxima", detail::suite_maxima},
      {"prop2", detail::suite_prop2},         {"prop3", detail::suite_prop3},
      {"obs1", detail::suite_obs1},           {"obs2", detail::suite_obs2},
      {"table1", detail::suite_table1},       {"obs5", detail::suite_obs5},
      {"obs6", detail::suite_obs6},           {"duality", detail::suite_duality},
      {"relations", detail::suite_relations}, {"families", detail::suite_families},
      {"findings", detail::suite_findings},
  };
  return suites;
}

/// Runs one suite ("obs4" is an alias of "table1") or all of them.
inline std::vector<CheckResult> run_verify(const std::string& name, const VerifyOptions& o = {}) {
  const std::string key = name == "obs4" ? "table1" : name;
  std::vector<CheckResult> out;
  for (const auto& [suite, fn] : verify_suites()) {
    if (key != "all" && key != suite) continue;
    if (key == "all" && suite == "obs5") continue;  // its claim is repeated under findings
    auto r = fn(o);
    out.insert(out.end(), r.begin(), r.end());
  }
  if (out.empty() && key != "all") throw Error(Errc::InvalidArgument, "unknown verify suite '" + name + "'");
  if (key == "all") {
    auto r = detail::suite_obs5(o);
    for (auto& x : r)
      if (x.trusted) out.push_back(std::move(x));
  }
  return out;
}

inline bool any_trusted_failure(const std::vector<CheckResult>& r) {
  return std::any_of(r.begin(), r.end(), [](const CheckResult& c) { return c.trusted && !c.pass; });
}

inline std::string verify_table(const std::vector<CheckResult>& results) {
  std::ostringstream out;
  std::size_t pass = 0, fail = 0, findings = 0;
  for (const auto& r : results) {
    const char* status = r.pass ? "PASS" : (r.trusted ? "FAIL" : "FINDING");
    out << std::left << std::setw(8) << status << std::setw(10) << r.suite << r.name << "\n        " << r.detail << "\n";
    if (r.pass) ++pass;
    else if (r.trusted) ++fail;
    else ++findings;
  }
  out << pass << " passed, " << fail << " failed, " << findings << " findings\n";
  return out.str();
}

}  // namespace copu
