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

// Monte Carlo exploration of the coherence-purity plane.
//
// Draws are grouped in fixed chunks of kChunkSize. Chunk k always uses the
// generator seeded from (seed, k) and writes to slots [k*kChunkSize, ...), so
// the output is a function of (family, n, seed) alone and the number of
// worker threads only changes wall time.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "copu/families.hpp"

namespace copu {

struct CoPuSample {
  std::string family;
  double purity = 0.0;
  double c_l1 = 0.0;
  double c_rel = 0.0;
  Params params;
};

struct SampleSet {
  std::vector<CoPuSample> samples;
  std::uint64_t draws = 0;           // candidate draws including CP rejections
  double oracle_max_deviation = 0.0;  // closed form vs Choi on the checked subsample
  std::size_t oracle_checked = 0;

  double acceptance_rate() const {
    return draws == 0 ? 0.0 : static_cast<double>(samples.size()) / static_cast<double>(draws);
  }
};

inline constexpr std::size_t kChunkSize = 256;

/// Generator for stream `index` of a run seeded with `seed`.
inline Rng stream_rng(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  return Rng(seq);
}

namespace detail {

struct ChunkStats {
  std::uint64_t draws = 0;
  double oracle_dev = 0.0;
  std::size_t oracle_checked = 0;
};

/// Runs `fill(rng, first, last, out, stats)` for every chunk on `jobs`
/// threads and merges statistics in chunk order.
template <typename Fill>
SampleSet run_chunked(std::size_t n, std::uint64_t seed, unsigned jobs, Fill fill) {
  if (n == 0) throw Error(Errc::InvalidArgument, "sample count must be >= 1");
  SampleSet set;
  set.samples.resize(n);
  const std::size_t chunks = (n + kChunkSize - 1) / kChunkSize;
  std::vector<ChunkStats> stats(chunks);
  std::atomic<std::size_t> next{0};

  auto worker = [&] {
    for (std::size_t k = next.fetch_add(1); k < chunks; k = next.fetch_add(1)) {
      Rng rng = stream_rng(seed, k);
      const std::size_t first = k * kChunkSize;
      const std::size_t last = std::min(n, first + kChunkSize);
      fill(rng, first, last, set.samples, stats[k]);
    }
  };

  jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(chunks)));
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(jobs);
    for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(worker);
  }

  for (const auto& s : stats) {
    set.draws += s.draws;
    set.oracle_max_deviation = std::max(set.oracle_max_deviation, s.oracle_dev);
    set.oracle_checked += s.oracle_checked;
  }
  return set;
}

inline double choi_rel_entropy(const ChoiMatrix& choi) { return rel_entropy_coherence(choi.rho); }

/// Closed-form sample of an affine channel; every 100th global index is
/// cross-checked against the Choi matrix.
inline CoPuSample affine_sample(std::string_view family, const AffineChannel& ch, Params params,
                                std::size_t index, ChunkStats& st) {
  const ChoiMatrix choi = affine_to_choi(ch);
  CoPuSample s{std::string(family), channel_purity_closed(ch), channel_l1_closed(ch), choi_rel_entropy(choi),
               std::move(params)};
  if (index % 100 == 0) {
    st.oracle_dev = std::max({st.oracle_dev, std::abs(s.c_l1 - l1_coherence(choi.rho)),
                              std::abs(s.purity - purity(choi.rho))});
    ++st.oracle_checked;
  }
  return s;
}

}  // namespace detail

/// Unital channels: lambda uniform in [-1, 1]^3, kept when inside the CP tetrahedron.
inline SampleSet sample_unital(std::size_t n, std::uint64_t seed, unsigned jobs = 1) {
  return detail::run_chunked(n, seed, jobs, [](Rng& rng, std::size_t first, std::size_t last,
                                               std::vector<CoPuSample>& out, detail::ChunkStats& st) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (std::size_t i = first; i < last; ++i) {
      Vec3 l;
      do {
        for (auto& x : l) x = u(rng);
        ++st.draws;
      } while (!unital_cp(l).cp);
      out[i] = detail::affine_sample("unital", {l, {0.0, 0.0, 0.0}},
                                     {{"lambda_x", l[0]}, {"lambda_y", l[1]}, {"lambda_z", l[2]}}, i, st);
    }
  });
}

/// Nonunital channels: (lambda, tau) uniform in [-1, 1]^6, kept when CP.
inline SampleSet sample_nonunital(std::size_t n, std::uint64_t seed, unsigned jobs = 1) {
  return detail::run_chunked(n, seed, jobs, [](Rng& rng, std::size_t first, std::size_t last,
                                               std::vector<CoPuSample>& out, detail::ChunkStats& st) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (std::size_t i = first; i < last; ++i) {
      Vec3 l, t;
      do {
        for (auto& x : l) x = u(rng);
        for (auto& x : t) x = u(rng);
        ++st.draws;
      } while (!nonunital_cp(l, t).cp);
      out[i] = detail::affine_sample("nonunital", {l, t},
                                     {{"lambda_x", l[0]}, {"lambda_y", l[1]}, {"lambda_z", l[2]},
                                      {"tau_x", t[0]}, {"tau_y", t[1]}, {"tau_z", t[2]}},
                                     i, st);
    }
  });
}

/// Families accepted by `sample_family`: every family name plus the group
/// "pio", which draws one of the six PIO variants uniformly per sample.
inline bool is_sampling_name(std::string_view name) { return name == "pio" || parse_family(name).has_value(); }

inline SampleSet sample_family(std::string_view name, std::size_t n, std::uint64_t seed, unsigned jobs = 1) {
  if (name == "unital") return sample_unital(n, seed, jobs);
  if (name == "nonunital") return sample_nonunital(n, seed, jobs);
  const bool pio_group = name == "pio";
  const std::optional<Family> fixed = pio_group ? std::nullopt : std::optional<Family>(family_or_throw(name));

  return detail::run_chunked(n, seed, jobs, [&](Rng& rng, std::size_t first, std::size_t last,
                                                std::vector<CoPuSample>& out, detail::ChunkStats& st) {
    std::uniform_int_distribution<int> variant(0, 5);
    for (std::size_t i = first; i < last; ++i) {
      const Family f = fixed ? *fixed : static_cast<Family>(static_cast<int>(Family::PIO1) + variant(rng));
      FamilySpec spec = sample_spec(f, rng);
      ++st.draws;
      const FamilyInstance inst = build_family(spec);
      const ChoiMatrix choi = to_choi(inst.channel);
      CoPuSample s{std::string(family_name(f)), purity(choi.rho), l1_coherence(choi.rho),
                   detail::choi_rel_entropy(choi), std::move(spec.params)};
      if (const auto* aff = std::get_if<AffineChannel>(&inst.channel)) {
        // Affine families report closed forms; the Choi values serve as the cross-check.
        const double c = channel_l1_closed(*aff);
        const double p = channel_purity_closed(*aff);
        if (i % 100 == 0) {
          st.oracle_dev = std::max({st.oracle_dev, std::abs(c - s.c_l1), std::abs(p - s.purity)});
          ++st.oracle_checked;
        }
        s.c_l1 = c;
        s.purity = p;
      }
      out[i] = std::move(s);
    }
  });
}

// ---------------------------------------------------------------------------
// Envelopes.

struct RegionBin {
  double purity_lo = 0.0;
  double purity_hi = 0.0;
  double c_min = 0.0;
  double c_max = 0.0;
  std::size_t count = 0;
  bool low_coverage = true;
};

struct RegionCurve {
  std::string family;
  std::vector<RegionBin> bins;

  /// Index of the bin containing `p`, if inside the curve's purity range.
  std::optional<std::size_t> bin_of(double p) const {
    if (bins.empty() || p < bins.front().purity_lo || p > bins.back().purity_hi) return std::nullopt;
    const double width = bins.front().purity_hi - bins.front().purity_lo;
    if (width <= 0.0) return 0;
    const auto k = static_cast<std::size_t>((p - bins.front().purity_lo) / width);
    return std::min(k, bins.size() - 1);
  }
};

inline constexpr std::size_t kMinCoverage = 10;
inline constexpr std::size_t kMinEnvelopeSamples = 100;

/// Envelope over uniform bins spanning [lo, hi].
inline RegionCurve region_envelope(const std::vector<CoPuSample>& samples, std::size_t bin_count, double lo,
                                   double hi) {
  if (samples.empty()) throw Error(Errc::InvalidArgument, "no samples");
  if (samples.size() < kMinEnvelopeSamples) throw Error(Errc::InvalidArgument, "envelope needs >= 100 samples");
  if (bin_count == 0 || !(hi >= lo)) throw Error(Errc::InvalidArgument, "bad bin layout");

  RegionCurve curve{samples.front().family, {}};
  curve.bins.resize(bin_count);
  const double width = (hi - lo) / static_cast<double>(bin_count);
  for (std::size_t k = 0; k < bin_count; ++k) {
    auto& b = curve.bins[k];
    b.purity_lo = lo + width * static_cast<double>(k);
    b.purity_hi = k + 1 == bin_count ? hi : lo + width * static_cast<double>(k + 1);
    b.c_min = std::numeric_limits<double>::infinity();
    b.c_max = -std::numeric_limits<double>::infinity();
  }
  for (const auto& s : samples) {
    const auto k = curve.bin_of(s.purity);
    if (!k) continue;
    auto& b = curve.bins[*k];
    b.c_min = std::min(b.c_min, s.c_l1);
    b.c_max = std::max(b.c_max, s.c_l1);
    ++b.count;
  }
  for (auto& b : curve.bins) {
    b.low_coverage = b.count < kMinCoverage;
    if (b.count == 0) b.c_min = b.c_max = 0.0;
  }
  return curve;
}

/// Envelope over the observed purity range.
inline RegionCurve region_envelope(const std::vector<CoPuSample>& samples, std::size_t bin_count = 64) {
  if (samples.empty()) throw Error(Errc::InvalidArgument, "no samples");
  auto [lo, hi] = std::minmax_element(samples.begin(), samples.end(),
                                      [](const auto& a, const auto& b) { return a.purity < b.purity; });
  return region_envelope(samples, bin_count, lo->purity, hi->purity);
}

struct ContainmentReport {
  std::size_t checked = 0;    // inner samples landing in a well-covered outer bin
  std::size_t skipped = 0;    // outside the outer range or in a low-coverage bin
  std::size_t violations = 0;
  double max_excess = 0.0;    // largest distance outside [c_min, c_max]
};

/// How far `inner` samples stray outside the well-covered bins of `outer`.
inline ContainmentReport containment(const std::vector<CoPuSample>& inner, const RegionCurve& outer, double tol) {
  ContainmentReport r;
  for (const auto& s : inner) {
    const auto k = outer.bin_of(s.purity);
    if (!k || outer.bins[*k].low_coverage) {
      ++r.skipped;
      continue;
    }
    ++r.checked;
    const auto& b = outer.bins[*k];
    const double excess = std::max({0.0, s.c_l1 - b.c_max, b.c_min - s.c_l1});
    r.max_excess = std::max(r.max_excess, excess);
    if (excess > tol) ++r.violations;
  }
  return r;
}

// ---------------------------------------------------------------------------
// Duality relation varpi * P - varphi * C^2 = 1.

struct DualityFit {
  double varpi = 0.0;
  double varphi = 0.0;
  double residual_max = 0.0;
  bool light_cone_ok = false;
  double light_cone_max_excess = 0.0;
};

inline DualityFit duality_fit(const std::vector<CoPuSample>& samples) {
  if (samples.size() < 2) throw Error(Errc::InvalidArgument, "duality fit needs >= 2 samples");
  // Normal equations for [P, -C^2] x = 1.
  double spp = 0.0, spc = 0.0, scc = 0.0, sp = 0.0, sc = 0.0;
  for (const auto& s : samples) {
    const double p = s.purity;
    const double c = -s.c_l1 * s.c_l1;
    spp += p * p;
    spc += p * c;
    scc += c * c;
    sp += p;
    sc += c;
  }
  const double det = spp * scc - spc * spc;
  if (!(std::abs(det) > 1e-12 * spp * scc)) throw Error(Errc::Degenerate, "collinear (P, C^2) samples");

  DualityFit fit;
  fit.varpi = (sp * scc - sc * spc) / det;
  fit.varphi = (spp * sc - spc * sp) / det;
  for (const auto& s : samples) {
    fit.residual_max =
        std::max(fit.residual_max, std::abs(fit.varpi * s.purity - fit.varphi * s.c_l1 * s.c_l1 - 1.0));
  }
  if (fit.varpi > 0.0 && fit.varphi > 0.0) {
    const double cone = std::sqrt(fit.varpi / fit.varphi);
    fit.light_cone_ok = true;
    for (const auto& s : samples) {
      const double excess = s.c_l1 / std::sqrt(s.purity) - cone;
      fit.light_cone_max_excess = std::max(fit.light_cone_max_excess, excess);
      if (excess > 1e-9) fit.light_cone_ok = false;
    }
  }
  return fit;
}

// ---------------------------------------------------------------------------
// Boundary curves.

struct BoundaryPoint {
  double purity;
  double c_min;
  double c_max;
};

struct UnitalExtent {
  double c_min;
  double c_max;
};

/// Extreme coherence of unital channels at purity `p` by grid search.
///
/// The search runs over lambda_x >= |lambda_y| (every unital point is
/// equivalent to one there under sign pairs and axis swaps, and C = lambda_x
/// on it) with lambda_z fixed by the purity. The maximum is then refined by
/// bisection on the exact slice condition lambda_y^2 + lambda_z^2 <= 1 + lambda_x^2.
inline UnitalExtent unital_extent_grid(double p, double step = 1e-3) {
  if (p < 0.25 - 1e-12 || p > 1.0 + 1e-12) throw Error(Errc::InvalidArgument, "purity outside [1/4, 1]");
  const double r2 = std::max(0.0, 4.0 * p - 1.0);
  const Tolerance loose{1e-12, 1e-9, 1e-10};
  const auto steps = static_cast<long>(std::ceil(1.0 / step));

  auto feasible_grid = [&](double lx) {
    for (long j = -steps; j <= steps; ++j) {
      const double ly = static_cast<double>(j) * step;
      if (std::abs(ly) > lx + 1e-15) continue;
      const double z2 = r2 - lx * lx - ly * ly;
      if (z2 < -1e-12) continue;
      const double lz = std::sqrt(std::max(0.0, z2));
      if (unital_cp({lx, ly, lz}, loose).cp || unital_cp({lx, ly, -lz}, loose).cp) return true;
    }
    return false;
  };

  std::optional<double> lo, hi;
  for (long i = 0; i <= steps; ++i) {
    const double lx = std::min(1.0, static_cast<double>(i) * step);
    if (lx * lx > r2 + 1e-12) break;
    if (feasible_grid(lx)) {
      if (!lo) lo = lx;
      hi = lx;
    }
  }
  if (!lo) throw Error(Errc::Degenerate, "no feasible grid point");

  // Refine the maximum: the largest lambda_x whose slice circle meets the
  // tetrahedron cross-section.
  auto feasible_exact = [&](double lx) { return lx <= 1.0 && lx * lx <= r2 && r2 - lx * lx <= 1.0 + lx * lx; };
  double a = *hi;
  double b = std::min({1.0, std::sqrt(r2), *hi + step});
  if (feasible_exact(b)) {
    a = b;
  } else {
    while (b - a > 1e-7) {
      const double m = 0.5 * (a + b);
      (feasible_exact(m) ? a : b) = m;
    }
  }
  return {*lo, std::max(*hi, a)};
}

/// Whether `boundary_curve` supports `name`.
inline bool has_boundary(std::string_view name) {
  static constexpr std::string_view kNames[] = {"decoherence", "depolarizing", "amplitude_damping",
                                                "homogenization", "gio", "fio4", "phase_flip", "unital"};
  return std::find(std::begin(kNames), std::end(kNames), name) != std::end(kNames);
}

/// (purity, c_min, c_max) rows on `points` purity values. Curve families
/// have c_min = c_max; "homogenization" gives the omega = 1, T2 = 2 T1 curve.
inline std::vector<BoundaryPoint> boundary_curve(std::string_view name, std::size_t points = 101) {
  if (points < 2) throw Error(Errc::InvalidArgument, "need >= 2 boundary points");
  auto sweep = [&](double lo, double hi, auto&& f) {
    std::vector<BoundaryPoint> out;
    for (std::size_t k = 0; k < points; ++k) {
      const double p = lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(points - 1);
      out.push_back(f(p));
    }
    return out;
  };
  auto curve = [&](double lo, auto&& c) {
    return sweep(lo, 1.0, [&](double p) {
      const double v = c(p);
      return BoundaryPoint{p, v, v};
    });
  };
  if (name == "decoherence" || name == "gio" || name == "fio4" || name == "phase_flip") {
    return curve(0.5, [](double p) { return std::sqrt(std::max(0.0, 2.0 * p - 1.0)); });
  }
  if (name == "depolarizing") {
    return curve(0.25, [](double p) { return std::sqrt(std::max(0.0, (4.0 * p - 1.0) / 3.0)); });
  }
  if (name == "amplitude_damping" || name == "homogenization") {
    return curve(0.5, [](double p) { return std::pow(std::max(0.0, 2.0 * p - 1.0), 0.25); });
  }
  if (name == "unital") {
    return sweep(0.25, 1.0, [](double p) {
      const auto e = unital_extent_grid(p);
      return BoundaryPoint{p, e.c_min, e.c_max};
    });
  }
  throw Error(Errc::Unsupported, "no boundary curve for family '" + std::string(name) + "'");
}

}  // namespace copu
