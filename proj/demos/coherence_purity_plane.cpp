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

// Samples a few channel classes, prints where each sits on the
// coherence-purity plane and writes an SVG with the analytic curves on top.
//
//   coherence_purity_plane [out.svg]

#include <iomanip>
#include <iostream>

#include "copu/io.hpp"

int main(int argc, char** argv) {
  const std::string out = argc > 1 ? argv[1] : "coherence_purity_plane.svg";
  constexpr std::size_t n = 20000;

  std::vector<copu::PlotSeries> series;
  std::cout << std::fixed << std::setprecision(4);
  std::cout << "family          purity range        C_l1 range\n";
  for (const char* name : {"io", "sio", "unital", "nonunital"}) {
    const auto set = copu::sample_family(name, n, 1);
    double pmin = 1, pmax = 0, cmin = 9, cmax = 0;
    for (const auto& s : set.samples) {
      pmin = std::min(pmin, s.purity);
      pmax = std::max(pmax, s.purity);
      cmin = std::min(cmin, s.c_l1);
      cmax = std::max(cmax, s.c_l1);
    }
    std::cout << std::left << std::setw(16) << name << "[" << pmin << ", " << pmax << "]  [" << cmin << ", " << cmax
              << "]";
    if (set.draws > set.samples.size()) std::cout << "  acceptance " << set.acceptance_rate();
    std::cout << "\n";
    series.push_back({name, set.samples, {}});
  }

  // One-parameter semigroups trace curves fixed by a duality relation.
  for (const char* name : {"decoherence", "depolarizing"}) {
    const auto fit = copu::duality_fit(copu::sample_family(name, 1000, 1).samples);
    std::cout << name << ": " << fit.varpi << " P - " << fit.varphi << " C^2 = 1 (max residual "
              << std::scientific << fit.residual_max << std::fixed << ")\n";
  }

  for (const char* name : {"decoherence", "depolarizing", "amplitude_damping", "unital"})
    series.push_back({std::string(name) + " boundary", {}, copu::boundary_curve(name, 61)});

  copu::write_file_atomic(out, copu::render_svg(series));
  std::cout << "wrote " << out << "\n";
}
