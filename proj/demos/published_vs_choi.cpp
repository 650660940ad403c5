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

// Puts each family's closed-form prediction next to the value read off its
// Choi matrix. Where a published formula disagrees, it is shown as a claim.

#include <iomanip>
#include <iostream>

#include "copu/io.hpp"

namespace {

void show(const char* label, const copu::FamilySpec& spec) {
  const auto rep = copu::analyze(spec);
  std::cout << label << "\n  Choi:      C = " << rep.c_l1.value << "  P = " << rep.purity.value << "\n";
  for (const auto& p : rep.predictions) {
    std::cout << "  " << (p.trusted ? "predicted" : "claimed  ") << ":";
    if (p.c_l1) std::cout << " C = " << *p.c_l1;
    if (p.purity) std::cout << "  P = " << *p.purity;
    std::cout << "   (" << p.provenance << ")\n";
  }
}

}  // namespace

int main() {
  std::cout << std::setprecision(6);
  show("bit flip, theta = 0.3", {copu::Family::BIT_FLIP, {{"theta", 0.3}}});
  show("phase flip, theta = 0.3", {copu::Family::PHASE_FLIP, {{"theta", 0.3}}});
  show("CMC at (0.5, 0.3, 0.4, 1.7)",
       {copu::Family::CMC, {{"theta1", 0.5}, {"theta2", 0.3}, {"phi1", 0.4}, {"phi2", 1.7}}});
  show("CNC full rank, theta = 2.5", {copu::Family::CNC_FULL, {{"theta", 2.5}, {"phi", 0.4}, {"xi", 0}, {"eta", 0}}});
  show("amplitude damping, eta = 0.25", {copu::Family::AD, {{"eta", 0.25}}});
}
