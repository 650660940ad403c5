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

// copu: command-line front end.
//
// Exit codes: 0 success, 2 input error, 3 channel not completely positive,
// 4 verification failure.

#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "copu/io.hpp"
#include "copu/verify.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitNotCP = 3;
constexpr int kExitVerify = 4;

struct Common {
  std::uint64_t seed = 1;
  unsigned jobs = 1;
  double tol = 1e-10;

  copu::Tolerance tolerance() const {
    copu::Tolerance t;
    t.eps_psd = tol;
    t.eps_tp = tol;
    t.validate();
    return t;
  }
};

void add_seed(CLI::App* cmd, Common& c) {
  cmd->add_option("--seed", c.seed, "random seed")->envname("COPU_SEED");
}

void add_jobs(CLI::App* cmd, Common& c) {
  cmd->add_option("--jobs", c.jobs, "worker threads (output does not depend on it)")
      ->envname("COPU_JOBS")
      ->check(CLI::Range(1u, 1024u));
}

void add_tol(CLI::App* cmd, Common& c) {
  cmd->add_option("--tol", c.tol, "PSD and trace-preservation tolerance")
      ->envname("COPU_TOL")
      ->check(CLI::PositiveNumber);
}

void emit(const std::string& out, const std::string& content) {
  if (out.empty() || out == "-") {
    std::cout << content;
  } else {
    copu::write_file_atomic(out, content);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Coherence and purity of qubit channels"};
  app.require_subcommand(1);
  Common common;

  // analyze
  std::string spec_path;
  bool as_json = false;
  auto* analyze = app.add_subcommand("analyze", "report metrics and verdicts for a channel spec (JSON)");
  analyze->add_option("spec", spec_path, "channel spec file, or - for stdin")->required();
  analyze->add_flag("--json", as_json, "emit JSON instead of text");
  add_tol(analyze, common);

  // sample
  std::string family, out_path;
  std::size_t n = 1000;
  auto* sample = app.add_subcommand("sample", "Monte Carlo samples of a family as CSV");
  sample->add_option("family", family, "family name, 'pio', 'unital' or 'nonunital'")->required();
  sample->add_option("--n", n, "number of samples")->check(CLI::PositiveNumber);
  sample->add_option("--out", out_path, "output CSV (default stdout)");
  add_seed(sample, common);
  add_jobs(sample, common);

  // boundary
  std::size_t bins = 100;
  auto* boundary = app.add_subcommand("boundary", "analytic or grid-search boundary curve as CSV");
  boundary->add_option("family", family, "family name")->required();
  boundary->add_option("--bins", bins, "number of purity intervals")->check(CLI::Range(1, 100000));
  boundary->add_option("--out", out_path, "output CSV (default stdout)");

  // verify
  std::string suite = "all";
  auto* verify = app.add_subcommand("verify", "run verification suites");
  verify->add_option("suite", suite, "suite name or 'all'");
  add_seed(verify, common);
  add_jobs(verify, common);
  add_tol(verify, common);

  // plot
  std::vector<std::string> inputs;
  auto* plot = app.add_subcommand("plot", "SVG plot of sample and boundary CSVs");
  plot->add_option("inputs", inputs, "CSV files from 'sample' or 'boundary'")->required();
  plot->add_option("--out", out_path, "output SVG")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitInput;
  }

  try {
    if (*analyze) {
      const std::string text =
          spec_path == "-" ? std::string(std::istreambuf_iterator<char>(std::cin), {}) : copu::read_text_file(spec_path);
      const auto tol = common.tolerance();
      const auto report = copu::analyze(copu::parse_channel_spec(text, tol), tol);
      std::cout << (as_json ? copu::to_json(report).dump(2) + "\n" : copu::to_text(report));
      return report.cp ? kExitOk : kExitNotCP;
    }
    if (*sample) {
      if (!copu::is_sampling_name(family)) throw copu::Error(copu::Errc::UnknownFamily, family);
      const auto set = copu::sample_family(family, n, common.seed, common.jobs);
      emit(out_path, copu::samples_to_csv(set.samples));
      return kExitOk;
    }
    if (*boundary) {
      emit(out_path, copu::boundary_to_csv(copu::boundary_curve(family, bins + 1)));
      return kExitOk;
    }
    if (*verify) {
      copu::VerifyOptions opts{common.seed, common.jobs, common.tolerance()};
      const auto results = copu::run_verify(suite, opts);
      std::cout << copu::verify_table(results);
      return copu::any_trusted_failure(results) ? kExitVerify : kExitOk;
    }
    if (*plot) {
      std::vector<copu::PlotSeries> series;
      for (const auto& in : inputs) series.push_back(copu::load_plot_series(in));
      copu::write_file_atomic(out_path, copu::render_svg(series));
      return kExitOk;
    }
  } catch (const copu::Error& e) {
    std::cerr << "copu: " << e.what() << "\n";
    return e.code() == copu::Errc::NotCompletelyPositive ? kExitNotCP : kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "copu: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitInput;
}
