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

// Channel-spec documents, CSV tables, SVG plots and analysis reports.
//
// Channel spec (JSON, exactly one top-level key):
//   {"kraus":  [ [[[re,im],[re,im]], [[re,im],[re,im]]], ... ]}
//   {"affine": {"lambda": [x,y,z], "tau": [x,y,z]}}
//   {"family": {"name": "amplitude_damping", "params": {"eta": 0.5}}}

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <optional>
#include <sstream>
#include <string>
#include <system_error>
#include <variant>
#include <vector>

#include "copu/explorer.hpp"
#include "copu/families.hpp"
#include "json.hpp"

namespace copu {

using Json = nlohmann::json;

// ---------------------------------------------------------------------------
// Channel-spec documents.

using ChannelSpec = std::variant<KrausChannel, AffineChannel, FamilySpec>;

namespace detail {

inline double json_number(const Json& j, const std::string& where) {
  if (!j.is_number()) throw Error(Errc::Parse, where + ": expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw Error(Errc::NonFinite, where + ": not finite");
  return v;
}

inline Vec3 json_vec3(const Json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 3) throw Error(Errc::Parse, where + ": expected an array of 3 numbers");
  return {json_number(j[0], where), json_number(j[1], where), json_number(j[2], where)};
}

inline Mat2 json_kraus_op(const Json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2) throw Error(Errc::Parse, where + ": expected 2 rows");
  Mat2 k;
  for (std::size_t r = 0; r < 2; ++r) {
    if (!j[r].is_array() || j[r].size() != 2) throw Error(Errc::Parse, where + ": expected 2 entries per row");
    for (std::size_t c = 0; c < 2; ++c) {
      const Json& z = j[r][c];
      if (!z.is_array() || z.size() != 2) throw Error(Errc::Parse, where + ": entries are [re, im] pairs");
      k(r, c) = {json_number(z[0], where), json_number(z[1], where)};
    }
  }
  return k;
}

}  // namespace detail

inline ChannelSpec parse_channel_spec(const Json& doc, const Tolerance& tol = {}) {
  if (!doc.is_object() || doc.size() != 1) {
    throw Error(Errc::Parse, "channel spec must have exactly one of 'kraus', 'affine', 'family'");
  }
  if (doc.contains("kraus")) {
    const Json& ops = doc["kraus"];
    if (!ops.is_array() || ops.empty()) throw Error(Errc::Parse, "kraus: expected a nonempty array");
    std::vector<Mat2> ks;
    for (std::size_t i = 0; i < ops.size(); ++i) ks.push_back(detail::json_kraus_op(ops[i], "kraus[" + std::to_string(i) + "]"));
    return KrausChannel(std::move(ks), tol);
  }
  if (doc.contains("affine")) {
    const Json& a = doc["affine"];
    if (!a.is_object() || !a.contains("lambda") || !a.contains("tau")) {
      throw Error(Errc::Parse, "affine: expected {\"lambda\": [..], \"tau\": [..]}");
    }
    return AffineChannel{detail::json_vec3(a["lambda"], "affine.lambda"), detail::json_vec3(a["tau"], "affine.tau")};
  }
  if (doc.contains("family")) {
    const Json& f = doc["family"];
    if (!f.is_object() || !f.contains("name") || !f["name"].is_string()) {
      throw Error(Errc::Parse, "family: expected {\"name\": string, \"params\": {..}}");
    }
    FamilySpec spec{family_or_throw(f["name"].get<std::string>()), {}};
    if (f.contains("params")) {
      if (!f["params"].is_object()) throw Error(Errc::Parse, "family.params must be an object");
      for (const auto& [key, value] : f["params"].items()) spec.params[key] = detail::json_number(value, "params." + key);
    }
    return spec;
  }
  throw Error(Errc::Parse, "channel spec must have exactly one of 'kraus', 'affine', 'family'");
}

inline ChannelSpec parse_channel_spec(const std::string& text, const Tolerance& tol = {}) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw Error(Errc::Parse, e.what());
  }
  return parse_channel_spec(doc, tol);
}

inline ChannelSpec parse_channel_spec(const char* text, const Tolerance& tol = {}) {
  return parse_channel_spec(std::string(text), tol);
}

inline std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::Io, "cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// Writes through a sibling temporary file and renames it into place.
inline void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(Errc::Io, "cannot write " + tmp.string());
    out << content;
    out.flush();
    if (!out) throw Error(Errc::Io, "write failed for " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw Error(Errc::Io, "cannot move output into " + path.string());
  }
}

// ---------------------------------------------------------------------------
// CSV.

/// Shortest round-trip-safe text: 17 significant digits, locale independent.
inline std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

inline std::string samples_to_csv(const std::vector<CoPuSample>& samples) {
  std::vector<std::string> keys;
  if (!samples.empty()) {
    if (auto f = parse_family(samples.front().family)) {
      keys = family_param_keys(*f);
    } else {
      for (const auto& kv : samples.front().params) keys.push_back(kv.first);
    }
  }
  std::string out = "family,purity,c_l1,c_rel";
  for (const auto& k : keys) out += "," + k;
  out += "\n";
  for (const auto& s : samples) {
    out += s.family;
    out += "," + format_double(s.purity) + "," + format_double(s.c_l1) + "," + format_double(s.c_rel);
    for (const auto& k : keys) {
      auto it = s.params.find(k);
      out += ",";
      if (it != s.params.end()) out += format_double(it->second);
    }
    out += "\n";
  }
  return out;
}

inline std::string boundary_to_csv(const std::vector<BoundaryPoint>& pts) {
  std::string out = "purity,c_min,c_max\n";
  for (const auto& p : pts) out += format_double(p.purity) + "," + format_double(p.c_min) + "," + format_double(p.c_max) + "\n";
  return out;
}

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

inline std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

inline CsvTable parse_csv(const std::string& text) {
  CsvTable t;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto cells = split_csv_line(line);
    if (t.header.empty()) {
      t.header = std::move(cells);
      continue;
    }
    if (cells.size() != t.header.size()) {
      throw Error(Errc::Parse, "line " + std::to_string(lineno) + ": expected " + std::to_string(t.header.size()) +
                                   " cells, got " + std::to_string(cells.size()));
    }
    t.rows.push_back(std::move(cells));
  }
  if (t.header.empty()) throw Error(Errc::Parse, "empty CSV");
  return t;
}

inline double parse_double(const std::string& s) {
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size() || !std::isfinite(v)) {
    throw Error(Errc::Parse, "not a finite number: '" + s + "'");
  }
  return v;
}

/// Inverse of `samples_to_csv`.
inline std::vector<CoPuSample> samples_from_csv(const CsvTable& t) {
  if (t.header.size() < 4 || t.header[0] != "family" || t.header[1] != "purity" || t.header[2] != "c_l1" ||
      t.header[3] != "c_rel") {
    throw Error(Errc::Parse, "not a sample table (header must start family,purity,c_l1,c_rel)");
  }
  std::vector<CoPuSample> out;
  out.reserve(t.rows.size());
  for (const auto& r : t.rows) {
    CoPuSample s{r[0], parse_double(r[1]), parse_double(r[2]), parse_double(r[3]), {}};
    for (std::size_t k = 4; k < r.size(); ++k)
      if (!r[k].empty()) s.params[t.header[k]] = parse_double(r[k]);
    out.push_back(std::move(s));
  }
  return out;
}

inline std::vector<BoundaryPoint> boundary_from_csv(const CsvTable& t) {
  if (t.header != std::vector<std::string>{"purity", "c_min", "c_max"}) {
    throw Error(Errc::Parse, "not a boundary table (header must be purity,c_min,c_max)");
  }
  std::vector<BoundaryPoint> out;
  for (const auto& r : t.rows) out.push_back({parse_double(r[0]), parse_double(r[1]), parse_double(r[2])});
  return out;
}

// ---------------------------------------------------------------------------
// SVG plot.

struct PlotSeries {
  std::string label;
  std::vector<CoPuSample> points;       // scatter
  std::vector<BoundaryPoint> boundary;  // curve(s)
};

/// Loads a CSV produced by `sample` or `boundary`.
inline PlotSeries load_plot_series(const std::filesystem::path& path) {
  const CsvTable t = parse_csv(read_text_file(path));
  PlotSeries s{path.stem().string(), {}, {}};
  if (!t.header.empty() && t.header[0] == "family") {
    s.points = samples_from_csv(t);
  } else {
    s.boundary = boundary_from_csv(t);
  }
  return s;
}

inline std::string render_svg(const std::vector<PlotSeries>& series) {
  constexpr double kW = 800.0, kH = 600.0;
  constexpr double kLeft = 70.0, kRight = 20.0, kTop = 20.0, kBottom = 60.0;
  constexpr double kPmin = 0.25, kPmax = 1.0;
  static constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                                             "#9467bd", "#8c564b", "#e377c2", "#17becf"};

  double cmax = 1.0;
  for (const auto& s : series) {
    for (const auto& p : s.points) cmax = std::max(cmax, p.c_l1);
    for (const auto& b : s.boundary) cmax = std::max(cmax, b.c_max);
  }
  const double ytop = std::ceil(cmax * 1.05 * 2.0) / 2.0;  // next multiple of 0.5

  auto x_of = [&](double p) { return kLeft + (p - kPmin) / (kPmax - kPmin) * (kW - kLeft - kRight); };
  auto y_of = [&](double c) { return kH - kBottom - c / ytop * (kH - kTop - kBottom); };
  auto num = [](double v) {
    std::ostringstream ss;
    ss << std::fixed << std::setprecision(2) << v;
    return ss.str();
  };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"600\" viewBox=\"0 0 800 600\">\n";
  svg << "<rect width=\"800\" height=\"600\" fill=\"white\"/>\n";
  // Axes with their tick labels.
  svg << "<g stroke=\"black\" stroke-width=\"1\">\n";
  svg << "<line x1=\"" << num(kLeft) << "\" y1=\"" << num(kH - kBottom) << "\" x2=\"" << num(kW - kRight) << "\" y2=\""
      << num(kH - kBottom) << "\"/>\n";
  svg << "<line x1=\"" << num(kLeft) << "\" y1=\"" << num(kTop) << "\" x2=\"" << num(kLeft) << "\" y2=\""
      << num(kH - kBottom) << "\"/>\n";
  svg << "</g>\n<g font-family=\"sans-serif\" font-size=\"12\">\n";
  for (int k = 0; k <= 6; ++k) {
    const double p = kPmin + 0.125 * k;
    svg << "<line x1=\"" << num(x_of(p)) << "\" y1=\"" << num(kH - kBottom) << "\" x2=\"" << num(x_of(p))
        << "\" y2=\"" << num(kH - kBottom + 5) << "\" stroke=\"black\"/>";
    svg << "<text x=\"" << num(x_of(p)) << "\" y=\"" << num(kH - kBottom + 20) << "\" text-anchor=\"middle\">"
        << std::setprecision(4) << p << "</text>\n";
  }
  const int yticks = static_cast<int>(std::lround(ytop / 0.25));
  for (int k = 0; k <= yticks; ++k) {
    const double c = 0.25 * k;
    svg << "<line x1=\"" << num(kLeft - 5) << "\" y1=\"" << num(y_of(c)) << "\" x2=\"" << num(kLeft) << "\" y2=\""
        << num(y_of(c)) << "\" stroke=\"black\"/>";
    svg << "<text x=\"" << num(kLeft - 8) << "\" y=\"" << num(y_of(c) + 4) << "\" text-anchor=\"end\">" << c
        << "</text>\n";
  }
  svg << "<text x=\"" << num((kLeft + kW - kRight) / 2) << "\" y=\"" << num(kH - 15)
      << "\" text-anchor=\"middle\">purity</text>\n";
  svg << "<text x=\"18\" y=\"" << num((kTop + kH - kBottom) / 2) << "\" text-anchor=\"middle\" transform=\"rotate(-90 18 "
      << num((kTop + kH - kBottom) / 2) << ")\">l1 coherence</text>\n";
  svg << "</g>\n";

  for (std::size_t i = 0; i < series.size(); ++i) {
    const auto& s = series[i];
    const char* color = kPalette[i % std::size(kPalette)];
    if (!s.points.empty()) {
      svg << "<g fill=\"" << color << "\" fill-opacity=\"0.5\">\n";
      for (const auto& p : s.points) {
        svg << "<circle cx=\"" << num(x_of(p.purity)) << "\" cy=\"" << num(y_of(p.c_l1)) << "\" r=\"1.5\"/>\n";
      }
      svg << "</g>\n";
    }
    if (!s.boundary.empty()) {
      for (bool upper : {false, true}) {
        svg << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\" points=\"";
        for (const auto& b : s.boundary) svg << num(x_of(b.purity)) << "," << num(y_of(upper ? b.c_max : b.c_min)) << " ";
        svg << "\"/>\n";
      }
    }
    const double ly = kTop + 15.0 + 18.0 * static_cast<double>(i);
    svg << "<rect x=\"" << num(kLeft + 15) << "\" y=\"" << num(ly - 9) << "\" width=\"10\" height=\"10\" fill=\"" << color
        << "\"/><text x=\"" << num(kLeft + 30) << "\" y=\"" << num(ly) << "\" font-family=\"sans-serif\" font-size=\"12\">"
        << s.label << "</text>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

// ---------------------------------------------------------------------------
// Analysis report.

struct Quantity {
  double value = 0.0;
  double tol = 0.0;
};

struct PredictionDelta {
  std::string provenance;
  bool trusted = true;
  std::optional<double> c_l1;
  std::optional<double> purity;
  std::optional<double> c_l1_delta;   // prediction - oracle
  std::optional<double> purity_delta;
};

struct AnalysisReport {
  std::string source;
  std::optional<AffineChannel> affine;        // canonical form when M is diagonal
  std::optional<GeneralAffine> general_affine; // Kraus input with non-diagonal M
  Quantity c_l1, purity, c_subsystem, min_choi_eigenvalue;
  std::optional<Quantity> c_rel;
  std::optional<Quantity> concurrence;
  bool unital = false;
  bool cp = false;
  std::optional<bool> coherence_breaking;
  std::optional<bool> entanglement_breaking;
  std::optional<bool> incoherent;
  std::optional<bool> strictly_incoherent;
  std::optional<Degradability> degradability;
  std::optional<bool> incoherence_flag;
  std::optional<NonunitalCPWitness> cp_witness;
  std::vector<PredictionDelta> predictions;
  double agreement_tol = 1e-9;
};

namespace detail {

inline PredictionDelta delta_of(const Prediction& pr, double c, double p) {
  PredictionDelta d{pr.provenance, pr.trusted, pr.c_l1, pr.purity, std::nullopt, std::nullopt};
  if (pr.c_l1) d.c_l1_delta = *pr.c_l1 - c;
  if (pr.purity) d.purity_delta = *pr.purity - p;
  return d;
}

}  // namespace detail

/// Full report for a parsed spec. Non-CP affine input is reported with
/// cp = false rather than throwing; entropy-based fields are then omitted.
inline AnalysisReport analyze(const ChannelSpec& spec, const Tolerance& tol = {}) {
  AnalysisReport rep;
  std::optional<KrausChannel> kraus;
  std::optional<FamilyInstance> inst;

  if (const auto* k = std::get_if<KrausChannel>(&spec)) {
    rep.source = "kraus";
    kraus = *k;
  } else if (const auto* a = std::get_if<AffineChannel>(&spec)) {
    rep.source = "affine";
    rep.affine = *a;
  } else {
    const auto& fs = std::get<FamilySpec>(spec);
    rep.source = "family:" + std::string(family_name(fs.family));
    inst = build_family(fs, tol);
    if (const auto* kc = std::get_if<KrausChannel>(&inst->channel)) kraus = *kc;
    else rep.affine = std::get<AffineChannel>(inst->channel);
    rep.incoherence_flag = inst->incoherence_flag;
    const Degradability d = degradability(fs);
    if (d != Degradability::Unsupported) rep.degradability = d;
  }

  ChoiMatrix choi = kraus ? kraus_to_choi(*kraus) : affine_to_choi(*rep.affine);
  if (kraus) {
    const GeneralAffine ga = kraus_to_affine(*kraus);
    try {
      rep.affine = diagonal_affine(ga);
    } catch (const Error& e) {
      if (e.code() != Errc::NotDiagonal) throw;
      rep.general_affine = ga;
    }
    rep.unital = is_unital(*kraus, tol);
    rep.incoherent = is_incoherent_kraus(*kraus);
    rep.strictly_incoherent = is_strictly_incoherent_kraus(*kraus);
  }

  rep.min_choi_eigenvalue = {min_eigenvalue(choi.rho, tol.eps_herm), tol.eps_psd};
  if (rep.affine && !kraus) {
    const auto verdict = nonunital_cp(rep.affine->lambda, rep.affine->tau, tol);
    rep.cp = verdict.cp;
    rep.cp_witness = verdict.witness;
    rep.unital = rep.affine->is_unital(tol.eps_tp);
  } else {
    rep.cp = rep.min_choi_eigenvalue.value >= -tol.eps_psd;
    if (rep.affine) rep.cp_witness = nonunital_cp(rep.affine->lambda, rep.affine->tau, tol).witness;
  }
  if (rep.affine) rep.coherence_breaking = is_coherence_breaking(*rep.affine);

  rep.c_l1 = {l1_coherence(choi.rho, tol.eps_herm), rep.agreement_tol};
  rep.purity = {purity(choi.rho), rep.agreement_tol};
  rep.c_subsystem = {l1_coherence(subsystem_A(choi), tol.eps_herm), rep.agreement_tol};
  if (rep.cp) {
    rep.c_rel = Quantity{rel_entropy_coherence(choi.rho, tol), tol.eps_psd};
    rep.concurrence = Quantity{concurrence(choi.rho, tol), tol.eps_psd};
    rep.entanglement_breaking = is_entanglement_breaking(choi, tol);
  }

  if (rep.affine) {
    PredictionDelta closed = detail::delta_of(
        {channel_l1_closed(*rep.affine), channel_purity_closed(*rep.affine), "affine closed forms", true},
        rep.c_l1.value, rep.purity.value);
    rep.predictions.push_back(closed);
  }
  if (inst) {
    rep.predictions.push_back(detail::delta_of(inst->prediction, rep.c_l1.value, rep.purity.value));
    if (inst->published_claim) rep.predictions.push_back(detail::delta_of(*inst->published_claim, rep.c_l1.value, rep.purity.value));
  }
  return rep;
}

inline Json to_json(const AnalysisReport& r) {
  auto q = [](const Quantity& v) { return Json{{"value", v.value}, {"tol", v.tol}}; };
  Json j;
  j["source"] = r.source;
  if (r.affine) j["affine"] = {{"lambda", r.affine->lambda}, {"tau", r.affine->tau}};
  if (r.general_affine) j["general_affine"] = {{"M", r.general_affine->m}, {"tau", r.general_affine->tau}};
  j["coherence"] = {{"c_l1", q(r.c_l1)}, {"purity", q(r.purity)}, {"c_subsystem", q(r.c_subsystem)}};
  if (r.c_rel) j["coherence"]["c_rel"] = q(*r.c_rel);
  if (r.concurrence) j["coherence"]["concurrence"] = q(*r.concurrence);
  j["min_choi_eigenvalue"] = q(r.min_choi_eigenvalue);
  Json v;
  v["unital"] = r.unital;
  v["cp"] = r.cp;
  if (r.coherence_breaking) v["coherence_breaking"] = *r.coherence_breaking;
  if (r.entanglement_breaking) v["entanglement_breaking"] = *r.entanglement_breaking;
  if (r.incoherent) v["incoherent"] = *r.incoherent;
  if (r.strictly_incoherent) v["strictly_incoherent"] = *r.strictly_incoherent;
  if (r.degradability) v["degradability"] = to_string(*r.degradability);
  if (r.incoherence_flag) v["incoherence_flag"] = *r.incoherence_flag;
  j["verdicts"] = v;
  if (r.cp_witness) {
    const auto& w = *r.cp_witness;
    j["cp_witness"] = {{"q", w.q}, {"u", w.u}, {"bound", w.bound}, {"tau_norm_sq", w.tau_norm_sq},
                       {"radicand_clamped", w.radicand_clamped}};
  }
  Json preds = Json::array();
  for (const auto& p : r.predictions) {
    Json pj{{"provenance", p.provenance}, {"trusted", p.trusted}, {"tol", r.agreement_tol}};
    if (p.c_l1) pj["c_l1"] = *p.c_l1;
    if (p.purity) pj["purity"] = *p.purity;
    if (p.c_l1_delta) pj["c_l1_delta"] = *p.c_l1_delta;
    if (p.purity_delta) pj["purity_delta"] = *p.purity_delta;
    preds.push_back(pj);
  }
  j["predictions"] = preds;
  return j;
}

inline std::string to_text(const AnalysisReport& r) {
  std::ostringstream out;
  out << std::setprecision(10);
  auto yesno = [](bool b) { return b ? "yes" : "no"; };
  auto line = [&](const char* name, const Quantity& q) {
    out << "  " << std::left << std::setw(22) << name << std::right << q.value << "  (tol " << q.tol << ")\n";
  };
  out << "source: " << r.source << "\n";
  if (r.affine) {
    out << "affine: lambda = (" << r.affine->lambda[0] << ", " << r.affine->lambda[1] << ", " << r.affine->lambda[2]
        << ")  tau = (" << r.affine->tau[0] << ", " << r.affine->tau[1] << ", " << r.affine->tau[2] << ")\n";
  } else if (r.general_affine) {
    out << "affine: M is not diagonal; closed forms skipped, Choi metrics only\n";
  }
  out << "coherence:\n";
  line("c_l1", r.c_l1);
  if (r.c_rel) line("c_rel (bits)", *r.c_rel);
  line("purity", r.purity);
  line("c_subsystem", r.c_subsystem);
  if (r.concurrence) line("concurrence", *r.concurrence);
  line("min choi eigenvalue", r.min_choi_eigenvalue);
  out << "verdicts:\n";
  out << "  unital                " << yesno(r.unital) << "\n";
  out << "  completely positive   " << yesno(r.cp) << "\n";
  if (r.coherence_breaking) out << "  coherence breaking    " << yesno(*r.coherence_breaking) << "\n";
  if (r.entanglement_breaking) out << "  entanglement breaking " << yesno(*r.entanglement_breaking) << "\n";
  if (r.incoherent) out << "  incoherent (Kraus)    " << yesno(*r.incoherent) << "\n";
  if (r.strictly_incoherent) out << "  strictly incoherent   " << yesno(*r.strictly_incoherent) << "\n";
  if (r.degradability) out << "  degradability         " << to_string(*r.degradability) << "\n";
  if (r.incoherence_flag) out << "  incoherence flag      " << yesno(*r.incoherence_flag) << "\n";
  if (!r.predictions.empty()) {
    out << "predictions (tol " << r.agreement_tol << "):\n";
    for (const auto& p : r.predictions) {
      out << "  [" << (p.trusted ? "trusted" : "claim") << "] " << p.provenance << "\n";
      if (p.c_l1) out << "      c_l1 = " << *p.c_l1 << "  delta " << *p.c_l1_delta << "\n";
      if (p.purity) out << "      purity = " << *p.purity << "  delta " << *p.purity_delta << "\n";
    }
  }
  return out.str();
}

}  // namespace copu
