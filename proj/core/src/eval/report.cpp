// Copyright 2026 The AxialVC Authors
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

#include "axialvc/eval/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "axialvc/error.hpp"

namespace axialvc::eval {

const char* protocol_tag(Protocol p) {
  return p == Protocol::parallel ? "parallel" : "nonparallel-pairwise";
}

Protocol parse_protocol(const std::string& s) {
  if (s == "parallel") return Protocol::parallel;
  if (s == "nonparallel" || s == "nonparallel-pairwise") return Protocol::nonparallel;
  throw ValidationError("protocol must be parallel or nonparallel, got '" + s + "'");
}

std::vector<IdentityAggregate> aggregate(const std::vector<UtteranceScore>& utterances) {
  std::vector<IdentityAggregate> out;
  std::vector<std::vector<double>> values;
  for (const auto& u : utterances) {
    std::size_t k = 0;
    while (k < out.size() && (out[k].source_identity != u.source_identity ||
                              out[k].target_identity != u.target_identity)) {
      ++k;
    }
    if (k == out.size()) {
      out.push_back({u.source_identity, u.target_identity, 0, 0.0, 0.0, std::nullopt});
      values.emplace_back();
    }
    values[k].push_back(u.msd_mean);
  }
  for (std::size_t k = 0; k < out.size(); ++k) {
    const auto& v = values[k];
    out[k].count = v.size();
    double m = 0.0;
    for (double x : v) m += x;
    m /= double(v.size());
    double var = 0.0;
    for (double x : v) var += (x - m) * (x - m);
    out[k].msd_mean = m;
    out[k].msd_std = std::sqrt(var / double(v.size()));
  }
  return out;
}

namespace {
std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}
}  // namespace

std::string report_csv(const EvalReport& r) {
  std::string s = "protocol,source,target,utterance,msd_mean,msd_std,references\n";
  for (const auto& u : r.utterances) {
    s += std::string(protocol_tag(r.protocol)) + "," + u.source_identity + "," + u.target_identity +
         "," + u.name + "," + num(u.msd_mean) + "," + num(u.msd_std) + "," +
         std::to_string(u.references) + "\n";
  }
  for (const auto& a : r.identities) {
    s += std::string(protocol_tag(r.protocol)) + "," + a.source_identity + "," + a.target_identity +
         ",ALL," + num(a.msd_mean) + "," + num(a.msd_std) + "," + std::to_string(a.count) + "\n";
    if (a.ground_truth) {
      s += std::string(protocol_tag(r.protocol)) + "," + a.target_identity + "," +
           a.target_identity + ",GROUND_TRUTH," + num(*a.ground_truth) + ",,\n";
    }
  }
  return s;
}

std::string report_table(const EvalReport& r) {
  std::string s = "protocol: " + std::string(protocol_tag(r.protocol)) + "\n";
  char line[256];
  std::snprintf(line, sizeof line, "%-24s %-8s %-22s %-14s %s\n", "pair", "items", "MSD",
                "ground truth", "WER");
  s += line;
  for (const auto& a : r.identities) {
    const std::string pair = a.source_identity + " -> " + a.target_identity;
    const std::string msd = num(a.msd_mean) + " +- " + num(a.msd_std);
    const std::string gt = a.ground_truth ? num(*a.ground_truth) : "-";
    std::snprintf(line, sizeof line, "%-24s %-8zu %-22s %-14s %s\n", pair.c_str(), a.count,
                  msd.c_str(), gt.c_str(), "n/a");
    s += line;
  }
  s += std::string(kOutOfScopeNotice) + "\n";
  return s;
}

void write_report(const EvalReport& r, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  std::ofstream csv(dir / "eval_report.csv");
  std::ofstream txt(dir / "eval_report.txt");
  if (!csv || !txt) throw Error("cannot write evaluation report in " + dir.string());
  csv << report_csv(r);
  txt << report_table(r);
}

}  // namespace axialvc::eval
