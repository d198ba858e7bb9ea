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

#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace axialvc::eval {

enum class Protocol { parallel, nonparallel };

const char* protocol_tag(Protocol p);  // "parallel" | "nonparallel-pairwise"
Protocol parse_protocol(const std::string& s);

struct UtteranceScore {
  std::string source_identity;
  std::string target_identity;
  std::string name;
  double msd_mean = 0.0;
  double msd_std = 0.0;
  std::size_t references = 1;
};

struct IdentityAggregate {
  std::string source_identity;
  std::string target_identity;
  std::size_t count = 0;
  double msd_mean = 0.0;
  double msd_std = 0.0;  // population std over utterance means
  std::optional<double> ground_truth;
};

struct EvalReport {
  Protocol protocol = Protocol::parallel;
  std::vector<UtteranceScore> utterances;
  std::vector<IdentityAggregate> identities;
};

// Groups utterances by (source, target) in first-seen order.
std::vector<IdentityAggregate> aggregate(const std::vector<UtteranceScore>& utterances);

std::string report_csv(const EvalReport& r);
std::string report_table(const EvalReport& r);
void write_report(const EvalReport& r, const std::filesystem::path& dir);

inline constexpr const char* kOutOfScopeNotice =
    "WER and MOS are not computed: they need an external ASR service and human raters.";

}  // namespace axialvc::eval
