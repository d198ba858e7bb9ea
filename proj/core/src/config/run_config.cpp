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

#include "axialvc/config/run_config.hpp"

#include <charconv>
#include <fstream>
#include <set>
#include <sstream>
#include <variant>

#include "axialvc/error.hpp"

namespace axialvc::config {

namespace {

using Member = std::variant<double RunConfig::*, std::uint64_t RunConfig::*, bool RunConfig::*,
                            std::string RunConfig::*>;

struct Field {
  std::string_view key;
  Member member;
};

#define AXIALVC_FIELD(name) \
  Field { #name, &RunConfig::name }

const std::vector<Field>& fields() {
  static const std::vector<Field> table = {
      AXIALVC_FIELD(sample_rate),
      AXIALVC_FIELD(window_length),
      AXIALVC_FIELD(hop),
      AXIALVC_FIELD(bins),
      AXIALVC_FIELD(preprocess_peak),
      AXIALVC_FIELD(trim_db),
      AXIALVC_FIELD(trim_window_ms),
      AXIALVC_FIELD(gen_blocks),
      AXIALVC_FIELD(temporal_kernel),
      AXIALVC_FIELD(temporal_mode),
      AXIALVC_FIELD(lightweight_share),
      AXIALVC_FIELD(freq_kernel),
      AXIALVC_FIELD(gen_slope),
      AXIALVC_FIELD(residual_mode),
      AXIALVC_FIELD(input_scale),
      AXIALVC_FIELD(disc_blocks),
      AXIALVC_FIELD(disc_channels),
      AXIALVC_FIELD(disc_kernel),
      AXIALVC_FIELD(disc_prenet_kernel),
      AXIALVC_FIELD(disc_postnet_kernel),
      AXIALVC_FIELD(disc_slope),
      AXIALVC_FIELD(disc_noise_std),
      AXIALVC_FIELD(sn_iterations),
      AXIALVC_FIELD(epochs),
      AXIALVC_FIELD(batch_size),
      AXIALVC_FIELD(crop_frames),
      AXIALVC_FIELD(learning_rate),
      AXIALVC_FIELD(beta1),
      AXIALVC_FIELD(beta2),
      AXIALVC_FIELD(adam_eps),
      AXIALVC_FIELD(anneal_factor),
      AXIALVC_FIELD(anneal_every),
      AXIALVC_FIELD(d_updates_per_step),
      AXIALVC_FIELD(max_steps),
      AXIALVC_FIELD(lambda_adv),
      AXIALVC_FIELD(lambda_cyc),
      AXIALVC_FIELD(lambda_id),
      AXIALVC_FIELD(feature_matching),
      AXIALVC_FIELD(extended_identity),
      AXIALVC_FIELD(saturating_adversarial),
      AXIALVC_FIELD(seed),
      AXIALVC_FIELD(checkpoint_every),
      AXIALVC_FIELD(griffin_lim_iterations),
      AXIALVC_FIELD(eval_n_mels),
      AXIALVC_FIELD(eval_f_min),
      AXIALVC_FIELD(eval_f_max),
      AXIALVC_FIELD(msd_multiplier),
      AXIALVC_FIELD(eval_references),
      AXIALVC_FIELD(toy_utterances),
      AXIALVC_FIELD(toy_heldout),
      AXIALVC_FIELD(data_x),
      AXIALVC_FIELD(data_y),
      AXIALVC_FIELD(out_dir),
  };
  return table;
}

#undef AXIALVC_FIELD

std::string_view trim(std::string_view s) {
  const auto ws = " \t\r";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

const Field& find_field(std::string_view key) {
  for (const auto& f : fields()) {
    if (f.key == key) return f;
  }
  throw ValidationError("config: unknown key '" + std::string(key) + "'");
}

template <typename N>
N parse_number(std::string_view key, std::string_view v) {
  N out{};
  const auto* end = v.data() + v.size();
  const auto res = std::from_chars(v.data(), end, out);
  if (res.ec != std::errc() || res.ptr != end) {
    throw ValidationError("config: bad value '" + std::string(v) + "' for " + std::string(key));
  }
  return out;
}

model::TemporalMode temporal_mode_of(const std::string& s) {
  if (s == "depthwise") return model::TemporalMode::depthwise;
  if (s == "lightweight") return model::TemporalMode::lightweight;
  throw ValidationError("config: temporal_mode must be depthwise or lightweight, got '" + s + "'");
}

model::ResidualMode residual_mode_of(const std::string& s) {
  if (s == "once") return model::ResidualMode::once;
  if (s == "twice") return model::ResidualMode::twice;
  throw ValidationError("config: residual_mode must be once or twice, got '" + s + "'");
}

}  // namespace

RunConfig RunConfig::toy() {
  RunConfig c;
  c.window_length = 128;
  c.hop = 32;
  c.bins = 65;
  c.gen_blocks = 3;
  c.disc_channels = 32;
  c.batch_size = 8;
  c.learning_rate = 1e-3;
  c.epochs = 200;
  c.anneal_every = 100;
  c.max_steps = 1000;
  c.checkpoint_every = 50;
  c.eval_n_mels = 16;
  c.toy_utterances = 48;
  return c;
}

const std::vector<std::string_view>& run_config_keys() {
  static const std::vector<std::string_view> keys = [] {
    std::vector<std::string_view> k;
    for (const auto& f : fields()) k.push_back(f.key);
    return k;
  }();
  return keys;
}

void set_run_config_value(RunConfig& cfg, std::string_view key, std::string_view value) {
  const Field& f = find_field(key);
  std::visit(
      [&](auto member) {
        using M = std::remove_reference_t<decltype(cfg.*member)>;
        if constexpr (std::is_same_v<M, double>) {
          cfg.*member = parse_number<double>(key, value);
        } else if constexpr (std::is_same_v<M, std::uint64_t>) {
          cfg.*member = parse_number<std::uint64_t>(key, value);
        } else if constexpr (std::is_same_v<M, bool>) {
          if (value == "true" || value == "1") {
            cfg.*member = true;
          } else if (value == "false" || value == "0") {
            cfg.*member = false;
          } else {
            throw ValidationError("config: bad boolean '" + std::string(value) + "' for " +
                                  std::string(key));
          }
        } else {
          cfg.*member = std::string(value);
        }
      },
      f.member);
}

RunConfig parse_run_config(std::string_view text, const RunConfig& base) {
  RunConfig cfg = base;
  std::set<std::string, std::less<>> seen;
  std::size_t lineno = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    const auto raw = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++lineno;
    const auto line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    const std::string where = "config line " + std::to_string(lineno) + ": ";
    if (eq == std::string_view::npos) {
      throw ValidationError(where + "expected key=value, got '" + std::string(line) + "'");
    }
    const auto key = trim(line.substr(0, eq));
    const auto value = trim(line.substr(eq + 1));
    if (!seen.insert(std::string(key)).second) {
      throw ValidationError(where + "duplicate key '" + std::string(key) + "'");
    }
    try {
      set_run_config_value(cfg, key, value);
    } catch (const ValidationError& e) {
      throw ValidationError(where + e.what());
    }
  }
  return cfg;
}

RunConfig load_run_config(const std::filesystem::path& path, const RunConfig& base) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot read config file " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_run_config(ss.str(), base);
}

std::string serialize_run_config(const RunConfig& cfg) {
  std::string out;
  for (const auto& f : fields()) {
    out += f.key;
    out += '=';
    std::visit(
        [&](auto member) {
          using M = std::remove_cvref_t<decltype(cfg.*member)>;
          if constexpr (std::is_same_v<M, double>) {
            char buf[64];
            const auto res = std::to_chars(buf, buf + sizeof buf, cfg.*member);
            out.append(buf, res.ptr);
          } else if constexpr (std::is_same_v<M, std::uint64_t>) {
            out += std::to_string(cfg.*member);
          } else if constexpr (std::is_same_v<M, bool>) {
            out += cfg.*member ? "true" : "false";
          } else {
            out += cfg.*member;
          }
        },
        f.member);
    out += '\n';
  }
  return out;
}

dsp::StftConfig RunConfig::stft() const {
  dsp::StftConfig s;
  s.window_length = window_length;
  s.hop = hop;
  s.sample_rate = sample_rate;
  return s;
}

dsp::PreprocessConfig RunConfig::preprocess() const {
  return dsp::PreprocessConfig{preprocess_peak, trim_db, trim_window_ms};
}

training::ModelConfig RunConfig::model() const {
  training::ModelConfig m;
  auto& b = m.generator.block;
  b.channels = bins;
  b.temporal_kernel = temporal_kernel;
  b.temporal_mode = temporal_mode_of(temporal_mode);
  b.lightweight_share = lightweight_share;
  b.freq_kernel = freq_kernel;
  b.activation_slope = gen_slope;
  b.residual_mode = residual_mode_of(residual_mode);
  m.generator.blocks = gen_blocks;
  m.generator.input_scale = input_scale;
  auto& d = m.discriminator;
  d.in_channels = bins;
  d.hidden_channels = disc_channels;
  d.blocks = disc_blocks;
  d.kernel = disc_kernel;
  d.prenet_kernel = disc_prenet_kernel;
  d.postnet_kernel = disc_postnet_kernel;
  d.activation_slope = disc_slope;
  d.noise_std = disc_noise_std;
  d.sn_iterations = sn_iterations;
  return m;
}

training::TrainConfig RunConfig::train() const {
  training::TrainConfig t;
  t.epochs = epochs;
  t.batch_size = batch_size;
  t.crop_frames = crop_frames;
  t.adam = {learning_rate, beta1, beta2, adam_eps};
  t.anneal_factor = anneal_factor;
  t.anneal_every = anneal_every;
  t.d_updates_per_step = d_updates_per_step;
  t.max_steps = max_steps;
  t.weights = {lambda_adv, lambda_cyc, lambda_id};
  t.options = {feature_matching, extended_identity, saturating_adversarial};
  t.seed = seed;
  return t;
}

void RunConfig::validate() const {
  stft().validate();
  if (bins != window_length / 2 + 1) {
    throw ValidationError("config: bins=" + std::to_string(bins) +
                          " but window_length=" + std::to_string(window_length) + " gives " +
                          std::to_string(window_length / 2 + 1));
  }
  if (!(preprocess_peak > 0.0 && preprocess_peak <= 1.0)) {
    throw ValidationError("config: preprocess_peak must be in (0, 1]");
  }
  if (!(trim_db < 0.0)) throw ValidationError("config: trim_db must be < 0");
  if (!(trim_window_ms > 0.0)) throw ValidationError("config: trim_window_ms must be > 0");
  model().validate();
  train().validate();
  if (eval_n_mels == 0) throw ValidationError("config: eval_n_mels must be > 0");
  if (!(eval_f_min >= 0.0 && eval_f_min < eval_f_max)) {
    throw ValidationError("config: need 0 <= eval_f_min < eval_f_max");
  }
  if (eval_f_max > sample_rate / 2.0) {
    throw ValidationError("config: eval_f_max exceeds the Nyquist frequency");
  }
  if (!(msd_multiplier > 0.0)) throw ValidationError("config: msd_multiplier must be > 0");
  if (toy_utterances == 0) throw ValidationError("config: toy_utterances must be > 0");
}

}  // namespace axialvc::config
