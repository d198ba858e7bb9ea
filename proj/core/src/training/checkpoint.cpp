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

#include "axialvc/training/checkpoint.hpp"

#include <sstream>

#include "../common/binary_io.hpp"
#include "axialvc/error.hpp"

namespace axialvc::training {

namespace {

constexpr std::string_view kMagic = "AXVCCKPT";

void write_model_config(detail::BinaryWriter& w, const ModelConfig& c) {
  const auto& b = c.generator.block;
  w.u64(b.channels);
  w.u64(b.temporal_kernel);
  w.u32(static_cast<std::uint32_t>(b.temporal_mode));
  w.u64(b.lightweight_share);
  w.u64(b.freq_kernel);
  w.f64(b.activation_slope);
  w.u32(static_cast<std::uint32_t>(b.residual_mode));
  w.u64(c.generator.blocks);
  w.f64(c.generator.input_scale);
  const auto& d = c.discriminator;
  w.u64(d.in_channels);
  w.u64(d.hidden_channels);
  w.u64(d.blocks);
  w.u64(d.kernel);
  w.u64(d.prenet_kernel);
  w.u64(d.postnet_kernel);
  w.f64(d.activation_slope);
  w.f64(d.noise_std);
  w.u64(d.sn_iterations);
}

ModelConfig read_model_config(detail::BinaryReader& r) {
  ModelConfig c;
  auto& b = c.generator.block;
  b.channels = r.u64();
  b.temporal_kernel = r.u64();
  const auto tm = r.u32();
  if (tm > 1) throw FormatError("checkpoint: bad temporal mode");
  b.temporal_mode = static_cast<model::TemporalMode>(tm);
  b.lightweight_share = r.u64();
  b.freq_kernel = r.u64();
  b.activation_slope = r.f64();
  const auto rm = r.u32();
  if (rm > 1) throw FormatError("checkpoint: bad residual mode");
  b.residual_mode = static_cast<model::ResidualMode>(rm);
  c.generator.blocks = r.u64();
  c.generator.input_scale = r.f64();
  auto& d = c.discriminator;
  d.in_channels = r.u64();
  d.hidden_channels = r.u64();
  d.blocks = r.u64();
  d.kernel = r.u64();
  d.prenet_kernel = r.u64();
  d.postnet_kernel = r.u64();
  d.activation_slope = r.f64();
  d.noise_std = r.f64();
  d.sn_iterations = r.u64();
  return c;
}

void write_params(detail::BinaryWriter& w, const model::ParameterSet<float>& ps) {
  w.u64(ps.size());
  for (const auto& p : ps) {
    w.str(p.name);
    w.u32(static_cast<std::uint32_t>(p.shape.size()));
    for (auto d : p.shape) w.u64(d);
    w.f32_array(p.value);
  }
}

void read_params(detail::BinaryReader& r, model::ParameterSet<float>& ps, const char* what) {
  const auto count = r.u64();
  if (count != ps.size()) {
    throw FormatError(std::string("checkpoint: ") + what + " has " + std::to_string(count) +
                      " parameters, expected " + std::to_string(ps.size()));
  }
  for (auto& p : ps) {
    const std::string name = r.str();
    if (name != p.name) {
      throw FormatError("checkpoint: expected parameter " + p.name + ", found " + name);
    }
    ad::Shape shape(r.u32());
    for (auto& d : shape) d = r.u64();
    if (shape != p.shape) {
      throw FormatError("checkpoint: parameter " + name + " has shape " + ad::to_string(shape) +
                        ", expected " + ad::to_string(p.shape));
    }
    p.value = r.f32_array<float>(p.value.size());
  }
}

void write_adam(detail::BinaryWriter& w, const AdamState<float>& s) {
  w.u64(s.step);
  for (const auto& m : s.m) w.f32_array(m);
  for (const auto& v : s.v) w.f32_array(v);
}

void read_adam(detail::BinaryReader& r, AdamState<float>& s) {
  s.step = r.u64();
  for (auto& m : s.m) m = r.f32_array<float>(m.size());
  for (auto& v : s.v) v = r.f32_array<float>(v.size());
}

void write_sn(detail::BinaryWriter& w, const model::Discriminator<float>& d) {
  const auto& sn = d.spectral_state();
  w.u64(sn.size());
  for (const auto& s : sn) {
    w.u64(s.iterations);
    w.u64(s.u.size());
    w.f32_array(s.u);
  }
}

void read_sn(detail::BinaryReader& r, model::Discriminator<float>& d) {
  auto& sn = d.spectral_state();
  if (r.u64() != sn.size()) throw FormatError("checkpoint: spectral-norm state count mismatch");
  for (auto& s : sn) {
    s.iterations = r.u64();
    if (r.u64() != s.u.size()) throw FormatError("checkpoint: spectral-norm vector size mismatch");
    s.u = r.f32_array<float>(s.u.size());
  }
}

}  // namespace

void save_checkpoint(const std::filesystem::path& path, const TrainState& s,
                     const std::string& config_text) {
  detail::BinaryWriter w;
  w.bytes(kMagic);
  w.u32(kCheckpointVersion);
  w.u64(s.config.hash());
  write_model_config(w, s.config);
  w.str(config_text);
  write_params(w, s.g_xy.parameters());
  write_params(w, s.g_yx.parameters());
  write_params(w, s.d_x.parameters());
  write_sn(w, s.d_x);
  write_params(w, s.d_y.parameters());
  write_sn(w, s.d_y);
  write_adam(w, s.adam_g_xy);
  write_adam(w, s.adam_g_yx);
  write_adam(w, s.adam_d_x);
  write_adam(w, s.adam_d_y);
  w.u64(s.epoch);
  w.u64(s.step);
  std::ostringstream rng;
  rng << s.rng;
  w.str(rng.str());
  w.finish(path);
}

Checkpoint load_checkpoint(const std::filesystem::path& path) {
  detail::BinaryReader r(path, kMagic);
  const auto version = r.u32();
  if (version != kCheckpointVersion) {
    throw FormatError(path.string() + ": checkpoint version " + std::to_string(version) +
                      ", expected " + std::to_string(kCheckpointVersion));
  }
  const auto hash = r.u64();
  const ModelConfig cfg = read_model_config(r);
  if (cfg.hash() != hash) throw FormatError(path.string() + ": model config hash mismatch");
  try {
    cfg.validate();
  } catch (const ValidationError& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
  Checkpoint ck{r.str(), TrainState(cfg, 0)};
  auto& s = ck.state;
  read_params(r, s.g_xy.parameters(), "generator x->y");
  read_params(r, s.g_yx.parameters(), "generator y->x");
  read_params(r, s.d_x.parameters(), "discriminator x");
  read_sn(r, s.d_x);
  read_params(r, s.d_y.parameters(), "discriminator y");
  read_sn(r, s.d_y);
  read_adam(r, s.adam_g_xy);
  read_adam(r, s.adam_g_yx);
  read_adam(r, s.adam_d_x);
  read_adam(r, s.adam_d_y);
  s.epoch = r.u64();
  s.step = r.u64();
  std::istringstream rng(r.str());
  rng >> s.rng;
  if (!rng) throw FormatError(path.string() + ": bad RNG state");
  r.expect_end();
  return ck;
}

}  // namespace axialvc::training
