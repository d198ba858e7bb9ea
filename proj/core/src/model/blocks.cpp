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

#include "axialvc/model/blocks.hpp"

#include <string>

namespace axialvc::model {

void AxialBlockConfig::validate() const {
  if (channels == 0) throw ValidationError("axial block: channels must be positive");
  if (temporal_kernel % 2 == 0) throw ValidationError("axial block: temporal kernel must be odd");
  if (freq_kernel % 2 == 0) throw ValidationError("axial block: frequency kernel must be odd");
  if (!(activation_slope >= 0.0 && activation_slope < 1.0)) {
    throw ValidationError("axial block: activation slope must lie in [0, 1)");
  }
  if (temporal_mode == TemporalMode::lightweight &&
      (lightweight_share == 0 || channels % lightweight_share != 0)) {
    throw ValidationError("axial block: " + std::to_string(channels) +
                          " channels not divisible by lightweight share " +
                          std::to_string(lightweight_share));
  }
}

ad::Shape AxialBlockConfig::temporal_weight_shape() const {
  if (temporal_mode == TemporalMode::lightweight) {
    return {channels / lightweight_share, temporal_kernel};
  }
  return {channels, 1, temporal_kernel};
}

void ConvBlockConfig::validate() const {
  if (channels == 0) throw ValidationError("conv block: channels must be positive");
  if (kernel % 2 == 0) throw ValidationError("conv block: kernel must be odd");
  if (!(activation_slope >= 0.0 && activation_slope < 1.0)) {
    throw ValidationError("conv block: activation slope must lie in [0, 1)");
  }
}

namespace {

template <typename T>
void check_channels(const ad::Tensor<T>& x, std::size_t channels, const char* who) {
  if (x.shape().size() != 2 || x.dim(0) != channels) {
    throw ValidationError(std::string(who) + ": expected [" + std::to_string(channels) +
                          " x T] input, got " + ad::to_string(x.shape()));
  }
}

template <typename T>
ad::Tensor<T> temporal_conv(const ad::Tensor<T>& x, const AxialBlockWeights<T>& w,
                            const AxialBlockConfig& cfg) {
  if (cfg.temporal_mode == TemporalMode::lightweight) {
    return lightweight_temporal_conv(x, w.temporal_weight, w.temporal_bias, cfg);
  }
  const auto spec =
      ad::ConvSpec::same(cfg.channels, cfg.channels, cfg.temporal_kernel, cfg.channels);
  return ad::conv1d(x, w.temporal_weight, w.temporal_bias, spec);
}

}  // namespace

template <typename T>
ad::Tensor<T> lightweight_temporal_conv(const ad::Tensor<T>& x, const ad::Tensor<T>& kernels,
                                        const ad::Tensor<T>& bias, const AxialBlockConfig& cfg) {
  const std::size_t share = cfg.lightweight_share;
  if (share == 0 || cfg.channels % share != 0) {
    throw ValidationError("lightweight conv: " + std::to_string(cfg.channels) +
                          " channels not divisible by share " + std::to_string(share));
  }
  if (kernels.shape() != ad::Shape{cfg.channels / share, cfg.temporal_kernel}) {
    throw ValidationError(
        "lightweight conv: expected kernels [" + std::to_string(cfg.channels / share) + " x " +
        std::to_string(cfg.temporal_kernel) + "], got " + ad::to_string(kernels.shape()));
  }
  check_channels(x, cfg.channels, "lightweight conv");
  auto shared = ad::reshape(kernels, {cfg.channels / share, 1, cfg.temporal_kernel});
  auto expanded = share == 1 ? shared : ad::repeat_rows(shared, share);
  const auto spec =
      ad::ConvSpec::same(cfg.channels, cfg.channels, cfg.temporal_kernel, cfg.channels);
  return ad::conv1d(x, expanded, bias, spec);
}

template <typename T>
ad::Tensor<T> axial_block_forward(const ad::Tensor<T>& x, const AxialBlockWeights<T>& w,
                                  const AxialBlockConfig& cfg) {
  cfg.validate();
  check_channels(x, cfg.channels, "axial block");
  const auto freq = ad::ConvSpec::same(cfg.channels, cfg.channels, cfg.freq_kernel);
  if (cfg.residual_mode == ResidualMode::once) {
    auto h = ad::leaky_relu(temporal_conv(x, w, cfg), cfg.activation_slope);
    return ad::add(x, ad::conv1d(h, w.freq_weight, w.freq_bias, freq));
  }
  auto h = ad::add(x, temporal_conv(x, w, cfg));
  auto a = ad::leaky_relu(h, cfg.activation_slope);
  return ad::add(h, ad::conv1d(a, w.freq_weight, w.freq_bias, freq));
}

template <typename T>
ad::Tensor<T> conv_residual_block_forward(const ad::Tensor<T>& x, const ConvBlockWeights<T>& w,
                                          const ConvBlockConfig& cfg) {
  cfg.validate();
  check_channels(x, cfg.channels, "conv block");
  const auto spec = ad::ConvSpec::same(cfg.channels, cfg.channels, cfg.kernel);
  auto h = ad::leaky_relu(ad::conv1d(x, w.conv1_weight, w.conv1_bias, spec), cfg.activation_slope);
  return ad::add(x, ad::conv1d(h, w.conv2_weight, w.conv2_bias, spec));
}

ReceptiveField receptive_field(std::size_t temporal_kernel, std::size_t blocks, std::size_t hop,
                               std::size_t window, double sample_rate) {
  if (temporal_kernel == 0 || blocks == 0 || hop == 0 || window == 0 || !(sample_rate > 0.0)) {
    throw ValidationError("receptive_field: all arguments must be positive");
  }
  ReceptiveField rf;
  rf.samples = window + blocks * (temporal_kernel - 1) * hop;
  rf.milliseconds = 1000.0 * double(rf.samples) / sample_rate;
  rf.hertz = 1000.0 / rf.milliseconds;
  return rf;
}

#define AXIALVC_INSTANTIATE_BLOCKS(T)                                                              \
  template ad::Tensor<T> lightweight_temporal_conv(const ad::Tensor<T>&, const ad::Tensor<T>&,     \
                                                   const ad::Tensor<T>&, const AxialBlockConfig&); \
  template ad::Tensor<T> axial_block_forward(const ad::Tensor<T>&, const AxialBlockWeights<T>&,    \
                                             const AxialBlockConfig&);                             \
  template ad::Tensor<T> conv_residual_block_forward(                                              \
      const ad::Tensor<T>&, const ConvBlockWeights<T>&, const ConvBlockConfig&);

AXIALVC_INSTANTIATE_BLOCKS(float)
AXIALVC_INSTANTIATE_BLOCKS(double)

#undef AXIALVC_INSTANTIATE_BLOCKS

}  // namespace axialvc::model
