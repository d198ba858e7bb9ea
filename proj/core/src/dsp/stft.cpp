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

#include "axialvc/dsp/stft.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "axialvc/error.hpp"
#include "fft.hpp"

namespace axialvc::dsp {

void Waveform::validate() const {
  if (!(sample_rate > 0.0)) throw ValidationError("waveform sample rate must be positive");
  for (double s : samples) {
    if (!std::isfinite(s)) throw ValidationError("waveform contains non-finite samples");
  }
}

std::size_t StftConfig::frame_count(std::size_t samples) const {
  if (samples < window_length) return 0;
  return 1 + (samples - window_length) / hop;
}

std::size_t StftConfig::samples_for_frames(std::size_t frames) const {
  if (frames == 0) return 0;
  return window_length + (frames - 1) * hop;
}

double StftConfig::bin_hz(std::size_t bin) const {
  return static_cast<double>(bin) * sample_rate / static_cast<double>(window_length);
}

void StftConfig::validate() const {
  if (window_length == 0 || window_length % 2 != 0) {
    throw ValidationError("STFT window length must be even and positive, got " +
                          std::to_string(window_length));
  }
  if (hop == 0 || hop > window_length) {
    throw ValidationError("STFT hop must lie in [1, window_length], got " + std::to_string(hop));
  }
  if (!(sample_rate > 0.0)) throw ValidationError("STFT sample rate must be positive");
}

std::vector<double> hann_window(std::size_t length) {
  std::vector<double> w(length);
  for (std::size_t n = 0; n < length; ++n) {
    w[n] = 0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * double(n) / double(length));
  }
  return w;
}

void Spectrogram::validate() const {
  if (bins != config.bins()) {
    throw ValidationError("spectrogram has " + std::to_string(bins) + " bins, config expects " +
                          std::to_string(config.bins()));
  }
  if (mag.size() != bins * frames) throw ValidationError("spectrogram storage size mismatch");
  for (double m : mag) {
    if (!(m >= 0.0) || !std::isfinite(m)) {
      throw ValidationError("spectrogram entries must be finite and nonnegative");
    }
  }
}

ComplexSpectrogram stft(const Waveform& wave, const StftConfig& cfg) {
  cfg.validate();
  if (wave.size() < cfg.window_length) {
    throw ValidationError("stft: input of " + std::to_string(wave.size()) +
                          " samples is shorter than one window (" +
                          std::to_string(cfg.window_length) + ")");
  }
  const std::size_t n = cfg.window_length;
  const std::size_t bins = cfg.bins();
  const std::size_t frames = cfg.frame_count(wave.size());
  const auto window = hann_window(n);

  ComplexSpectrogram out{cfg, bins, frames, std::vector<std::complex<double>>(bins * frames)};
  detail::RealFft fft(n);
  std::vector<double> frame(n);
  std::vector<std::complex<double>> spec(bins);
  for (std::size_t t = 0; t < frames; ++t) {
    const double* src = wave.samples.data() + t * cfg.hop;
    for (std::size_t i = 0; i < n; ++i) frame[i] = src[i] * window[i];
    fft.forward(frame.data(), spec.data());
    for (std::size_t k = 0; k < bins; ++k) out.values[k * frames + t] = spec[k];
  }
  return out;
}

Spectrogram stft_magnitude(const Waveform& wave, const StftConfig& cfg) {
  const auto c = stft(wave, cfg);
  Spectrogram s{cfg, c.bins, c.frames, std::vector<double>(c.values.size())};
  for (std::size_t i = 0; i < c.values.size(); ++i) s.mag[i] = std::abs(c.values[i]);
  return s;
}

Waveform istft(const ComplexSpectrogram& spec) {
  const auto& cfg = spec.config;
  cfg.validate();
  if (spec.bins != cfg.bins()) throw ValidationError("istft: bin count does not match config");
  const std::size_t n = cfg.window_length;
  Waveform out;
  out.sample_rate = cfg.sample_rate;
  if (spec.frames == 0) return out;
  const std::size_t length = cfg.samples_for_frames(spec.frames);
  const auto window = hann_window(n);
  std::vector<double> acc(length, 0.0), envelope(length, 0.0);
  detail::RealFft fft(n);
  std::vector<std::complex<double>> bins(spec.bins);
  std::vector<double> frame(n);
  for (std::size_t t = 0; t < spec.frames; ++t) {
    for (std::size_t k = 0; k < spec.bins; ++k) bins[k] = spec.values[k * spec.frames + t];
    // c2r ignores the imaginary parts of DC and Nyquist, as a real signal requires.
    fft.inverse(bins.data(), frame.data());
    const std::size_t offset = t * cfg.hop;
    for (std::size_t i = 0; i < n; ++i) {
      acc[offset + i] += frame[i] * window[i];
      envelope[offset + i] += window[i] * window[i];
    }
  }
  out.samples.resize(length);
  for (std::size_t i = 0; i < length; ++i) out.samples[i] = acc[i] / std::max(envelope[i], 1e-8);
  return out;
}

namespace {

double spectral_convergence(const ComplexSpectrogram& est, const Spectrogram& target) {
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < target.mag.size(); ++i) {
    const double d = std::abs(est.values[i]) - target.mag[i];
    num += d * d;
    den += target.mag[i] * target.mag[i];
  }
  return den > 0.0 ? std::sqrt(num / den) : std::sqrt(num);
}

}  // namespace

Waveform griffin_lim(const Spectrogram& mag, std::size_t iterations, std::uint64_t seed,
                     std::vector<double>* convergence) {
  mag.validate();
  if (mag.frames == 0) throw ValidationError("griffin_lim: spectrogram has no frames");
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> phase_dist(0.0, 2.0 * std::numbers::pi);

  ComplexSpectrogram x{mag.config, mag.bins, mag.frames,
                       std::vector<std::complex<double>>(mag.mag.size())};
  for (std::size_t i = 0; i < mag.mag.size(); ++i)
    x.values[i] = std::polar(mag.mag[i], phase_dist(gen));

  if (convergence) convergence->clear();
  Waveform y = istft(x);
  for (std::size_t it = 0; it < iterations; ++it) {
    const auto est = stft(y, mag.config);
    if (convergence) convergence->push_back(spectral_convergence(est, mag));
    for (std::size_t i = 0; i < est.values.size(); ++i) {
      const double a = std::abs(est.values[i]);
      x.values[i] =
          a > 0.0 ? mag.mag[i] * (est.values[i] / a) : std::complex<double>(mag.mag[i], 0.0);
    }
    y = istft(x);
  }
  if (convergence) convergence->push_back(spectral_convergence(stft(y, mag.config), mag));
  return y;
}

}  // namespace axialvc::dsp
