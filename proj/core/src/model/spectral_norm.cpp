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

#include "axialvc/model/spectral_norm.hpp"

#include <cmath>
#include <random>

#include "axialvc/error.hpp"

namespace axialvc::model {
namespace {

template <typename T>
std::size_t columns_of(std::span<const T> w, std::size_t rows) {
  if (rows == 0 || w.size() % rows != 0) {
    throw ValidationError("spectral norm: weight of " + std::to_string(w.size()) +
                          " values cannot be viewed with " + std::to_string(rows) + " rows");
  }
  return w.size() / rows;
}

template <typename T>
std::vector<double> transpose_times(std::span<const T> w, std::size_t rows, std::size_t cols,
                                    const std::vector<T>& u) {
  std::vector<double> v(cols, 0.0);
  for (std::size_t r = 0; r < rows; ++r) {
    const double ur = u[r];
    const T* row = w.data() + r * cols;
    for (std::size_t c = 0; c < cols; ++c) v[c] += double(row[c]) * ur;
  }
  return v;
}

double normalize(std::vector<double>& x) {
  double n = 0.0;
  for (double e : x) n += e * e;
  n = std::sqrt(n);
  const double d = std::max(n, kSigmaFloor);
  for (double& e : x) e /= d;
  return n;
}

template <typename T>
void check_state(const SpectralNormState<T>& s, std::size_t rows) {
  if (s.u.size() != rows) {
    throw ValidationError("spectral norm: missing or mismatched state (u has " +
                          std::to_string(s.u.size()) + " entries, weight has " +
                          std::to_string(rows) + " rows)");
  }
}

}  // namespace

template <typename T>
SpectralNormState<T> make_spectral_norm_state(std::size_t rows, std::size_t iterations,
                                              std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> dist(0.0, 1.0);
  std::vector<double> u(rows);
  for (auto& e : u) e = dist(gen);
  normalize(u);
  SpectralNormState<T> s;
  s.u.assign(u.begin(), u.end());
  s.iterations = iterations;
  return s;
}

template <typename T>
void power_iterate(std::span<const T> w, std::size_t rows, SpectralNormState<T>& state,
                   std::size_t iterations) {
  const std::size_t cols = columns_of(w, rows);
  check_state(state, rows);
  for (std::size_t it = 0; it < iterations; ++it) {
    auto v = transpose_times(w, rows, cols, state.u);
    normalize(v);
    std::vector<double> u(rows, 0.0);
    for (std::size_t r = 0; r < rows; ++r) {
      const T* row = w.data() + r * cols;
      double acc = 0.0;
      for (std::size_t c = 0; c < cols; ++c) acc += double(row[c]) * v[c];
      u[r] = acc;
    }
    normalize(u);
    for (std::size_t r = 0; r < rows; ++r) state.u[r] = static_cast<T>(u[r]);
  }
}

template <typename T>
double estimate_sigma(std::span<const T> w, std::size_t rows, const SpectralNormState<T>& state) {
  const std::size_t cols = columns_of(w, rows);
  check_state(state, rows);
  auto v = transpose_times(w, rows, cols, state.u);
  double n = 0.0;
  for (double e : v) n += e * e;
  return std::max(std::sqrt(n), kSigmaFloor);
}

template <typename T>
std::vector<T> spectral_normalize(std::span<const T> w, std::size_t rows,
                                  SpectralNormState<T>& state, double* sigma) {
  power_iterate(w, rows, state, state.iterations);
  const double s = estimate_sigma(w, rows, state);
  if (sigma) *sigma = s;
  std::vector<T> out(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) out[i] = static_cast<T>(double(w[i]) / s);
  return out;
}

#define AXIALVC_INSTANTIATE_SN(T)                                                               \
  template SpectralNormState<T> make_spectral_norm_state<T>(std::size_t, std::size_t,           \
                                                            std::uint64_t);                     \
  template void power_iterate(std::span<const T>, std::size_t, SpectralNormState<T>&,           \
                              std::size_t);                                                     \
  template double estimate_sigma(std::span<const T>, std::size_t, const SpectralNormState<T>&); \
  template std::vector<T> spectral_normalize(std::span<const T>, std::size_t,                   \
                                             SpectralNormState<T>&, double*);

AXIALVC_INSTANTIATE_SN(float)
AXIALVC_INSTANTIATE_SN(double)

#undef AXIALVC_INSTANTIATE_SN

}  // namespace axialvc::model
