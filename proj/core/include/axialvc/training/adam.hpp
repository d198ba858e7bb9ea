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

#include <cstdint>
#include <span>
#include <vector>

#include "axialvc/model/parameters.hpp"

namespace axialvc::training {

struct AdamConfig {
  double learning_rate = 2.0e-4;
  double beta1 = 0.5;
  double beta2 = 0.999;
  double eps = 1e-8;

  void validate() const;
  bool operator==(const AdamConfig&) const = default;
};

// Moments aligned with a ParameterSet.
template <typename T>
struct AdamState {
  std::vector<std::vector<T>> m;
  std::vector<std::vector<T>> v;
  std::uint64_t step = 0;

  static AdamState zeros_like(const model::ParameterSet<T>& params);
};

// One bias-corrected Adam update of a single tensor. `t` is the step count
// after incrementing (t >= 1). Arithmetic is carried out in double.
template <typename T>
void adam_step(std::span<T> param, std::span<const T> grad, std::span<T> m, std::span<T> v,
               std::uint64_t t, double lr, const AdamConfig& cfg);

// Advances `state.step` and updates every parameter in `params`.
template <typename T>
void adam_update(model::ParameterSet<T>& params, const model::Gradients<T>& grads,
                 AdamState<T>& state, double lr, const AdamConfig& cfg);

// base * factor^floor(epoch / every)
double lr_schedule(std::uint64_t epoch, double base = 2.0e-4, double factor = 0.1,
                   std::uint64_t every = 50);

extern template struct AdamState<float>;
extern template struct AdamState<double>;

}  // namespace axialvc::training
