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

#include "axialvc/training/adam.hpp"

#include <cmath>

#include "axialvc/error.hpp"

namespace axialvc::training {

void AdamConfig::validate() const {
  if (!(learning_rate > 0.0)) throw ValidationError("adam: learning rate must be > 0");
  if (!(beta1 >= 0.0 && beta1 < 1.0)) throw ValidationError("adam: beta1 must be in [0, 1)");
  if (!(beta2 >= 0.0 && beta2 < 1.0)) throw ValidationError("adam: beta2 must be in [0, 1)");
  if (!(eps > 0.0)) throw ValidationError("adam: eps must be > 0");
}

template <typename T>
AdamState<T> AdamState<T>::zeros_like(const model::ParameterSet<T>& params) {
  AdamState s;
  for (const auto& p : params) {
    s.m.emplace_back(p.value.size(), T(0));
    s.v.emplace_back(p.value.size(), T(0));
  }
  return s;
}

template <typename T>
void adam_step(std::span<T> param, std::span<const T> grad, std::span<T> m, std::span<T> v,
               std::uint64_t t, double lr, const AdamConfig& cfg) {
  if (grad.size() != param.size() || m.size() != param.size() || v.size() != param.size()) {
    throw ValidationError("adam: gradient or moment size does not match parameter");
  }
  if (t == 0) throw ValidationError("adam: step count must be >= 1");
  const double c1 = 1.0 - std::pow(cfg.beta1, double(t));
  const double c2 = 1.0 - std::pow(cfg.beta2, double(t));
  for (std::size_t i = 0; i < param.size(); ++i) {
    const double g = grad[i];
    const double mi = cfg.beta1 * double(m[i]) + (1.0 - cfg.beta1) * g;
    const double vi = cfg.beta2 * double(v[i]) + (1.0 - cfg.beta2) * g * g;
    m[i] = static_cast<T>(mi);
    v[i] = static_cast<T>(vi);
    const double mhat = mi / c1;
    const double vhat = vi / c2;
    param[i] = static_cast<T>(double(param[i]) - lr * mhat / (std::sqrt(vhat) + cfg.eps));
  }
}

template <typename T>
void adam_update(model::ParameterSet<T>& params, const model::Gradients<T>& grads,
                 AdamState<T>& state, double lr, const AdamConfig& cfg) {
  if (grads.size() != params.size() || state.m.size() != params.size() ||
      state.v.size() != params.size()) {
    throw ValidationError("adam: gradient set does not match parameter set");
  }
  ++state.step;
  for (std::size_t i = 0; i < params.size(); ++i) {
    adam_step<T>(params[i].value, grads[i], state.m[i], state.v[i], state.step, lr, cfg);
  }
}

double lr_schedule(std::uint64_t epoch, double base, double factor, std::uint64_t every) {
  if (every == 0) throw ValidationError("lr_schedule: anneal interval must be > 0");
  return base * std::pow(factor, double(epoch / every));
}

#define AXIALVC_INSTANTIATE_ADAM(T)                                                             \
  template struct AdamState<T>;                                                                 \
  template void adam_step(std::span<T>, std::span<const T>, std::span<T>, std::span<T>,         \
                          std::uint64_t, double, const AdamConfig&);                            \
  template void adam_update(model::ParameterSet<T>&, const model::Gradients<T>&, AdamState<T>&, \
                            double, const AdamConfig&);

AXIALVC_INSTANTIATE_ADAM(float)
AXIALVC_INSTANTIATE_ADAM(double)

#undef AXIALVC_INSTANTIATE_ADAM

}  // namespace axialvc::training
