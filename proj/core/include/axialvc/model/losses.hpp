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

#include <array>
#include <cstdint>

#include "axialvc/model/networks.hpp"

namespace axialvc::model {

struct LossWeights {
  double adv = 1.0;
  double cyc = 10.0;
  double id = 1.0;

  bool operator==(const LossWeights&) const = default;
};

struct LossOptions {
  bool feature_matching = true;   // cycle loss with discriminator feature terms
  bool extended_identity = true;  // identity loss on converted samples too
  bool saturating_adversarial = false;

  bool operator==(const LossOptions&) const = default;
};

enum class AdversarialSide { discriminator, generator };

// discriminator side: bce(real, real) + bce(fake, fake)
template <typename T>
ad::Tensor<T> discriminator_adversarial_loss(const ad::Tensor<T>& real_logits,
                                             const ad::Tensor<T>& fake_logits);

// Non-saturating -log D(G(x)) by default; `saturating` gives the literal
// minimax term log(1 - D(G(x))).
template <typename T>
ad::Tensor<T> generator_adversarial_loss(const ad::Tensor<T>& fake_logits, bool saturating = false);

// Dispatches on side; real_logits is ignored on the generator side.
template <typename T>
ad::Tensor<T> adversarial_loss(const ad::Tensor<T>& real_logits, const ad::Tensor<T>& fake_logits,
                               AdversarialSide side, bool saturating = false);

// L1(cycled_x, x) + L1(cycled_y, y), plus, with feature matching, the
// block-averaged L1 between discriminator features of the cycled and real
// inputs. Features are taken without input noise and the real-input
// features are constants.
template <typename T>
ad::Tensor<T> cycle_loss_terms(const ad::Tensor<T>& x, const ad::Tensor<T>& cycled_x,
                               const ad::Tensor<T>& y, const ad::Tensor<T>& cycled_y,
                               const BoundDiscriminator<T>& d_x, const BoundDiscriminator<T>& d_y,
                               const LossOptions& opts);

template <typename T>
ad::Tensor<T> cycle_loss(const ad::Tensor<T>& x, const ad::Tensor<T>& y,
                         const BoundGenerator<T>& g_xy, const BoundGenerator<T>& g_yx,
                         const BoundDiscriminator<T>& d_x, const BoundDiscriminator<T>& d_y,
                         const LossOptions& opts);

// Precomputed generator applications for the identity loss. The doubled
// entries are only read when extended identity is on.
template <typename T>
struct IdentityInputs {
  ad::Tensor<T> x, y;
  ad::Tensor<T> g_xy_of_y, g_yx_of_x;
  ad::Tensor<T> g_xy_of_x, g_xy_of_g_xy_of_x;
  ad::Tensor<T> g_yx_of_y, g_yx_of_g_yx_of_y;
};

template <typename T>
ad::Tensor<T> identity_loss_terms(const IdentityInputs<T>& in, const LossOptions& opts);

template <typename T>
ad::Tensor<T> identity_loss(const ad::Tensor<T>& x, const ad::Tensor<T>& y,
                            const BoundGenerator<T>& g_xy, const BoundGenerator<T>& g_yx,
                            const LossOptions& opts);

template <typename T>
ad::Tensor<T> total_generator_loss(const ad::Tensor<T>& adv, const ad::Tensor<T>& cyc,
                                   const ad::Tensor<T>& id, const LossWeights& w);

double total_generator_loss(double adv, double cyc, double id, const LossWeights& w);

template <typename T>
struct GeneratorLossTerms {
  ad::Tensor<T> adv_g;
  ad::Tensor<T> cyc;
  ad::Tensor<T> id;
  ad::Tensor<T> total;
};

// Full generator objective on one (x, y) pair. Each generator application
// is computed once and shared between the adversarial, cycle and identity
// terms. Noise seeds feed the training-mode discriminator calls.
template <typename T>
GeneratorLossTerms<T> generator_objective(const ad::Tensor<T>& x, const ad::Tensor<T>& y,
                                          const BoundGenerator<T>& g_xy,
                                          const BoundGenerator<T>& g_yx,
                                          const BoundDiscriminator<T>& d_x,
                                          const BoundDiscriminator<T>& d_y, const LossWeights& w,
                                          const LossOptions& opts, std::uint64_t noise_seed_x,
                                          std::uint64_t noise_seed_y);

template <typename T>
struct DiscriminatorLossTerms {
  ad::Tensor<T> adv_d_x;
  ad::Tensor<T> adv_d_y;
  ad::Tensor<T> total;
};

// fake_x = G_yx(y) and fake_y = G_xy(x), expected detached. Seeds feed
// D_x(x), D_x(fake_x), D_y(y), D_y(fake_y) in that order.
template <typename T>
DiscriminatorLossTerms<T> discriminator_objective(const ad::Tensor<T>& x, const ad::Tensor<T>& y,
                                                  const ad::Tensor<T>& fake_x,
                                                  const ad::Tensor<T>& fake_y,
                                                  const BoundDiscriminator<T>& d_x,
                                                  const BoundDiscriminator<T>& d_y,
                                                  const std::array<std::uint64_t, 4>& noise_seeds);

// Scalar summary of one training step, as logged.
struct LossReport {
  double adv_d_x = 0.0;
  double adv_d_y = 0.0;
  double adv_g = 0.0;
  double cyc = 0.0;
  double id = 0.0;
  double total = 0.0;
};

}  // namespace axialvc::model
