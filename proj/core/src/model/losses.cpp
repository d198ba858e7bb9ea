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

#include "axialvc/model/losses.hpp"

namespace axialvc::model {

template <typename T>
ad::Tensor<T> discriminator_adversarial_loss(const ad::Tensor<T>& real_logits,
                                             const ad::Tensor<T>& fake_logits) {
  return ad::add(ad::bce_with_logits(real_logits, true), ad::bce_with_logits(fake_logits, false));
}

template <typename T>
ad::Tensor<T> generator_adversarial_loss(const ad::Tensor<T>& fake_logits, bool saturating) {
  if (saturating) return ad::scale(ad::bce_with_logits(fake_logits, false), -1.0);
  return ad::bce_with_logits(fake_logits, true);
}

template <typename T>
ad::Tensor<T> adversarial_loss(const ad::Tensor<T>& real_logits, const ad::Tensor<T>& fake_logits,
                               AdversarialSide side, bool saturating) {
  if (side == AdversarialSide::discriminator) {
    return discriminator_adversarial_loss(real_logits, fake_logits);
  }
  return generator_adversarial_loss(fake_logits, saturating);
}

namespace {

template <typename T>
ad::Tensor<T> feature_matching(const ad::Tensor<T>& cycled, const ad::Tensor<T>& real,
                               const BoundDiscriminator<T>& d) {
  const auto fc = d(cycled, 0, false).features;
  const auto fr = d(real, 0, false).features;
  ad::Tensor<T> acc = ad::l1_loss(fc[0], ad::detach(fr[0]));
  for (std::size_t b = 1; b < fc.size(); ++b) {
    acc = ad::add(acc, ad::l1_loss(fc[b], ad::detach(fr[b])));
  }
  return ad::scale(acc, 1.0 / double(fc.size()));
}

}  // namespace

template <typename T>
ad::Tensor<T> cycle_loss_terms(const ad::Tensor<T>& x, const ad::Tensor<T>& cycled_x,
                               const ad::Tensor<T>& y, const ad::Tensor<T>& cycled_y,
                               const BoundDiscriminator<T>& d_x, const BoundDiscriminator<T>& d_y,
                               const LossOptions& opts) {
  auto loss = ad::add(ad::l1_loss(cycled_x, x), ad::l1_loss(cycled_y, y));
  if (!opts.feature_matching) return loss;
  loss = ad::add(loss, feature_matching(cycled_x, x, d_x));
  return ad::add(loss, feature_matching(cycled_y, y, d_y));
}

template <typename T>
ad::Tensor<T> cycle_loss(const ad::Tensor<T>& x, const ad::Tensor<T>& y,
                         const BoundGenerator<T>& g_xy, const BoundGenerator<T>& g_yx,
                         const BoundDiscriminator<T>& d_x, const BoundDiscriminator<T>& d_y,
                         const LossOptions& opts) {
  return cycle_loss_terms(x, g_yx(g_xy(x)), y, g_xy(g_yx(y)), d_x, d_y, opts);
}

template <typename T>
ad::Tensor<T> identity_loss_terms(const IdentityInputs<T>& in, const LossOptions& opts) {
  auto loss = ad::add(ad::l1_loss(in.g_xy_of_y, in.y), ad::l1_loss(in.g_yx_of_x, in.x));
  if (!opts.extended_identity) return loss;
  loss = ad::add(loss, ad::l1_loss(in.g_xy_of_g_xy_of_x, in.g_xy_of_x));
  return ad::add(loss, ad::l1_loss(in.g_yx_of_g_yx_of_y, in.g_yx_of_y));
}

template <typename T>
ad::Tensor<T> identity_loss(const ad::Tensor<T>& x, const ad::Tensor<T>& y,
                            const BoundGenerator<T>& g_xy, const BoundGenerator<T>& g_yx,
                            const LossOptions& opts) {
  IdentityInputs<T> in;
  in.x = x;
  in.y = y;
  in.g_xy_of_y = g_xy(y);
  in.g_yx_of_x = g_yx(x);
  if (opts.extended_identity) {
    in.g_xy_of_x = g_xy(x);
    in.g_xy_of_g_xy_of_x = g_xy(in.g_xy_of_x);
    in.g_yx_of_y = g_yx(y);
    in.g_yx_of_g_yx_of_y = g_yx(in.g_yx_of_y);
  }
  return identity_loss_terms(in, opts);
}

template <typename T>
ad::Tensor<T> total_generator_loss(const ad::Tensor<T>& adv, const ad::Tensor<T>& cyc,
                                   const ad::Tensor<T>& id, const LossWeights& w) {
  return ad::add(ad::add(ad::scale(adv, w.adv), ad::scale(cyc, w.cyc)), ad::scale(id, w.id));
}

double total_generator_loss(double adv, double cyc, double id, const LossWeights& w) {
  return w.adv * adv + w.cyc * cyc + w.id * id;
}

template <typename T>
GeneratorLossTerms<T> generator_objective(const ad::Tensor<T>& x, const ad::Tensor<T>& y,
                                          const BoundGenerator<T>& g_xy,
                                          const BoundGenerator<T>& g_yx,
                                          const BoundDiscriminator<T>& d_x,
                                          const BoundDiscriminator<T>& d_y, const LossWeights& w,
                                          const LossOptions& opts, std::uint64_t noise_seed_x,
                                          std::uint64_t noise_seed_y) {
  const auto fake_y = g_xy(x);
  const auto fake_x = g_yx(y);

  GeneratorLossTerms<T> out;
  out.adv_g = ad::add(generator_adversarial_loss(d_y(fake_y, noise_seed_y, true).logits,
                                                 opts.saturating_adversarial),
                      generator_adversarial_loss(d_x(fake_x, noise_seed_x, true).logits,
                                                 opts.saturating_adversarial));

  out.cyc = cycle_loss_terms(x, g_yx(fake_y), y, g_xy(fake_x), d_x, d_y, opts);

  IdentityInputs<T> in;
  in.x = x;
  in.y = y;
  in.g_xy_of_y = g_xy(y);
  in.g_yx_of_x = g_yx(x);
  if (opts.extended_identity) {
    in.g_xy_of_x = fake_y;
    in.g_xy_of_g_xy_of_x = g_xy(fake_y);
    in.g_yx_of_y = fake_x;
    in.g_yx_of_g_yx_of_y = g_yx(fake_x);
  }
  out.id = identity_loss_terms(in, opts);
  out.total = total_generator_loss(out.adv_g, out.cyc, out.id, w);
  return out;
}

template <typename T>
DiscriminatorLossTerms<T> discriminator_objective(const ad::Tensor<T>& x, const ad::Tensor<T>& y,
                                                  const ad::Tensor<T>& fake_x,
                                                  const ad::Tensor<T>& fake_y,
                                                  const BoundDiscriminator<T>& d_x,
                                                  const BoundDiscriminator<T>& d_y,
                                                  const std::array<std::uint64_t, 4>& noise_seeds) {
  DiscriminatorLossTerms<T> out;
  out.adv_d_x = discriminator_adversarial_loss(d_x(x, noise_seeds[0], true).logits,
                                               d_x(fake_x, noise_seeds[1], true).logits);
  out.adv_d_y = discriminator_adversarial_loss(d_y(y, noise_seeds[2], true).logits,
                                               d_y(fake_y, noise_seeds[3], true).logits);
  out.total = ad::add(out.adv_d_x, out.adv_d_y);
  return out;
}

#define AXIALVC_INSTANTIATE_LOSSES(T)                                                           \
  template ad::Tensor<T> discriminator_adversarial_loss(const ad::Tensor<T>&,                   \
                                                        const ad::Tensor<T>&);                  \
  template ad::Tensor<T> generator_adversarial_loss(const ad::Tensor<T>&, bool);                \
  template ad::Tensor<T> adversarial_loss(const ad::Tensor<T>&, const ad::Tensor<T>&,           \
                                          AdversarialSide, bool);                               \
  template ad::Tensor<T> cycle_loss_terms(                                                      \
      const ad::Tensor<T>&, const ad::Tensor<T>&, const ad::Tensor<T>&, const ad::Tensor<T>&,   \
      const BoundDiscriminator<T>&, const BoundDiscriminator<T>&, const LossOptions&);          \
  template ad::Tensor<T> cycle_loss(const ad::Tensor<T>&, const ad::Tensor<T>&,                 \
                                    const BoundGenerator<T>&, const BoundGenerator<T>&,         \
                                    const BoundDiscriminator<T>&, const BoundDiscriminator<T>&, \
                                    const LossOptions&);                                        \
  template ad::Tensor<T> identity_loss_terms(const IdentityInputs<T>&, const LossOptions&);     \
  template ad::Tensor<T> identity_loss(const ad::Tensor<T>&, const ad::Tensor<T>&,              \
                                       const BoundGenerator<T>&, const BoundGenerator<T>&,      \
                                       const LossOptions&);                                     \
  template ad::Tensor<T> total_generator_loss(const ad::Tensor<T>&, const ad::Tensor<T>&,       \
                                              const ad::Tensor<T>&, const LossWeights&);        \
  template GeneratorLossTerms<T> generator_objective(                                           \
      const ad::Tensor<T>&, const ad::Tensor<T>&, const BoundGenerator<T>&,                     \
      const BoundGenerator<T>&, const BoundDiscriminator<T>&, const BoundDiscriminator<T>&,     \
      const LossWeights&, const LossOptions&, std::uint64_t, std::uint64_t);                    \
  template DiscriminatorLossTerms<T> discriminator_objective(                                   \
      const ad::Tensor<T>&, const ad::Tensor<T>&, const ad::Tensor<T>&, const ad::Tensor<T>&,   \
      const BoundDiscriminator<T>&, const BoundDiscriminator<T>&,                               \
      const std::array<std::uint64_t, 4>&);

AXIALVC_INSTANTIATE_LOSSES(float)
AXIALVC_INSTANTIATE_LOSSES(double)

#undef AXIALVC_INSTANTIATE_LOSSES

}  // namespace axialvc::model
