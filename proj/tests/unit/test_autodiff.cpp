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

#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "axialvc/autodiff/ops.hpp"
#include "axialvc/error.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

namespace axialvc {
namespace {

using ad::ConvSpec;
using ad::Tape;
using ad::Tensor;

std::vector<double> values_of(const Tensor<double>& t) {
  return {t.values().begin(), t.values().end()};
}

std::vector<double> grad_of(const Tensor<double>& t) { return {t.grad().begin(), t.grad().end()}; }

void expect_all_near(const std::vector<double>& a, const std::vector<double>& b, double tol) {
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_NEAR(a[i], b[i], tol) << "index " << i;
}

oracle::FdReport fd(const oracle::Objective& f, std::vector<ad::Shape> shapes, std::uint64_t seed,
                    double lo = -1.0, double hi = 1.0) {
  std::vector<std::vector<double>> values;
  for (std::size_t i = 0; i < shapes.size(); ++i) {
    values.push_back(testing::uniform_values(ad::numel(shapes[i]), seed + i, lo, hi));
  }
  return oracle::finite_difference_check(f, shapes, values);
}

TEST(Conv1d, IdentityPointwise) {
  Tape<double> tape;
  const auto xv = testing::normal_values(3 * 7, 1);
  std::vector<double> w(9, 0.0);
  for (int c = 0; c < 3; ++c) w[c * 3 + c] = 1.0;
  auto y = ad::conv1d(tape.constant({3, 7}, xv), tape.constant({3, 3, 1}, w),
                      tape.constant({3}, {0, 0, 0}), ConvSpec::same(3, 3, 1));
  EXPECT_EQ(values_of(y), xv);
}

TEST(Conv1d, DepthwiseDeltaKernel) {
  Tape<double> tape;
  const auto xv = testing::normal_values(4 * 9, 2);
  std::vector<double> w;
  for (int c = 0; c < 4; ++c) w.insert(w.end(), {0.0, 1.0, 0.0});
  auto y = ad::conv1d(tape.constant({4, 9}, xv), tape.constant({4, 1, 3}, w),
                      tape.constant({4}, {0, 0, 0, 0}), ConvSpec::same(4, 4, 3, 4));
  EXPECT_EQ(values_of(y), xv);
}

TEST(Conv1d, MatchesLoopOracleForwardAndBackward) {
  const oracle::ConvGeometry g{3, 2, 3, 1, 1, 1};
  const ConvSpec spec{3, 2, 3, 1, 1, 1};
  const auto xv = testing::normal_values(3 * 5, 3);
  const auto wv = testing::normal_values(2 * 3 * 3, 4);
  const auto bv = testing::normal_values(2, 5);
  const auto up = testing::normal_values(2 * 5, 6);
  Tape<double> tape;
  auto x = tape.variable({3, 5}, xv);
  auto w = tape.variable({2, 3, 3}, wv);
  auto b = tape.variable({2}, bv);
  auto y = ad::conv1d(x, w, b, spec);
  expect_all_near(values_of(y), oracle::conv1d(xv, 5, wv, bv, g), 1e-10);
  tape.backward(ad::sum(ad::mul(y, tape.constant({2, 5}, up))));
  const auto ref = oracle::conv1d_backward(xv, 5, wv, up, g);
  expect_all_near(grad_of(x), ref.input, 1e-10);
  expect_all_near(grad_of(w), ref.weight, 1e-10);
  expect_all_near(grad_of(b), ref.bias, 1e-10);
}

TEST(Conv1dProperty, MatchesLoopOracleOnRandomGeometry) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t groups = 1 + rng() % 3;
    const std::size_t cin = groups * (1 + rng() % 3), cout = groups * (1 + rng() % 3);
    const std::size_t k = 1 + rng() % 5, stride = 1 + rng() % 2, pad = rng() % 3;
    std::size_t frames = k + rng() % 8;
    while ((frames + 2 * pad - k) % stride != 0) ++frames;
    const oracle::ConvGeometry g{cin, cout, k, stride, groups, pad};
    const ConvSpec spec{cin, cout, k, stride, groups, pad};
    const auto xv = testing::normal_values(cin * frames, 100 + trial);
    const auto wv = testing::normal_values(cout * (cin / groups) * k, 200 + trial);
    const auto bv = testing::normal_values(cout, 300 + trial);
    const std::size_t tout = g.out_frames(frames);
    const auto up = testing::normal_values(cout * tout, 400 + trial);
    Tape<double> tape;
    auto x = tape.variable({cin, frames}, xv);
    auto w = tape.variable({cout, cin / groups, k}, wv);
    auto b = tape.variable({cout}, bv);
    auto y = ad::conv1d(x, w, b, spec);
    ASSERT_EQ(y.shape(), (ad::Shape{cout, tout}));
    expect_all_near(values_of(y), oracle::conv1d(xv, frames, wv, bv, g), 1e-10);
    tape.backward(ad::sum(ad::mul(y, tape.constant({cout, tout}, up))));
    const auto ref = oracle::conv1d_backward(xv, frames, wv, up, g);
    expect_all_near(grad_of(x), ref.input, 1e-10);
    expect_all_near(grad_of(w), ref.weight, 1e-10);
    expect_all_near(grad_of(b), ref.bias, 1e-10);
  }
}

TEST(Conv1dProperty, SamePaddingPreservesLength) {
  std::mt19937_64 rng(19);
  for (std::size_t k : {1u, 3u, 5u, 17u}) {
    for (int trial = 0; trial < 10; ++trial) {
      const std::size_t frames = 1 + rng() % 300;
      Tape<float> tape;
      auto y = ad::conv1d(tape.constant({2, frames}, std::vector<float>(2 * frames, 1.0f)),
                          tape.constant({2, 1, k}, std::vector<float>(2 * k, 0.5f)),
                          tape.constant({2}, {0.0f, 0.0f}), ConvSpec::same(2, 2, k, 2));
      EXPECT_EQ(y.dim(1), frames) << "k " << k;
    }
  }
}

TEST(Conv1d, BadGeometryIsRejected) {
  Tape<double> tape;
  auto x = tape.constant({3, 5}, std::vector<double>(15, 1.0));
  auto w = tape.constant({2, 3, 3}, std::vector<double>(18, 1.0));
  auto b = tape.constant({2}, {0.0, 0.0});
  EXPECT_THROW(ad::conv1d(x, w, b, ConvSpec{4, 2, 3, 1, 1, 1}), ValidationError);
  EXPECT_THROW(ad::conv1d(x, w, b, ConvSpec{3, 2, 3, 3, 1, 1}), ValidationError);
  EXPECT_THROW((ConvSpec{3, 2, 3, 1, 2, 1}.validate()), ValidationError);
}

TEST(LeakyRelu, ClosedFormValues) {
  Tape<double> tape;
  auto y = ad::leaky_relu(tape.constant({2}, {-2.0, 3.0}), 0.01);
  EXPECT_DOUBLE_EQ(y.values()[0], -0.02);
  EXPECT_DOUBLE_EQ(y.values()[1], 3.0);
  auto z = ad::leaky_relu(tape.constant({1}, {3.0}), 0.7);
  EXPECT_DOUBLE_EQ(z.item(), 3.0);
}

TEST(LeakyRelu, SlopeZeroEqualsRelu) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    Tape<double> tape;
    auto x = tape.constant({4, 11}, testing::normal_values(44, seed));
    EXPECT_EQ(values_of(ad::leaky_relu(x, 0.0)), values_of(ad::relu(x)));
  }
}

TEST(LeakyRelu, SubgradientAtZeroIsSlope) {
  Tape<double> tape;
  auto x = tape.variable({1}, {0.0});
  tape.backward(ad::sum(ad::leaky_relu(x, 0.2)));
  EXPECT_DOUBLE_EQ(x.grad()[0], 0.2);
}

TEST(L1Loss, ClosedFormValues) {
  Tape<double> tape;
  auto a = tape.constant({2}, {1.0, -1.0});
  EXPECT_DOUBLE_EQ(ad::l1_loss(a, a).item(), 0.0);
  EXPECT_DOUBLE_EQ(ad::l1_loss(a, tape.constant({2}, {0.0, 0.0})).item(), 1.0);
}

TEST(L1Loss, GradientIsSignOverCount) {
  Tape<double> tape;
  auto a = tape.variable({4}, {1.0, -2.0, 0.5, 0.0});
  auto b = tape.constant({4}, {0.0, 0.0, 1.0, 0.0});
  tape.backward(ad::l1_loss(a, b));
  expect_all_near(grad_of(a), {0.25, -0.25, -0.25, 0.0}, 1e-15);
}

TEST(L1Loss, ShapeMismatchIsRejected) {
  Tape<double> tape;
  EXPECT_THROW(ad::l1_loss(tape.constant({2}, {1.0, 2.0}), tape.constant({3}, {1.0, 2.0, 3.0})),
               ValidationError);
}

TEST(Bce, ClosedFormValues) {
  Tape<double> tape;
  auto zero = tape.constant({1}, {0.0});
  EXPECT_NEAR(ad::bce_with_logits(zero, true).item(), std::log(2.0), 1e-15);
  EXPECT_NEAR(ad::bce_with_logits(zero, false).item(), std::log(2.0), 1e-15);
  auto big = tape.constant({1}, {20.0});
  EXPECT_NEAR(ad::bce_with_logits(big, true).item(), oracle::softplus(-20.0), 1e-22);
  EXPECT_NEAR(ad::bce_with_logits(big, true).item(), 2.06e-9, 0.005e-9);
  EXPECT_NEAR(ad::bce_with_logits(big, false).item(), oracle::softplus(20.0), 1e-12);
}

TEST(Bce, StableForExtremeLogits) {
  Tape<double> tape;
  auto z = tape.constant({2}, {-800.0, 800.0});
  EXPECT_NEAR(ad::bce_with_logits(z, true).item(), 400.0, 1e-9);
  EXPECT_NEAR(ad::bce_with_logits(z, false).item(), 400.0, 1e-9);
}

TEST(GaussianNoise, ZeroStdIsIdentity) {
  Tape<double> tape;
  auto x = tape.constant({3, 4}, testing::normal_values(12, 3));
  EXPECT_EQ(values_of(ad::gaussian_noise(x, 0.0, 5)), values_of(x));
}

TEST(GaussianNoise, SeedIsDeterministic) {
  Tape<float> tape;
  auto x = tape.constant({2, 50}, std::vector<float>(100, 0.5f));
  auto a = ad::gaussian_noise(x, 0.01, 42), b = ad::gaussian_noise(x, 0.01, 42);
  auto c = ad::gaussian_noise(x, 0.01, 43);
  EXPECT_TRUE(std::equal(a.values().begin(), a.values().end(), b.values().begin()));
  EXPECT_FALSE(std::equal(a.values().begin(), a.values().end(), c.values().begin()));
}

TEST(GaussianNoise, SampleMomentsMatchStd) {
  const std::size_t n = 1'000'000;
  const double std = 0.01;
  Tape<double> tape;
  auto y = ad::gaussian_noise(tape.constant({1, n}, std::vector<double>(n, 0.0)), std, 7);
  double mean = 0.0, sq = 0.0;
  for (double v : y.values()) mean += v;
  mean /= double(n);
  for (double v : y.values()) sq += (v - mean) * (v - mean);
  const double sd = std::sqrt(sq / double(n - 1));
  EXPECT_LT(std::abs(mean), 4.0 * std / 1000.0);
  EXPECT_LT(std::abs(sd - std) / std, 0.01);
}

TEST(GaussianNoise, GradientIsIdentity) {
  Tape<double> tape;
  auto x = tape.variable({5}, testing::normal_values(5, 8));
  tape.backward(ad::sum(ad::gaussian_noise(x, 0.3, 1)));
  expect_all_near(grad_of(x), std::vector<double>(5, 1.0), 0.0);
}

TEST(Backward, SumGivesOnes) {
  Tape<double> tape;
  auto x = tape.variable({3, 4}, testing::normal_values(12, 9));
  tape.backward(ad::sum(x));
  expect_all_near(grad_of(x), std::vector<double>(12, 1.0), 0.0);
}

TEST(Backward, DeadReluUnitsGiveZeroGradient) {
  Tape<double> tape;
  auto x = tape.variable({6}, testing::uniform_values(6, 10, -2.0, -0.1));
  auto zero = tape.constant({6}, std::vector<double>(6, 0.0));
  tape.backward(ad::l1_loss(ad::relu(x), zero));
  expect_all_near(grad_of(x), std::vector<double>(6, 0.0), 0.0);
}

TEST(Backward, ErrorsAreReported) {
  {
    Tape<double> tape;
    auto x = tape.variable({2}, {1.0, 2.0});
    EXPECT_THROW(tape.backward(x), ValidationError);
  }
  {
    Tape<double> tape;
    auto c = tape.constant({2}, {1.0, 2.0});
    EXPECT_THROW(tape.backward(ad::sum(c)), ValidationError);
  }
  {
    Tape<double> tape;
    auto x = tape.variable({1}, {1.0});
    auto loss = ad::sum(x);
    tape.backward(loss);
    EXPECT_THROW(tape.backward(loss), ValidationError);
  }
  {
    Tape<double> a, b;
    auto x = a.variable({1}, {1.0});
    auto y = b.variable({1}, {1.0});
    EXPECT_THROW(ad::add(x, y), ValidationError);
  }
}

TEST(Backward, NonFiniteValuesTrip) {
  Tape<double> tape;
  const double inf = std::numeric_limits<double>::infinity();
  EXPECT_THROW(tape.variable({1}, {inf}), NonFiniteError);
  auto big = tape.constant({1}, {1e308});
  EXPECT_THROW(ad::scale(big, 10.0), NonFiniteError);
}

TEST(Backward, DetachStopsGradient) {
  Tape<double> tape;
  auto x = tape.variable({3}, {1.0, 2.0, 3.0});
  auto y = ad::add(ad::detach(ad::scale(x, 2.0)), x);
  tape.backward(ad::sum(y));
  expect_all_near(grad_of(x), {1.0, 1.0, 1.0}, 0.0);
}

TEST(BackwardProperty, AdjointIsLinear) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto xv = testing::normal_values(12, seed);
    const auto wv = testing::normal_values(2 * 3 * 3, seed + 50);
    auto run = [&](int which) {
      Tape<double> tape;
      auto x = tape.variable({3, 4}, xv);
      auto w = tape.variable({2, 3, 3}, wv);
      auto y = ad::conv1d(x, w, tape.constant({2}, {0.1, -0.2}), ConvSpec::same(3, 2, 3));
      auto l1 = ad::mean(ad::leaky_relu(y, 0.2));
      auto l2 = ad::bce_with_logits(y, true);
      tape.backward(which == 0 ? l1 : which == 1 ? l2 : ad::add(l1, l2));
      auto g = grad_of(x);
      auto gw = grad_of(w);
      g.insert(g.end(), gw.begin(), gw.end());
      return g;
    };
    const auto a = run(0), b = run(1), both = run(2);
    for (std::size_t i = 0; i < both.size(); ++i) EXPECT_NEAR(both[i], a[i] + b[i], 1e-13);
  }
}

TEST(BackwardProperty, RepeatedRunsAreBitIdentical) {
  auto run = [] {
    Tape<float> tape;
    auto x = tape.variable({4, 10}, testing::to_float(testing::normal_values(40, 3)));
    auto w = tape.variable({4, 1, 5}, testing::to_float(testing::normal_values(20, 4)));
    auto y =
        ad::conv1d(ad::gaussian_noise(x, 0.01, 9), w,
                   tape.constant({4}, std::vector<float>(4, 0.0f)), ConvSpec::same(4, 4, 5, 4));
    tape.backward(ad::bce_with_logits(y, false));
    std::vector<float> out(y.values().begin(), y.values().end());
    out.insert(out.end(), w.grad().begin(), w.grad().end());
    return out;
  };
  EXPECT_EQ(run(), run());
}

// Finite-difference checks, one per differentiable op.

TEST(GradientCheck, Conv1dVariants) {
  for (const auto& spec : {ConvSpec{3, 2, 3, 1, 1, 1}, ConvSpec{4, 4, 5, 1, 4, 2},
                           ConvSpec{4, 2, 3, 2, 2, 0}, ConvSpec{2, 3, 1, 1, 1, 0}}) {
    const std::size_t frames = spec.stride == 2 ? 7 : 6;
    auto f = [&](Tape<double>&, const std::vector<Tensor<double>>& in) {
      return ad::sum(
          ad::mul(ad::conv1d(in[0], in[1], in[2], spec), ad::conv1d(in[0], in[1], in[2], spec)));
    };
    const auto r = fd(f,
                      {{spec.in_channels, frames},
                       {spec.out_channels, spec.in_channels / spec.groups, spec.kernel},
                       {spec.out_channels}},
                      11);
    EXPECT_TRUE(r.ok(1e-4)) << r.max_rel_error << " at " << r.worst;
  }
}

TEST(GradientCheck, ElementwiseAndReductions) {
  const ad::Shape s{3, 5};
  std::vector<std::pair<const char*, oracle::Objective>> cases = {
      {"relu", [](auto&, const auto& in) { return ad::sum(ad::mul(ad::relu(in[0]), in[1])); }},
      {"leaky",
       [](auto&, const auto& in) { return ad::sum(ad::mul(ad::leaky_relu(in[0], 0.2), in[1])); }},
      {"add", [](auto&, const auto& in) { return ad::sum(ad::mul(ad::add(in[0], in[1]), in[0])); }},
      {"mul", [](auto&, const auto& in) { return ad::sum(ad::mul(in[0], in[1])); }},
      {"scale",
       [](auto&, const auto& in) { return ad::sum(ad::mul(ad::scale(in[0], -1.7), in[1])); }},
      {"mean", [](auto&, const auto& in) { return ad::mean(ad::mul(in[0], in[1])); }},
      {"l1", [](auto&, const auto& in) { return ad::l1_loss(in[0], in[1]); }},
      {"bce_real",
       [](auto&, const auto& in) { return ad::bce_with_logits(ad::mul(in[0], in[1]), true); }},
      {"bce_fake",
       [](auto&, const auto& in) { return ad::bce_with_logits(ad::scale(in[0], 3.0), false); }},
      {"noise",
       [](auto&, const auto& in) {
         return ad::sum(ad::mul(ad::gaussian_noise(in[0], 0.1, 3), in[1]));
       }},
  };
  for (std::size_t i = 0; i < cases.size(); ++i) {
    const auto r = fd(cases[i].second, {s, s}, 20 + i);
    EXPECT_TRUE(r.ok(1e-4)) << cases[i].first << ": " << r.max_rel_error << " at " << r.worst;
  }
}

TEST(GradientCheck, ShapeOps) {
  auto concat = [](Tape<double>&, const std::vector<Tensor<double>>& in) {
    std::vector<Tensor<double>> parts{in[0], in[1]};
    auto c = ad::concat_channels<double>(parts);
    return ad::sum(ad::mul(c, c));
  };
  auto r = fd(concat, {{2, 4}, {3, 4}}, 40);
  EXPECT_TRUE(r.ok(1e-4)) << "concat " << r.max_rel_error;
  auto reshape = [](Tape<double>& tape, const std::vector<Tensor<double>>& in) {
    auto y = ad::reshape(in[0], {6, 2});
    return ad::sum(ad::mul(y, tape.constant({6, 2}, testing::normal_values(12, 1))));
  };
  r = fd(reshape, {{3, 4}}, 41);
  EXPECT_TRUE(r.ok(1e-4)) << "reshape " << r.max_rel_error;
  auto repeat = [](Tape<double>&, const std::vector<Tensor<double>>& in) {
    auto y = ad::repeat_rows(in[0], 3);
    return ad::sum(ad::mul(y, y));
  };
  r = fd(repeat, {{1, 5}}, 42);
  EXPECT_TRUE(r.ok(1e-4)) << "repeat_rows " << r.max_rel_error;
}

}  // namespace
}  // namespace axialvc
