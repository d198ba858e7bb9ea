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

#include "axialvc/autodiff/ops.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace axialvc::ad {
namespace {

// Eight independent accumulators so the compiler can vectorize the
// reduction without reassociating a single running sum.
template <typename T>
T dot(const T* a, const T* b, std::size_t n) {
  T acc[8] = {};
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    for (std::size_t l = 0; l < 8; ++l) acc[l] += a[i + l] * b[i + l];
  }
  T tail = 0;
  for (; i < n; ++i) tail += a[i] * b[i];
  return ((acc[0] + acc[1]) + (acc[2] + acc[3])) + ((acc[4] + acc[5]) + (acc[6] + acc[7])) + tail;
}

template <typename T>
T sum_of(const T* a, std::size_t n) {
  T acc[8] = {};
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    for (std::size_t l = 0; l < 8; ++l) acc[l] += a[i + l];
  }
  T tail = 0;
  for (; i < n; ++i) tail += a[i];
  return ((acc[0] + acc[1]) + (acc[2] + acc[3])) + ((acc[4] + acc[5]) + (acc[6] + acc[7])) + tail;
}

template <typename T>
void axpy(T* y, T a, const T* x, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

template <typename T>
void same_tape(const Tensor<T>& a, const Tensor<T>& b, std::string_view op) {
  a.tape().check_owner(b, op);
}

template <typename T>
void same_shape(const Tensor<T>& a, const Tensor<T>& b, std::string_view op) {
  if (a.shape() != b.shape()) {
    throw ValidationError(std::string(op) + ": shape mismatch " + to_string(a.shape()) + " vs " +
                          to_string(b.shape()));
  }
}

// Valid output range [lo, hi) for a stride-1 tap at `offset`.
inline void tap_range(std::ptrdiff_t offset, std::size_t in_frames, std::size_t out_frames,
                      std::size_t& lo, std::size_t& hi) {
  const auto t_in = static_cast<std::ptrdiff_t>(in_frames);
  const auto t_out = static_cast<std::ptrdiff_t>(out_frames);
  const std::ptrdiff_t l = std::max<std::ptrdiff_t>(0, -offset);
  const std::ptrdiff_t h = std::min<std::ptrdiff_t>(t_out, t_in - offset);
  lo = static_cast<std::size_t>(l);
  hi = static_cast<std::size_t>(std::max(l, h));
}

template <typename T>
std::vector<T> map_values(const Tensor<T>& x, auto fn) {
  auto in = x.values();
  std::vector<T> out(in.size());
  for (std::size_t i = 0; i < in.size(); ++i) out[i] = fn(in[i]);
  return out;
}

}  // namespace

void ConvSpec::validate() const {
  if (groups == 0 || kernel == 0 || stride == 0) {
    throw ValidationError("conv1d: kernel, stride and groups must be positive");
  }
  if (in_channels % groups != 0 || out_channels % groups != 0) {
    throw ValidationError("conv1d: channels (" + std::to_string(in_channels) + ", " +
                          std::to_string(out_channels) + ") not divisible by groups " +
                          std::to_string(groups));
  }
}

std::size_t ConvSpec::output_frames(std::size_t frames) const {
  const std::size_t padded = frames + 2 * padding;
  if (padded < kernel) {
    throw ValidationError("conv1d: kernel " + std::to_string(kernel) +
                          " longer than padded input " + std::to_string(padded));
  }
  if ((padded - kernel) % stride != 0) {
    throw ValidationError("conv1d: stride " + std::to_string(stride) +
                          " does not divide padded span evenly");
  }
  return 1 + (padded - kernel) / stride;
}

ConvSpec ConvSpec::same(std::size_t in_channels, std::size_t out_channels, std::size_t kernel,
                        std::size_t groups) {
  return ConvSpec{in_channels, out_channels, kernel, 1, groups, (kernel - 1) / 2};
}

template <typename T>
Tensor<T> conv1d(const Tensor<T>& input, const Tensor<T>& weight, const Tensor<T>& bias,
                 const ConvSpec& spec) {
  same_tape(input, weight, "conv1d");
  same_tape(input, bias, "conv1d");
  spec.validate();
  const auto& xs = input.shape();
  const std::size_t cin_g = spec.in_channels / spec.groups;
  const std::size_t cout_g = spec.out_channels / spec.groups;
  if (xs.size() != 2 || xs[0] != spec.in_channels) {
    throw ValidationError("conv1d: expected input [" + std::to_string(spec.in_channels) +
                          " x T], got " + to_string(xs));
  }
  if (weight.shape() != Shape{spec.out_channels, cin_g, spec.kernel}) {
    throw ValidationError("conv1d: expected weight " +
                          to_string({spec.out_channels, cin_g, spec.kernel}) + ", got " +
                          to_string(weight.shape()));
  }
  if (bias.shape() != Shape{spec.out_channels}) {
    throw ValidationError("conv1d: expected bias [" + std::to_string(spec.out_channels) +
                          "], got " + to_string(bias.shape()));
  }
  const std::size_t tin = xs[1];
  const std::size_t tout = spec.output_frames(tin);
  const std::size_t k = spec.kernel;
  const std::size_t stride = spec.stride;
  const auto pad = static_cast<std::ptrdiff_t>(spec.padding);

  auto x = input.values();
  auto w = weight.values();
  auto b = bias.values();
  std::vector<T> out(spec.out_channels * tout);

  for (std::size_t o = 0; o < spec.out_channels; ++o) {
    const std::size_t g = o / cout_g;
    T* orow = out.data() + o * tout;
    std::fill(orow, orow + tout, b[o]);
    for (std::size_t il = 0; il < cin_g; ++il) {
      const T* xrow = x.data() + (g * cin_g + il) * tin;
      const T* wrow = w.data() + (o * cin_g + il) * k;
      for (std::size_t j = 0; j < k; ++j) {
        const std::ptrdiff_t off = static_cast<std::ptrdiff_t>(j) - pad;
        if (stride == 1) {
          std::size_t lo, hi;
          tap_range(off, tin, tout, lo, hi);
          axpy(orow + lo, wrow[j], xrow + lo + off, hi - lo);
        } else {
          for (std::size_t t = 0; t < tout; ++t) {
            const std::ptrdiff_t src = static_cast<std::ptrdiff_t>(t * stride) + off;
            if (src >= 0 && src < static_cast<std::ptrdiff_t>(tin)) orow[t] += wrow[j] * xrow[src];
          }
        }
      }
    }
  }

  const bool rg = input.requires_grad() || weight.requires_grad() || bias.requires_grad();
  const std::size_t xi = input.id(), wi = weight.id(), bi = bias.id();
  return input.tape().record(
      "conv1d", {spec.out_channels, tout}, std::move(out), rg,
      [=](Tape<T>& tape, std::size_t self) {
        const auto& dout = tape.node(self).grad;
        const auto& xv = tape.node(xi).value;
        const auto& wv = tape.node(wi).value;
        T* dx = tape.node(xi).requires_grad ? tape.grad_buffer(xi).data() : nullptr;
        T* dw = tape.node(wi).requires_grad ? tape.grad_buffer(wi).data() : nullptr;
        T* db = tape.node(bi).requires_grad ? tape.grad_buffer(bi).data() : nullptr;
        for (std::size_t o = 0; o < spec.out_channels; ++o) {
          const std::size_t g = o / cout_g;
          const T* drow = dout.data() + o * tout;
          if (db) db[o] += sum_of(drow, tout);
          if (!dx && !dw) continue;
          for (std::size_t il = 0; il < cin_g; ++il) {
            const std::size_t ci = g * cin_g + il;
            const T* xrow = xv.data() + ci * tin;
            const T* wrow = wv.data() + (o * cin_g + il) * k;
            T* dxrow = dx ? dx + ci * tin : nullptr;
            T* dwrow = dw ? dw + (o * cin_g + il) * k : nullptr;
            for (std::size_t j = 0; j < k; ++j) {
              const std::ptrdiff_t off = static_cast<std::ptrdiff_t>(j) - pad;
              if (stride == 1) {
                std::size_t lo, hi;
                tap_range(off, tin, tout, lo, hi);
                if (dxrow) axpy(dxrow + lo + off, wrow[j], drow + lo, hi - lo);
                if (dwrow) dwrow[j] += dot(drow + lo, xrow + lo + off, hi - lo);
              } else {
                for (std::size_t t = 0; t < tout; ++t) {
                  const std::ptrdiff_t src = static_cast<std::ptrdiff_t>(t * stride) + off;
                  if (src < 0 || src >= static_cast<std::ptrdiff_t>(tin)) continue;
                  if (dxrow) dxrow[src] += wrow[j] * drow[t];
                  if (dwrow) dwrow[j] += drow[t] * xrow[src];
                }
              }
            }
          }
        }
      });
}

template <typename T>
Tensor<T> relu(const Tensor<T>& x) {
  auto out = map_values(x, [](T v) { return v > T(0) ? v : T(0); });
  const std::size_t xi = x.id();
  return x.tape().record("relu", x.shape(), std::move(out), x.requires_grad(),
                         [xi](Tape<T>& tape, std::size_t self) {
                           const auto& g = tape.node(self).grad;
                           const auto& xv = tape.node(xi).value;
                           auto& dx = tape.grad_buffer(xi);
                           for (std::size_t i = 0; i < g.size(); ++i) {
                             if (xv[i] > T(0)) dx[i] += g[i];
                           }
                         });
}

template <typename T>
Tensor<T> detach(const Tensor<T>& x) {
  auto v = x.values();
  return x.tape().constant(x.shape(), std::vector<T>(v.begin(), v.end()));
}

template <typename T>
Tensor<T> leaky_relu(const Tensor<T>& x, double slope) {
  if (!(slope >= 0.0 && slope < 1.0)) {
    throw ValidationError("leaky_relu: slope must lie in [0, 1)");
  }
  const T s = static_cast<T>(slope);
  auto out = map_values(x, [s](T v) { return v > T(0) ? v : s * v; });
  const std::size_t xi = x.id();
  return x.tape().record("leaky_relu", x.shape(), std::move(out), x.requires_grad(),
                         [xi, s](Tape<T>& tape, std::size_t self) {
                           const auto& g = tape.node(self).grad;
                           const auto& xv = tape.node(xi).value;
                           auto& dx = tape.grad_buffer(xi);
                           for (std::size_t i = 0; i < g.size(); ++i) {
                             dx[i] += xv[i] > T(0) ? g[i] : s * g[i];
                           }
                         });
}

template <typename T>
Tensor<T> add(const Tensor<T>& a, const Tensor<T>& b) {
  same_tape(a, b, "add");
  same_shape(a, b, "add");
  auto av = a.values();
  auto bv = b.values();
  std::vector<T> out(av.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = av[i] + bv[i];
  const std::size_t ai = a.id(), bi = b.id();
  return a.tape().record("add", a.shape(), std::move(out), a.requires_grad() || b.requires_grad(),
                         [ai, bi](Tape<T>& tape, std::size_t self) {
                           const auto& g = tape.node(self).grad;
                           for (std::size_t src : {ai, bi}) {
                             if (!tape.node(src).requires_grad) continue;
                             auto& d = tape.grad_buffer(src);
                             for (std::size_t i = 0; i < g.size(); ++i) d[i] += g[i];
                           }
                         });
}

template <typename T>
Tensor<T> mul(const Tensor<T>& a, const Tensor<T>& b) {
  same_tape(a, b, "mul");
  same_shape(a, b, "mul");
  auto av = a.values();
  auto bv = b.values();
  std::vector<T> out(av.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = av[i] * bv[i];
  const std::size_t ai = a.id(), bi = b.id();
  return a.tape().record("mul", a.shape(), std::move(out), a.requires_grad() || b.requires_grad(),
                         [ai, bi](Tape<T>& tape, std::size_t self) {
                           const auto& g = tape.node(self).grad;
                           const auto& av = tape.node(ai).value;
                           const auto& bv = tape.node(bi).value;
                           if (tape.node(ai).requires_grad) {
                             auto& d = tape.grad_buffer(ai);
                             for (std::size_t i = 0; i < g.size(); ++i) d[i] += g[i] * bv[i];
                           }
                           if (tape.node(bi).requires_grad) {
                             auto& d = tape.grad_buffer(bi);
                             for (std::size_t i = 0; i < g.size(); ++i) d[i] += g[i] * av[i];
                           }
                         });
}

template <typename T>
Tensor<T> scale(const Tensor<T>& x, double factor) {
  const T f = static_cast<T>(factor);
  auto out = map_values(x, [f](T v) { return f * v; });
  const std::size_t xi = x.id();
  return x.tape().record("scale", x.shape(), std::move(out), x.requires_grad(),
                         [xi, f](Tape<T>& tape, std::size_t self) {
                           const auto& g = tape.node(self).grad;
                           auto& dx = tape.grad_buffer(xi);
                           for (std::size_t i = 0; i < g.size(); ++i) dx[i] += f * g[i];
                         });
}

template <typename T>
Tensor<T> sum(const Tensor<T>& x) {
  auto v = x.values();
  std::vector<T> out{sum_of(v.data(), v.size())};
  const std::size_t xi = x.id();
  return x.tape().record("sum", {1}, std::move(out), x.requires_grad(),
                         [xi](Tape<T>& tape, std::size_t self) {
                           const T g = tape.node(self).grad[0];
                           for (auto& d : tape.grad_buffer(xi)) d += g;
                         });
}

template <typename T>
Tensor<T> mean(const Tensor<T>& x) {
  auto v = x.values();
  if (v.empty()) throw ValidationError("mean: empty tensor");
  const T n = static_cast<T>(v.size());
  std::vector<T> out{sum_of(v.data(), v.size()) / n};
  const std::size_t xi = x.id();
  return x.tape().record("mean", {1}, std::move(out), x.requires_grad(),
                         [xi, n](Tape<T>& tape, std::size_t self) {
                           const T g = tape.node(self).grad[0] / n;
                           for (auto& d : tape.grad_buffer(xi)) d += g;
                         });
}

template <typename T>
Tensor<T> concat_channels(std::span<const Tensor<T>> parts) {
  if (parts.empty()) throw ValidationError("concat_channels: no inputs");
  const auto& first = parts.front();
  if (first.shape().size() != 2) throw ValidationError("concat_channels: inputs must be 2D");
  const std::size_t frames = first.dim(1);
  std::size_t rows = 0;
  bool rg = false;
  std::vector<std::size_t> ids;
  for (const auto& p : parts) {
    same_tape(first, p, "concat_channels");
    if (p.shape().size() != 2 || p.dim(1) != frames) {
      throw ValidationError("concat_channels: frame count mismatch " + to_string(p.shape()));
    }
    rows += p.dim(0);
    rg = rg || p.requires_grad();
    ids.push_back(p.id());
  }
  std::vector<T> out;
  out.reserve(rows * frames);
  for (const auto& p : parts) {
    auto v = p.values();
    out.insert(out.end(), v.begin(), v.end());
  }
  return first.tape().record("concat_channels", {rows, frames}, std::move(out), rg,
                             [ids](Tape<T>& tape, std::size_t self) {
                               const auto& g = tape.node(self).grad;
                               std::size_t offset = 0;
                               for (std::size_t id : ids) {
                                 const std::size_t n = tape.node(id).value.size();
                                 if (tape.node(id).requires_grad) {
                                   auto& d = tape.grad_buffer(id);
                                   for (std::size_t i = 0; i < n; ++i) d[i] += g[offset + i];
                                 }
                                 offset += n;
                               }
                             });
}

template <typename T>
Tensor<T> reshape(const Tensor<T>& x, Shape shape) {
  if (numel(shape) != x.size()) {
    throw ValidationError("reshape: cannot view " + to_string(x.shape()) + " as " +
                          to_string(shape));
  }
  auto v = x.values();
  const std::size_t xi = x.id();
  return x.tape().record("reshape", std::move(shape), std::vector<T>(v.begin(), v.end()),
                         x.requires_grad(), [xi](Tape<T>& tape, std::size_t self) {
                           const auto& g = tape.node(self).grad;
                           auto& d = tape.grad_buffer(xi);
                           for (std::size_t i = 0; i < g.size(); ++i) d[i] += g[i];
                         });
}

template <typename T>
Tensor<T> repeat_rows(const Tensor<T>& x, std::size_t times) {
  if (times == 0) throw ValidationError("repeat_rows: times must be positive");
  const auto& s = x.shape();
  if (s.empty()) throw ValidationError("repeat_rows: scalar input");
  const std::size_t rows = s[0];
  const std::size_t stride = x.size() / rows;
  Shape out_shape = s;
  out_shape[0] = rows * times;
  auto v = x.values();
  std::vector<T> out(rows * times * stride);
  for (std::size_t r = 0; r < rows * times; ++r) {
    std::copy_n(v.data() + (r / times) * stride, stride, out.data() + r * stride);
  }
  const std::size_t xi = x.id();
  return x.tape().record("repeat_rows", std::move(out_shape), std::move(out), x.requires_grad(),
                         [xi, rows, times, stride](Tape<T>& tape, std::size_t self) {
                           const auto& g = tape.node(self).grad;
                           auto& d = tape.grad_buffer(xi);
                           for (std::size_t r = 0; r < rows * times; ++r) {
                             T* drow = d.data() + (r / times) * stride;
                             const T* grow = g.data() + r * stride;
                             for (std::size_t i = 0; i < stride; ++i) drow[i] += grow[i];
                           }
                         });
}

template <typename T>
Tensor<T> l1_loss(const Tensor<T>& a, const Tensor<T>& b) {
  same_tape(a, b, "l1_loss");
  same_shape(a, b, "l1_loss");
  auto av = a.values();
  auto bv = b.values();
  if (av.empty()) throw ValidationError("l1_loss: empty tensors");
  double acc = 0.0;
  for (std::size_t i = 0; i < av.size(); ++i) acc += std::abs(double(av[i]) - double(bv[i]));
  const std::size_t n = av.size();
  std::vector<T> out{static_cast<T>(acc / double(n))};
  const std::size_t ai = a.id(), bi = b.id();
  return a.tape().record(
      "l1_loss", {1}, std::move(out), a.requires_grad() || b.requires_grad(),
      [ai, bi, n](Tape<T>& tape, std::size_t self) {
        const T g = tape.node(self).grad[0] / static_cast<T>(n);
        const auto& av = tape.node(ai).value;
        const auto& bv = tape.node(bi).value;
        T* da = tape.node(ai).requires_grad ? tape.grad_buffer(ai).data() : nullptr;
        T* db = tape.node(bi).requires_grad ? tape.grad_buffer(bi).data() : nullptr;
        for (std::size_t i = 0; i < n; ++i) {
          const T diff = av[i] - bv[i];
          const T s = diff > T(0) ? g : (diff < T(0) ? -g : T(0));
          if (da) da[i] += s;
          if (db) db[i] -= s;
        }
      });
}

template <typename T>
Tensor<T> bce_with_logits(const Tensor<T>& logits, bool target_is_real) {
  auto z = logits.values();
  if (z.empty()) throw ValidationError("bce_with_logits: empty logits");
  const std::size_t n = z.size();
  // softplus(u) = max(u, 0) + log1p(exp(-|u|))
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double u = target_is_real ? -double(z[i]) : double(z[i]);
    acc += std::max(u, 0.0) + std::log1p(std::exp(-std::abs(u)));
  }
  std::vector<T> out{static_cast<T>(acc / double(n))};
  const std::size_t zi = logits.id();
  return logits.tape().record("bce_with_logits", {1}, std::move(out), logits.requires_grad(),
                              [zi, n, target_is_real](Tape<T>& tape, std::size_t self) {
                                const double g = double(tape.node(self).grad[0]) / double(n);
                                const auto& zv = tape.node(zi).value;
                                auto& dz = tape.grad_buffer(zi);
                                for (std::size_t i = 0; i < n; ++i) {
                                  const double z = zv[i];
                                  // sigmoid in the branch that avoids overflow
                                  const double sig = z >= 0 ? 1.0 / (1.0 + std::exp(-z))
                                                            : std::exp(z) / (1.0 + std::exp(z));
                                  const double d = target_is_real ? sig - 1.0 : sig;
                                  dz[i] += static_cast<T>(g * d);
                                }
                              });
}

template <typename T>
Tensor<T> gaussian_noise(const Tensor<T>& x, double std, std::uint64_t seed) {
  if (!(std >= 0.0)) throw ValidationError("gaussian_noise: std must be >= 0");
  auto v = x.values();
  std::vector<T> out(v.begin(), v.end());
  if (std > 0.0) {
    std::mt19937_64 gen(seed);
    std::normal_distribution<double> dist(0.0, std);
    for (auto& o : out) o = static_cast<T>(double(o) + dist(gen));
  }
  const std::size_t xi = x.id();
  return x.tape().record("gaussian_noise", x.shape(), std::move(out), x.requires_grad(),
                         [xi](Tape<T>& tape, std::size_t self) {
                           const auto& g = tape.node(self).grad;
                           auto& d = tape.grad_buffer(xi);
                           for (std::size_t i = 0; i < g.size(); ++i) d[i] += g[i];
                         });
}

#define AXIALVC_INSTANTIATE_OPS(T)                                                \
  template Tensor<T> conv1d(const Tensor<T>&, const Tensor<T>&, const Tensor<T>&, \
                            const ConvSpec&);                                     \
  template Tensor<T> relu(const Tensor<T>&);                                      \
  template Tensor<T> detach(const Tensor<T>&);                                    \
  template Tensor<T> leaky_relu(const Tensor<T>&, double);                        \
  template Tensor<T> add(const Tensor<T>&, const Tensor<T>&);                     \
  template Tensor<T> mul(const Tensor<T>&, const Tensor<T>&);                     \
  template Tensor<T> scale(const Tensor<T>&, double);                             \
  template Tensor<T> sum(const Tensor<T>&);                                       \
  template Tensor<T> mean(const Tensor<T>&);                                      \
  template Tensor<T> concat_channels(std::span<const Tensor<T>>);                 \
  template Tensor<T> reshape(const Tensor<T>&, Shape);                            \
  template Tensor<T> repeat_rows(const Tensor<T>&, std::size_t);                  \
  template Tensor<T> l1_loss(const Tensor<T>&, const Tensor<T>&);                 \
  template Tensor<T> bce_with_logits(const Tensor<T>&, bool);                     \
  template Tensor<T> gaussian_noise(const Tensor<T>&, double, std::uint64_t);

AXIALVC_INSTANTIATE_OPS(float)
AXIALVC_INSTANTIATE_OPS(double)

#undef AXIALVC_INSTANTIATE_OPS

}  // namespace axialvc::ad
