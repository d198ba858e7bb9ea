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

#include "axialvc/model/parameters.hpp"

#include <cmath>

namespace axialvc::model {

template <typename T>
Parameter<T>& ParameterSet<T>::add(std::string name, ad::Shape shape, std::vector<T> value) {
  if (ad::numel(shape) != value.size()) {
    throw ValidationError("parameter " + name + ": shape " + ad::to_string(shape) +
                          " does not match " + std::to_string(value.size()) + " values");
  }
  for (const auto& p : params_) {
    if (p.name == name) throw ValidationError("duplicate parameter name " + name);
  }
  params_.push_back({std::move(name), std::move(shape), std::move(value)});
  return params_.back();
}

template <typename T>
Parameter<T>& ParameterSet<T>::add_zeros(std::string name, ad::Shape shape) {
  const std::size_t n = ad::numel(shape);
  return add(std::move(name), std::move(shape), std::vector<T>(n, T(0)));
}

template <typename T>
std::size_t ParameterSet<T>::index_of(const std::string& name) const {
  for (std::size_t i = 0; i < params_.size(); ++i) {
    if (params_[i].name == name) return i;
  }
  throw ValidationError("unknown parameter " + name);
}

template <typename T>
Parameter<T>& ParameterSet<T>::at(const std::string& name) {
  return params_[index_of(name)];
}

template <typename T>
const Parameter<T>& ParameterSet<T>::at(const std::string& name) const {
  return params_[index_of(name)];
}

template <typename T>
std::size_t ParameterSet<T>::scalar_count() const {
  std::size_t n = 0;
  for (const auto& p : params_) n += p.value.size();
  return n;
}

template <typename T>
Gradients<T> ParameterSet<T>::zero_gradients() const {
  Gradients<T> g;
  g.reserve(params_.size());
  for (const auto& p : params_) g.emplace_back(p.value.size(), T(0));
  return g;
}

template <typename T>
std::vector<ad::Tensor<T>> ParameterSet<T>::bind(ad::Tape<T>& tape, bool trainable) const {
  std::vector<ad::Tensor<T>> leaves;
  leaves.reserve(params_.size());
  for (const auto& p : params_) {
    leaves.push_back(trainable ? tape.variable(p.shape, p.value) : tape.constant(p.shape, p.value));
  }
  return leaves;
}

template <typename T>
Gradients<T> collect_gradients(const std::vector<ad::Tensor<T>>& leaves) {
  Gradients<T> g;
  g.reserve(leaves.size());
  for (const auto& leaf : leaves) {
    auto grad = leaf.grad();
    if (grad.empty()) {
      g.emplace_back(leaf.size(), T(0));
    } else {
      g.emplace_back(grad.begin(), grad.end());
    }
  }
  return g;
}

template <typename T>
void accumulate(Gradients<T>& dst, const Gradients<T>& src) {
  if (dst.size() != src.size()) throw ValidationError("gradient set size mismatch");
  for (std::size_t i = 0; i < dst.size(); ++i) {
    if (dst[i].size() != src[i].size()) throw ValidationError("gradient size mismatch");
    for (std::size_t j = 0; j < dst[i].size(); ++j) dst[i][j] += src[i][j];
  }
}

template <typename T>
void init_uniform(std::vector<T>& values, std::size_t fan_in, std::mt19937_64& rng) {
  const double bound = std::sqrt(1.0 / double(std::max<std::size_t>(fan_in, 1)));
  std::uniform_real_distribution<double> dist(-bound, bound);
  for (auto& v : values) v = static_cast<T>(dist(rng));
}

template class ParameterSet<float>;
template class ParameterSet<double>;
template Gradients<float> collect_gradients(const std::vector<ad::Tensor<float>>&);
template Gradients<double> collect_gradients(const std::vector<ad::Tensor<double>>&);
template void accumulate(Gradients<float>&, const Gradients<float>&);
template void accumulate(Gradients<double>&, const Gradients<double>&);
template void init_uniform(std::vector<float>&, std::size_t, std::mt19937_64&);
template void init_uniform(std::vector<double>&, std::size_t, std::mt19937_64&);

}  // namespace axialvc::model
