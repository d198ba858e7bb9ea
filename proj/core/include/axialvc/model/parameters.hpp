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
#include <random>
#include <string>
#include <vector>

#include "axialvc/autodiff/tensor.hpp"

namespace axialvc::model {

template <typename T>
struct Parameter {
  std::string name;
  ad::Shape shape;
  std::vector<T> value;
};

// Gradients aligned index-for-index with a ParameterSet.
template <typename T>
using Gradients = std::vector<std::vector<T>>;

// Ordered, named collection of parameters. Order is insertion order and is
// the order used by optimizers and checkpoints.
template <typename T>
class ParameterSet {
 public:
  Parameter<T>& add(std::string name, ad::Shape shape, std::vector<T> value);
  Parameter<T>& add_zeros(std::string name, ad::Shape shape);

  std::size_t size() const { return params_.size(); }
  Parameter<T>& operator[](std::size_t i) { return params_[i]; }
  const Parameter<T>& operator[](std::size_t i) const { return params_[i]; }
  // Throws ValidationError for unknown names.
  Parameter<T>& at(const std::string& name);
  const Parameter<T>& at(const std::string& name) const;
  std::size_t index_of(const std::string& name) const;

  auto begin() { return params_.begin(); }
  auto end() { return params_.end(); }
  auto begin() const { return params_.begin(); }
  auto end() const { return params_.end(); }

  std::size_t scalar_count() const;
  Gradients<T> zero_gradients() const;

  // Records every parameter on `tape`, as variables when `trainable`.
  std::vector<ad::Tensor<T>> bind(ad::Tape<T>& tape, bool trainable) const;

  template <typename U>
  ParameterSet<U> cast() const {
    ParameterSet<U> out;
    for (const auto& p : params_) {
      out.add(p.name, p.shape, std::vector<U>(p.value.begin(), p.value.end()));
    }
    return out;
  }

 private:
  std::vector<Parameter<T>> params_;
};

// Reads gradients off bound leaves after backward(); untouched leaves
// contribute zeros.
template <typename T>
Gradients<T> collect_gradients(const std::vector<ad::Tensor<T>>& leaves);

// Adds `src` into `dst` elementwise.
template <typename T>
void accumulate(Gradients<T>& dst, const Gradients<T>& src);

// Uniform in +-sqrt(1 / fan_in).
template <typename T>
void init_uniform(std::vector<T>& values, std::size_t fan_in, std::mt19937_64& rng);

extern template class ParameterSet<float>;
extern template class ParameterSet<double>;

}  // namespace axialvc::model
