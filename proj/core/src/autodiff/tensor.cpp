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

#include "axialvc/autodiff/tensor.hpp"

#include <cmath>
#include <sstream>

namespace axialvc::ad {

std::size_t numel(const Shape& shape) {
  std::size_t n = 1;
  for (auto d : shape) n *= d;
  return n;
}

std::string to_string(const Shape& shape) {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < shape.size(); ++i) {
    if (i) os << " x ";
    os << shape[i];
  }
  os << ']';
  return os.str();
}

template <typename T>
Tape<T>& Tensor<T>::tape() const {
  if (!tape_) throw ValidationError("tensor handle is not attached to a tape");
  return *tape_;
}

template <typename T>
const Shape& Tensor<T>::shape() const {
  return tape().node(id_).shape;
}

template <typename T>
std::size_t Tensor<T>::size() const {
  return tape().node(id_).value.size();
}

template <typename T>
std::span<const T> Tensor<T>::values() const {
  return tape().node(id_).value;
}

template <typename T>
std::span<const T> Tensor<T>::grad() const {
  return tape().node(id_).grad;
}

template <typename T>
bool Tensor<T>::requires_grad() const {
  return tape().node(id_).requires_grad;
}

template <typename T>
T Tensor<T>::item() const {
  const auto& v = tape().node(id_).value;
  if (v.size() != 1) {
    throw ValidationError("item() called on tensor of shape " + to_string(shape()));
  }
  return v[0];
}

template <typename T>
Tensor<T> Tape<T>::constant(Shape shape, std::vector<T> value) {
  return record("constant", std::move(shape), std::move(value), false, nullptr);
}

template <typename T>
Tensor<T> Tape<T>::variable(Shape shape, std::vector<T> value) {
  return record("variable", std::move(shape), std::move(value), true, nullptr);
}

template <typename T>
Tensor<T> Tape<T>::record(std::string_view op, Shape shape, std::vector<T> value,
                          bool requires_grad, BackwardFn backward) {
  if (consumed_) throw ValidationError("cannot record on a consumed tape");
  if (numel(shape) != value.size()) {
    throw ValidationError(std::string(op) + ": shape " + to_string(shape) + " does not match " +
                          std::to_string(value.size()) + " values");
  }
  for (const T& x : value) {
    if (!std::isfinite(x)) {
      throw NonFiniteError(std::string(op) + ": produced a non-finite value");
    }
  }
  Node n;
  n.shape = std::move(shape);
  n.value = std::move(value);
  n.requires_grad = requires_grad;
  if (requires_grad) n.backward = std::move(backward);
  nodes_.push_back(std::move(n));
  return Tensor<T>(this, nodes_.size() - 1);
}

template <typename T>
std::vector<T>& Tape<T>::grad_buffer(std::size_t id) {
  auto& n = nodes_.at(id);
  if (n.grad.empty()) n.grad.assign(n.value.size(), T(0));
  return n.grad;
}

template <typename T>
void Tape<T>::check_owner(const Tensor<T>& t, std::string_view op) const {
  if (!t.valid() || t.tape_ != this) {
    throw ValidationError(std::string(op) + ": tensor belongs to a different tape");
  }
}

template <typename T>
void Tape<T>::backward(const Tensor<T>& loss) {
  check_owner(loss, "backward");
  if (consumed_) throw ValidationError("backward: tape already consumed");
  auto& root = nodes_.at(loss.id());
  if (root.value.size() != 1) {
    throw ValidationError("backward: loss must be a scalar, got " + to_string(root.shape));
  }
  if (!root.requires_grad) {
    throw ValidationError("backward: loss is detached from every variable");
  }
  grad_buffer(loss.id())[0] = T(1);
  for (std::size_t i = loss.id() + 1; i-- > 0;) {
    auto& n = nodes_[i];
    if (!n.requires_grad || n.grad.empty() || !n.backward) continue;
    n.backward(*this, i);
  }
  consumed_ = true;
}

template class Tensor<float>;
template class Tensor<double>;
template class Tape<float>;
template class Tape<double>;

}  // namespace axialvc::ad
