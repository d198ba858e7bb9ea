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

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "axialvc/error.hpp"

namespace axialvc::ad {

using Shape = std::vector<std::size_t>;

std::size_t numel(const Shape& shape);
std::string to_string(const Shape& shape);

template <typename T>
class Tape;

// Lightweight handle to a node recorded on a Tape. Copying a Tensor copies
// the handle, not the data. The owning tape must outlive every handle.
template <typename T>
class Tensor {
 public:
  Tensor() = default;

  bool valid() const { return tape_ != nullptr; }
  std::size_t id() const { return id_; }
  Tape<T>& tape() const;

  const Shape& shape() const;
  std::size_t dim(std::size_t axis) const { return shape().at(axis); }
  std::size_t size() const;
  std::span<const T> values() const;
  // Empty until backward() has reached this node.
  std::span<const T> grad() const;
  bool requires_grad() const;

  // Value of a single-element tensor.
  T item() const;

 private:
  friend class Tape<T>;
  Tensor(Tape<T>* tape, std::size_t id) : tape_(tape), id_(id) {}

  Tape<T>* tape_ = nullptr;
  std::size_t id_ = 0;
};

// Append-only record of operations. Recording order is a topological order,
// so backward() is a single reverse sweep.
//
// A tape has a single owner and is not thread-safe; use one tape per worker.
template <typename T>
class Tape {
 public:
  using BackwardFn = std::function<void(Tape&, std::size_t self)>;

  struct Node {
    Shape shape;
    std::vector<T> value;
    std::vector<T> grad;  // lazily allocated
    bool requires_grad = false;
    BackwardFn backward;
  };

  Tape() = default;
  Tape(const Tape&) = delete;
  Tape& operator=(const Tape&) = delete;

  Tensor<T> constant(Shape shape, std::vector<T> value);
  Tensor<T> variable(Shape shape, std::vector<T> value);

  // Records an op output. `op` names the op in non-finite diagnostics.
  Tensor<T> record(std::string_view op, Shape shape, std::vector<T> value, bool requires_grad,
                   BackwardFn backward);

  // Seeds d(loss)/d(loss) = 1 and propagates to every node that requires
  // grad. Consumes the tape: a second call throws.
  void backward(const Tensor<T>& loss);

  Node& node(std::size_t id) { return nodes_.at(id); }
  const Node& node(std::size_t id) const { return nodes_.at(id); }

  // Gradient accumulator for `id`, zero-filled on first access.
  std::vector<T>& grad_buffer(std::size_t id);

  std::size_t size() const { return nodes_.size(); }
  bool consumed() const { return consumed_; }

  // Throws ValidationError unless `t` was recorded on this tape.
  void check_owner(const Tensor<T>& t, std::string_view op) const;

 private:
  std::vector<Node> nodes_;
  bool consumed_ = false;
};

extern template class Tensor<float>;
extern template class Tensor<double>;
extern template class Tape<float>;
extern template class Tape<double>;

}  // namespace axialvc::ad
