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

// Little-endian binary encoding shared by the dataset and checkpoint files.

#include <cstdint>
#include <cstring>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "axialvc/error.hpp"

namespace axialvc::detail {

std::uint64_t fnv1a64(std::string_view bytes);

class BinaryWriter {
 public:
  void bytes(std::string_view b) { buf_.append(b); }
  void u32(std::uint32_t v) { put(v, 4); }
  void u64(std::uint64_t v) { put(v, 8); }
  void f32(float v) {
    std::uint32_t raw;
    std::memcpy(&raw, &v, 4);
    u32(raw);
  }
  void f64(double v) {
    std::uint64_t raw;
    std::memcpy(&raw, &v, 8);
    u64(raw);
  }
  void str(std::string_view s) {
    u32(static_cast<std::uint32_t>(s.size()));
    bytes(s);
  }
  template <typename T>
  void f32_array(const std::vector<T>& v) {
    for (const T& x : v) f32(static_cast<float>(x));
  }

  // Appends the FNV-1a checksum of everything written so far and writes
  // the whole buffer to `path`.
  void finish(const std::filesystem::path& path);
  const std::string& buffer() const { return buf_; }

 private:
  void put(std::uint64_t v, int n) {
    for (int i = 0; i < n; ++i) buf_.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
  }
  std::string buf_;
};

class BinaryReader {
 public:
  // Reads `path`, checks the trailing checksum and the leading magic.
  BinaryReader(const std::filesystem::path& path, std::string_view magic);

  std::uint32_t u32() { return static_cast<std::uint32_t>(get(4)); }
  std::uint64_t u64() { return get(8); }
  float f32() {
    const auto raw = u32();
    float f;
    std::memcpy(&f, &raw, 4);
    return f;
  }
  double f64() {
    const auto raw = u64();
    double d;
    std::memcpy(&d, &raw, 8);
    return d;
  }
  std::string str();
  template <typename T>
  std::vector<T> f32_array(std::size_t n) {
    need(4 * n);
    std::vector<T> out(n);
    for (auto& x : out) x = static_cast<T>(f32());
    return out;
  }
  // Throws unless every payload byte was consumed.
  void expect_end() const;

 private:
  void need(std::size_t n) const;
  std::uint64_t get(int n);

  std::string data_;
  std::size_t pos_ = 0;
  std::size_t end_ = 0;
  std::string source_;
};

}  // namespace axialvc::detail
