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

#include "binary_io.hpp"

#include <fstream>
#include <iterator>

namespace axialvc::detail {

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

void BinaryWriter::finish(const std::filesystem::path& path) {
  u64(fnv1a64(buf_));
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ValidationError("cannot open " + path.string() + " for writing");
  out.write(buf_.data(), static_cast<std::streamsize>(buf_.size()));
  if (!out) throw Error("failed writing " + path.string());
}

BinaryReader::BinaryReader(const std::filesystem::path& path, std::string_view magic)
    : source_(path.string()) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open " + source_);
  data_.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
  if (data_.size() < magic.size() + 8) throw FormatError(source_ + ": file truncated");
  end_ = data_.size() - 8;
  std::uint64_t stored = 0;
  for (int i = 0; i < 8; ++i) {
    stored |= std::uint64_t(static_cast<unsigned char>(data_[end_ + i])) << (8 * i);
  }
  if (stored != fnv1a64(std::string_view(data_).substr(0, end_))) {
    throw FormatError(source_ + ": checksum mismatch (file corrupt or truncated)");
  }
  if (std::string_view(data_).substr(0, magic.size()) != magic) {
    throw FormatError(source_ + ": bad magic, not a " + std::string(magic) + " file");
  }
  pos_ = magic.size();
}

std::string BinaryReader::str() {
  const std::uint32_t n = u32();
  need(n);
  std::string s = data_.substr(pos_, n);
  pos_ += n;
  return s;
}

void BinaryReader::expect_end() const {
  if (pos_ != end_) throw FormatError(source_ + ": trailing bytes after payload");
}

void BinaryReader::need(std::size_t n) const {
  if (n > end_ - pos_) throw FormatError(source_ + ": unexpected end of payload");
}

std::uint64_t BinaryReader::get(int n) {
  need(static_cast<std::size_t>(n));
  std::uint64_t v = 0;
  for (int i = 0; i < n; ++i) {
    v |= std::uint64_t(static_cast<unsigned char>(data_[pos_ + i])) << (8 * i);
  }
  pos_ += n;
  return v;
}

}  // namespace axialvc::detail
