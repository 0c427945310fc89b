// vawgan/features/binary-io.h

// Copyright 2026  The vawgan authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#ifndef VAWGAN_FEATURES_BINARY_IO_H_
#define VAWGAN_FEATURES_BINARY_IO_H_

#include <cstdint>
#include <cstring>
#include <string>
#include <string_view>
#include <vector>

#include "vawgan/errors.h"

namespace vawgan {

// Little-endian byte buffer builder.
class ByteWriter {
 public:
  void PutU32(std::uint32_t v) {
    for (int i = 0; i < 4; ++i) bytes_.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
  }
  void PutF32(float f) {
    std::uint32_t bits;
    std::memcpy(&bits, &f, 4);
    PutU32(bits);
  }
  void PutBytes(std::string_view s) { bytes_.insert(bytes_.end(), s.begin(), s.end()); }

  const std::vector<char> &bytes() const { return bytes_; }
  std::vector<char> Release() { return std::move(bytes_); }

 private:
  std::vector<char> bytes_;
};

// Bounds-checked little-endian reader; running past the end is a
// kTruncated FormatError.
class ByteReader {
 public:
  ByteReader(const char *data, std::size_t size, std::string what)
      : data_(data), size_(size), what_(std::move(what)) {}

  std::uint32_t GetU32() {
    Need(4);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i)
      v |= static_cast<std::uint32_t>(static_cast<unsigned char>(data_[pos_ + i])) << (8 * i);
    pos_ += 4;
    return v;
  }
  float GetF32() {
    std::uint32_t bits = GetU32();
    float f;
    std::memcpy(&f, &bits, 4);
    return f;
  }
  std::string GetBytes(std::size_t n) {
    Need(n);
    std::string s(data_ + pos_, n);
    pos_ += n;
    return s;
  }
  void ExpectMagic(std::string_view magic) {
    if (size_ - pos_ < magic.size() || std::string_view(data_ + pos_, magic.size()) != magic)
      throw FormatError(FormatError::Kind::kBadMagic,
                        what_ + ": bad magic, expected \"" + std::string(magic) + "\"");
    pos_ += magic.size();
  }
  void ExpectVersion(std::uint32_t version) {
    std::uint32_t v = GetU32();
    if (v != version)
      throw FormatError(FormatError::Kind::kBadVersion,
                        what_ + ": unsupported version " + std::to_string(v));
  }

  std::size_t remaining() const { return size_ - pos_; }
  std::size_t position() const { return pos_; }

 private:
  void Need(std::size_t n) {
    if (size_ - pos_ < n) throw FormatError(FormatError::Kind::kTruncated, what_ + ": truncated");
  }

  const char *data_;
  std::size_t size_;
  std::size_t pos_ = 0;
  std::string what_;
};

std::vector<char> ReadFileBytes(const std::string &path);

// Writes to a temporary sibling and renames it into place, so a failed
// write never leaves a partial file at `path`.
void WriteFileBytes(const std::string &path, const std::vector<char> &bytes);

}  // namespace vawgan

#endif  // VAWGAN_FEATURES_BINARY_IO_H_
