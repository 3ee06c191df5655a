// Copyright 2026 The qfno Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qfno/io/binary.hpp"

#include <bit>
#include <fstream>
#include <iterator>

#include "qfno/error.hpp"

namespace qfno {

const char* io_error_name(IoErrorCode code) {
  switch (code) {
    case IoErrorCode::kOpenFailed: return "open failed";
    case IoErrorCode::kBadMagic: return "bad magic";
    case IoErrorCode::kVersionMismatch: return "version mismatch";
    case IoErrorCode::kTruncated: return "truncated";
    case IoErrorCode::kShapeMismatch: return "shape mismatch";
    case IoErrorCode::kBadMetadata: return "bad metadata";
    case IoErrorCode::kTrailingData: return "trailing data";
  }
  return "unknown";
}

}  // namespace qfno

namespace qfno::io {

namespace {

template <typename U>
void put_le(std::string& buf, U v) {
  for (std::size_t i = 0; i < sizeof(U); ++i) buf.push_back(static_cast<char>((v >> (8 * i)) & 0xffu));
}

}  // namespace

void ByteWriter::u32(std::uint32_t v) { put_le(buf_, v); }
void ByteWriter::u64(std::uint64_t v) { put_le(buf_, v); }
void ByteWriter::f64(double v) { put_le(buf_, std::bit_cast<std::uint64_t>(v)); }

void ByteWriter::complexes(const ComplexTensor& t) {
  buf_.reserve(buf_.size() + 16 * t.size());
  for (const Complex& z : t.data()) {
    f64(z.real());
    f64(z.imag());
  }
}

std::string_view ByteReader::bytes(std::size_t n) {
  if (n > remaining()) {
    throw IoError(IoErrorCode::kTruncated, "unexpected end of file at byte " + std::to_string(pos_));
  }
  std::string_view v = data_.substr(pos_, n);
  pos_ += n;
  return v;
}

std::uint32_t ByteReader::u32() {
  const std::string_view b = bytes(4);
  std::uint32_t v = 0;
  for (std::size_t i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(static_cast<unsigned char>(b[i])) << (8 * i);
  return v;
}

std::uint64_t ByteReader::u64() {
  const std::string_view b = bytes(8);
  std::uint64_t v = 0;
  for (std::size_t i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(static_cast<unsigned char>(b[i])) << (8 * i);
  return v;
}

double ByteReader::f64() { return std::bit_cast<double>(u64()); }

void ByteReader::complexes(ComplexTensor& t) {
  if (t.size() > remaining() / 16) {
    throw IoError(IoErrorCode::kTruncated, "payload ends before " + std::to_string(t.size()) + " complex values");
  }
  for (Complex& z : t.data()) {
    const double re = f64();
    const double im = f64();
    z = {re, im};
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(IoErrorCode::kOpenFailed, "cannot open '" + path + "' for reading");
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

void write_file(const std::string& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError(IoErrorCode::kOpenFailed, "cannot open '" + path + "' for writing");
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError(IoErrorCode::kOpenFailed, "failed writing '" + path + "'");
}

}  // namespace qfno::io
