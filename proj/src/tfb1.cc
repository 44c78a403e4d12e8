// src/tfb1.cc

// Copyright 2026 mcse authors

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

#include "mcse/tfb1.h"

#include <cstring>
#include <fstream>
#include <limits>

#include "mcse/io_util.h"

namespace mcse {

namespace {

constexpr char kMagic[4] = {'T', 'F', 'B', '1'};
constexpr std::uint8_t kVersion = 1;

std::size_t ElementSize(Tfb1Dtype dtype) {
  return dtype == Tfb1Dtype::kFloat32 ? 4 : 8;
}

}  // namespace

Tfb1Tensor ReadTfb1(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("tfb1: cannot open " + path);
  in.seekg(0, std::ios::end);
  const std::size_t file_len = static_cast<std::size_t>(in.tellg());
  in.seekg(0, std::ios::beg);

  char header[8];
  if (file_len < 8 || !in.read(header, 8)) throw FormatError("tfb1: truncated header in " + path);
  if (std::memcmp(header, kMagic, 4) != 0) throw FormatError("tfb1: bad magic in " + path);
  if (static_cast<std::uint8_t>(header[4]) != kVersion) {
    throw FormatError("tfb1: unsupported version in " + path);
  }
  const std::uint8_t dtype_raw = static_cast<std::uint8_t>(header[5]);
  if (dtype_raw > 1) throw FormatError("tfb1: unknown dtype in " + path);
  const std::uint8_t ndim = static_cast<std::uint8_t>(header[6]);
  if (ndim == 0) throw FormatError("tfb1: zero-dimensional tensor in " + path);

  Tfb1Tensor t;
  t.dtype = static_cast<Tfb1Dtype>(dtype_raw);
  t.dims.resize(ndim);
  if (file_len < 8 + std::size_t(ndim) * 4) throw FormatError("tfb1: truncated dims in " + path);
  for (std::uint8_t d = 0; d < ndim; ++d) {
    unsigned char b[4];
    in.read(reinterpret_cast<char*>(b), 4);
    t.dims[d] = std::uint32_t(b[0]) | std::uint32_t(b[1]) << 8 | std::uint32_t(b[2]) << 16 |
                std::uint32_t(b[3]) << 24;
  }

  // Validate the claimed size against the actual file length before any
  // allocation; dims are untrusted input.
  std::size_t elements = 1;
  for (std::uint32_t d : t.dims) {
    if (d == 0) throw FormatError("tfb1: zero dim in " + path);
    if (elements > std::numeric_limits<std::size_t>::max() / d) {
      throw FormatError("tfb1: dim overflow in " + path);
    }
    elements *= d;
  }
  const std::size_t payload = elements * ElementSize(t.dtype);
  const std::size_t expected = 8 + std::size_t(ndim) * 4 + payload;
  if (file_len != expected) {
    throw FormatError("tfb1: payload size mismatch (header claims " +
                      std::to_string(expected) + " bytes, file has " +
                      std::to_string(file_len) + ") in " + path);
  }

  if (t.dtype == Tfb1Dtype::kFloat32) {
    t.f32.resize(elements);
    in.read(reinterpret_cast<char*>(t.f32.data()), static_cast<std::streamsize>(payload));
  } else {
    t.c64.resize(elements);
    in.read(reinterpret_cast<char*>(t.c64.data()), static_cast<std::streamsize>(payload));
  }
  if (!in) throw FormatError("tfb1: truncated payload in " + path);
  return t;
}

void WriteTfb1(const Tfb1Tensor& tensor, const std::string& path) {
  if (tensor.dims.empty() || tensor.dims.size() > 255) {
    throw Error("tfb1: tensor must have 1..255 dims");
  }
  const std::size_t elements = tensor.NumElements();
  const std::size_t stored =
      tensor.dtype == Tfb1Dtype::kFloat32 ? tensor.f32.size() : tensor.c64.size();
  if (stored != elements) throw Error("tfb1: dims do not match stored data");

  std::string out;
  out.reserve(8 + tensor.dims.size() * 4 + elements * ElementSize(tensor.dtype));
  out.append(kMagic, 4);
  out.push_back(static_cast<char>(kVersion));
  out.push_back(static_cast<char>(tensor.dtype));
  out.push_back(static_cast<char>(tensor.dims.size()));
  out.push_back('\0');
  for (std::uint32_t d : tensor.dims) {
    out.push_back(char(d & 0xFF));
    out.push_back(char((d >> 8) & 0xFF));
    out.push_back(char((d >> 16) & 0xFF));
    out.push_back(char((d >> 24) & 0xFF));
  }
  if (tensor.dtype == Tfb1Dtype::kFloat32) {
    out.append(reinterpret_cast<const char*>(tensor.f32.data()), elements * 4);
  } else {
    out.append(reinterpret_cast<const char*>(tensor.c64.data()), elements * 8);
  }
  AtomicWriteFile(path, out);
}

Tfb1Tensor Tfb1FromGrid(const TFGrid& g) {
  Tfb1Tensor t;
  t.dtype = Tfb1Dtype::kComplex64;
  t.dims = {static_cast<std::uint32_t>(g.channels), static_cast<std::uint32_t>(g.frames),
            static_cast<std::uint32_t>(g.bins)};
  t.c64.resize(g.values.size());
  for (std::size_t i = 0; i < g.values.size(); ++i) {
    t.c64[i] = std::complex<float>(static_cast<float>(g.values[i].real()),
                                   static_cast<float>(g.values[i].imag()));
  }
  return t;
}

TFGrid GridFromTfb1(const Tfb1Tensor& t, int window_len, int hop, int sample_rate) {
  if (t.dtype != Tfb1Dtype::kComplex64 || t.dims.size() != 3) {
    throw FormatError("tfb1: expected a complex64 (channels, frames, bins) tensor");
  }
  TFGrid g(t.dims[0], t.dims[1], t.dims[2]);
  g.window_len = window_len;
  g.hop = hop;
  g.sample_rate = sample_rate;
  for (std::size_t i = 0; i < t.c64.size(); ++i) {
    g.values[i] = cd{t.c64[i].real(), t.c64[i].imag()};
  }
  return g;
}

}  // namespace mcse
