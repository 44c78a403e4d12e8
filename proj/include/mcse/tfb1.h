// include/mcse/tfb1.h

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

#ifndef MCSE_TFB1_H_
#define MCSE_TFB1_H_

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "mcse/types.h"

namespace mcse {

// TFB1 tensor container. Layout, all little endian:
//   bytes 0-3   magic "TFB1"
//   byte  4     version, currently 1
//   byte  5     dtype: 0 = float32, 1 = complex64 (interleaved re/im float32)
//   byte  6     ndim
//   byte  7     reserved, 0
//   8 ..        ndim x u32 dims
//   payload     row major, last dim fastest
enum class Tfb1Dtype : std::uint8_t { kFloat32 = 0, kComplex64 = 1 };

struct Tfb1Tensor {
  Tfb1Dtype dtype = Tfb1Dtype::kFloat32;
  std::vector<std::uint32_t> dims;
  std::vector<float> f32;                  // valid when dtype == kFloat32
  std::vector<std::complex<float>> c64;    // valid when dtype == kComplex64

  std::size_t NumElements() const {
    std::size_t n = 1;
    for (std::uint32_t d : dims) n *= d;
    return dims.empty() ? 0 : n;
  }
};

Tfb1Tensor ReadTfb1(const std::string& path);
void WriteTfb1(const Tfb1Tensor& tensor, const std::string& path);

// TFGrid <-> TFB1, dims (channels, frames, bins), complex64.
Tfb1Tensor Tfb1FromGrid(const TFGrid& g);
TFGrid GridFromTfb1(const Tfb1Tensor& t, int window_len, int hop, int sample_rate);

}  // namespace mcse

#endif  // MCSE_TFB1_H_
