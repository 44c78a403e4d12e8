// include/mcse/types.h

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

#ifndef MCSE_TYPES_H_
#define MCSE_TYPES_H_

#include <complex>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace mcse {

using cd = std::complex<double>;

class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed or truncated file content.
class FormatError : public Error {
 public:
  explicit FormatError(const std::string& msg) : Error(msg) {}
};

// Linear system with no usable pivot even after diagonal loading.
class SingularSystemError : public Error {
 public:
  explicit SingularSystemError(const std::string& msg) : Error(msg) {}
};

// Multichannel time-domain signal, channel-major storage.
// All channels share one length and sample rate.
struct Waveform {
  int sample_rate = 16000;
  std::size_t channels = 0;
  std::size_t length = 0;
  std::vector<double> data;  // data[c * length + n]

  Waveform() = default;
  Waveform(std::size_t num_channels, std::size_t num_samples, int rate)
      : sample_rate(rate),
        channels(num_channels),
        length(num_samples),
        data(num_channels * num_samples, 0.0) {}

  double* channel(std::size_t c) { return data.data() + c * length; }
  const double* channel(std::size_t c) const { return data.data() + c * length; }
  double& at(std::size_t c, std::size_t n) { return data[c * length + n]; }
  double at(std::size_t c, std::size_t n) const { return data[c * length + n]; }
};

// Complex one-sided spectrogram stack, (channels x frames x bins) row-major.
// bins == window_len / 2 + 1.
struct TFGrid {
  std::size_t channels = 0;
  std::size_t frames = 0;
  std::size_t bins = 0;
  int window_len = 512;
  int hop = 256;
  int sample_rate = 16000;
  std::vector<cd> values;

  TFGrid() = default;
  TFGrid(std::size_t num_channels, std::size_t num_frames, std::size_t num_bins)
      : channels(num_channels),
        frames(num_frames),
        bins(num_bins),
        values(num_channels * num_frames * num_bins, cd{0.0, 0.0}) {}

  cd& at(std::size_t c, std::size_t t, std::size_t f) {
    return values[(c * frames + t) * bins + f];
  }
  cd at(std::size_t c, std::size_t t, std::size_t f) const {
    return values[(c * frames + t) * bins + f];
  }

  // Copies one channel into a fresh single-channel grid.
  TFGrid channel_slice(std::size_t c) const;
};

enum class MaskKind { kSpeech, kNoise };

// Real time-frequency gain grid, (frames x bins) row-major, values in [0, 1].
struct Mask {
  std::size_t frames = 0;
  std::size_t bins = 0;
  MaskKind kind = MaskKind::kSpeech;
  std::vector<double> gains;

  Mask() = default;
  Mask(std::size_t num_frames, std::size_t num_bins, MaskKind k)
      : frames(num_frames), bins(num_bins), kind(k), gains(num_frames * num_bins, 0.0) {}

  double& at(std::size_t t, std::size_t f) { return gains[t * bins + f]; }
  double at(std::size_t t, std::size_t f) const { return gains[t * bins + f]; }
};

// Per-frequency stack of K x K Hermitian matrices, (bin, row, col) row-major.
struct HermitianStack {
  std::size_t k = 0;
  std::size_t bins = 0;
  std::vector<cd> values;

  HermitianStack() = default;
  HermitianStack(std::size_t dim, std::size_t num_bins)
      : k(dim), bins(num_bins), values(dim * dim * num_bins, cd{0.0, 0.0}) {}

  cd* mat(std::size_t f) { return values.data() + f * k * k; }
  const cd* mat(std::size_t f) const { return values.data() + f * k * k; }
  cd& at(std::size_t f, std::size_t i, std::size_t j) { return values[(f * k + i) * k + j]; }
  cd at(std::size_t f, std::size_t i, std::size_t j) const {
    return values[(f * k + i) * k + j];
  }
};

}  // namespace mcse

#endif  // MCSE_TYPES_H_
