// include/mcse/stft.h

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

#ifndef MCSE_STFT_H_
#define MCSE_STFT_H_

#include <cstddef>
#include <vector>

#include "mcse/types.h"

namespace mcse {

inline constexpr int kDefaultWindowLen = 512;
inline constexpr int kDefaultHop = 256;

// Periodic Hann window of length n.
std::vector<double> HannWindow(int n);

// Number of analysis frames for a signal of the given length, including the
// window_len - hop samples of leading zero padding that keep every input
// sample under full window weight.
std::size_t StftNumFrames(std::size_t length, int window_len, int hop);

// Hann-windowed one-sided STFT of every channel. The signal is zero padded
// front (window_len - hop samples) and back so frames tile it completely.
TFGrid Stft(const Waveform& x, int window_len = kDefaultWindowLen, int hop = kDefaultHop);

// Weighted overlap-add inverse: Hann synthesis window, normalized per sample
// by the summed squared window. Trims the analysis padding; the result has
// frames * hop samples.
Waveform InverseStft(const TFGrid& g);

// Same, truncated to the original signal length.
Waveform InverseStft(const TFGrid& g, std::size_t original_length);

}  // namespace mcse

#endif  // MCSE_STFT_H_
