// include/mcse/masking.h

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

#ifndef MCSE_MASKING_H_
#define MCSE_MASKING_H_

#include <string>
#include <utility>

#include "mcse/types.h"

namespace mcse {

inline constexpr double kMaskEpsilon = 1e-16;

// Magnitude-ratio masks from separated speech/noise estimates:
//   M_s = |s| / (|s| + max(|n|, eps)),  M_n = |n| / (|s| + max(|n|, eps)).
// Where |n| >= eps the two masks share a denominator, so M_n is produced as
// 1 - M_s and the complement identity holds exactly.
std::pair<Mask, Mask> MasksFromEstimates(const TFGrid& s_hat, const TFGrid& n_hat,
                                         double eps = kMaskEpsilon);

// Ground-truth stand-in for a separation front end: the reference-channel
// slices of the reverberated speech and noise images.
std::pair<TFGrid, TFGrid> OracleEstimates(const TFGrid& mix, const TFGrid& speech_image,
                                          const TFGrid& noise_image,
                                          std::size_t reference_channel);

struct MaskLoadResult {
  Mask speech;
  Mask noise;
  std::size_t clamped = 0;  // values outside [0,1] clamped on load
};

// Mask container: one TFB1 float32 tensor of dims (2, frames, bins), index 0
// speech, index 1 noise.
void SaveMasks(const Mask& speech, const Mask& noise, const std::string& path);
MaskLoadResult LoadMasks(const std::string& path);
// Same, validating against an expected shape.
MaskLoadResult LoadMasks(const std::string& path, std::size_t expect_frames,
                         std::size_t expect_bins);

}  // namespace mcse

#endif  // MCSE_MASKING_H_
