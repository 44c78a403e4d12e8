// include/mcse/wpe.h

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

#ifndef MCSE_WPE_H_
#define MCSE_WPE_H_

#include "mcse/linalg.h"
#include "mcse/types.h"

namespace mcse {

struct WpeConfig {
  int taps = 10;        // prediction filter length N
  int delay = 3;        // prediction delay in frames
  int iterations = 5;   // variance/filter refinement rounds
  double alpha = 0.9999;  // exponential smoothing of the variance estimate
  double loading = kDefaultDiagonalLoading;
  int workers = 0;      // <= 0: hardware concurrency
};

// Multichannel linear-prediction dereverberation. Per frequency bin, each
// iteration (a) re-estimates the per-frame variance as the channel-mean power
// of the current dereverberated signal, smoothed along time with `alpha` and
// floored at 1e-10 x the clip mean power, (b) stacks `taps` past frames
// starting `delay` frames back across all channels (zero padded before frame
// 0), (c) solves the variance-weighted normal equations for the prediction
// filter G, and (d) subtracts the prediction: d(t,f) = y(t,f) - G^H ytilde(t,f).
// Bins are processed independently and in parallel; the output does not
// depend on the schedule. Frames earlier than `delay` pass through unchanged.
TFGrid Wpe(const TFGrid& y, const WpeConfig& cfg);

}  // namespace mcse

#endif  // MCSE_WPE_H_
