// include/mcse/fft.h

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

#ifndef MCSE_FFT_H_
#define MCSE_FFT_H_

#include <cstddef>
#include <vector>

#include "mcse/types.h"

namespace mcse {

// In-place DFT, unnormalized. Radix-2 for power-of-two sizes, direct O(n^2)
// transform otherwise.
void Fft(std::vector<cd>* x);

// In-place inverse DFT, normalized by 1/n.
void InverseFft(std::vector<cd>* x);

// Real forward transform: n real samples -> n/2 + 1 one-sided bins.
void RealFft(const double* x, std::size_t n, cd* out);

// One-sided inverse: n/2 + 1 bins -> n real samples.
void InverseRealFft(const cd* in, std::size_t n, double* out);

}  // namespace mcse

#endif  // MCSE_FFT_H_
