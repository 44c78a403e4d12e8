// include/mcse/beamforming.h

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

#ifndef MCSE_BEAMFORMING_H_
#define MCSE_BEAMFORMING_H_

#include <cstddef>

#include "mcse/linalg.h"
#include "mcse/types.h"

namespace mcse {

struct BeamformerConfig {
  double mu = 0.1;                  // distortion/noise-reduction trade-off
  bool rank1 = true;                // project R_ss to its dominant eigenpair
  std::size_t reference_channel = 0;
  double diagonal_loading = kDefaultDiagonalLoading;
};

// One complex weight vector per frequency bin, applied as w(f)^H y(t,f).
// A single filter serves the whole clip.
struct BeamformerWeights {
  std::size_t k = 0;
  std::size_t bins = 0;
  std::vector<cd> w;  // (bin, channel) row-major
  std::size_t silent_bins = 0;  // bins where both covariances were zero

  cd* at(std::size_t f) { return w.data() + f * k; }
  const cd* at(std::size_t f) const { return w.data() + f * k; }
};

// Mask-weighted spatial correlation:
//   R(f) = 1/T sum_t (m(t,f) y(t,f)) (m(t,f) y(t,f))^H.
// Serves both R_ss (speech mask) and R_nn (noise mask).
HermitianStack EstimateCovariance(const TFGrid& y, const Mask& m);

// Per bin, replaces R with lambda_1 v_1 v_1^H from its dominant eigenpair.
// nonconverged, when given, counts bins whose eigensolve hit the iteration cap.
HermitianStack Rank1Project(const HermitianStack& R, std::size_t* nonconverged = nullptr);

// w(f) = (R_ss(f) + mu R_nn(f))^-1 R_ss(f) u_ref, solved per bin with diagonal
// loading. mu = 1 gives the plain multichannel Wiener filter; rank1 applies
// Rank1Project to R_ss first. Bins where both matrices are zero get w = 0 and
// are counted in silent_bins.
BeamformerWeights SdwMwfWeights(const HermitianStack& R_ss, const HermitianStack& R_nn,
                                const BeamformerConfig& cfg);

// out(t,f) = w(f)^H y(t,f).
TFGrid ApplyWeights(const TFGrid& y, const BeamformerWeights& w);

}  // namespace mcse

#endif  // MCSE_BEAMFORMING_H_
