// src/beamforming.cc

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

#include "mcse/beamforming.h"

#include <cmath>
#include <vector>

namespace mcse {

HermitianStack EstimateCovariance(const TFGrid& y, const Mask& m) {
  if (m.frames != y.frames || m.bins != y.bins) {
    throw Error("estimate_covariance: mask shape does not match grid");
  }
  if (y.frames == 0) throw Error("estimate_covariance: no frames");

  const std::size_t k = y.channels;
  HermitianStack R(k, y.bins);
  std::vector<cd> masked(k);
  for (std::size_t f = 0; f < y.bins; ++f) {
    cd* out = R.mat(f);
    for (std::size_t t = 0; t < y.frames; ++t) {
      const double g = m.at(t, f);
      if (g == 0.0) continue;
      for (std::size_t c = 0; c < k; ++c) masked[c] = g * y.at(c, t, f);
      for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = i; j < k; ++j) {
          out[i * k + j] += masked[i] * std::conj(masked[j]);
        }
      }
    }
    const double inv_t = 1.0 / static_cast<double>(y.frames);
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = i; j < k; ++j) {
        out[i * k + j] *= inv_t;
        if (j != i) out[j * k + i] = std::conj(out[i * k + j]);
      }
      out[i * k + i] = cd{out[i * k + i].real(), 0.0};
    }
  }
  return R;
}

HermitianStack Rank1Project(const HermitianStack& R, std::size_t* nonconverged) {
  HermitianStack out(R.k, R.bins);
  std::size_t stalled = 0;
  for (std::size_t f = 0; f < R.bins; ++f) {
    const EigPair eig = PrincipalEigpair(R.mat(f), R.k);
    if (!eig.converged) ++stalled;
    cd* dst = out.mat(f);
    for (std::size_t i = 0; i < R.k; ++i) {
      for (std::size_t j = 0; j < R.k; ++j) {
        dst[i * R.k + j] = eig.value * eig.vector[i] * std::conj(eig.vector[j]);
      }
    }
  }
  if (nonconverged != nullptr) *nonconverged = stalled;
  return out;
}

BeamformerWeights SdwMwfWeights(const HermitianStack& R_ss, const HermitianStack& R_nn,
                                const BeamformerConfig& cfg) {
  if (R_ss.k != R_nn.k || R_ss.bins != R_nn.bins) {
    throw Error("sdw_mwf: covariance stacks have different shapes");
  }
  if (cfg.mu < 0.0) throw Error("sdw_mwf: mu must be >= 0");
  if (cfg.reference_channel >= R_ss.k) {
    throw Error("sdw_mwf: reference channel out of range");
  }

  const std::size_t k = R_ss.k;
  const HermitianStack speech = cfg.rank1 ? Rank1Project(R_ss) : R_ss;

  BeamformerWeights weights;
  weights.k = k;
  weights.bins = R_ss.bins;
  weights.w.assign(k * R_ss.bins, cd{0.0, 0.0});

  std::vector<cd> A(k * k);
  std::vector<cd> b(k);
  for (std::size_t f = 0; f < R_ss.bins; ++f) {
    const cd* rs = speech.mat(f);
    const cd* rn = R_nn.mat(f);
    double trace = 0.0;
    for (std::size_t i = 0; i < k * k; ++i) A[i] = rs[i] + cfg.mu * rn[i];
    for (std::size_t i = 0; i < k; ++i) trace += A[i * k + i].real();
    if (trace <= 0.0) {
      // Silent bin (routine in padded clips): pass zeros instead of failing.
      ++weights.silent_bins;
      continue;
    }
    for (std::size_t i = 0; i < k; ++i) b[i] = rs[i * k + cfg.reference_channel];
    HermitianSolve(A.data(), k, b.data(), 1, cfg.diagonal_loading, weights.at(f));
  }
  return weights;
}

TFGrid ApplyWeights(const TFGrid& y, const BeamformerWeights& w) {
  if (w.k != y.channels || w.bins != y.bins) {
    throw Error("apply_weights: weight shape does not match grid");
  }
  TFGrid out(1, y.frames, y.bins);
  out.window_len = y.window_len;
  out.hop = y.hop;
  out.sample_rate = y.sample_rate;
  for (std::size_t t = 0; t < y.frames; ++t) {
    for (std::size_t f = 0; f < y.bins; ++f) {
      const cd* wf = w.at(f);
      cd acc{0.0, 0.0};
      for (std::size_t c = 0; c < y.channels; ++c) {
        acc += std::conj(wf[c]) * y.at(c, t, f);
      }
      out.at(0, t, f) = acc;
    }
  }
  return out;
}

}  // namespace mcse
