// src/wpe.cc

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

#include "mcse/wpe.h"

#include <cmath>
#include <vector>

#include "mcse/parallel.h"

namespace mcse {

namespace {

constexpr double kVarianceFloorRel = 1e-10;

// One frequency bin. y and d are (frame, channel) row-major slices.
void WpeBin(const std::vector<cd>& y, std::size_t frames, std::size_t k,
            const WpeConfig& cfg, double variance_floor, std::vector<cd>* d_out) {
  const std::size_t taps = static_cast<std::size_t>(cfg.taps);
  const std::size_t delay = static_cast<std::size_t>(cfg.delay);
  const std::size_t dim = taps * k;

  std::vector<cd>& d = *d_out;
  d = y;

  double bin_energy = 0.0;
  for (const cd& v : y) bin_energy += std::norm(v);
  if (bin_energy == 0.0) return;

  std::vector<double> lam(frames);
  std::vector<cd> stacked(dim);
  std::vector<cd> R(dim * dim);
  std::vector<cd> P(dim * k);
  std::vector<cd> G(dim * k);

  // Fills `stacked` with frames [t - delay, t - delay - taps + 1], zeros
  // before frame 0.
  auto gather = [&](std::size_t t) {
    for (std::size_t tap = 0; tap < taps; ++tap) {
      const std::ptrdiff_t src = static_cast<std::ptrdiff_t>(t) -
                                 static_cast<std::ptrdiff_t>(delay + tap);
      cd* dst = stacked.data() + tap * k;
      if (src < 0) {
        for (std::size_t c = 0; c < k; ++c) dst[c] = cd{0.0, 0.0};
      } else {
        const cd* row = y.data() + static_cast<std::size_t>(src) * k;
        for (std::size_t c = 0; c < k; ++c) dst[c] = row[c];
      }
    }
  };

  for (int iter = 0; iter < cfg.iterations; ++iter) {
    // (a) smoothed per-frame variance of the current estimate
    double ema = 0.0;
    for (std::size_t t = 0; t < frames; ++t) {
      double p = 0.0;
      const cd* row = d.data() + t * k;
      for (std::size_t c = 0; c < k; ++c) p += std::norm(row[c]);
      p /= static_cast<double>(k);
      ema = t == 0 ? p : cfg.alpha * ema + (1.0 - cfg.alpha) * p;
      lam[t] = std::max(ema, variance_floor);
    }

    // (b)+(c) weighted normal equations R G = P
    std::fill(R.begin(), R.end(), cd{0.0, 0.0});
    std::fill(P.begin(), P.end(), cd{0.0, 0.0});
    for (std::size_t t = delay; t < frames; ++t) {
      gather(t);
      const double w = 1.0 / lam[t];
      for (std::size_t i = 0; i < dim; ++i) {
        if (stacked[i] == cd{0.0, 0.0}) continue;
        const cd wi = w * stacked[i];
        cd* row = R.data() + i * dim;
        for (std::size_t j = i; j < dim; ++j) row[j] += wi * std::conj(stacked[j]);
        const cd* yt = y.data() + t * k;
        cd* prow = P.data() + i * k;
        for (std::size_t c = 0; c < k; ++c) prow[c] += wi * std::conj(yt[c]);
      }
    }
    for (std::size_t i = 0; i < dim; ++i) {
      for (std::size_t j = 0; j < i; ++j) R[i * dim + j] = std::conj(R[j * dim + i]);
    }

    HermitianSolve(R.data(), dim, P.data(), k, cfg.loading, G.data());

    // (d) subtract the prediction
    d = y;
    for (std::size_t t = delay; t < frames; ++t) {
      gather(t);
      cd* dt = d.data() + t * k;
      for (std::size_t c = 0; c < k; ++c) {
        cd pred{0.0, 0.0};
        for (std::size_t i = 0; i < dim; ++i) pred += std::conj(G[i * k + c]) * stacked[i];
        dt[c] -= pred;
      }
    }
  }
}

}  // namespace

TFGrid Wpe(const TFGrid& y, const WpeConfig& cfg) {
  if (cfg.taps < 1 || cfg.delay < 1 || cfg.iterations < 1) {
    throw Error("wpe: taps, delay and iterations must be >= 1");
  }
  if (!(cfg.alpha > 0.0 && cfg.alpha <= 1.0)) throw Error("wpe: alpha must be in (0, 1]");
  if (y.frames <= static_cast<std::size_t>(cfg.delay + cfg.taps)) {
    throw Error("wpe: clip too short for the configured delay and taps");
  }

  double mean_power = 0.0;
  for (const cd& v : y.values) mean_power += std::norm(v);
  mean_power /= static_cast<double>(y.values.size());
  const double variance_floor = kVarianceFloorRel * std::max(mean_power, 1e-300);

  TFGrid out(y.channels, y.frames, y.bins);
  out.window_len = y.window_len;
  out.hop = y.hop;
  out.sample_rate = y.sample_rate;

  ParallelFor(y.bins, cfg.workers, [&](std::size_t f) {
    // Per-bin (frame, channel) working copies; grid storage is channel-major.
    std::vector<cd> ybin(y.frames * y.channels);
    for (std::size_t t = 0; t < y.frames; ++t) {
      for (std::size_t c = 0; c < y.channels; ++c) ybin[t * y.channels + c] = y.at(c, t, f);
    }
    std::vector<cd> dbin;
    WpeBin(ybin, y.frames, y.channels, cfg, variance_floor, &dbin);
    for (std::size_t t = 0; t < y.frames; ++t) {
      for (std::size_t c = 0; c < y.channels; ++c) {
        out.at(c, t, f) = dbin[t * y.channels + c];
      }
    }
  });
  return out;
}

}  // namespace mcse
