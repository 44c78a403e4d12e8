// src/stft.cc

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

#include "mcse/stft.h"

#include <cmath>
#include <cstring>

#include "mcse/fft.h"

namespace mcse {

std::vector<double> HannWindow(int n) {
  std::vector<double> w(n);
  for (int i = 0; i < n; ++i) {
    w[i] = 0.5 * (1.0 - std::cos(2.0 * M_PI * static_cast<double>(i) / n));
  }
  return w;
}

namespace {

void CheckStftArgs(int window_len, int hop) {
  if (window_len <= 0 || window_len % 2 != 0) {
    throw Error("stft: window length must be positive and even");
  }
  if (hop <= 0 || hop > window_len) {
    throw Error("stft: hop must satisfy 0 < hop <= window length");
  }
}

}  // namespace

std::size_t StftNumFrames(std::size_t length, int window_len, int hop) {
  CheckStftArgs(window_len, hop);
  const std::size_t padded = length + static_cast<std::size_t>(window_len - hop);
  if (padded <= static_cast<std::size_t>(window_len)) return 1;
  const std::size_t tail = padded - window_len;
  return (tail + hop - 1) / hop + 1;
}

TFGrid Stft(const Waveform& x, int window_len, int hop) {
  CheckStftArgs(window_len, hop);
  if (x.channels == 0 || x.length == 0) throw Error("stft: empty signal");
  if (x.length < static_cast<std::size_t>(window_len)) {
    throw Error("stft: signal shorter than one window");
  }

  const std::size_t frames = StftNumFrames(x.length, window_len, hop);
  const std::size_t bins = window_len / 2 + 1;
  const std::size_t pad_front = window_len - hop;

  TFGrid g(x.channels, frames, bins);
  g.window_len = window_len;
  g.hop = hop;
  g.sample_rate = x.sample_rate;

  const std::vector<double> window = HannWindow(window_len);
  std::vector<double> frame(window_len);
  std::vector<cd> spec(bins);
  for (std::size_t c = 0; c < x.channels; ++c) {
    const double* src = x.channel(c);
    for (std::size_t t = 0; t < frames; ++t) {
      // Frame t covers padded samples [t*hop, t*hop + window); padded index i
      // maps to signal index i - pad_front.
      for (int i = 0; i < window_len; ++i) {
        const std::size_t padded_idx = t * hop + i;
        double v = 0.0;
        if (padded_idx >= pad_front) {
          const std::size_t n = padded_idx - pad_front;
          if (n < x.length) v = src[n];
        }
        frame[i] = v * window[i];
      }
      RealFft(frame.data(), window_len, spec.data());
      std::memcpy(&g.at(c, t, 0), spec.data(), bins * sizeof(cd));
    }
  }
  return g;
}

Waveform InverseStft(const TFGrid& g) { return InverseStft(g, g.frames * g.hop); }

Waveform InverseStft(const TFGrid& g, std::size_t original_length) {
  if (g.bins != static_cast<std::size_t>(g.window_len / 2 + 1)) {
    throw Error("istft: bins inconsistent with window length");
  }
  CheckStftArgs(g.window_len, g.hop);
  const std::size_t pad_front = g.window_len - g.hop;
  const std::size_t padded_len = (g.frames - 1) * g.hop + g.window_len;
  if (original_length + pad_front > padded_len) {
    throw Error("istft: requested length exceeds the synthesized region");
  }

  const std::vector<double> window = HannWindow(g.window_len);
  std::vector<double> norm(padded_len, 0.0);
  for (std::size_t t = 0; t < g.frames; ++t) {
    for (int i = 0; i < g.window_len; ++i) norm[t * g.hop + i] += window[i] * window[i];
  }

  Waveform out(g.channels, original_length, g.sample_rate);
  std::vector<double> acc(padded_len);
  std::vector<double> frame(g.window_len);
  for (std::size_t c = 0; c < g.channels; ++c) {
    std::fill(acc.begin(), acc.end(), 0.0);
    for (std::size_t t = 0; t < g.frames; ++t) {
      const cd* spec = g.values.data() + (c * g.frames + t) * g.bins;
      InverseRealFft(spec, g.window_len, frame.data());
      for (int i = 0; i < g.window_len; ++i) {
        acc[t * g.hop + i] += frame[i] * window[i];
      }
    }
    double* dst = out.channel(c);
    for (std::size_t n = 0; n < original_length; ++n) {
      const std::size_t p = n + pad_front;
      dst[n] = norm[p] > 0.0 ? acc[p] / norm[p] : 0.0;
    }
  }
  return out;
}

TFGrid TFGrid::channel_slice(std::size_t c) const {
  TFGrid out(1, frames, bins);
  out.window_len = window_len;
  out.hop = hop;
  out.sample_rate = sample_rate;
  std::memcpy(out.values.data(), values.data() + c * frames * bins,
              frames * bins * sizeof(cd));
  return out;
}

}  // namespace mcse
