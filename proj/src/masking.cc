// src/masking.cc

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

#include "mcse/masking.h"

#include <cmath>

#include "mcse/tfb1.h"

namespace mcse {

std::pair<Mask, Mask> MasksFromEstimates(const TFGrid& s_hat, const TFGrid& n_hat,
                                         double eps) {
  if (s_hat.channels != 1 || n_hat.channels != 1) {
    throw Error("masks: estimates must be single-channel grids");
  }
  if (s_hat.frames != n_hat.frames || s_hat.bins != n_hat.bins) {
    throw Error("masks: estimate shapes differ");
  }
  if (!(eps > 0.0)) throw Error("masks: epsilon must be positive");

  Mask speech(s_hat.frames, s_hat.bins, MaskKind::kSpeech);
  Mask noise(s_hat.frames, s_hat.bins, MaskKind::kNoise);
  for (std::size_t i = 0; i < s_hat.values.size(); ++i) {
    const double s = std::abs(s_hat.values[i]);
    const double n = std::abs(n_hat.values[i]);
    const double denom = s + std::max(n, eps);
    const double ms = s / denom;
    speech.gains[i] = ms;
    noise.gains[i] = n >= eps ? 1.0 - ms : n / denom;
  }
  return {std::move(speech), std::move(noise)};
}

std::pair<TFGrid, TFGrid> OracleEstimates(const TFGrid& mix, const TFGrid& speech_image,
                                          const TFGrid& noise_image,
                                          std::size_t reference_channel) {
  if (mix.channels != speech_image.channels || mix.channels != noise_image.channels ||
      mix.frames != speech_image.frames || mix.frames != noise_image.frames ||
      mix.bins != speech_image.bins || mix.bins != noise_image.bins) {
    throw Error("oracle_estimates: grid shapes differ");
  }
  if (reference_channel >= mix.channels) {
    throw Error("oracle_estimates: reference channel out of range");
  }
  return {speech_image.channel_slice(reference_channel),
          noise_image.channel_slice(reference_channel)};
}

void SaveMasks(const Mask& speech, const Mask& noise, const std::string& path) {
  if (speech.frames != noise.frames || speech.bins != noise.bins) {
    throw Error("save_masks: mask shapes differ");
  }
  Tfb1Tensor t;
  t.dtype = Tfb1Dtype::kFloat32;
  t.dims = {2, static_cast<std::uint32_t>(speech.frames),
            static_cast<std::uint32_t>(speech.bins)};
  t.f32.resize(2 * speech.gains.size());
  for (std::size_t i = 0; i < speech.gains.size(); ++i) {
    t.f32[i] = static_cast<float>(speech.gains[i]);
    t.f32[speech.gains.size() + i] = static_cast<float>(noise.gains[i]);
  }
  WriteTfb1(t, path);
}

namespace {

MaskLoadResult LoadMasksImpl(const std::string& path) {
  const Tfb1Tensor t = ReadTfb1(path);
  if (t.dtype != Tfb1Dtype::kFloat32 || t.dims.size() != 3 || t.dims[0] != 2) {
    throw FormatError("masks: expected a float32 (2, frames, bins) tensor in " + path);
  }
  MaskLoadResult out;
  out.speech = Mask(t.dims[1], t.dims[2], MaskKind::kSpeech);
  out.noise = Mask(t.dims[1], t.dims[2], MaskKind::kNoise);
  const std::size_t plane = out.speech.gains.size();
  for (std::size_t i = 0; i < plane; ++i) {
    double s = t.f32[i];
    double n = t.f32[plane + i];
    if (!(s >= 0.0 && s <= 1.0)) {  // also catches NaN
      s = std::min(1.0, std::max(0.0, s));
      ++out.clamped;
    }
    if (!(n >= 0.0 && n <= 1.0)) {
      n = std::min(1.0, std::max(0.0, n));
      ++out.clamped;
    }
    out.speech.gains[i] = s;
    out.noise.gains[i] = n;
  }
  return out;
}

}  // namespace

MaskLoadResult LoadMasks(const std::string& path) { return LoadMasksImpl(path); }

MaskLoadResult LoadMasks(const std::string& path, std::size_t expect_frames,
                         std::size_t expect_bins) {
  MaskLoadResult out = LoadMasksImpl(path);
  if (out.speech.frames != expect_frames || out.speech.bins != expect_bins) {
    throw FormatError("masks: file shape (" + std::to_string(out.speech.frames) + ", " +
                      std::to_string(out.speech.bins) + ") does not match expected (" +
                      std::to_string(expect_frames) + ", " + std::to_string(expect_bins) +
                      ") in " + path);
  }
  return out;
}

}  // namespace mcse
