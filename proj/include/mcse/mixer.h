// include/mcse/mixer.h

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

#ifndef MCSE_MIXER_H_
#define MCSE_MIXER_H_

#include <cstdint>
#include <optional>
#include <string>

#include <json.hpp>

#include "mcse/room_sim.h"
#include "mcse/types.h"

namespace mcse {

// One line of a JSONL manifest. The room comes from exactly one of:
// an inline RoomSpec object, a path to a RoomSpec JSON file, or an on-the-fly
// {"profile": ..., "seed": ...} draw.
struct MixtureSpec {
  std::string speech_path;
  std::string noise_path;
  std::optional<RoomSpec> room;
  std::string room_path;
  std::optional<std::pair<std::string, std::uint64_t>> room_sample;  // profile, seed
  double snr_db = 5.0;
  std::uint64_t seed = 0;
  double truncate_s = 10.0;
};

void to_json(nlohmann::json& j, const MixtureSpec& spec);
void from_json(const nlohmann::json& j, MixtureSpec& spec);

struct MixtureBundle {
  Waveform mixture;
  Waveform speech_image;
  Waveform noise_image;
  double achieved_snr_db = 0.0;
};

// Full linear convolution of a single-channel dry signal with every RIR
// channel; output length = dry length + RIR length - 1.
Waveform Convolve(const Waveform& dry, const Rir& rir);

// Scales the noise image so the reference-channel image powers sit at snr_db,
// then sums. Both images are quantized to float32 values first so that
// mixture = speech_image + noise_image holds exactly, in memory and on disk.
MixtureBundle MixAtSnr(const Waveform& speech_image, const Waveform& noise_image,
                       double snr_db, std::size_t reference_channel = 0);

// Loops (with a seeded circular offset) or crops (seeded) the noise to the
// target length.
Waveform FitNoiseLength(const Waveform& noise, std::size_t length, std::uint64_t seed);

struct CorpusResult {
  std::size_t succeeded = 0;
  std::size_t failed = 0;
  std::vector<std::string> errors;
};

// Renders every manifest entry into out_dir/clip_NNNN/{mixture,speech_image,
// noise_image}.wav plus a record.json, and echoes the manifest. Per-item
// failures are recorded and the run continues.
CorpusResult BuildCorpus(const std::string& manifest_path, const std::string& out_dir,
                         std::uint64_t seed, int workers);

}  // namespace mcse

#endif  // MCSE_MIXER_H_
