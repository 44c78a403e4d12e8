// include/mcse/wav_io.h

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

#ifndef MCSE_WAV_IO_H_
#define MCSE_WAV_IO_H_

#include <string>

#include "mcse/types.h"

namespace mcse {

inline constexpr int kDefaultSampleRate = 16000;

enum class WavEncoding { kPcm16, kFloat32 };

// Reads a RIFF/WAVE file (PCM16 or IEEE float32). PCM16 samples are scaled by
// 1/32768. The sample rate must equal expected_rate unless allow_rate is set.
Waveform ReadWav(const std::string& path, int expected_rate = kDefaultSampleRate,
                 bool allow_rate = false);

// Writes interleaved PCM16 (round half away from zero, saturating) or IEEE
// float32. The file is written to a temp name and renamed into place.
void WriteWav(const Waveform& w, const std::string& path,
              WavEncoding encoding = WavEncoding::kFloat32);

}  // namespace mcse

#endif  // MCSE_WAV_IO_H_
