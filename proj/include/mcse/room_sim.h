// include/mcse/room_sim.h

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

#ifndef MCSE_ROOM_SIM_H_
#define MCSE_ROOM_SIM_H_

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "mcse/types.h"

namespace mcse {

inline constexpr double kSpeedOfSound = 343.0;  // m/s

using Vec3 = std::array<double, 3>;

enum class RoomProfile { kTrain, kEval };

RoomProfile RoomProfileFromString(const std::string& s);
std::string ToString(RoomProfile profile);

// Microphone array template: a rigid linear array, horizontal, placed with a
// seeded position and azimuth.
struct ArrayGeometry {
  std::size_t mics = 4;
  double spacing = 0.05;  // meters between adjacent elements
};

struct RoomSpec {
  Vec3 dimensions{5.0, 4.0, 3.0};  // length, width, height in meters
  double rt60_target = 0.4;        // seconds
  Vec3 source_position{2.5, 2.0, 1.5};
  Vec3 noise_position{1.5, 1.5, 1.5};
  std::vector<Vec3> mic_positions;
  int sample_rate = 16000;
  std::uint64_t seed = 0;
  std::string profile = "eval";
};

void to_json(nlohmann::json& j, const RoomSpec& room);
void from_json(const nlohmann::json& j, RoomSpec& room);

struct Rir {
  int sample_rate = 16000;
  std::size_t mics = 0;
  std::size_t length = 0;
  std::vector<double> taps;  // mic-major: taps[m * length + n]

  double* channel(std::size_t m) { return taps.data() + m * length; }
  const double* channel(std::size_t m) const { return taps.data() + m * length; }
};

// Draws a room within the profile bounds: train rooms are 3-8 x 3-5 x 2-3 m
// with RT60 uniform in [0.2, 0.6] s; eval rooms use the same dimensions with
// RT60 fixed at 0.4 s. The speech and noise sources keep 1.5 m from the side
// walls, microphones 1 m; both keep 0.5 m from floor and ceiling (a 1.5 m
// ceiling clearance is infeasible for rooms under 3 m of height). Positions
// are redrawn until all clearances hold.
RoomSpec SampleRoom(std::uint64_t seed, RoomProfile profile,
                    const ArrayGeometry& array = ArrayGeometry{});

// Sabine inversion: alpha = 0.161 V / (S rt60). Throws when the target needs
// alpha > 1.
double Rt60ToAbsorption(const RoomSpec& room);

// Frequency-independent image-source model, reflection coefficient
// sqrt(1 - alpha) on every surface, fractional delays rendered with an 81-tap
// Hann-windowed sinc, amplitude 1/(4 pi d). The response is 1.5 x RT60 long.
Rir SimulateRir(const RoomSpec& room);
Rir SimulateRir(const RoomSpec& room, const Vec3& source);

}  // namespace mcse

#endif  // MCSE_ROOM_SIM_H_
