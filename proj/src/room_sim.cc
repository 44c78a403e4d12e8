// src/room_sim.cc

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

#include "mcse/room_sim.h"

#include <cmath>

#include "mcse/rng.h"

namespace mcse {

namespace {

constexpr double kSourceWallMargin = 1.5;  // side walls, sources
constexpr double kMicWallMargin = 1.0;     // side walls, microphones
constexpr double kVerticalMargin = 0.5;    // floor and ceiling, everything
constexpr double kMinSeparation = 0.5;     // between sources and array center
constexpr int kMaxRetries = 1000;
constexpr int kSincHalfWidth = 40;  // 81-tap interpolation filter

double Distance(const Vec3& a, const Vec3& b) {
  const double dx = a[0] - b[0], dy = a[1] - b[1], dz = a[2] - b[2];
  return std::sqrt(dx * dx + dy * dy + dz * dz);
}

Vec3 DrawPosition(Rng* rng, const Vec3& dims, double side_margin) {
  // Degenerate intervals (room side exactly twice the margin) pin the
  // coordinate to the center plane.
  auto draw = [&](double extent, double margin) {
    const double lo = margin, hi = extent - margin;
    return hi <= lo ? extent / 2.0 : rng->Uniform(lo, hi);
  };
  return Vec3{draw(dims[0], side_margin), draw(dims[1], side_margin),
              draw(dims[2], kVerticalMargin)};
}

double Sinc(double x) { return x == 0.0 ? 1.0 : std::sin(x) / x; }

}  // namespace

RoomProfile RoomProfileFromString(const std::string& s) {
  if (s == "train") return RoomProfile::kTrain;
  if (s == "eval") return RoomProfile::kEval;
  throw Error("unknown room profile: " + s);
}

std::string ToString(RoomProfile profile) {
  return profile == RoomProfile::kTrain ? "train" : "eval";
}

RoomSpec SampleRoom(std::uint64_t seed, RoomProfile profile, const ArrayGeometry& array) {
  if (array.mics == 0) throw Error("sample_room: need at least one microphone");
  Rng rng(SplitMix64(seed));

  RoomSpec room;
  room.seed = seed;
  room.profile = ToString(profile);
  room.dimensions = Vec3{rng.Uniform(3.0, 8.0), rng.Uniform(3.0, 5.0), rng.Uniform(2.0, 3.0)};
  room.rt60_target = profile == RoomProfile::kEval ? 0.4 : rng.Uniform(0.2, 0.6);

  const double half_extent = 0.5 * array.spacing * static_cast<double>(array.mics - 1);
  for (int attempt = 0;; ++attempt) {
    if (attempt >= kMaxRetries) {
      throw Error("sample_room: could not satisfy the distance constraints");
    }
    room.source_position = DrawPosition(&rng, room.dimensions, kSourceWallMargin);
    room.noise_position = DrawPosition(&rng, room.dimensions, kSourceWallMargin);
    const Vec3 center = DrawPosition(&rng, room.dimensions, kMicWallMargin + half_extent);
    const double azimuth = rng.Uniform(0.0, M_PI);

    if (Distance(room.source_position, room.noise_position) < kMinSeparation) continue;
    if (Distance(room.source_position, center) < kMinSeparation) continue;
    if (Distance(room.noise_position, center) < kMinSeparation) continue;

    room.mic_positions.clear();
    bool ok = true;
    for (std::size_t m = 0; m < array.mics; ++m) {
      const double offset =
          (static_cast<double>(m) - 0.5 * static_cast<double>(array.mics - 1)) *
          array.spacing;
      const Vec3 p{center[0] + offset * std::cos(azimuth),
                   center[1] + offset * std::sin(azimuth), center[2]};
      if (p[0] < kMicWallMargin || p[0] > room.dimensions[0] - kMicWallMargin ||
          p[1] < kMicWallMargin || p[1] > room.dimensions[1] - kMicWallMargin) {
        ok = false;
        break;
      }
      room.mic_positions.push_back(p);
    }
    if (ok) break;
  }
  return room;
}

double Rt60ToAbsorption(const RoomSpec& room) {
  const double L = room.dimensions[0], W = room.dimensions[1], H = room.dimensions[2];
  if (L <= 0.0 || W <= 0.0 || H <= 0.0 || room.rt60_target <= 0.0) {
    throw Error("rt60_to_absorption: dimensions and rt60 must be positive");
  }
  const double volume = L * W * H;
  const double surface = 2.0 * (L * W + L * H + W * H);
  const double alpha = 0.161 * volume / (surface * room.rt60_target);
  if (alpha > 1.0) {
    throw Error("rt60_to_absorption: target RT60 infeasible for this room (alpha > 1)");
  }
  return alpha;
}

Rir SimulateRir(const RoomSpec& room) { return SimulateRir(room, room.source_position); }

Rir SimulateRir(const RoomSpec& room, const Vec3& source) {
  const double alpha = Rt60ToAbsorption(room);
  const double beta = std::sqrt(1.0 - alpha);
  const double fs = static_cast<double>(room.sample_rate);
  const double meters_per_sample = kSpeedOfSound / fs;

  Rir rir;
  rir.sample_rate = room.sample_rate;
  rir.mics = room.mic_positions.size();
  rir.length = static_cast<std::size_t>(std::ceil(1.5 * room.rt60_target * fs));
  rir.taps.assign(rir.mics * rir.length, 0.0);

  // Everything below is in units of samples (distance / meters_per_sample).
  const double lx = room.dimensions[0] / meters_per_sample;
  const double ly = room.dimensions[1] / meters_per_sample;
  const double lz = room.dimensions[2] / meters_per_sample;
  const double sx = source[0] / meters_per_sample;
  const double sy = source[1] / meters_per_sample;
  const double sz = source[2] / meters_per_sample;
  const double max_dist = static_cast<double>(rir.length);

  // Image lattice bounds so every image within max_dist is enumerated.
  const int n1 = static_cast<int>(std::ceil(max_dist / (2.0 * lx)));
  const int n2 = static_cast<int>(std::ceil(max_dist / (2.0 * ly)));
  const int n3 = static_cast<int>(std::ceil(max_dist / (2.0 * lz)));

  for (std::size_t m = 0; m < rir.mics; ++m) {
    const double rx = room.mic_positions[m][0] / meters_per_sample;
    const double ry = room.mic_positions[m][1] / meters_per_sample;
    const double rz = room.mic_positions[m][2] / meters_per_sample;
    double* out = rir.channel(m);

    for (int mx = -n1; mx <= n1; ++mx) {
      for (int qx = 0; qx <= 1; ++qx) {
        const double ix = (1 - 2 * qx) * sx - rx + 2.0 * mx * lx;
        const double refl_x = std::pow(beta, std::abs(mx - qx) + std::abs(mx));
        for (int my = -n2; my <= n2; ++my) {
          for (int qy = 0; qy <= 1; ++qy) {
            const double iy = (1 - 2 * qy) * sy - ry + 2.0 * my * ly;
            const double refl_xy = refl_x * std::pow(beta, std::abs(my - qy) + std::abs(my));
            if (refl_xy == 0.0) continue;
            for (int mz = -n3; mz <= n3; ++mz) {
              for (int qz = 0; qz <= 1; ++qz) {
                const double iz = (1 - 2 * qz) * sz - rz + 2.0 * mz * lz;
                const double refl =
                    refl_xy * std::pow(beta, std::abs(mz - qz) + std::abs(mz));
                if (refl == 0.0) continue;
                const double dist = std::sqrt(ix * ix + iy * iy + iz * iz);
                if (dist >= max_dist) continue;

                const double gain =
                    refl / (4.0 * M_PI * std::max(dist, 1.0) * meters_per_sample);
                const int center = static_cast<int>(std::lround(dist));
                for (int k = -kSincHalfWidth; k <= kSincHalfWidth; ++k) {
                  const int idx = center + k;
                  if (idx < 0 || idx >= static_cast<int>(rir.length)) continue;
                  const double t = static_cast<double>(idx) - dist;
                  const double window =
                      0.5 * (1.0 + std::cos(2.0 * M_PI * t / (2 * kSincHalfWidth + 1)));
                  out[idx] += gain * window * Sinc(M_PI * t);
                }
              }
            }
          }
        }
      }
    }
  }
  return rir;
}

void to_json(nlohmann::json& j, const RoomSpec& room) {
  j = nlohmann::json{{"dimensions", room.dimensions},
                     {"rt60_target", room.rt60_target},
                     {"source_position", room.source_position},
                     {"noise_position", room.noise_position},
                     {"mic_positions", room.mic_positions},
                     {"sample_rate", room.sample_rate},
                     {"seed", room.seed},
                     {"profile", room.profile}};
}

void from_json(const nlohmann::json& j, RoomSpec& room) {
  j.at("dimensions").get_to(room.dimensions);
  j.at("rt60_target").get_to(room.rt60_target);
  j.at("source_position").get_to(room.source_position);
  j.at("noise_position").get_to(room.noise_position);
  j.at("mic_positions").get_to(room.mic_positions);
  j.at("sample_rate").get_to(room.sample_rate);
  j.at("seed").get_to(room.seed);
  j.at("profile").get_to(room.profile);
}

}  // namespace mcse
