// src/mixer.cc

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

#include "mcse/mixer.h"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "mcse/fft.h"
#include "mcse/io_util.h"
#include "mcse/parallel.h"
#include "mcse/rng.h"
#include "mcse/wav_io.h"

namespace fs = std::filesystem;

namespace mcse {

Waveform Convolve(const Waveform& dry, const Rir& rir) {
  if (dry.channels != 1) throw Error("convolve: dry signal must be single-channel");
  if (dry.sample_rate != rir.sample_rate) {
    throw Error("convolve: sample rates differ (" + std::to_string(dry.sample_rate) +
                " vs " + std::to_string(rir.sample_rate) + ")");
  }
  if (dry.length == 0 || rir.length == 0 || rir.mics == 0) {
    throw Error("convolve: empty input");
  }

  const std::size_t out_len = dry.length + rir.length - 1;
  std::size_t fft_len = 1;
  while (fft_len < out_len) fft_len <<= 1;

  std::vector<cd> dry_spec(fft_len, cd{0.0, 0.0});
  for (std::size_t n = 0; n < dry.length; ++n) dry_spec[n] = cd{dry.at(0, n), 0.0};
  Fft(&dry_spec);

  Waveform out(rir.mics, out_len, dry.sample_rate);
  std::vector<cd> work(fft_len);
  for (std::size_t m = 0; m < rir.mics; ++m) {
    std::fill(work.begin(), work.end(), cd{0.0, 0.0});
    const double* h = rir.channel(m);
    for (std::size_t i = 0; i < rir.length; ++i) work[i] = cd{h[i], 0.0};
    Fft(&work);
    for (std::size_t i = 0; i < fft_len; ++i) work[i] *= dry_spec[i];
    InverseFft(&work);
    double* dst = out.channel(m);
    for (std::size_t n = 0; n < out_len; ++n) dst[n] = work[n].real();
  }
  return out;
}

MixtureBundle MixAtSnr(const Waveform& speech_image, const Waveform& noise_image,
                       double snr_db, std::size_t reference_channel) {
  if (speech_image.channels != noise_image.channels ||
      speech_image.length != noise_image.length) {
    throw Error("mix: image shapes differ");
  }
  if (reference_channel >= speech_image.channels) {
    throw Error("mix: reference channel out of range");
  }
  if (!std::isfinite(snr_db)) throw Error("mix: SNR must be finite");

  const double* s = speech_image.channel(reference_channel);
  const double* n = noise_image.channel(reference_channel);
  double ps = 0.0, pn = 0.0;
  for (std::size_t i = 0; i < speech_image.length; ++i) {
    ps += s[i] * s[i];
    pn += n[i] * n[i];
  }
  if (ps == 0.0) throw Error("mix: silent speech image, cannot set SNR");
  if (pn == 0.0) throw Error("mix: silent noise image, cannot set SNR");

  const double gain = std::sqrt(ps / (pn * std::pow(10.0, snr_db / 10.0)));

  MixtureBundle bundle;
  bundle.speech_image = speech_image;
  bundle.noise_image = noise_image;
  bundle.mixture = Waveform(speech_image.channels, speech_image.length,
                            speech_image.sample_rate);
  // Quantize both images to the float32 grid before summing; the sum of two
  // float32 values is exact in double, so additivity survives WAV output.
  for (std::size_t i = 0; i < bundle.speech_image.data.size(); ++i) {
    const double sq = static_cast<double>(static_cast<float>(speech_image.data[i]));
    const double nq = static_cast<double>(static_cast<float>(gain * noise_image.data[i]));
    bundle.speech_image.data[i] = sq;
    bundle.noise_image.data[i] = nq;
    bundle.mixture.data[i] = sq + nq;
  }

  const double* sq = bundle.speech_image.channel(reference_channel);
  const double* nq = bundle.noise_image.channel(reference_channel);
  double psq = 0.0, pnq = 0.0;
  for (std::size_t i = 0; i < bundle.mixture.length; ++i) {
    psq += sq[i] * sq[i];
    pnq += nq[i] * nq[i];
  }
  bundle.achieved_snr_db = 10.0 * std::log10(psq / pnq);
  return bundle;
}

Waveform FitNoiseLength(const Waveform& noise, std::size_t length, std::uint64_t seed) {
  if (noise.channels != 1) throw Error("mix: noise must be single-channel");
  if (noise.length == 0) throw Error("mix: empty noise signal");
  Rng rng(SplitMix64(seed ^ 0x6e6f697365ULL));
  Waveform out(1, length, noise.sample_rate);
  const double* src = noise.channel(0);
  double* dst = out.channel(0);
  if (noise.length >= length) {
    const std::size_t start = static_cast<std::size_t>(rng.Below(noise.length - length + 1));
    for (std::size_t i = 0; i < length; ++i) dst[i] = src[start + i];
  } else {
    const std::size_t offset = static_cast<std::size_t>(rng.Below(noise.length));
    for (std::size_t i = 0; i < length; ++i) dst[i] = src[(offset + i) % noise.length];
  }
  return out;
}

void to_json(nlohmann::json& j, const MixtureSpec& spec) {
  j = nlohmann::json{{"speech_path", spec.speech_path},
                     {"noise_path", spec.noise_path},
                     {"snr_db", spec.snr_db},
                     {"seed", spec.seed},
                     {"truncate_s", spec.truncate_s}};
  if (spec.room.has_value()) {
    j["room"] = *spec.room;
  } else if (!spec.room_path.empty()) {
    j["room"] = spec.room_path;
  } else if (spec.room_sample.has_value()) {
    j["room"] = {{"profile", spec.room_sample->first}, {"seed", spec.room_sample->second}};
  }
}

void from_json(const nlohmann::json& j, MixtureSpec& spec) {
  j.at("speech_path").get_to(spec.speech_path);
  j.at("noise_path").get_to(spec.noise_path);
  j.at("snr_db").get_to(spec.snr_db);
  if (j.contains("seed")) j.at("seed").get_to(spec.seed);
  if (j.contains("truncate_s")) j.at("truncate_s").get_to(spec.truncate_s);
  if (!j.contains("room")) throw Error("manifest entry is missing \"room\"");
  const nlohmann::json& r = j.at("room");
  if (r.is_string()) {
    spec.room_path = r.get<std::string>();
  } else if (r.is_object() && r.contains("dimensions")) {
    spec.room = r.get<RoomSpec>();
  } else if (r.is_object() && r.contains("profile")) {
    spec.room_sample = {r.at("profile").get<std::string>(),
                        r.value("seed", std::uint64_t{0})};
  } else {
    throw Error("manifest \"room\" must be a RoomSpec, a path, or {profile, seed}");
  }
}

namespace {

RoomSpec ResolveRoom(const MixtureSpec& spec, std::uint64_t item_seed) {
  if (spec.room.has_value()) return *spec.room;
  if (!spec.room_path.empty()) {
    const nlohmann::json j = nlohmann::json::parse(ReadFileToString(spec.room_path));
    return j.get<RoomSpec>();
  }
  if (spec.room_sample.has_value()) {
    const std::uint64_t room_seed =
        spec.room_sample->second != 0 ? spec.room_sample->second : item_seed;
    return SampleRoom(room_seed, RoomProfileFromString(spec.room_sample->first));
  }
  throw Error("mixture spec has no room");
}

Waveform LoadMono(const std::string& path, std::size_t max_len) {
  Waveform w = ReadWav(path);
  Waveform mono(1, std::min(w.length, max_len), w.sample_rate);
  for (std::size_t i = 0; i < mono.length; ++i) mono.at(0, i) = w.at(0, i);
  if (mono.length == 0) throw Error("empty audio file: " + path);
  return mono;
}

}  // namespace

CorpusResult BuildCorpus(const std::string& manifest_path, const std::string& out_dir,
                         std::uint64_t seed, int workers) {
  std::ifstream in(manifest_path);
  if (!in) throw Error("cannot open manifest: " + manifest_path);
  std::vector<MixtureSpec> specs;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      specs.push_back(nlohmann::json::parse(line).get<MixtureSpec>());
    } catch (const std::exception& e) {
      throw FormatError("manifest line " + std::to_string(line_no) + ": " + e.what());
    }
  }

  fs::create_directories(out_dir);
  CorpusResult result;
  std::vector<std::string> item_errors(specs.size());
  std::vector<nlohmann::json> records(specs.size());

  ParallelFor(specs.size(), workers, [&](std::size_t i) {
    const MixtureSpec& spec = specs[i];
    try {
      const std::uint64_t item_seed =
          spec.seed != 0 ? spec.seed : DeriveSeed(seed, static_cast<std::uint64_t>(i));
      const RoomSpec room = ResolveRoom(spec, item_seed);

      const std::size_t max_len =
          static_cast<std::size_t>(spec.truncate_s * room.sample_rate);
      const Waveform speech = LoadMono(spec.speech_path, max_len);
      Waveform noise = LoadMono(spec.noise_path, std::size_t(-1));
      noise = FitNoiseLength(noise, speech.length, item_seed);

      const Rir rir_speech = SimulateRir(room);
      const Rir rir_noise = SimulateRir(room, room.noise_position);
      const Waveform speech_image = Convolve(speech, rir_speech);
      const Waveform noise_image = Convolve(noise, rir_noise);
      const MixtureBundle bundle = MixAtSnr(speech_image, noise_image, spec.snr_db);

      char name[32];
      std::snprintf(name, sizeof(name), "clip_%04zu", i);
      const fs::path clip_dir = fs::path(out_dir) / name;
      fs::create_directories(clip_dir);
      WriteWav(bundle.mixture, (clip_dir / "mixture.wav").string());
      WriteWav(bundle.speech_image, (clip_dir / "speech_image.wav").string());
      WriteWav(bundle.noise_image, (clip_dir / "noise_image.wav").string());

      nlohmann::json record{{"clip_id", name},
                            {"spec", spec},
                            {"achieved_snr_db", bundle.achieved_snr_db},
                            {"room", room},
                            {"mixture", "mixture.wav"},
                            {"speech_image", "speech_image.wav"},
                            {"noise_image", "noise_image.wav"}};
      AtomicWriteFile((clip_dir / "record.json").string(), record.dump(2) + "\n");
      records[i] = std::move(record);
    } catch (const std::exception& e) {
      item_errors[i] = std::string("clip ") + std::to_string(i) + ": " + e.what();
    }
  });

  std::string echo;
  for (std::size_t i = 0; i < specs.size(); ++i) {
    if (!item_errors[i].empty()) {
      ++result.failed;
      result.errors.push_back(item_errors[i]);
    } else {
      ++result.succeeded;
      echo += nlohmann::json(specs[i]).dump() + "\n";
    }
  }
  AtomicWriteFile((fs::path(out_dir) / "manifest.jsonl").string(), echo);
  return result;
}

}  // namespace mcse
