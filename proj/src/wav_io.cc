// src/wav_io.cc

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

#include "mcse/wav_io.h"

#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <vector>

#include "mcse/io_util.h"

namespace mcse {

namespace {

constexpr std::uint16_t kFormatPcm = 1;
constexpr std::uint16_t kFormatFloat = 3;
constexpr std::uint16_t kFormatExtensible = 0xFFFE;

std::uint32_t ReadU32(const unsigned char* p) {
  return std::uint32_t(p[0]) | std::uint32_t(p[1]) << 8 | std::uint32_t(p[2]) << 16 |
         std::uint32_t(p[3]) << 24;
}

std::uint16_t ReadU16(const unsigned char* p) {
  return std::uint16_t(p[0] | p[1] << 8);
}

void PutU32(std::string* s, std::uint32_t v) {
  s->push_back(char(v & 0xFF));
  s->push_back(char((v >> 8) & 0xFF));
  s->push_back(char((v >> 16) & 0xFF));
  s->push_back(char((v >> 24) & 0xFF));
}

void PutU16(std::string* s, std::uint16_t v) {
  s->push_back(char(v & 0xFF));
  s->push_back(char((v >> 8) & 0xFF));
}

std::int16_t QuantizePcm16(double x) {
  double v = x * 32768.0;
  v = v >= 0.0 ? std::floor(v + 0.5) : std::ceil(v - 0.5);
  if (v > 32767.0) v = 32767.0;
  if (v < -32768.0) v = -32768.0;
  return static_cast<std::int16_t>(v);
}

}  // namespace

Waveform ReadWav(const std::string& path, int expected_rate, bool allow_rate) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("wav: cannot open " + path);
  std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)),
                                   std::istreambuf_iterator<char>());
  if (bytes.size() < 12 || std::memcmp(bytes.data(), "RIFF", 4) != 0 ||
      std::memcmp(bytes.data() + 8, "WAVE", 4) != 0) {
    throw FormatError("wav: not a RIFF/WAVE file: " + path);
  }

  std::uint16_t format = 0, channels = 0, bits = 0;
  std::uint32_t rate = 0;
  const unsigned char* data = nullptr;
  std::size_t data_len = 0;
  bool have_fmt = false;

  std::size_t pos = 12;
  while (pos + 8 <= bytes.size()) {
    const std::uint32_t chunk_len = ReadU32(bytes.data() + pos + 4);
    const unsigned char* chunk = bytes.data() + pos + 8;
    if (pos + 8 + chunk_len > bytes.size()) {
      throw FormatError("wav: truncated chunk in " + path);
    }
    if (std::memcmp(bytes.data() + pos, "fmt ", 4) == 0) {
      if (chunk_len < 16) throw FormatError("wav: short fmt chunk in " + path);
      format = ReadU16(chunk);
      channels = ReadU16(chunk + 2);
      rate = ReadU32(chunk + 4);
      bits = ReadU16(chunk + 14);
      if (format == kFormatExtensible) {
        if (chunk_len < 40) throw FormatError("wav: short extensible fmt in " + path);
        format = ReadU16(chunk + 24);  // first two bytes of SubFormat GUID
      }
      have_fmt = true;
    } else if (std::memcmp(bytes.data() + pos, "data", 4) == 0) {
      data = chunk;
      data_len = chunk_len;
    }
    pos += 8 + chunk_len + (chunk_len & 1);  // chunks are word aligned
  }

  if (!have_fmt || data == nullptr) throw FormatError("wav: missing fmt/data chunk in " + path);
  if (channels == 0) throw FormatError("wav: zero channels in " + path);
  const bool pcm16 = format == kFormatPcm && bits == 16;
  const bool float32 = format == kFormatFloat && bits == 32;
  if (!pcm16 && !float32) {
    throw FormatError("wav: unsupported codec (only PCM16 and float32) in " + path);
  }
  if (!allow_rate && static_cast<int>(rate) != expected_rate) {
    throw FormatError("wav: sample rate " + std::to_string(rate) + " != expected " +
                      std::to_string(expected_rate) + " in " + path + " (use --allow-rate)");
  }

  const std::size_t bytes_per = pcm16 ? 2 : 4;
  const std::size_t total = data_len / (bytes_per * channels);
  Waveform w(channels, total, static_cast<int>(rate));
  for (std::size_t n = 0; n < total; ++n) {
    for (std::size_t c = 0; c < channels; ++c) {
      const unsigned char* p = data + (n * channels + c) * bytes_per;
      if (pcm16) {
        const std::int16_t v = static_cast<std::int16_t>(p[0] | p[1] << 8);
        w.at(c, n) = static_cast<double>(v) / 32768.0;
      } else {
        float f;
        std::memcpy(&f, p, 4);
        w.at(c, n) = static_cast<double>(f);
      }
    }
  }
  return w;
}

void WriteWav(const Waveform& w, const std::string& path, WavEncoding encoding) {
  if (w.channels == 0) throw Error("wav: cannot write zero-channel waveform");
  const std::uint16_t bytes_per = encoding == WavEncoding::kPcm16 ? 2 : 4;
  const std::uint32_t data_len =
      static_cast<std::uint32_t>(w.length * w.channels * bytes_per);

  std::string out;
  out.reserve(44 + data_len);
  out.append("RIFF");
  PutU32(&out, 36 + data_len);
  out.append("WAVE");
  out.append("fmt ");
  PutU32(&out, 16);
  PutU16(&out, encoding == WavEncoding::kPcm16 ? kFormatPcm : kFormatFloat);
  PutU16(&out, static_cast<std::uint16_t>(w.channels));
  PutU32(&out, static_cast<std::uint32_t>(w.sample_rate));
  PutU32(&out, static_cast<std::uint32_t>(w.sample_rate) * w.channels * bytes_per);
  PutU16(&out, static_cast<std::uint16_t>(w.channels * bytes_per));
  PutU16(&out, encoding == WavEncoding::kPcm16 ? 16 : 32);
  out.append("data");
  PutU32(&out, data_len);

  for (std::size_t n = 0; n < w.length; ++n) {
    for (std::size_t c = 0; c < w.channels; ++c) {
      if (encoding == WavEncoding::kPcm16) {
        const std::int16_t v = QuantizePcm16(w.at(c, n));
        PutU16(&out, static_cast<std::uint16_t>(v));
      } else {
        const float f = static_cast<float>(w.at(c, n));
        std::uint32_t bits;
        std::memcpy(&bits, &f, 4);
        PutU32(&out, bits);
      }
    }
  }
  AtomicWriteFile(path, out);
}

}  // namespace mcse
