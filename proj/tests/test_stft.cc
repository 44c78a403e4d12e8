// tests/test_stft.cc

// Copyright 2026 mcse authors
// Apache 2.0

#include <doctest.h>

#include <cmath>

#include "mcse/fft.h"
#include "mcse/stft.h"
#include "support/oracles.h"
#include "support/synth.h"

using namespace mcse;

TEST_CASE("fft matches direct dft and inverts") {
  Rng rng(1);
  for (std::size_t n : {8u, 64u, 512u, 96u}) {  // 96 exercises the non-pow2 path
    std::vector<cd> x(n);
    for (cd& v : x) v = cd{rng.Gaussian(), rng.Gaussian()};
    std::vector<cd> spec = x;
    Fft(&spec);

    // direct DFT
    for (std::size_t k = 0; k < std::min<std::size_t>(n, 9); ++k) {
      cd acc{0.0, 0.0};
      for (std::size_t t = 0; t < n; ++t) {
        const double ang = -2.0 * M_PI * double(k) * double(t) / double(n);
        acc += x[t] * cd{std::cos(ang), std::sin(ang)};
      }
      CHECK(std::abs(spec[k] - acc) < 1e-9 * std::sqrt(double(n)));
    }

    std::vector<cd> back = spec;
    InverseFft(&back);
    for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(back[i] - x[i]) < 1e-12);
  }
}

TEST_CASE("stft of silence is silent") {
  Waveform x(1, 16000, 16000);
  const TFGrid g = Stft(x);
  for (const cd& v : g.values) CHECK(v == cd{0.0, 0.0});
  const Waveform back = InverseStft(g, x.length);
  for (double v : back.data) CHECK(v == 0.0);
}

TEST_CASE("1 kHz tone concentrates in bin 32") {
  // 1000 Hz at 16 kHz with a 512 window is exactly bin 32.
  Waveform x(1, 16000, 16000);
  for (std::size_t i = 0; i < x.length; ++i) {
    x.at(0, i) = std::cos(2.0 * M_PI * 1000.0 * double(i) / 16000.0);
  }
  const TFGrid g = Stft(x, 512, 256);

  // Interior frames: fully inside the signal, away from edge padding.
  for (std::size_t t = 4; t + 4 < g.frames; ++t) {
    double total = 0.0, near = 0.0;
    for (std::size_t f = 0; f < g.bins; ++f) {
      const double e = std::norm(g.at(0, t, f));
      total += e;
      if (f >= 31 && f <= 33) near += e;
    }
    CHECK(near / total > 0.99);
  }

  // One interior frame against the direct windowed DFT oracle.
  const std::vector<double> window = HannWindow(512);
  std::vector<double> frame(512);
  const std::size_t t = 10;
  const std::size_t pad = 512 - 256;
  for (int i = 0; i < 512; ++i) frame[i] = x.at(0, t * 256 + i - pad) * window[i];
  const std::vector<cd> oracle = test::DirectWindowedDft(frame);
  for (std::size_t f = 0; f < g.bins; ++f) {
    CHECK(std::abs(g.at(0, t, f) - oracle[f]) < 1e-8 * 512);
  }
}

TEST_CASE("round trip reconstructs random multichannel signals") {
  for (std::uint64_t seed : {7u, 8u, 9u}) {
    const Waveform x = test::WhiteNoise(seed, 4, 160000);
    const TFGrid g = Stft(x, 512, 256);
    CHECK(g.frames == 625);
    CHECK(g.bins == 257);
    const Waveform back = InverseStft(g, x.length);
    REQUIRE(back.length == x.length);
    double max_err = 0.0;
    for (std::size_t i = 0; i < x.data.size(); ++i) {
      max_err = std::max(max_err, std::abs(back.data[i] - x.data[i]));
    }
    CHECK(max_err < 1e-6);
  }
}

TEST_CASE("round trip with non-aligned length and other COLA hops") {
  for (int hop : {256, 128, 64}) {
    const Waveform x = test::WhiteNoise(3, 2, 48001);
    const Waveform back = InverseStft(Stft(x, 512, hop), x.length);
    double max_err = 0.0;
    for (std::size_t i = 0; i < x.data.size(); ++i) {
      max_err = std::max(max_err, std::abs(back.data[i] - x.data[i]));
    }
    CHECK(max_err < 1e-6);
  }
}

TEST_CASE("parseval per frame") {
  const Waveform x = test::WhiteNoise(11, 1, 8192);
  const TFGrid g = Stft(x, 512, 256);
  const std::vector<double> window = HannWindow(512);
  const std::size_t pad = 256;

  for (std::size_t t = 4; t < 8; ++t) {
    double time_energy = 0.0;
    for (int i = 0; i < 512; ++i) {
      const double v = x.at(0, t * 256 + i - pad) * window[i];
      time_energy += v * v;
    }
    double spec_energy = 0.0;
    for (std::size_t f = 0; f < g.bins; ++f) {
      const double w = (f == 0 || f == g.bins - 1) ? 1.0 : 2.0;
      spec_energy += w * std::norm(g.at(0, t, f));
    }
    spec_energy /= 512.0;
    CHECK(std::abs(spec_energy - time_energy) < 1e-8 * std::max(1.0, time_energy));
  }
}

TEST_CASE("single frame overlap-add against hand computation") {
  // One frame in, synthesis = analysis-window^2 x signal / norm.
  Waveform x(1, 512, 16000);
  for (std::size_t i = 0; i < 512; ++i) {
    x.at(0, i) = std::sin(2.0 * M_PI * 1000.0 * double(i) / 16000.0);
  }
  TFGrid g = Stft(x, 512, 256);
  // Zero all frames but one interior frame; the surviving region must equal
  // w^2 x / sum-of-w^2 where only that frame contributes.
  const std::size_t keep = 1;
  for (std::size_t t = 0; t < g.frames; ++t) {
    if (t == keep) continue;
    for (std::size_t f = 0; f < g.bins; ++f) g.at(0, t, f) = cd{0.0, 0.0};
  }
  const Waveform back = InverseStft(g, x.length);
  const std::vector<double> w = HannWindow(512);

  // Padded position of frame start: keep*hop; signal index = padded - 256.
  // Sample covered only by frame `keep` after the division by the summed
  // squared window: value = w^2[i] x[n] / norm[p], norm[p] accumulated from
  // both covering frames.
  const std::size_t n_check = keep * 256 + 100 - 256;  // window offset 100
  double norm = 0.0;
  for (std::size_t t : {keep - 1, keep, keep + 1}) {
    const std::ptrdiff_t off =
        static_cast<std::ptrdiff_t>(n_check + 256) - static_cast<std::ptrdiff_t>(t * 256);
    if (off >= 0 && off < 512) norm += w[off] * w[off];
  }
  const double expected = w[100] * w[100] * x.at(0, n_check) / norm;
  CHECK(std::abs(back.at(0, n_check) - expected) < 1e-10);
}

TEST_CASE("stft argument validation") {
  Waveform empty;
  CHECK_THROWS_AS(Stft(empty), Error);
  const Waveform x = test::WhiteNoise(1, 1, 1000);
  CHECK_THROWS_AS(Stft(x, 512, 600), Error);   // hop > window
  CHECK_THROWS_AS(Stft(x, 511, 256), Error);   // odd window
  const Waveform tiny = test::WhiteNoise(1, 1, 100);
  CHECK_THROWS_AS(Stft(tiny, 512, 256), Error);  // shorter than a window

  TFGrid g = Stft(x, 512, 256);
  g.window_len = 1024;  // now bins != window/2 + 1
  CHECK_THROWS_AS(InverseStft(g), Error);
}
