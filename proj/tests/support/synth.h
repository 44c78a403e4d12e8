// tests/support/synth.h

// Copyright 2026 mcse authors
// Apache 2.0

// Deterministic test signals: white noise, speech-shaped harmonic signals
// with syllabic gaps, random PSD matrices.

#ifndef MCSE_TESTS_SUPPORT_SYNTH_H_
#define MCSE_TESTS_SUPPORT_SYNTH_H_

#include <cmath>
#include <vector>

#include "mcse/rng.h"
#include "mcse/types.h"

namespace mcse::test {

inline Waveform WhiteNoise(std::uint64_t seed, std::size_t channels, std::size_t length,
                           int rate = 16000, double sigma = 0.1) {
  Rng rng(SplitMix64(seed));
  Waveform w(channels, length, rate);
  for (double& v : w.data) v = sigma * rng.Gaussian();
  return w;
}

// Harmonic voice-like signal: slowly wandering pitch, 1/h harmonic rolloff,
// syllabic amplitude gating with real silent gaps, a little breath noise.
inline Waveform SynthSpeech(std::uint64_t seed, double seconds, int rate = 16000) {
  Rng rng(SplitMix64(seed ^ 0x73706565ULL));
  const std::size_t n = static_cast<std::size_t>(seconds * rate);
  Waveform w(1, n, rate);

  const double f0_base = 90.0 + 80.0 * rng.Uniform();
  const double vibrato_rate = 2.0 + 3.0 * rng.Uniform();
  const int harmonics = 10;
  std::vector<double> phases(harmonics);
  for (double& p : phases) p = 2.0 * M_PI * rng.Uniform();

  // Syllable gate: alternating voiced/silent segments of 80..400 ms.
  std::vector<double> gate(n, 0.0);
  std::size_t pos = 0;
  bool voiced = true;
  while (pos < n) {
    const std::size_t seg =
        static_cast<std::size_t>((0.08 + 0.32 * rng.Uniform()) * rate);
    if (voiced) {
      for (std::size_t i = pos; i < std::min(pos + seg, n); ++i) gate[i] = 1.0;
    }
    pos += seg;
    voiced = !voiced;
  }
  // 10 ms raised-cosine edges on the gate to avoid clicks.
  const std::size_t ramp = rate / 100;
  std::vector<double> smooth(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double acc = 0.0;
    const std::size_t lo = i >= ramp ? i - ramp : 0;
    for (std::size_t j = lo; j <= std::min(i + ramp, n - 1); ++j) acc += gate[j];
    smooth[i] = acc / static_cast<double>(2 * ramp + 1);
  }

  double phase = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double t = static_cast<double>(i) / rate;
    const double f0 = f0_base * (1.0 + 0.03 * std::sin(2.0 * M_PI * vibrato_rate * t));
    phase += 2.0 * M_PI * f0 / rate;
    double v = 0.0;
    for (int h = 1; h <= harmonics; ++h) {
      v += std::sin(phase * h + phases[h - 1]) / static_cast<double>(h);
    }
    v *= 0.15 * smooth[i];
    v += 0.005 * rng.Gaussian();
    w.at(0, i) = v;
  }
  return w;
}

inline std::vector<cd> RandomComplexMatrix(Rng* rng, std::size_t rows, std::size_t cols) {
  std::vector<cd> m(rows * cols);
  for (cd& v : m) v = cd{rng->Gaussian(), rng->Gaussian()};
  return m;
}

// A = G G^H, Hermitian PSD (almost surely full rank for square G).
inline std::vector<cd> RandomPsd(Rng* rng, std::size_t k) {
  const std::vector<cd> g = RandomComplexMatrix(rng, k, k);
  std::vector<cd> a(k * k, cd{0.0, 0.0});
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j)
      for (std::size_t l = 0; l < k; ++l) a[i * k + j] += g[i * k + l] * std::conj(g[j * k + l]);
  // Exact Hermitian symmetry.
  for (std::size_t i = 0; i < k; ++i) {
    a[i * k + i] = cd{a[i * k + i].real(), 0.0};
    for (std::size_t j = i + 1; j < k; ++j) a[j * k + i] = std::conj(a[i * k + j]);
  }
  return a;
}

inline std::vector<cd> RandomUnitVector(Rng* rng, std::size_t k) {
  std::vector<cd> v(k);
  double norm = 0.0;
  for (cd& x : v) {
    x = cd{rng->Gaussian(), rng->Gaussian()};
    norm += std::norm(x);
  }
  norm = std::sqrt(norm);
  for (cd& x : v) x /= norm;
  return v;
}

}  // namespace mcse::test

#endif  // MCSE_TESTS_SUPPORT_SYNTH_H_
