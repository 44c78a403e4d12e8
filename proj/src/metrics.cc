// src/metrics.cc

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

#include "mcse/metrics.h"

#include <algorithm>
#include <cmath>

#include "mcse/parallel.h"
#include "mcse/rng.h"

namespace mcse {

namespace {

double SumSquares(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  return s;
}

void CheckPair(std::span<const double> reference, std::span<const double> estimate) {
  if (reference.size() != estimate.size()) throw Error("metric: length mismatch");
  if (reference.empty()) throw Error("metric: empty signals");
}

// Empirical quantile with linear interpolation between order statistics.
double Quantile(const std::vector<double>& sorted, double p) {
  const double h = p * static_cast<double>(sorted.size() - 1);
  const std::size_t lo = static_cast<std::size_t>(h);
  if (lo + 1 >= sorted.size()) return sorted.back();
  return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[lo + 1] - sorted[lo]);
}

}  // namespace

double Sdr(std::span<const double> reference, std::span<const double> estimate) {
  CheckPair(reference, estimate);
  const double ref_energy = SumSquares(reference);
  if (ref_energy == 0.0) throw Error("sdr: zero reference");
  double err = 0.0;
  for (std::size_t i = 0; i < reference.size(); ++i) {
    const double d = reference[i] - estimate[i];
    err += d * d;
  }
  if (err == 0.0) return kDbSentinel;
  return std::min(10.0 * std::log10(ref_energy / err), kDbSentinel);
}

double SiSnr(std::span<const double> reference, std::span<const double> estimate) {
  CheckPair(reference, estimate);
  const std::size_t n = reference.size();
  double mean_r = 0.0, mean_e = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mean_r += reference[i];
    mean_e += estimate[i];
  }
  mean_r /= static_cast<double>(n);
  mean_e /= static_cast<double>(n);

  double dot = 0.0, ref_energy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = reference[i] - mean_r;
    const double e = estimate[i] - mean_e;
    dot += r * e;
    ref_energy += r * r;
  }
  if (ref_energy == 0.0) throw Error("si_snr: zero reference");
  if (dot == 0.0) return -kDbSentinel;

  const double scale = dot / ref_energy;
  double target = 0.0, error = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double t = scale * (reference[i] - mean_r);
    const double d = (estimate[i] - mean_e) - t;
    target += t * t;
    error += d * d;
  }
  if (error == 0.0) return kDbSentinel;
  const double value = 10.0 * std::log10(target / error);
  return std::clamp(value, -kDbSentinel, kDbSentinel);
}

double Sdr(const Waveform& reference, const Waveform& estimate, std::size_t channel) {
  if (channel >= reference.channels || channel >= estimate.channels) {
    throw Error("sdr: channel out of range");
  }
  if (reference.length != estimate.length) throw Error("sdr: length mismatch");
  return Sdr(std::span<const double>(reference.channel(channel), reference.length),
             std::span<const double>(estimate.channel(channel), estimate.length));
}

double SiSnr(const Waveform& reference, const Waveform& estimate, std::size_t channel) {
  if (channel >= reference.channels || channel >= estimate.channels) {
    throw Error("si_snr: channel out of range");
  }
  if (reference.length != estimate.length) throw Error("si_snr: length mismatch");
  return SiSnr(std::span<const double>(reference.channel(channel), reference.length),
               std::span<const double>(estimate.channel(channel), estimate.length));
}

namespace {

// Threshold sweep over the sorted score set plus one sentinel past the top.
// Returns (eer, threshold).
std::pair<double, double> EerPoint(const std::vector<Trial>& trials) {
  std::size_t num_targets = 0, num_nontargets = 0;
  for (const Trial& t : trials) {
    (t.label == TrialLabel::kTarget ? num_targets : num_nontargets)++;
    if (!std::isfinite(t.score)) throw Error("eer: scores must be finite");
  }
  if (num_targets == 0 || num_nontargets == 0) {
    throw Error("eer: need at least one target and one nontarget trial");
  }

  std::vector<Trial> sorted(trials);
  std::sort(sorted.begin(), sorted.end(),
            [](const Trial& a, const Trial& b) { return a.score < b.score; });

  // Candidate thresholds are the distinct scores, plus one past the maximum
  // (FRR 1, FAR 0) so a crossing always exists. diff = FAR - FRR starts at 1
  // and is non-increasing; interpolate linearly at the first sign change.
  double prev_threshold = 0.0, prev_frr = 0.0, prev_far = 1.0;
  std::size_t targets_below = 0, nontargets_below = 0;
  std::size_t i = 0;
  while (true) {
    double threshold, frr, far;
    if (i < sorted.size()) {
      threshold = sorted[i].score;
      frr = static_cast<double>(targets_below) / static_cast<double>(num_targets);
      far = 1.0 - static_cast<double>(nontargets_below) / static_cast<double>(num_nontargets);
    } else {
      threshold = sorted.back().score + 1.0;
      frr = 1.0;
      far = 0.0;
    }

    const double diff = far - frr;
    if (diff <= 0.0) {
      const double prev_diff = prev_far - prev_frr;  // > 0 here
      const double lambda = prev_diff / (prev_diff - diff);
      return {prev_frr + lambda * (frr - prev_frr),
              prev_threshold + lambda * (threshold - prev_threshold)};
    }
    prev_threshold = threshold;
    prev_frr = frr;
    prev_far = far;
    if (i >= sorted.size()) break;

    const double v = sorted[i].score;
    while (i < sorted.size() && sorted[i].score == v) {
      (sorted[i].label == TrialLabel::kTarget ? targets_below : nontargets_below)++;
      ++i;
    }
  }
  throw Error("eer: no crossing found");  // unreachable: the sentinel has diff = -1
}

}  // namespace

EerResult Eer(const TrialSet& trials) {
  const auto [eer, threshold] = EerPoint(trials.trials);
  EerResult r;
  r.eer = eer;
  r.threshold = threshold;
  r.ci_low = eer;
  r.ci_high = eer;
  return r;
}

EerResult BootstrapCi(const TrialSet& trials, int b, std::uint64_t seed, int workers) {
  if (b <= 0) throw Error("bootstrap: b must be positive");
  EerResult result = Eer(trials);
  result.bootstrap_b = b;
  result.seed = seed;

  const std::size_t n = trials.trials.size();
  std::vector<double> eers(b);
  std::vector<std::size_t> skipped(b, 0);
  ParallelFor(static_cast<std::size_t>(b), workers, [&](std::size_t r) {
    std::vector<Trial> resample(n);
    for (std::uint64_t attempt = 0;; ++attempt) {
      Rng rng(DeriveSeed(seed, r * 1000003ULL + attempt));
      bool has_target = false, has_nontarget = false;
      for (std::size_t i = 0; i < n; ++i) {
        resample[i] = trials.trials[rng.Below(n)];
        (resample[i].label == TrialLabel::kTarget ? has_target : has_nontarget) = true;
      }
      if (has_target && has_nontarget) break;
      ++skipped[r];
    }
    eers[r] = EerPoint(resample).first;
  });

  for (std::size_t s : skipped) result.skipped_resamples += s;
  std::sort(eers.begin(), eers.end());
  result.ci_low = Quantile(eers, 0.025);
  result.ci_high = Quantile(eers, 0.975);
  return result;
}

double Median(std::vector<double> values) {
  if (values.empty()) throw Error("median: empty sample");
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  return n % 2 == 1 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

std::pair<double, double> BootstrapMedianCi(std::span<const double> values, int b,
                                            std::uint64_t seed) {
  if (values.empty()) throw Error("bootstrap: empty sample");
  if (b <= 0) throw Error("bootstrap: b must be positive");
  std::vector<double> medians(b);
  std::vector<double> resample(values.size());
  for (int r = 0; r < b; ++r) {
    Rng rng(DeriveSeed(seed, static_cast<std::uint64_t>(r)));
    for (std::size_t i = 0; i < values.size(); ++i) {
      resample[i] = values[rng.Below(values.size())];
    }
    medians[r] = Median(resample);
  }
  std::sort(medians.begin(), medians.end());
  return {Quantile(medians, 0.025), Quantile(medians, 0.975)};
}

}  // namespace mcse
