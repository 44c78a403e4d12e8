// include/mcse/metrics.h

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

#ifndef MCSE_METRICS_H_
#define MCSE_METRICS_H_

#include <cstdint>
#include <span>
#include <vector>

#include "mcse/types.h"

namespace mcse {

// Zero-residual results are reported as +/- this sentinel instead of infinity.
inline constexpr double kDbSentinel = 300.0;

// 10 log10(||s||^2 / ||s - s_hat||^2).
double Sdr(std::span<const double> reference, std::span<const double> estimate);

// Scale-invariant SNR: both signals are mean-removed, the estimate is
// decomposed against the projection onto the reference.
double SiSnr(std::span<const double> reference, std::span<const double> estimate);

double Sdr(const Waveform& reference, const Waveform& estimate, std::size_t channel = 0);
double SiSnr(const Waveform& reference, const Waveform& estimate, std::size_t channel = 0);

enum class TrialLabel { kTarget, kNontarget };

struct Trial {
  TrialLabel label;
  double score;
};

struct TrialSet {
  std::vector<Trial> trials;
};

struct EerResult {
  double eer = 0.0;
  double threshold = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  int bootstrap_b = 0;
  std::uint64_t seed = 0;
  std::size_t skipped_resamples = 0;
};

// Equal error rate: FRR(t) = fraction of targets with score < t, FAR(t) =
// fraction of nontargets with score >= t (ties accept), linear interpolation
// at the crossing. ci_low/ci_high are set to the point estimate.
EerResult Eer(const TrialSet& trials);

// Percentile bootstrap over whole trials: b resamples with replacement,
// CI = [2.5%, 97.5%]. Single-class resamples are redrawn and counted.
// Per-resample seeds are derived from (seed, index), so the result is
// identical for any worker count.
EerResult BootstrapCi(const TrialSet& trials, int b = 1000, std::uint64_t seed = 0,
                      int workers = 1);

double Median(std::vector<double> values);

// Percentile bootstrap CI of the median of a scalar sample.
std::pair<double, double> BootstrapMedianCi(std::span<const double> values, int b,
                                            std::uint64_t seed);

}  // namespace mcse

#endif  // MCSE_METRICS_H_
