// include/mcse/pipeline.h

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

#ifndef MCSE_PIPELINE_H_
#define MCSE_PIPELINE_H_

#include <optional>
#include <string>

#include <json.hpp>

#include "mcse/beamforming.h"
#include "mcse/masking.h"
#include "mcse/stft.h"
#include "mcse/types.h"
#include "mcse/wpe.h"

namespace mcse {

enum class MaskSource { kOracle, kFile };
enum class ChainOrder { kMwfThenWpe, kWpeThenMwf };
enum class ReferenceSignal { kReverberant, kDry };

// Full enhancement chain configuration: masks -> covariances -> rank-1
// SDW-MWF -> WPE (order switchable). Parsed from JSON with unknown keys
// rejected.
struct ChainConfig {
  MaskSource mask_source = MaskSource::kOracle;
  BeamformerConfig beamformer;
  bool wpe_enabled = true;
  WpeConfig wpe;
  ChainOrder order = ChainOrder::kMwfThenWpe;
  int stft_window = kDefaultWindowLen;
  int stft_hop = kDefaultHop;
  double mask_epsilon = kMaskEpsilon;
  // Which speech signal oracle masks aim at, and which one reports score
  // against. Reverberant = the speech image at the reference channel.
  ReferenceSignal oracle_target = ReferenceSignal::kReverberant;
  ReferenceSignal report_reference = ReferenceSignal::kReverberant;
};

ChainConfig ChainConfigFromJson(const nlohmann::json& j);
nlohmann::json ChainConfigToJson(const ChainConfig& cfg);

// Ground truth / external inputs for one clip. Oracle masks need the speech
// and noise images; mask_path is required for MaskSource::kFile.
struct ClipAux {
  std::optional<Waveform> speech_image;
  std::optional<Waveform> noise_image;
  std::optional<Waveform> dry;
  std::string mask_path;
};

struct StageReport {
  std::string stage;
  double si_snr = 0.0;
  double sdr = 0.0;
};

struct ClipReport {
  std::string clip_id;
  bool has_reference = false;
  double si_snr_in = 0.0;
  double si_snr_out = 0.0;
  double sdr_in = 0.0;
  double sdr_out = 0.0;
  std::vector<StageReport> stages;
  std::size_t mask_clamped = 0;
  std::size_t silent_bins = 0;
};

nlohmann::json ClipReportToJson(const ClipReport& report);

// Runs the chain on one clip and returns the single-channel enhanced signal
// plus a report. Stage failures are rethrown with the stage name prefixed.
std::pair<Waveform, ClipReport> EnhanceClip(const Waveform& mixture, const ClipAux& aux,
                                            const ChainConfig& cfg,
                                            const std::string& clip_id = "clip");

struct CorpusEnhanceResult {
  std::size_t processed = 0;
  std::size_t skipped = 0;  // outputs already present (resume)
  std::size_t failed = 0;
  std::vector<std::string> errors;
  nlohmann::json aggregate;
};

// Enhances every clip of a corpus directory produced by BuildCorpus. Existing
// outputs are skipped unless force is set; per-clip reports and an aggregate
// summary (median/mean SI-SNR and SDR, bootstrap CI of the median improvement)
// are written to out_dir.
CorpusEnhanceResult EnhanceCorpus(const std::string& corpus_dir, const std::string& out_dir,
                                  const ChainConfig& cfg, bool force, int workers,
                                  std::uint64_t seed);

}  // namespace mcse

#endif  // MCSE_PIPELINE_H_
