// src/pipeline.cc

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

#include "mcse/pipeline.h"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <set>

#include "mcse/io_util.h"
#include "mcse/metrics.h"
#include "mcse/parallel.h"
#include "mcse/wav_io.h"

namespace fs = std::filesystem;

namespace mcse {

namespace {

void RejectUnknownKeys(const nlohmann::json& j, const std::set<std::string>& known,
                       const std::string& where) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (known.find(it.key()) == known.end()) {
      throw Error("config: unknown key \"" + it.key() + "\" in " + where);
    }
  }
}

ReferenceSignal ReferenceFromString(const std::string& s, const std::string& where) {
  if (s == "reverberant") return ReferenceSignal::kReverberant;
  if (s == "dry") return ReferenceSignal::kDry;
  throw Error("config: " + where + " must be \"reverberant\" or \"dry\"");
}

std::string ToString(ReferenceSignal r) {
  return r == ReferenceSignal::kReverberant ? "reverberant" : "dry";
}

}  // namespace

ChainConfig ChainConfigFromJson(const nlohmann::json& j) {
  ChainConfig cfg;
  RejectUnknownKeys(j,
                    {"mask_source", "beamformer", "wpe", "order", "stft", "mask_epsilon",
                     "oracle_target", "report_reference"},
                    "chain config");
  if (j.contains("mask_source")) {
    const std::string s = j.at("mask_source").get<std::string>();
    if (s == "oracle") {
      cfg.mask_source = MaskSource::kOracle;
    } else if (s == "file") {
      cfg.mask_source = MaskSource::kFile;
    } else {
      throw Error("config: mask_source must be \"oracle\" or \"file\"");
    }
  }
  if (j.contains("beamformer")) {
    const nlohmann::json& b = j.at("beamformer");
    RejectUnknownKeys(b, {"mu", "rank1", "reference_channel", "diagonal_loading"},
                      "beamformer");
    cfg.beamformer.mu = b.value("mu", cfg.beamformer.mu);
    cfg.beamformer.rank1 = b.value("rank1", cfg.beamformer.rank1);
    cfg.beamformer.reference_channel =
        b.value("reference_channel", cfg.beamformer.reference_channel);
    cfg.beamformer.diagonal_loading =
        b.value("diagonal_loading", cfg.beamformer.diagonal_loading);
  }
  if (j.contains("wpe")) {
    const nlohmann::json& w = j.at("wpe");
    RejectUnknownKeys(w, {"enabled", "taps", "delay", "iterations", "alpha", "loading"},
                      "wpe");
    cfg.wpe_enabled = w.value("enabled", cfg.wpe_enabled);
    cfg.wpe.taps = w.value("taps", cfg.wpe.taps);
    cfg.wpe.delay = w.value("delay", cfg.wpe.delay);
    cfg.wpe.iterations = w.value("iterations", cfg.wpe.iterations);
    cfg.wpe.alpha = w.value("alpha", cfg.wpe.alpha);
    cfg.wpe.loading = w.value("loading", cfg.wpe.loading);
  }
  if (j.contains("order")) {
    const std::string s = j.at("order").get<std::string>();
    if (s == "mwf_then_wpe") {
      cfg.order = ChainOrder::kMwfThenWpe;
    } else if (s == "wpe_then_mwf") {
      cfg.order = ChainOrder::kWpeThenMwf;
    } else {
      throw Error("config: order must be \"mwf_then_wpe\" or \"wpe_then_mwf\"");
    }
  }
  if (j.contains("stft")) {
    const nlohmann::json& s = j.at("stft");
    RejectUnknownKeys(s, {"window_len", "hop"}, "stft");
    cfg.stft_window = s.value("window_len", cfg.stft_window);
    cfg.stft_hop = s.value("hop", cfg.stft_hop);
  }
  cfg.mask_epsilon = j.value("mask_epsilon", cfg.mask_epsilon);
  if (j.contains("oracle_target")) {
    cfg.oracle_target =
        ReferenceFromString(j.at("oracle_target").get<std::string>(), "oracle_target");
  }
  if (j.contains("report_reference")) {
    cfg.report_reference = ReferenceFromString(
        j.at("report_reference").get<std::string>(), "report_reference");
  }
  return cfg;
}

nlohmann::json ChainConfigToJson(const ChainConfig& cfg) {
  return nlohmann::json{
      {"mask_source", cfg.mask_source == MaskSource::kOracle ? "oracle" : "file"},
      {"beamformer",
       {{"mu", cfg.beamformer.mu},
        {"rank1", cfg.beamformer.rank1},
        {"reference_channel", cfg.beamformer.reference_channel},
        {"diagonal_loading", cfg.beamformer.diagonal_loading}}},
      {"wpe",
       {{"enabled", cfg.wpe_enabled},
        {"taps", cfg.wpe.taps},
        {"delay", cfg.wpe.delay},
        {"iterations", cfg.wpe.iterations},
        {"alpha", cfg.wpe.alpha},
        {"loading", cfg.wpe.loading}}},
      {"order", cfg.order == ChainOrder::kMwfThenWpe ? "mwf_then_wpe" : "wpe_then_mwf"},
      {"stft", {{"window_len", cfg.stft_window}, {"hop", cfg.stft_hop}}},
      {"mask_epsilon", cfg.mask_epsilon},
      {"oracle_target", ToString(cfg.oracle_target)},
      {"report_reference", ToString(cfg.report_reference)}};
}

nlohmann::json ClipReportToJson(const ClipReport& report) {
  nlohmann::json stages = nlohmann::json::array();
  for (const StageReport& s : report.stages) {
    stages.push_back({{"stage", s.stage}, {"si_snr", s.si_snr}, {"sdr", s.sdr}});
  }
  return nlohmann::json{{"clip_id", report.clip_id},
                        {"has_reference", report.has_reference},
                        {"si_snr_in", report.si_snr_in},
                        {"si_snr_out", report.si_snr_out},
                        {"sdr_in", report.sdr_in},
                        {"sdr_out", report.sdr_out},
                        {"stages", stages},
                        {"mask_clamped", report.mask_clamped},
                        {"silent_bins", report.silent_bins}};
}

namespace {

// Zero-pads or truncates a single channel to the given length.
std::vector<double> AlignedChannel(const Waveform& w, std::size_t channel,
                                   std::size_t length) {
  std::vector<double> out(length, 0.0);
  const std::size_t n = std::min(length, w.length);
  const double* src = w.channel(channel);
  std::copy(src, src + n, out.begin());
  return out;
}

}  // namespace

std::pair<Waveform, ClipReport> EnhanceClip(const Waveform& mixture, const ClipAux& aux,
                                            const ChainConfig& cfg,
                                            const std::string& clip_id) {
  const std::size_t ref = cfg.beamformer.reference_channel;
  if (mixture.channels < 2) throw Error("enhance: need at least 2 channels to beamform");
  if (ref >= mixture.channels) throw Error("enhance: reference channel out of range");

  ClipReport report;
  report.clip_id = clip_id;

  auto stage_error = [](const std::string& stage, const std::exception& e) {
    return Error("stage " + stage + ": " + e.what());
  };

  // Reference signal for reporting (zero-padded to the mixture length).
  std::vector<double> ref_signal;
  if (cfg.report_reference == ReferenceSignal::kDry && aux.dry.has_value()) {
    ref_signal = AlignedChannel(*aux.dry, 0, mixture.length);
  } else if (aux.speech_image.has_value()) {
    ref_signal = AlignedChannel(*aux.speech_image, ref, mixture.length);
  }
  report.has_reference = !ref_signal.empty();

  const std::span<const double> mix_ref(mixture.channel(ref), mixture.length);
  if (report.has_reference) {
    report.si_snr_in = SiSnr(ref_signal, mix_ref);
    report.sdr_in = Sdr(ref_signal, mix_ref);
  }

  TFGrid y;
  try {
    y = Stft(mixture, cfg.stft_window, cfg.stft_hop);
  } catch (const std::exception& e) {
    throw stage_error("stft", e);
  }

  // WPE-first variant dereverberates the grid the beamformer consumes; masks
  // are always computed from the unprocessed inputs.
  if (cfg.wpe_enabled && cfg.order == ChainOrder::kWpeThenMwf) {
    try {
      y = Wpe(y, cfg.wpe);
    } catch (const std::exception& e) {
      throw stage_error("wpe", e);
    }
  }

  Mask speech_mask, noise_mask;
  try {
    if (cfg.mask_source == MaskSource::kOracle) {
      if (!aux.speech_image.has_value() || !aux.noise_image.has_value()) {
        throw Error("oracle masks need speech and noise images");
      }
      const TFGrid speech_grid = Stft(*aux.speech_image, cfg.stft_window, cfg.stft_hop);
      const TFGrid noise_grid = Stft(*aux.noise_image, cfg.stft_window, cfg.stft_hop);
      TFGrid s_hat;
      if (cfg.oracle_target == ReferenceSignal::kDry) {
        if (!aux.dry.has_value()) throw Error("dry oracle target needs the dry signal");
        Waveform dry_padded(1, aux.speech_image->length, aux.dry->sample_rate);
        const std::size_t n = std::min(aux.dry->length, dry_padded.length);
        std::copy(aux.dry->channel(0), aux.dry->channel(0) + n, dry_padded.channel(0));
        s_hat = Stft(dry_padded, cfg.stft_window, cfg.stft_hop);
      } else {
        s_hat = speech_grid.channel_slice(ref);
      }
      const TFGrid n_hat = noise_grid.channel_slice(ref);
      auto masks = MasksFromEstimates(s_hat, n_hat, cfg.mask_epsilon);
      speech_mask = std::move(masks.first);
      noise_mask = std::move(masks.second);
    } else {
      if (aux.mask_path.empty()) throw Error("mask file mode needs a mask path");
      MaskLoadResult loaded = LoadMasks(aux.mask_path, y.frames, y.bins);
      report.mask_clamped = loaded.clamped;
      speech_mask = std::move(loaded.speech);
      noise_mask = std::move(loaded.noise);
    }
  } catch (const std::exception& e) {
    throw stage_error("masks", e);
  }

  TFGrid enhanced_grid;
  try {
    const HermitianStack r_ss = EstimateCovariance(y, speech_mask);
    const HermitianStack r_nn = EstimateCovariance(y, noise_mask);
    const BeamformerWeights weights = SdwMwfWeights(r_ss, r_nn, cfg.beamformer);
    report.silent_bins = weights.silent_bins;
    enhanced_grid = ApplyWeights(y, weights);
  } catch (const std::exception& e) {
    throw stage_error("mwf", e);
  }

  auto record_stage = [&](const std::string& name, const TFGrid& grid) {
    if (!report.has_reference) return;
    const Waveform sig = InverseStft(grid, mixture.length);
    StageReport s;
    s.stage = name;
    s.si_snr = SiSnr(ref_signal, std::span<const double>(sig.channel(0), sig.length));
    s.sdr = Sdr(ref_signal, std::span<const double>(sig.channel(0), sig.length));
    report.stages.push_back(s);
  };
  record_stage("mwf", enhanced_grid);

  if (cfg.wpe_enabled && cfg.order == ChainOrder::kMwfThenWpe) {
    try {
      enhanced_grid = Wpe(enhanced_grid, cfg.wpe);
    } catch (const std::exception& e) {
      throw stage_error("wpe", e);
    }
    record_stage("wpe", enhanced_grid);
  }

  Waveform enhanced;
  try {
    enhanced = InverseStft(enhanced_grid, mixture.length);
  } catch (const std::exception& e) {
    throw stage_error("istft", e);
  }

  if (report.has_reference) {
    const std::span<const double> out(enhanced.channel(0), enhanced.length);
    report.si_snr_out = SiSnr(ref_signal, out);
    report.sdr_out = Sdr(ref_signal, out);
  }
  return {std::move(enhanced), std::move(report)};
}

CorpusEnhanceResult EnhanceCorpus(const std::string& corpus_dir, const std::string& out_dir,
                                  const ChainConfig& cfg, bool force, int workers,
                                  std::uint64_t seed) {
  std::vector<fs::path> clip_dirs;
  if (fs::exists(corpus_dir)) {
    for (const auto& entry : fs::directory_iterator(corpus_dir)) {
      if (entry.is_directory() && fs::exists(entry.path() / "record.json")) {
        clip_dirs.push_back(entry.path());
      }
    }
  }
  std::sort(clip_dirs.begin(), clip_dirs.end());
  fs::create_directories(out_dir);

  CorpusEnhanceResult result;
  std::vector<std::string> item_errors(clip_dirs.size());
  std::vector<int> item_skipped(clip_dirs.size(), 0);

  ParallelFor(clip_dirs.size(), workers, [&](std::size_t i) {
    const fs::path& clip_dir = clip_dirs[i];
    const std::string clip_id = clip_dir.filename().string();
    const fs::path out_wav = fs::path(out_dir) / (clip_id + ".wav");
    const fs::path out_report = fs::path(out_dir) / (clip_id + ".json");
    try {
      if (!force && fs::exists(out_wav) && fs::exists(out_report)) {
        item_skipped[i] = 1;
        return;
      }
      const nlohmann::json record =
          nlohmann::json::parse(ReadFileToString((clip_dir / "record.json").string()));
      const Waveform mixture =
          ReadWav((clip_dir / record.value("mixture", "mixture.wav")).string());
      ClipAux aux;
      if (record.contains("speech_image")) {
        aux.speech_image =
            ReadWav((clip_dir / record["speech_image"].get<std::string>()).string());
      }
      if (record.contains("noise_image")) {
        aux.noise_image =
            ReadWav((clip_dir / record["noise_image"].get<std::string>()).string());
      }
      if (record.contains("masks")) {
        aux.mask_path = (clip_dir / record["masks"].get<std::string>()).string();
      }
      if (record.contains("spec") && record["spec"].contains("speech_path")) {
        const std::string dry_path = record["spec"]["speech_path"].get<std::string>();
        if (cfg.report_reference == ReferenceSignal::kDry ||
            cfg.oracle_target == ReferenceSignal::kDry) {
          aux.dry = ReadWav(dry_path);
        }
      }

      auto [enhanced, report] = EnhanceClip(mixture, aux, cfg, clip_id);
      WriteWav(enhanced, out_wav.string());
      AtomicWriteFile(out_report.string(), ClipReportToJson(report).dump(2) + "\n");
    } catch (const std::exception& e) {
      item_errors[i] = clip_id + ": " + e.what();
    }
  });

  // Aggregate from the per-clip reports on disk so resumed runs see the full
  // corpus, not just the clips processed in this invocation.
  std::vector<double> si_in, si_out, sdr_in, sdr_out, delta;
  for (std::size_t i = 0; i < clip_dirs.size(); ++i) {
    if (!item_errors[i].empty()) {
      ++result.failed;
      result.errors.push_back(item_errors[i]);
      continue;
    }
    result.processed += item_skipped[i] ? 0 : 1;
    result.skipped += item_skipped[i];
    const fs::path report_path =
        fs::path(out_dir) / (clip_dirs[i].filename().string() + ".json");
    const nlohmann::json r = nlohmann::json::parse(ReadFileToString(report_path.string()));
    if (!r.value("has_reference", false)) continue;
    si_in.push_back(r["si_snr_in"].get<double>());
    si_out.push_back(r["si_snr_out"].get<double>());
    sdr_in.push_back(r["sdr_in"].get<double>());
    sdr_out.push_back(r["sdr_out"].get<double>());
    delta.push_back(si_out.back() - si_in.back());
  }

  nlohmann::json agg{{"clips", si_in.size()},
                     {"failed", result.failed}};
  if (!si_in.empty()) {
    auto mean = [](const std::vector<double>& v) {
      double s = 0.0;
      for (double x : v) s += x;
      return s / static_cast<double>(v.size());
    };
    const auto [ci_low, ci_high] = BootstrapMedianCi(delta, 1000, seed);
    agg["si_snr_in"] = {{"median", Median(si_in)}, {"mean", mean(si_in)}};
    agg["si_snr_out"] = {{"median", Median(si_out)}, {"mean", mean(si_out)}};
    agg["sdr_in"] = {{"median", Median(sdr_in)}, {"mean", mean(sdr_in)}};
    agg["sdr_out"] = {{"median", Median(sdr_out)}, {"mean", mean(sdr_out)}};
    agg["delta_si_snr"] = {{"median", Median(delta)},
                           {"mean", mean(delta)},
                           {"ci_low", ci_low},
                           {"ci_high", ci_high},
                           {"bootstrap_b", 1000},
                           {"seed", seed}};
  }
  result.aggregate = agg;
  AtomicWriteFile((fs::path(out_dir) / "aggregate.json").string(), agg.dump(2) + "\n");
  return result;
}

}  // namespace mcse
