// Copyright 2026 The lpformant Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


// lpformant: formant estimation, refinement and evaluation from the shell.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "lpformant/analysis.h"
#include "lpformant/corpus.h"
#include "lpformant/eval.h"
#include "lpformant/phones.h"
#include "lpformant/qcp.h"
#include "lpformant/refine.h"
#include "lpformant/track.h"
#include "lpformant/wav.h"

namespace {

using json = nlohmann::ordered_json;
using namespace lpformant;

constexpr const char *kVersion = "0.1.0";

struct AnalysisFlags {
  std::string method = "lp-cov";
  int order = 13;
  double frame_ms = 25.0;
  double shift_ms = 10.0;
  double preemph = 0.97;
  std::string gci_file;
  int threads = 1;
  std::optional<double> align_offset_ms;
  double qcp_pq = 0.05;
  double qcp_dq = 0.7;
  double qcp_ramp_ms = 0.7;
  double qcp_dmin = 1e-5;
};

void AddAnalysisFlags(CLI::App *cmd, AnalysisFlags &f) {
  cmd->add_option("--method", f.method, "lp-cov or qcp-fb")
      ->check(CLI::IsMember({"lp-cov", "qcp-fb"}))
      ->capture_default_str();
  cmd->add_option("--order", f.order, "LP order")->capture_default_str();
  cmd->add_option("--frame-ms", f.frame_ms, "frame length")->capture_default_str();
  cmd->add_option("--shift-ms", f.shift_ms, "frame shift")->capture_default_str();
  cmd->add_option("--preemph", f.preemph, "pre-emphasis coefficient")->capture_default_str();
  cmd->add_option("--gci-file", f.gci_file, "GCI sample indices, one per line");
  cmd->add_option("--threads", f.threads, "worker threads")->capture_default_str();
  cmd->add_option("--align-offset-ms", f.align_offset_ms,
                  "timestamp of frame 0 (default: its center)");
  cmd->add_option("--qcp-pq", f.qcp_pq, "QCP position quotient")->capture_default_str();
  cmd->add_option("--qcp-dq", f.qcp_dq, "QCP duration quotient")->capture_default_str();
  cmd->add_option("--qcp-ramp-ms", f.qcp_ramp_ms, "QCP ramp length")->capture_default_str();
  cmd->add_option("--qcp-dmin", f.qcp_dmin, "QCP minimum weight")->capture_default_str();
}

AnalysisOptions ToOptions(const AnalysisFlags &f) {
  AnalysisOptions o;
  o.method = ParseLpMethod(f.method);
  o.order = f.order;
  o.frame.length_ms = f.frame_ms;
  o.frame.shift_ms = f.shift_ms;
  o.preemphasis = f.preemph;
  o.align_offset_ms = f.align_offset_ms;
  o.threads = f.threads;
  o.qcp.position_quotient = f.qcp_pq;
  o.qcp.duration_quotient = f.qcp_dq;
  o.qcp.ramp_ms = f.qcp_ramp_ms;
  o.qcp.d_min = f.qcp_dmin;
  if (o.order < 1) throw std::invalid_argument("--order must be at least 1");
  if (o.threads < 1) throw std::invalid_argument("--threads must be at least 1");
  o.frame.Validate();
  o.qcp.Validate();
  return o;
}

// Threads are left out on purpose: outputs do not depend on them.
json AnalysisJson(const AnalysisOptions &o, const std::string &gci_file) {
  json j;
  j["method"] = LpMethodName(o.method);
  j["order"] = o.order;
  j["frame_ms"] = o.frame.length_ms;
  j["shift_ms"] = o.frame.shift_ms;
  j["preemphasis"] = o.preemphasis;
  j["grid_size"] = o.grid_size;
  j["peak_width_hz"] = o.peaks.width_hz;
  j["peak_edge_guard_hz"] = o.peaks.edge_guard_hz;
  j["align_offset_ms"] = o.align_offset_ms ? json(*o.align_offset_ms) : json(nullptr);
  if (o.method == LpMethod::kQcpFb) {
    j["qcp"] = {{"position_quotient", o.qcp.position_quotient},
                {"duration_quotient", o.qcp.duration_quotient},
                {"ramp_ms", o.qcp.ramp_ms},
                {"d_min", o.qcp.d_min}};
    j["gci_source"] = gci_file.empty() ? "zff" : gci_file;
  }
  return j;
}

void WriteMeta(const std::string &out, const json &meta) {
  std::ofstream os(out + ".meta.json", std::ios::binary);
  if (!os) throw std::runtime_error("cannot write " + out + ".meta.json");
  os << meta.dump(2) << '\n';
  if (!os) throw std::runtime_error("failed writing " + out + ".meta.json");
}

json MetaHeader(const std::string &subcommand) {
  json j;
  j["tool"] = "lpformant";
  j["version"] = kVersion;
  j["subcommand"] = subcommand;
  return j;
}

std::optional<GciList> LoadGcis(const AnalysisFlags &f, std::size_t num_samples) {
  if (f.gci_file.empty()) return std::nullopt;
  GciList g = ReadGciFile(f.gci_file);
  g.Validate(num_samples);
  return g;
}

int RunEstimate(const std::string &audio_path, const std::string &out,
                const AnalysisFlags &flags) {
  AnalysisOptions opts = ToOptions(flags);
  SignalBuffer audio = ReadWavFile(audio_path);
  RequireAnalysisRate(audio);
  auto gcis = LoadGcis(flags, audio.samples.size());
  PeakTrack peaks = AnalyzeUtterance(audio, opts, gcis ? &*gcis : nullptr);
  FormantTrack track = TrackFromPeaks(peaks);
  WriteTrackCsvFile(track, out);

  std::size_t invalid = 0;
  for (bool v : track.valid) invalid += v ? 0 : 1;
  json meta = MetaHeader("estimate");
  meta["inputs"] = {{"audio", audio_path}};
  meta["analysis"] = AnalysisJson(opts, flags.gci_file);
  meta["frames"] = track.size();
  meta["invalid_frames"] = invalid;
  WriteMeta(out, meta);
  return 0;
}

int RunRefine(const std::string &audio_path, const std::string &pred_path,
              const std::string &out, const AnalysisFlags &flags) {
  AnalysisOptions opts = ToOptions(flags);
  SignalBuffer audio = ReadWavFile(audio_path);
  RequireAnalysisRate(audio);
  FormantTrack predicted = ReadTrackCsvFile(pred_path);
  predicted.Validate(audio.sample_rate / 2.0);
  auto gcis = LoadGcis(flags, audio.samples.size());
  RefineResult r = RefineTrack(predicted, audio, opts, gcis ? &*gcis : nullptr);
  WriteTrackCsvFile(r.track, out);

  json meta = MetaHeader("refine");
  meta["inputs"] = {{"audio", audio_path}, {"predicted", pred_path}};
  meta["analysis"] = AnalysisJson(opts, flags.gci_file);
  meta["frames"] = r.track.size();
  meta["collisions"] = r.collisions;
  meta["order_violations"] = r.order_violations;
  WriteMeta(out, meta);
  if (r.collisions > 0 || r.order_violations > 0)
    std::cerr << "note: " << r.collisions << " frames with two formants on one peak, "
              << r.order_violations << " frames not ascending\n";
  return 0;
}

struct EvalFlags {
  double tau_r = 0.30;
  double tau_a = 300.0;
  std::vector<std::string> categories;
  std::string labels;
  double label_rate = 16000.0;
  std::string category_map;
};

int RunEval(const std::string &ref_path, const std::string &hyp_path,
            const std::string &out, const EvalFlags &flags) {
  EvalConfig cfg;
  cfg.tau_r = flags.tau_r;
  cfg.tau_a = flags.tau_a;
  cfg.categories = flags.categories;
  cfg.Validate();
  FormantTrack ref = ReadTrackCsvFile(ref_path);
  FormantTrack hyp = ReadTrackCsvFile(hyp_path);

  FrameCategories frame_cats;
  if (!flags.labels.empty()) {
    if (!(flags.label_rate > 0.0)) throw std::invalid_argument("--label-rate must be positive");
    CategoryMap map = flags.category_map.empty() ? CategoryMap::TimitDefault()
                                                 : CategoryMap::FromFile(flags.category_map);
    frame_cats = MapPhonesToCategories(ReadPhoneLabelFile(flags.labels), map, ref.times,
                                       flags.label_rate);
    if (frame_cats.unknown_labels > 0)
      std::cerr << "note: " << frame_cats.unknown_labels
                << " frames carry labels missing from the category map\n";
  }
  EvalReport report = Evaluate(ref, hyp, frame_cats.categories, cfg);

  std::ostringstream csv;
  WriteReportCsv(report, csv);
  {
    std::ofstream os(out, std::ios::binary);
    if (!os) throw std::runtime_error("cannot write " + out);
    os << csv.str();
    if (!os) throw std::runtime_error("failed writing " + out);
  }
  WriteReportTable(report, std::cout);

  json meta = MetaHeader("eval");
  meta["inputs"] = {{"reference", ref_path}, {"hypothesis", hyp_path}};
  if (!flags.labels.empty()) {
    meta["inputs"]["labels"] = flags.labels;
    meta["label_rate"] = flags.label_rate;
    meta["category_map"] = flags.category_map.empty() ? "builtin-timit" : flags.category_map;
    meta["unknown_label_frames"] = frame_cats.unknown_labels;
  }
  meta["tau_r"] = cfg.tau_r;
  meta["tau_a"] = cfg.tau_a;
  meta["categories"] = cfg.categories;
  meta["absent"] = report.absent;
  meta["missing_hypotheses"] = report.missing_hypotheses;
  WriteMeta(out, meta);
  return 0;
}

struct NoiseFlags {
  double snr_db = std::numeric_limits<double>::quiet_NaN();
  std::string noise = "white";
  std::uint64_t seed = 0;
};

int RunAddNoise(const std::string &in, const std::string &out, const NoiseFlags &flags) {
  if (std::isnan(flags.snr_db)) throw std::invalid_argument("--snr-db is required");
  SignalBuffer clean = ReadWavFile(in);
  NoiseSpec spec;
  spec.snr_db = flags.snr_db;
  spec.seed = flags.seed;
  SignalBuffer noisy;
  if (flags.noise == "white") {
    spec.kind = NoiseKind::kWhite;
    noisy = MixNoise(clean, spec);
  } else {
    spec.kind = NoiseKind::kFile;
    SignalBuffer source =
        flags.noise == "pseudo-babble"
            ? MakePseudoBabble(clean.samples.size(), flags.seed, clean.sample_rate)
            : ReadWavFile(flags.noise);
    if (source.sample_rate != clean.sample_rate)
      throw std::invalid_argument("noise file is " + std::to_string(source.sample_rate) +
                                  " Hz but the speech is " +
                                  std::to_string(clean.sample_rate) + " Hz");
    noisy = MixNoise(clean, spec, &source);
  }
  WriteWavFile(noisy, out);

  json meta = MetaHeader("add-noise");
  meta["inputs"] = {{"audio", in}};
  meta["noise"] = flags.noise;
  meta["snr_db"] = flags.snr_db;
  meta["seed"] = flags.seed;
  WriteMeta(out, meta);
  return 0;
}

int RunSynth(const std::string &out, const std::string &truth_out,
             const std::string &gci_out, std::uint64_t seed) {
  Utterance u = MakeSyntheticUtterance(seed);
  WriteWavFile(u.audio, out);
  WriteTrackCsvFile(u.truth, truth_out);
  if (!gci_out.empty()) WriteGciFile(u.pulses, gci_out);

  json meta = MetaHeader("synth");
  meta["seed"] = seed;
  meta["sample_rate"] = u.audio.sample_rate;
  meta["samples"] = u.audio.samples.size();
  meta["truth"] = truth_out;
  meta["gci"] = gci_out.empty() ? json(nullptr) : json(gci_out);
  WriteMeta(out, meta);
  return 0;
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"LP-based formant estimation, refinement and evaluation"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  AnalysisFlags analysis;
  std::string audio, predicted, out, ref, hyp, truth_out, gci_out;

  auto *estimate = app.add_subcommand("estimate", "lowest three LP peaks per frame");
  estimate->add_option("audio", audio, "8 kHz mono 16-bit WAV")->required()->check(CLI::ExistingFile);
  estimate->add_option("--out", out, "output track CSV")->required();
  AddAnalysisFlags(estimate, analysis);

  auto *refine = app.add_subcommand("refine", "snap predicted formants to LP peaks");
  refine->add_option("audio", audio, "8 kHz mono 16-bit WAV")->required()->check(CLI::ExistingFile);
  refine->add_option("predicted", predicted, "predicted track CSV")->required()->check(CLI::ExistingFile);
  refine->add_option("--out", out, "output track CSV")->required();
  AddAnalysisFlags(refine, analysis);

  EvalFlags eval_flags;
  auto *eval = app.add_subcommand("eval", "FDR, FEE and MAD of a track against a reference");
  eval->add_option("reference", ref, "reference track CSV")->required()->check(CLI::ExistingFile);
  eval->add_option("hypothesis", hyp, "hypothesis track CSV")->required()->check(CLI::ExistingFile);
  eval->add_option("--labels", eval_flags.labels, "phone label file")->check(CLI::ExistingFile);
  eval->add_option("--label-rate", eval_flags.label_rate, "sample rate of label times")
      ->capture_default_str();
  eval->add_option("--category-map", eval_flags.category_map, "label to category table")
      ->check(CLI::ExistingFile);
  eval->add_option("--categories", eval_flags.categories, "categories to pool")->delimiter(',');
  eval->add_option("--tau-r", eval_flags.tau_r, "relative threshold")->capture_default_str();
  eval->add_option("--tau-a", eval_flags.tau_a, "absolute threshold, Hz")->capture_default_str();
  eval->add_option("--out", out, "output report CSV")->required();

  NoiseFlags noise_flags;
  auto *add_noise = app.add_subcommand("add-noise", "mix noise at a target SNR");
  add_noise->add_option("audio", audio, "input WAV")->required()->check(CLI::ExistingFile);
  add_noise->add_option("--snr-db", noise_flags.snr_db, "target SNR")->required();
  add_noise->add_option("--noise", noise_flags.noise, "white, pseudo-babble or a WAV path")
      ->capture_default_str();
  add_noise->add_option("--seed", noise_flags.seed, "noise seed")->capture_default_str();
  add_noise->add_option("--out", out, "output WAV")->required();

  std::uint64_t synth_seed = 0;
  auto *synth = app.add_subcommand("synth", "synthetic utterance with ground truth");
  synth->add_option("--seed", synth_seed, "corpus seed")->capture_default_str();
  synth->add_option("--out", out, "output WAV")->required();
  synth->add_option("--truth", truth_out, "ground-truth track CSV")->required();
  synth->add_option("--gci-out", gci_out, "excitation instants");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*estimate) return RunEstimate(audio, out, analysis);
    if (*refine) return RunRefine(audio, predicted, out, analysis);
    if (*eval) return RunEval(ref, hyp, out, eval_flags);
    if (*add_noise) return RunAddNoise(audio, out, noise_flags);
    if (*synth) return RunSynth(out, truth_out, gci_out, synth_seed);
  } catch (const std::exception &e) {
    std::cerr << "lpformant: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
