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


#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>

#include <json.hpp>

#include "lpformant/eval.h"
#include "lpformant/track.h"
#include "lpformant/wav.h"

using namespace lpformant;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("lpformant_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string operator/(const std::string &name) const { return (path / name).string(); }
};

int Run(const std::string &args, const std::string &stderr_file = "/dev/null") {
  std::string cmd = std::string(LPFORMANT_CLI) + " " + args + " >/dev/null 2>" + stderr_file;
  int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string Slurp(const std::string &path) {
  std::ifstream is(path, std::ios::binary);
  std::stringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

void Spit(const std::string &path, const std::string &text) {
  std::ofstream os(path, std::ios::binary);
  os << text;
}

const EvalCell &Pooled(const std::string &report_csv) {
  static EvalCell cell;
  std::istringstream is(Slurp(report_csv));
  std::string line;
  std::getline(is, line);
  cell = {};
  while (std::getline(is, line)) {
    std::stringstream ss(line);
    std::string cat, formant, fdr, fee, mad, frames;
    std::getline(ss, cat, ',');
    std::getline(ss, formant, ',');
    std::getline(ss, fdr, ',');
    std::getline(ss, fee, ',');
    std::getline(ss, mad, ',');
    std::getline(ss, frames, ',');
    if (cell.category.empty()) cell.category = cat;
    if (cat != cell.category) break;
    int i = formant[1] - '1';
    cell.formants[i] = {std::stod(fdr), std::stod(fee), std::stod(mad)};
    cell.frames = std::stoul(frames);
  }
  return cell;
}

}  // namespace

TEST_CASE("synth, estimate, eval through files") {
  TempDir dir;
  REQUIRE(Run("synth --seed 4 --out " + (dir / "a.wav") + " --truth " + (dir / "t.csv")) == 0);
  REQUIRE(Run("estimate " + (dir / "a.wav") + " --out " + (dir / "e.csv")) == 0);
  REQUIRE(Run("eval " + (dir / "t.csv") + " " + (dir / "e.csv") + " --out " + (dir / "r.csv")) == 0);
  const auto &cell = Pooled(dir / "r.csv");
  CHECK(cell.category == "all");
  CHECK(cell.formants[0].fee_hz < 80.0);

  auto meta = nlohmann::json::parse(Slurp((dir / "e.csv") + ".meta.json"));
  CHECK(meta["subcommand"] == "estimate");
  CHECK(meta["analysis"]["order"] == 13);
  CHECK(meta["analysis"]["frame_ms"] == 25.0);
  CHECK(meta["analysis"]["preemphasis"] == 0.97);
  CHECK(meta["analysis"]["peak_width_hz"] == 100.0);
  auto eval_meta = nlohmann::json::parse(Slurp((dir / "r.csv") + ".meta.json"));
  CHECK(eval_meta["tau_r"] == 0.30);
  CHECK(eval_meta["tau_a"] == 300.0);
}

TEST_CASE("silence gives only invalid frames") {
  TempDir dir;
  WriteWavFile(SignalBuffer{std::vector<double>(8000, 0.0), 8000}, dir / "s.wav");
  REQUIRE(Run("estimate " + (dir / "s.wav") + " --out " + (dir / "s.csv")) == 0);
  auto t = ReadTrackCsvFile(dir / "s.csv");
  REQUIRE(t.size() == 98);
  for (bool v : t.valid) CHECK_FALSE(v);
}

TEST_CASE("wrong sample rate is rejected by name") {
  TempDir dir;
  WriteWavFile(SignalBuffer{std::vector<double>(1600, 0.1), 16000}, dir / "w.wav");
  CHECK(Run("estimate " + (dir / "w.wav") + " --out " + (dir / "x.csv"), dir / "err.txt") != 0);
  CHECK(Slurp(dir / "err.txt").find("16000") != std::string::npos);
}

TEST_CASE("refine: own peaks are kept, mismatched grids fail") {
  TempDir dir;
  REQUIRE(Run("synth --seed 9 --out " + (dir / "a.wav") + " --truth " + (dir / "t.csv")) == 0);
  REQUIRE(Run("estimate " + (dir / "a.wav") + " --out " + (dir / "e.csv")) == 0);
  REQUIRE(Run("refine " + (dir / "a.wav") + " " + (dir / "e.csv") + " --out " + (dir / "r.csv")) == 0);
  CHECK(Slurp(dir / "r.csv") == Slurp(dir / "e.csv"));

  Spit(dir / "short.csv", "time_s,f1_hz,f2_hz,f3_hz\n0.0125,500,1500,2500\n0.0225,500,1500,2500\n");
  CHECK(Run("refine " + (dir / "a.wav") + " " + (dir / "short.csv") + " --out " + (dir / "x.csv"),
            dir / "err.txt") != 0);
  CHECK(Slurp(dir / "err.txt").find("2 frames") != std::string::npos);
}

TEST_CASE("eval: identical tracks and the worked example") {
  TempDir dir;
  Spit(dir / "ref.csv", "time_s,f1_hz,f2_hz,f3_hz\n0.0125,1000,1500,2500\n0.0225,1000,1500,2500\n");
  Spit(dir / "hyp.csv", "time_s,f1_hz,f2_hz,f3_hz\n0.0125,1290,1500,2500\n0.0225,1400,1500,2500\n");
  REQUIRE(Run("eval " + (dir / "ref.csv") + " " + (dir / "ref.csv") + " --out " + (dir / "same.csv")) == 0);
  const auto &same = Pooled(dir / "same.csv");
  for (const auto &s : same.formants) {
    CHECK(s.fdr_percent == 100.0);
    CHECK(s.fee_hz == 0.0);
  }
  REQUIRE(Run("eval " + (dir / "ref.csv") + " " + (dir / "hyp.csv") + " --out " + (dir / "two.csv")) == 0);
  const auto &two = Pooled(dir / "two.csv");
  CHECK(two.formants[0].fdr_percent == 50.0);
  CHECK(two.formants[0].fee_hz == 345.0);
  CHECK(two.formants[0].mad_percent == 34.5);
  CHECK(two.frames == 2);
}

TEST_CASE("eval: category restriction counts labelled frames") {
  TempDir dir;
  std::string rows = "time_s,f1_hz,f2_hz,f3_hz\n";
  for (int k = 0; k < 50; ++k) rows += std::to_string(0.0125 + 0.01 * k) + ",500,1500,2500\n";
  Spit(dir / "ref.csv", rows);
  // Frame centers 12.5 ms + 10 ms k, labels at 16 kHz (200 + 160 k).
  // iy covers [1000, 3000): k = 5..17 -> 13 frames; ay covers [5000, 6000):
  // k = 30..36 -> 7 frames.
  Spit(dir / "x.phn", "0 1000 h#\n1000 3000 iy\n3000 5000 s\n5000 6000 ay\n6000 8200 h#\n");
  REQUIRE(Run("eval " + (dir / "ref.csv") + " " + (dir / "ref.csv") + " --labels " + (dir / "x.phn") +
              " --categories vowel --out " + (dir / "v.csv")) == 0);
  CHECK(Pooled(dir / "v.csv").frames == 13);
  REQUIRE(Run("eval " + (dir / "ref.csv") + " " + (dir / "ref.csv") + " --labels " + (dir / "x.phn") +
              " --categories vowel,diphthong --out " + (dir / "vd.csv")) == 0);
  CHECK(Pooled(dir / "vd.csv").frames == 20);
  CHECK(Pooled(dir / "vd.csv").category == "vowel+diphthong");
  CHECK(Run("eval " + (dir / "ref.csv") + " " + (dir / "ref.csv") + " --categories vowel --out " +
            (dir / "bad.csv")) != 0);
}

TEST_CASE("add-noise hits the requested SNR") {
  TempDir dir;
  REQUIRE(Run("synth --seed 2 --out " + (dir / "a.wav") + " --truth " + (dir / "t.csv")) == 0);
  REQUIRE(Run("add-noise " + (dir / "a.wav") + " --snr-db 10 --seed 3 --out " + (dir / "n.wav")) == 0);
  REQUIRE(Run("add-noise " + (dir / "a.wav") + " --snr-db 10 --noise pseudo-babble --seed 3 --out " +
              (dir / "b.wav")) == 0);
  auto clean = ReadWavFile(dir / "a.wav");
  for (const char *name : {"n.wav", "b.wav"}) {
    auto noisy = ReadWavFile(dir / name);
    REQUIRE(noisy.samples.size() == clean.samples.size());
    double pc = 0, pn = 0;
    for (std::size_t i = 0; i < clean.samples.size(); ++i) {
      pc += clean.samples[i] * clean.samples[i];
      double d = noisy.samples[i] - clean.samples[i];
      pn += d * d;
    }
    // 16-bit storage adds a little quantization noise.
    CHECK(10 * std::log10(pc / pn) == doctest::Approx(10.0).epsilon(0.01));
  }
  CHECK(Run("add-noise " + (dir / "a.wav") + " --out " + (dir / "m.wav")) != 0);
}
