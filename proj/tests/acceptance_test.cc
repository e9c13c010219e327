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


// Acceptance checks. One PASS/FAIL line per criterion; exit status is
// nonzero if any criterion fails.

#include <sys/wait.h>
#include <unistd.h>

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "lpformant/analysis.h"
#include "lpformant/corpus.h"
#include "lpformant/eval.h"
#include "lpformant/lp.h"
#include "lpformant/qcp.h"
#include "lpformant/random.h"
#include "lpformant/refine.h"
#include "lpformant/spectrum.h"
#include "lpformant/track.h"

using namespace lpformant;
namespace fs = std::filesystem;

namespace {

constexpr std::uint64_t kCorpusSeed = 42;
constexpr std::size_t kCorpusSize = 20;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::vector<double> Gaussian(Rng &rng, std::size_t n) {
  std::vector<double> v(n);
  for (double &x : v) x = rng.Gaussian();
  return v;
}

std::vector<double> SpeechLike(Rng &rng, std::size_t n) {
  auto e = Gaussian(rng, n + 64);
  std::vector<double> x(e.size(), 0.0);
  const double r1 = 0.97, r2 = 0.93, w1 = 0.55, w2 = 1.45;
  for (std::size_t i = 4; i < x.size(); ++i) {
    double a1 = -2 * r1 * std::cos(w1), a2 = r1 * r1, b1 = -2 * r2 * std::cos(w2), b2 = r2 * r2;
    // (1 + a1 z^-1 + a2 z^-2)(1 + b1 z^-1 + b2 z^-2)
    double c1 = a1 + b1, c2 = a2 + b2 + a1 * b1, c3 = a1 * b2 + a2 * b1, c4 = a2 * b2;
    x[i] = e[i] - c1 * x[i - 1] - c2 * x[i - 2] - c3 * x[i - 3] - c4 * x[i - 4];
  }
  return std::vector<double>(x.begin() + 64, x.end());
}

// Criterion 1 -----------------------------------------------------------------

Outcome NormalEquationOracle() {
  Rng rng(101);
  std::size_t exact = 0, close = 0, bad = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const int p = static_cast<int>(rng.UniformInt(1, 3));
    const int n = static_cast<int>(rng.UniformInt(2 * p + 1, 12));
    auto x = Gaussian(rng, n);
    std::vector<double> w(n);
    for (double &v : w) v = rng.Uniform();
    for (bool weighted : {false, true}) {
      auto ws = weighted ? w : std::vector<double>{};
      auto wt = [&](int i) { return weighted ? w[i] : 1.0; };
      auto sys = BuildFbSystem(x, p, ws);
      for (int i = 1; i <= p; ++i) {
        for (int k = 1; k <= p; ++k) {
          double f = 0.0, b = 0.0;
          for (int m = p; m < n; ++m) f += wt(m) * x[m - i] * x[m - k];
          for (int m = 0; m < n - p; ++m) b += wt(m) * x[m + i] * x[m + k];
          const double want = f + b, got = sys.at(i - 1, k - 1);
          if (k >= i) {
            got == want ? ++exact : ++bad;
          } else {
            std::fabs(got - want) <= 1e-12 * std::max(1.0, std::fabs(want)) ? ++close : ++bad;
          }
        }
        double f = 0.0, b = 0.0;
        for (int m = p; m < n; ++m) f += wt(m) * x[m - i] * x[m];
        for (int m = 0; m < n - p; ++m) b += wt(m) * x[m + i] * x[m];
        sys.rhs[i - 1] == -(f + b) ? ++exact : ++bad;
      }
    }
  }
  char buf[160];
  std::snprintf(buf, sizeof(buf), "%zu entries bitwise, %zu mirrored within 1e-12, %zu off",
                exact, close, bad);
  return {bad == 0, buf};
}

// Criterion 2 -----------------------------------------------------------------

Outcome ReductionChain() {
  Rng rng(202);
  int identical = 0, ordered = 0;
  double worst_margin = 1e300;
  for (int trial = 0; trial < 100; ++trial) {
    auto x = SpeechLike(rng, 200);
    auto ones = BuildQcpWeights(0, x.size(), GciList{}, QcpParams{}, kAnalysisRate);
    auto q = QcpFb(x, 13, ones);
    auto fb = LpFb(x, 13);
    if (q.coefficients == fb.coefficients && q.residual_energy == fb.residual_energy) ++identical;
    auto cov = LpCov(x, 13);
    const double at_cov = FbError(x, cov.coefficients);
    const double margin = at_cov - fb.residual_energy;
    worst_margin = std::min(worst_margin, margin / at_cov);
    if (fb.residual_energy <= at_cov) ++ordered;
  }
  char buf[160];
  std::snprintf(buf, sizeof(buf),
                "qcp(unit)==fb on %d/100, E_fb <= E(a_cov) on %d/100, min relative margin %.3g",
                identical, ordered, worst_margin);
  return {identical == 100 && ordered == 100, buf};
}

// Shared corpus helpers -------------------------------------------------------

struct Pooled {
  FormantTrack ref, hyp;
  void Add(const FormantTrack &truth, const FormantTrack &est) {
    for (std::size_t k = 0; k < truth.size(); ++k) {
      double t = 0.0125 + 0.01 * static_cast<double>(ref.size());
      ref.Append(t, truth.formants[k]);
      hyp.Append(t, est.formants[k]);
    }
  }
  std::array<double, 3> Fee() const {
    auto r = Evaluate(ref, hyp, {}, EvalConfig{});
    std::array<double, 3> out{};
    for (int i = 0; i < 3; ++i) out[i] = r.cells.at(0).formants[i].fee_hz;
    return out;
  }
};

FormantTrack Perturb(const FormantTrack &truth, Rng &rng) {
  FormantTrack p = truth;
  for (auto &f : p.formants)
    for (double &v : f) v += rng.Uniform(-150.0, 150.0);
  return p;
}

std::string Triple(const std::array<double, 3> &v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.1f/%.1f/%.1f", v[0], v[1], v[2]);
  return buf;
}

AnalysisOptions Options(LpMethod m) {
  AnalysisOptions o;
  o.method = m;
  return o;
}

// Criterion 3 -----------------------------------------------------------------

Outcome SyntheticRecovery() {
  auto corpus = MakeSyntheticCorpus(kCorpusSize, kCorpusSeed);
  Pooled cov, qcp;
  for (const auto &u : corpus) {
    cov.Add(u.truth, TrackFromPeaks(AnalyzeUtterance(u.audio, Options(LpMethod::kLpCov))));
    qcp.Add(u.truth, TrackFromPeaks(AnalyzeUtterance(u.audio, Options(LpMethod::kQcpFb))));
  }
  auto c = cov.Fee(), q = qcp.Fee();
  const double limit[3] = {80, 120, 150};
  bool pass = true;
  for (int i = 0; i < 3; ++i) pass = pass && c[i] < limit[i] && q[i] <= c[i];
  return {pass, "FEE LP-COV " + Triple(c) + " (limits 80/120/150), QCP-FB " + Triple(q) + " Hz"};
}

// Criterion 4 -----------------------------------------------------------------

Outcome RefinementImproves() {
  bool pass = true;
  std::string detail;
  for (std::uint64_t seed : {1, 2, 3}) {
    auto corpus = MakeSyntheticCorpus(kCorpusSize, seed);
    for (auto m : {LpMethod::kLpCov, LpMethod::kQcpFb}) {
      Rng rng(seed * 7919);
      Pooled raw, refined;
      for (const auto &u : corpus) {
        auto pred = Perturb(u.truth, rng);
        raw.Add(u.truth, pred);
        refined.Add(u.truth, RefineTrack(pred, u.audio, Options(m)).track);
      }
      auto before = raw.Fee(), after = refined.Fee();
      const double gain = 1.0 - after[0] / before[0];
      bool ok = gain >= 0.15;
      for (int i = 0; i < 3; ++i) ok = ok && after[i] < before[i];
      pass = pass && ok;
      char buf[200];
      std::snprintf(buf, sizeof(buf), "%sseed %llu %s: %s -> %s (F1 -%.0f%%)",
                    detail.empty() ? "" : "; ", static_cast<unsigned long long>(seed),
                    LpMethodName(m).c_str(), Triple(before).c_str(), Triple(after).c_str(),
                    100 * gain);
      detail += buf;
    }
  }
  return {pass, detail};
}

// Criterion 5 -----------------------------------------------------------------

Outcome NoiseRobustness() {
  auto corpus = MakeSyntheticCorpus(kCorpusSize, kCorpusSeed);
  double degradation[2];
  std::string detail;
  int idx = 0;
  for (auto m : {LpMethod::kLpCov, LpMethod::kQcpFb}) {
    Rng rng(555);
    Pooled clean, noisy;
    for (std::size_t i = 0; i < corpus.size(); ++i) {
      const auto &u = corpus[i];
      auto pred = Perturb(u.truth, rng);
      auto degraded = MixNoise(u.audio, {NoiseKind::kWhite, 5.0, 1000 + i});
      clean.Add(u.truth, RefineTrack(pred, u.audio, Options(m)).track);
      noisy.Add(u.truth, RefineTrack(pred, degraded, Options(m)).track);
    }
    const double c = clean.Fee()[0], n = noisy.Fee()[0];
    degradation[idx++] = n - c;
    char buf[160];
    std::snprintf(buf, sizeof(buf), "%s%s F1 %.1f -> %.1f Hz (%+.1f)", detail.empty() ? "" : ", ",
                  LpMethodName(m).c_str(), c, n, n - c);
    detail += buf;
  }
  return {degradation[1] <= degradation[0], detail};
}

// Criterion 6 -----------------------------------------------------------------

int RunCli(const std::string &args) {
  std::string cmd = std::string(LPFORMANT_CLI) + " " + args + " >/dev/null 2>&1";
  int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string Slurp(const fs::path &path) {
  std::ifstream is(path, std::ios::binary);
  std::stringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

fs::path Scratch(const std::string &name) {
  auto p = fs::temp_directory_path() / ("lpformant_acceptance_" + std::to_string(::getpid())) / name;
  fs::create_directories(p);
  return p;
}

Outcome MetricArithmetic() {
  FormantTrack ref, hyp;
  ref.Append(0.0125, {1000, 1500, 2500});
  ref.Append(0.0225, {1000, 1500, 2500});
  hyp.Append(0.0125, {1290, 1500, 2500});
  hyp.Append(0.0225, {1400, 1500, 2500});
  auto r = Evaluate(ref, hyp, {}, EvalConfig{});
  const auto &f1 = r.cells.at(0).formants[0];
  bool api = f1.fdr_percent == 50.0 && f1.fee_hz == 345.0 && f1.mad_percent == 34.5;

  auto dir = Scratch("metric");
  WriteTrackCsvFile(ref, (dir / "ref.csv").string());
  WriteTrackCsvFile(hyp, (dir / "hyp.csv").string());
  bool cli = RunCli("eval " + (dir / "ref.csv").string() + " " + (dir / "hyp.csv").string() +
                    " --out " + (dir / "report.csv").string()) == 0 &&
             Slurp(dir / "report.csv").find("all,F1,50,345,34.5,2\n") != std::string::npos;
  char buf[160];
  std::snprintf(buf, sizeof(buf), "API FDR1 %.6g%% FEE1 %.6g Hz MAD1 %.6g%%; CLI report %s",
                f1.fdr_percent, f1.fee_hz, f1.mad_percent, cli ? "matches" : "differs");
  return {api && cli, buf};
}

// Criterion 7 -----------------------------------------------------------------

Outcome PeakCountBound() {
  Rng rng(707);
  std::size_t worst = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    std::vector<std::complex<double>> poly = {1.0};
    auto multiply = [&](std::complex<double> root) {
      std::vector<std::complex<double>> next(poly.size() + 1, 0.0);
      for (std::size_t i = 0; i < poly.size(); ++i) {
        next[i] += poly[i];
        next[i + 1] -= root * poly[i];
      }
      poly = next;
    };
    for (int pair = 0; pair < 6; ++pair) {
      // Radii crowd toward the unit circle so sharp peaks are common.
      const double radius = 1.0 - std::pow(10.0, rng.Uniform(-3.0, 0.0));
      auto z = std::polar(radius, rng.Uniform(0.0, std::numbers::pi));
      multiply(z);
      multiply(std::conj(z));
    }
    multiply(rng.Uniform(-0.999, 0.999));
    LpModel m;
    m.order = 13;
    for (std::size_t i = 1; i < poly.size(); ++i) m.coefficients.push_back(poly[i].real());
    worst = std::max(worst, PickPeaks(AllPoleSpectrum(m, kAnalysisRate)).size());
  }
  return {worst <= 6, "max peaks over 1000 models: " + std::to_string(worst)};
}

// Criterion 8 -----------------------------------------------------------------

Outcome Determinism() {
  // Library: refine twice == refine once.
  auto corpus = MakeSyntheticCorpus(5, 808);
  Rng rng(8);
  int idempotent = 0, total = 0;
  for (const auto &u : corpus)
    for (auto m : {LpMethod::kLpCov, LpMethod::kQcpFb}) {
      auto once = RefineTrack(Perturb(u.truth, rng), u.audio, Options(m)).track;
      auto twice = RefineTrack(once, u.audio, Options(m)).track;
      idempotent += once.formants == twice.formants && once.valid == twice.valid;
      ++total;
    }

  // CLI: every subcommand repeated in its own directory with the same file
  // names; analysis alternates between 1 and 4 threads.
  auto root = Scratch("determinism");
  auto in = [&](int rep, const std::string &n) {
    fs::create_directories(root / std::to_string(rep));
    return (root / std::to_string(rep) / n).string();
  };
  const std::string src = in(0, "a.wav"), truth = in(0, "t.csv"), noisy = in(0, "n.wav");
  std::vector<std::pair<std::string, std::vector<std::string>>> jobs = {
      {"synth --seed 77 --out %a.wav --truth %t.csv --gci-out %g.txt",
       {"a.wav", "t.csv", "g.txt", "a.wav.meta.json"}},
      {"add-noise " + src + " --snr-db 10 --noise pseudo-babble --seed 5 --out %n.wav",
       {"n.wav", "n.wav.meta.json"}},
      {"estimate " + noisy + " --method qcp-fb --threads # --out %e.csv",
       {"e.csv", "e.csv.meta.json"}},
      {"refine " + noisy + " " + truth + " --method qcp-fb --threads # --out %r.csv",
       {"r.csv", "r.csv.meta.json"}},
      {"eval " + truth + " " + in(0, "r.csv") + " --out %v.csv", {"v.csv", "v.csv.meta.json"}},
  };
  int failures = 0, compared = 0, differing = 0;
  for (const auto &[pattern, files] : jobs) {
    for (int rep = 0; rep < 4; ++rep) {
      std::string args;
      for (char c : pattern) {
        if (c == '%') args += in(rep, "");
        else if (c == '#') args += rep % 2 ? "4" : "1";
        else args += c;
      }
      if (RunCli(args) != 0) ++failures;
      if (rep == 0) continue;
      for (const auto &f : files) {
        ++compared;
        // Sidecars may name sibling outputs, which live in per-run dirs.
        auto strip = [&](std::string text) {
          for (int r = 0; r < 4; ++r) {
            const std::string dir = in(r, "");
            for (auto pos = text.find(dir); pos != std::string::npos; pos = text.find(dir))
              text.replace(pos, dir.size(), "<run>/");
          }
          return text;
        };
        auto mine = Slurp(in(rep, f));
        if (mine.empty() || strip(mine) != strip(Slurp(in(0, f)))) ++differing;
      }
    }
  }
  char buf[200];
  std::snprintf(buf, sizeof(buf),
                "refine idempotent on %d/%d tracks; CLI: %d failed runs, %d/%d outputs differ",
                idempotent, total, failures, differing, compared);
  return {idempotent == total && failures == 0 && differing == 0, buf};
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char *name;
    double budget_s;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "normal-equation oracle equivalence", 1, NormalEquationOracle},
      {2, "reduction chain", 5, ReductionChain},
      {3, "synthetic formant recovery", 60, SyntheticRecovery},
      {4, "refinement improves perturbed predictions", 60, RefinementImproves},
      {5, "noise-robustness direction", 120, NoiseRobustness},
      {6, "metric arithmetic", 1, MetricArithmetic},
      {7, "peak-count bound", 10, PeakCountBound},
      {8, "idempotence and determinism", 30, Determinism},
  };
  int failed = 0;
  for (const auto &c : criteria) {
    auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception &e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    bool in_time = secs < c.budget_s;
    bool pass = o.pass && in_time;
    failed += pass ? 0 : 1;
    std::printf("%s criterion %d: %s [%.2f s of %.0f s] %s%s\n", pass ? "PASS" : "FAIL", c.id,
                c.name, secs, c.budget_s, o.detail.c_str(), in_time ? "" : " (over time budget)");
    std::fflush(stdout);
  }
  fs::remove_all(fs::temp_directory_path() / ("lpformant_acceptance_" + std::to_string(::getpid())));
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed,
              criteria.size());
  return failed == 0 ? 0 : 1;
}
