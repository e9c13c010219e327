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

#include "lpformant/eval.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

#include "lpformant/phones.h"

namespace lpformant {

void CompensatedSum::Add(double v) {
  double t = sum_ + v;
  if (std::fabs(sum_) >= std::fabs(v))
    carry_ += (sum_ - t) + v;
  else
    carry_ += (v - t) + sum_;
  sum_ = t;
}

void EvalConfig::Validate() const {
  if (!(tau_r > 0.0)) throw std::invalid_argument("tau_r must be positive");
  if (!(tau_a > 0.0)) throw std::invalid_argument("tau_a must be positive");
  for (const auto &c : categories)
    if (!IsPhoneCategory(c))
      throw std::invalid_argument("unknown phonetic category '" + c + "'");
}

bool FormantDetected(double ref_hz, double hyp_hz, const EvalConfig &cfg) {
  const double delta = std::fabs(ref_hz - hyp_hz);
  return delta / ref_hz < cfg.tau_r && delta < cfg.tau_a;
}

const EvalCell *EvalReport::Find(const std::string &category) const {
  for (const auto &c : cells)
    if (c.category == category) return &c;
  return nullptr;
}

namespace {

struct Accumulator {
  std::size_t frames = 0;
  std::array<std::size_t, 3> detected{};
  std::array<CompensatedSum, 3> abs_err;
  std::array<CompensatedSum, 3> rel_err;

  void Add(const Formants &ref, const Formants &hyp, const EvalConfig &cfg) {
    ++frames;
    for (int i = 0; i < 3; ++i) {
      const double delta = std::fabs(ref[i] - hyp[i]);
      if (FormantDetected(ref[i], hyp[i], cfg)) ++detected[i];
      abs_err[i].Add(delta);
      rel_err[i].Add(delta / ref[i]);
    }
  }

  EvalCell Finish(const std::string &name) const {
    EvalCell cell;
    cell.category = name;
    cell.frames = frames;
    const double k = static_cast<double>(frames);
    for (int i = 0; i < 3; ++i) {
      cell.formants[i].fdr_percent = 100.0 * static_cast<double>(detected[i]) / k;
      cell.formants[i].fee_hz = abs_err[i].Value() / k;
      cell.formants[i].mad_percent = 100.0 * rel_err[i].Value() / k;
    }
    return cell;
  }
};

std::string JoinCategories(const std::vector<std::string> &cats) {
  std::string out;
  for (const auto &c : cats) out += (out.empty() ? "" : "+") + c;
  return out;
}

}  // namespace

EvalReport Evaluate(const FormantTrack &ref, const FormantTrack &hyp,
                    const std::vector<std::string> &frame_categories,
                    const EvalConfig &cfg) {
  cfg.Validate();
  if (ref.size() != hyp.size())
    throw std::invalid_argument("reference has " + std::to_string(ref.size()) +
                                " frames, hypothesis has " +
                                std::to_string(hyp.size()));
  for (std::size_t k = 0; k < ref.size(); ++k)
    if (std::fabs(ref.times[k] - hyp.times[k]) > 5e-4)
      throw std::invalid_argument("frame grids differ at frame " + std::to_string(k));
  const bool labelled = !frame_categories.empty();
  if (labelled && frame_categories.size() != ref.size())
    throw std::invalid_argument("category list does not match the frame count");
  if (!labelled && !cfg.categories.empty())
    throw std::invalid_argument("category selection needs phone labels");

  const auto &all = PhoneCategories();
  const std::vector<std::string> &wanted = cfg.categories.empty() ? all : cfg.categories;
  auto selected = [&](const std::string &c) {
    return std::find(wanted.begin(), wanted.end(), c) != wanted.end();
  };

  Accumulator pooled;
  std::vector<Accumulator> per_category(all.size());
  EvalReport report;
  for (std::size_t k = 0; k < ref.size(); ++k) {
    if (!ref.valid[k]) continue;
    std::size_t cat_index = 0;
    if (labelled) {
      if (!selected(frame_categories[k])) continue;
      cat_index = static_cast<std::size_t>(
          std::find(all.begin(), all.end(), frame_categories[k]) - all.begin());
    }
    if (!hyp.valid[k]) {
      ++report.missing_hypotheses;
      continue;
    }
    pooled.Add(ref.formants[k], hyp.formants[k], cfg);
    if (labelled && cat_index < all.size())
      per_category[cat_index].Add(ref.formants[k], hyp.formants[k], cfg);
  }

  const std::string pooled_name =
      cfg.categories.empty() ? "all" : JoinCategories(cfg.categories);
  if (pooled.frames > 0)
    report.cells.push_back(pooled.Finish(pooled_name));
  else
    report.absent.push_back(pooled_name);
  if (labelled) {
    for (std::size_t c = 0; c < all.size(); ++c) {
      if (!selected(all[c])) continue;
      if (per_category[c].frames > 0)
        report.cells.push_back(per_category[c].Finish(all[c]));
      else
        report.absent.push_back(all[c]);
    }
  }
  return report;
}

void WriteReportCsv(const EvalReport &report, std::ostream &os) {
  os << "category,formant,fdr_percent,fee_hz,mad_percent,frames\n";
  char buf[256];
  for (const auto &cell : report.cells)
    for (int i = 0; i < 3; ++i) {
      const auto &s = cell.formants[i];
      std::snprintf(buf, sizeof(buf), "%s,F%d,%.6g,%.6g,%.6g,%zu\n",
                    cell.category.c_str(), i + 1, s.fdr_percent, s.fee_hz,
                    s.mad_percent, cell.frames);
      os << buf;
    }
}

void WriteReportTable(const EvalReport &report, std::ostream &os) {
  char buf[256];
  std::snprintf(buf, sizeof(buf), "%-28s %7s | %6s %6s %6s | %7s %7s %7s | %6s %6s %6s\n",
                "category", "frames", "FDR1", "FDR2", "FDR3", "FEE1", "FEE2", "FEE3",
                "MAD1", "MAD2", "MAD3");
  os << buf;
  for (const auto &c : report.cells) {
    const auto &f = c.formants;
    std::snprintf(buf, sizeof(buf),
                  "%-28s %7zu | %6.1f %6.1f %6.1f | %7.1f %7.1f %7.1f | %6.1f %6.1f %6.1f\n",
                  c.category.c_str(), c.frames, f[0].fdr_percent, f[1].fdr_percent,
                  f[2].fdr_percent, f[0].fee_hz, f[1].fee_hz, f[2].fee_hz,
                  f[0].mad_percent, f[1].mad_percent, f[2].mad_percent);
    os << buf;
  }
  for (const auto &a : report.absent) os << a << ": no frames\n";
  if (report.missing_hypotheses > 0)
    os << "frames without a valid hypothesis (excluded): " << report.missing_hypotheses
       << '\n';
}

}  // namespace lpformant
