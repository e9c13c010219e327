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

#include "lpformant/track.h"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace lpformant {

void FormantTrack::Append(double time_s, const Formants &f) {
  times.push_back(time_s);
  formants.push_back(f);
  valid.push_back(f[0] > 0.0 && f[1] > 0.0 && f[2] > 0.0);
}

void FormantTrack::Validate(double nyquist_hz) const {
  if (formants.size() != times.size() || valid.size() != times.size())
    throw std::invalid_argument("formant track columns have different lengths");
  for (std::size_t k = 1; k < times.size(); ++k) {
    if (!(times[k] > times[k - 1]))
      throw std::invalid_argument("track times must be strictly increasing");
    if (k >= 2 && std::fabs((times[k] - times[k - 1]) - (times[1] - times[0])) > 1e-3)
      throw std::invalid_argument("track times are not uniformly spaced");
  }
  for (std::size_t k = 0; k < times.size(); ++k) {
    if (!valid[k]) continue;
    for (double f : formants[k])
      if (!(f > 0.0 && f < nyquist_hz))
        throw std::invalid_argument("formant value outside (0, Nyquist) at t=" +
                                    std::to_string(times[k]));
  }
}

namespace {

std::string Trim(const std::string &s) {
  auto b = s.find_first_not_of(" \t\r");
  auto e = s.find_last_not_of(" \t\r");
  return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
}

double ParseField(const std::string &field, std::size_t line_no) {
  std::string t = Trim(field);
  char *end = nullptr;
  double v = std::strtod(t.c_str(), &end);
  if (t.empty() || end != t.c_str() + t.size() || !std::isfinite(v))
    throw std::runtime_error("track CSV line " + std::to_string(line_no) +
                             ": bad number '" + t + "'");
  return v;
}

}  // namespace

FormantTrack ReadTrackCsv(std::istream &is) {
  std::string line;
  std::size_t line_no = 0;
  bool header_seen = false;
  FormantTrack track;
  while (std::getline(is, line)) {
    ++line_no;
    std::string t = Trim(line);
    if (t.empty()) continue;
    if (!header_seen) {
      header_seen = true;
      if (t != "time_s,f1_hz,f2_hz,f3_hz")
        throw std::runtime_error("track CSV: expected header time_s,f1_hz,f2_hz,f3_hz");
      continue;
    }
    std::vector<std::string> fields;
    std::stringstream ss(t);
    std::string field;
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (fields.size() != 4)
      throw std::runtime_error("track CSV line " + std::to_string(line_no) +
                               ": expected 4 fields");
    Formants f{ParseField(fields[1], line_no), ParseField(fields[2], line_no),
               ParseField(fields[3], line_no)};
    track.Append(ParseField(fields[0], line_no), f);
  }
  if (!header_seen) throw std::runtime_error("track CSV: empty file");
  return track;
}

FormantTrack ReadTrackCsvFile(const std::string &path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open " + path);
  return ReadTrackCsv(is);
}

void WriteTrackCsv(const FormantTrack &track, std::ostream &os) {
  os << "time_s,f1_hz,f2_hz,f3_hz\n";
  char buf[128];
  for (std::size_t k = 0; k < track.size(); ++k) {
    const Formants zero{0.0, 0.0, 0.0};
    const Formants &f = track.valid[k] ? track.formants[k] : zero;
    std::snprintf(buf, sizeof(buf), "%.6g,%.6g,%.6g,%.6g\n", track.times[k], f[0],
                  f[1], f[2]);
    os << buf;
  }
}

void WriteTrackCsvFile(const FormantTrack &track, const std::string &path) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot write " + path);
  WriteTrackCsv(track, os);
  if (!os) throw std::runtime_error("write failed: " + path);
}

}  // namespace lpformant
