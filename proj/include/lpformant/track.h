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

#ifndef LPFORMANT_TRACK_H_
#define LPFORMANT_TRACK_H_

#include <array>
#include <iosfwd>
#include <string>
#include <vector>

namespace lpformant {

using Formants = std::array<double, 3>;

/// F1..F3 per frame on a uniform time grid. A frame is invalid when any of
/// its formants is non-positive.
struct FormantTrack {
  std::vector<double> times;
  std::vector<Formants> formants;
  std::vector<bool> valid;

  std::size_t size() const { return times.size(); }
  void Append(double time_s, const Formants &f);

  /// Throws unless times are strictly increasing with uniform spacing
  /// (within 1 ms) and every valid frame lies in (0, nyquist_hz).
  void Validate(double nyquist_hz) const;
};

/// CSV with header `time_s,f1_hz,f2_hz,f3_hz`, values printed with six
/// significant digits. Rows with a non-positive formant read back invalid;
/// invalid frames are written as zeros.
FormantTrack ReadTrackCsv(std::istream &is);
FormantTrack ReadTrackCsvFile(const std::string &path);
void WriteTrackCsv(const FormantTrack &track, std::ostream &os);
void WriteTrackCsvFile(const FormantTrack &track, const std::string &path);

}  // namespace lpformant

#endif  // LPFORMANT_TRACK_H_
