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

#ifndef LPFORMANT_PHONES_H_
#define LPFORMANT_PHONES_H_

#include <cstddef>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace lpformant {

/// One line of a TIMIT-style .phn file: `start_sample end_sample label`.
struct PhoneSegment {
  long long start = 0;
  long long end = 0;
  std::string label;
};

std::vector<PhoneSegment> ReadPhoneLabels(std::istream &is);
std::vector<PhoneSegment> ReadPhoneLabelFile(const std::string &path);

/// The broad classes frames are grouped into. "other" collects silences,
/// unmapped phones and frames outside every segment.
inline const std::vector<std::string> &PhoneCategories() {
  static const std::vector<std::string> kCategories = {
      "vowel", "diphthong", "semivowel", "nasal",
      "fricative", "voice_bar", "stop", "other"};
  return kCategories;
}

bool IsPhoneCategory(const std::string &name);

/// Phone label -> category. Text form: one `phone category` pair per line,
/// `#` starts a comment.
class CategoryMap {
 public:
  static CategoryMap Parse(std::istream &is);
  static CategoryMap FromFile(const std::string &path);
  /// Built-in copy of data/timit_categories.txt.
  static CategoryMap TimitDefault();

  /// Nullptr when the label is not in the table.
  const std::string *Find(const std::string &label) const;
  std::size_t size() const { return table_.size(); }

 private:
  std::map<std::string, std::string> table_;
};

struct FrameCategories {
  std::vector<std::string> categories;
  /// Frames whose covering segment had a label missing from the map.
  std::size_t unknown_labels = 0;
};

/// Category of each frame, looked up from the segment containing the
/// frame's center. `label_rate` converts label sample indices to seconds.
FrameCategories MapPhonesToCategories(const std::vector<PhoneSegment> &segments,
                                      const CategoryMap &map,
                                      const std::vector<double> &frame_times,
                                      double label_rate);

}  // namespace lpformant

#endif  // LPFORMANT_PHONES_H_
