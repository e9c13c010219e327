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

#include "lpformant/phones.h"

#include <algorithm>
#include <fstream>
#include <istream>
#include <sstream>
#include <stdexcept>

namespace lpformant {

namespace {

// Keep in sync with data/timit_categories.txt (checked by phones_test).
constexpr const char *kTimitTable = R"(
iy vowel
ih vowel
eh vowel
ae vowel
aa vowel
ah vowel
ao vowel
uh vowel
uw vowel
ux vowel
er vowel
ax vowel
ix vowel
axr vowel
ax-h vowel
ey diphthong
aw diphthong
ay diphthong
oy diphthong
ow diphthong
l semivowel
el semivowel
r semivowel
w semivowel
y semivowel
hh semivowel
hv semivowel
m nasal
n nasal
ng nasal
em nasal
en nasal
eng nasal
nx nasal
s fricative
sh fricative
z fricative
zh fricative
f fricative
th fricative
v fricative
dh fricative
jh fricative
ch fricative
bcl voice_bar
dcl voice_bar
gcl voice_bar
b stop
d stop
g stop
p stop
t stop
k stop
dx stop
q stop
pcl stop
tcl stop
kcl stop
h# other
pau other
epi other
)";

}  // namespace

bool IsPhoneCategory(const std::string &name) {
  const auto &all = PhoneCategories();
  return std::find(all.begin(), all.end(), name) != all.end();
}

std::vector<PhoneSegment> ReadPhoneLabels(std::istream &is) {
  std::vector<PhoneSegment> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    std::istringstream ss(line);
    PhoneSegment seg;
    if (!(ss >> seg.start)) continue;  // blank line
    if (!(ss >> seg.end >> seg.label) || seg.end < seg.start || seg.start < 0)
      throw std::runtime_error("phone labels line " + std::to_string(line_no) +
                               ": expected 'start_sample end_sample label'");
    out.push_back(std::move(seg));
  }
  return out;
}

std::vector<PhoneSegment> ReadPhoneLabelFile(const std::string &path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open " + path);
  return ReadPhoneLabels(is);
}

CategoryMap CategoryMap::Parse(std::istream &is) {
  CategoryMap map;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    // '#' is part of TIMIT labels (h#), so it only starts a comment at the
    // beginning of a line or after whitespace.
    for (std::size_t i = 0; i < line.size(); ++i)
      if (line[i] == '#' && (i == 0 || line[i - 1] == ' ' || line[i - 1] == '\t')) {
        line.erase(i);
        break;
      }
    std::istringstream ss(line);
    std::string phone, category, extra;
    if (!(ss >> phone)) continue;
    if (!(ss >> category) || (ss >> extra))
      throw std::runtime_error("category map line " + std::to_string(line_no) +
                               ": expected 'phone category'");
    if (!IsPhoneCategory(category))
      throw std::runtime_error("category map line " + std::to_string(line_no) +
                               ": unknown category '" + category + "'");
    map.table_[phone] = category;
  }
  return map;
}

CategoryMap CategoryMap::FromFile(const std::string &path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open " + path);
  return Parse(is);
}

CategoryMap CategoryMap::TimitDefault() {
  std::istringstream is(kTimitTable);
  return Parse(is);
}

const std::string *CategoryMap::Find(const std::string &label) const {
  auto it = table_.find(label);
  return it == table_.end() ? nullptr : &it->second;
}

FrameCategories MapPhonesToCategories(const std::vector<PhoneSegment> &segments,
                                      const CategoryMap &map,
                                      const std::vector<double> &frame_times,
                                      double label_rate) {
  if (!(label_rate > 0.0)) throw std::invalid_argument("label rate must be positive");
  FrameCategories out;
  out.categories.assign(frame_times.size(), "other");
  for (std::size_t k = 0; k < frame_times.size(); ++k) {
    const double pos = frame_times[k] * label_rate;
    for (const auto &seg : segments) {
      if (pos >= static_cast<double>(seg.start) && pos < static_cast<double>(seg.end)) {
        if (const std::string *cat = map.Find(seg.label))
          out.categories[k] = *cat;
        else
          ++out.unknown_labels;
        break;
      }
    }
  }
  return out;
}

}  // namespace lpformant
