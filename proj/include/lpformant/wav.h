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

#ifndef LPFORMANT_WAV_H_
#define LPFORMANT_WAV_H_

#include <iosfwd>
#include <string>

#include "lpformant/signal.h"

namespace lpformant {

// 16-bit PCM mono RIFF/WAVE. Integer samples map to [-1, 1) by division by
// 32768; writing rounds and saturates. Malformed input throws
// std::runtime_error.
SignalBuffer ReadWav(std::istream &is);
SignalBuffer ReadWavFile(const std::string &path);
void WriteWav(const SignalBuffer &x, std::ostream &os);
void WriteWavFile(const SignalBuffer &x, const std::string &path);

}  // namespace lpformant

#endif  // LPFORMANT_WAV_H_
