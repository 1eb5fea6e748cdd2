// Copyright 2026 The Codesoph Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef CODESOPH_LINE_DIFF_H_
#define CODESOPH_LINE_DIFF_H_

#include <string>
#include <string_view>
#include <vector>

namespace codesoph {

std::vector<std::string> SplitLines(std::string_view text);

// Line alignment between two texts from a longest common subsequence.
struct LineAlignment {
  // For each line of `after` (0-based): matching line of `before`, or -1
  // when the line was added.
  std::vector<int> after_to_before;
  // For each line of `before`: matching line of `after`, or -1 when deleted.
  std::vector<int> before_to_after;
};

LineAlignment AlignLines(const std::vector<std::string>& before,
                         const std::vector<std::string>& after);

}  // namespace codesoph

#endif  // CODESOPH_LINE_DIFF_H_
