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

#include "codesoph/line_diff.h"

#include <algorithm>

namespace codesoph {

std::vector<std::string> SplitLines(std::string_view text) {
  std::vector<std::string> lines;
  size_t start = 0;
  while (start < text.size()) {
    size_t nl = text.find('\n', start);
    if (nl == std::string_view::npos) {
      lines.emplace_back(text.substr(start));
      break;
    }
    std::string_view line = text.substr(start, nl - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.emplace_back(line);
    start = nl + 1;
  }
  return lines;
}

LineAlignment AlignLines(const std::vector<std::string>& before,
                         const std::vector<std::string>& after) {
  const size_t n = before.size();
  const size_t m = after.size();
  LineAlignment result;
  result.after_to_before.assign(m, -1);
  result.before_to_after.assign(n, -1);

  // Common prefix and suffix are matched directly; DP runs on the middle.
  size_t prefix = 0;
  while (prefix < n && prefix < m && before[prefix] == after[prefix]) {
    result.after_to_before[prefix] = static_cast<int>(prefix);
    result.before_to_after[prefix] = static_cast<int>(prefix);
    ++prefix;
  }
  size_t suffix = 0;
  while (suffix < n - prefix && suffix < m - prefix &&
         before[n - 1 - suffix] == after[m - 1 - suffix]) {
    result.after_to_before[m - 1 - suffix] = static_cast<int>(n - 1 - suffix);
    result.before_to_after[n - 1 - suffix] = static_cast<int>(m - 1 - suffix);
    ++suffix;
  }
  const size_t rows = n - prefix - suffix;
  const size_t cols = m - prefix - suffix;
  if (rows == 0 || cols == 0) return result;

  // lcs[i][j] = LCS length of before[prefix+i..] and after[prefix+j..].
  std::vector<int> lcs((rows + 1) * (cols + 1), 0);
  auto at = [&](size_t i, size_t j) -> int& { return lcs[i * (cols + 1) + j]; };
  for (size_t i = rows; i-- > 0;) {
    for (size_t j = cols; j-- > 0;) {
      if (before[prefix + i] == after[prefix + j]) {
        at(i, j) = at(i + 1, j + 1) + 1;
      } else {
        at(i, j) = std::max(at(i + 1, j), at(i, j + 1));
      }
    }
  }
  size_t i = 0;
  size_t j = 0;
  while (i < rows && j < cols) {
    if (before[prefix + i] == after[prefix + j]) {
      result.before_to_after[prefix + i] = static_cast<int>(prefix + j);
      result.after_to_before[prefix + j] = static_cast<int>(prefix + i);
      ++i;
      ++j;
    } else if (at(i + 1, j) >= at(i, j + 1)) {
      ++i;
    } else {
      ++j;
    }
  }
  return result;
}

}  // namespace codesoph
