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

#ifndef CODESOPH_MINER_H_
#define CODESOPH_MINER_H_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "codesoph/cfg.h"

namespace codesoph {

struct RepoSource {
  std::string path;
  std::string name;
  std::optional<std::string> revision_range;  // default: HEAD history
};

struct MinerConfig {
  int max_files = 50;
  int max_method_lines = 2000;
};

enum class Polarity { kPathAdding, kNonPathAdding };

std::string_view Name(Polarity polarity);  // "path_adding" / ...
std::optional<Polarity> PolarityFromName(std::string_view name);

struct RecordKey {
  std::string repo;
  std::string commit_id;
  std::string file_path;
  std::string method_name;
  auto operator<=>(const RecordKey&) const = default;
};

struct MethodChangeRecord {
  std::string repo;
  std::string commit_id;
  std::string file_path;
  std::string method_name;
  std::string before_source;
  std::string after_source;
  Polarity polarity = Polarity::kNonPathAdding;
  std::vector<LineSpan> added_line_spans;  // 1-based, after-source lines

  RecordKey key() const {
    return {repo, commit_id, file_path, method_name};
  }
  friend bool operator==(const MethodChangeRecord&,
                         const MethodChangeRecord&) = default;
};

// One zero-context hunk of a unified diff.
struct Hunk {
  int old_start = 0;
  int old_count = 0;
  int new_start = 0;
  int new_count = 0;
};

struct FileDiff {
  std::string path;
  std::string before;  // empty when the file was added
  std::string after;   // empty when the file was deleted
  std::vector<Hunk> hunks;
};

struct CommitDiff {
  std::string repo;
  std::string commit_id;
  std::string parent_id;  // empty for a root commit
  std::vector<FileDiff> files;
};

struct ScanStats {
  int commits_seen = 0;
  int commits_yielded = 0;
  int skipped_max_files = 0;
  int skipped_unparseable = 0;
};

// Walks a repository's non-merge history oldest first, yielding commits that
// touch subject-language (.py) files. Throws RepositoryError when the path is
// not a readable git repository.
class RepositoryScanner {
 public:
  RepositoryScanner(RepoSource repo, MinerConfig config);

  std::optional<CommitDiff> Next();
  const ScanStats& stats() const { return stats_; }

 private:
  struct CommitRef {
    std::string id;
    std::string parent;
  };

  std::optional<CommitDiff> Load(const CommitRef& ref);

  RepoSource repo_;
  MinerConfig config_;
  std::vector<CommitRef> commits_;
  size_t next_ = 0;
  ScanStats stats_;
};

// Parses `@@ -a,b +c,d @@` headers out of a zero-context unified diff.
std::vector<Hunk> ParseHunks(std::string_view unified_diff);

// A function or method definition located in a module.
struct MethodSource {
  std::string qualified_name;  // Class.method or function
  int start_line = 0;          // 1-based, first decorator included
  int end_line = 0;
  std::string text;
};

// Top-level functions and methods of (nested) classes. Names defined more
// than once in the module are omitted. Throws ParseError.
std::vector<MethodSource> ExtractMethods(std::string_view module_source);

struct ClassifyStats {
  int files_unparseable = 0;
  int methods_compared = 0;
  int methods_new = 0;
  int methods_unchanged_code = 0;  // only comments/whitespace changed
  int methods_no_added_lines = 0;
  int methods_too_long = 0;
};

// Number of `if`/`elif` nodes of `after` without a counterpart in `before`,
// matching nodes by their rendered condition.
int AddedIfCount(std::string_view before_method, std::string_view after_method);

// Produces one record per pre-existing method whose body gained code lines.
std::vector<MethodChangeRecord> ClassifyCommit(const CommitDiff& diff,
                                               const MinerConfig& config = {},
                                               ClassifyStats* stats = nullptr);

struct BalanceStats {
  int duplicates_removed = 0;
  int negatives_downsampled = 0;
  std::vector<RecordKey> dropped_duplicates;
  std::vector<RecordKey> dropped_negatives;
};

// Removes duplicate (before, after) pairs, downsamples negatives to the
// number of positives, and sorts by record key. Throws DataError when no
// positives remain.
std::vector<MethodChangeRecord> DedupeAndBalance(
    std::vector<MethodChangeRecord> records, std::uint64_t seed,
    BalanceStats* stats = nullptr);

}  // namespace codesoph

#endif  // CODESOPH_MINER_H_
