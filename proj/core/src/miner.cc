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

#include "codesoph/miner.h"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "codesoph/errors.h"
#include "codesoph/line_diff.h"
#include "codesoph/python_lexer.h"
#include "codesoph/python_parser.h"
#include "codesoph/rng.h"
#include "codesoph/subprocess.h"

namespace codesoph {

using python::StmtId;
using python::StmtType;
using python::SyntaxTree;

std::string_view Name(Polarity polarity) {
  return polarity == Polarity::kPathAdding ? "path_adding" : "non_path_adding";
}

std::optional<Polarity> PolarityFromName(std::string_view name) {
  if (name == "path_adding") return Polarity::kPathAdding;
  if (name == "non_path_adding") return Polarity::kNonPathAdding;
  return std::nullopt;
}

namespace {

ProcessResult Git(const std::string& repo, std::vector<std::string> args) {
  std::vector<std::string> argv = {"git", "-C", repo};
  argv.insert(argv.end(), args.begin(), args.end());
  return RunProcess(argv);
}

bool IsSubjectFile(std::string_view path) {
  return path.size() > 3 && path.substr(path.size() - 3) == ".py";
}

std::vector<std::string> SplitNul(const std::string& text) {
  std::vector<std::string> parts;
  size_t start = 0;
  while (start < text.size()) {
    size_t end = text.find('\0', start);
    if (end == std::string::npos) end = text.size();
    parts.push_back(text.substr(start, end - start));
    start = end + 1;
  }
  return parts;
}

}  // namespace

RepositoryScanner::RepositoryScanner(RepoSource repo, MinerConfig config)
    : repo_(std::move(repo)), config_(config) {
  ProcessResult probe = Git(repo_.path, {"rev-parse", "--git-dir"});
  if (probe.exit_code != 0) {
    throw RepositoryError("not a readable git repository: " + repo_.path);
  }
  ProcessResult head = Git(repo_.path, {"rev-parse", "--verify", "-q", "HEAD"});
  if (head.exit_code != 0) return;  // no commits yet
  std::string range = repo_.revision_range.value_or("HEAD");
  ProcessResult list = Git(repo_.path, {"rev-list", "--reverse", "--topo-order",
                                        "--no-merges", "--parents", range});
  if (list.exit_code != 0) {
    throw RepositoryError("invalid revision range '" + range + "' in " +
                          repo_.path + ": " + list.err);
  }
  std::istringstream lines(list.out);
  std::string line;
  while (std::getline(lines, line)) {
    std::istringstream fields(line);
    CommitRef ref;
    fields >> ref.id >> ref.parent;
    if (!ref.id.empty()) commits_.push_back(ref);
  }
}

std::optional<CommitDiff> RepositoryScanner::Next() {
  while (next_ < commits_.size()) {
    const CommitRef& ref = commits_[next_++];
    ++stats_.commits_seen;
    std::optional<CommitDiff> diff = Load(ref);
    if (diff) {
      ++stats_.commits_yielded;
      return diff;
    }
  }
  return std::nullopt;
}

std::optional<CommitDiff> RepositoryScanner::Load(const CommitRef& ref) {
  std::vector<std::string> args = {"diff-tree", "-r",       "--no-renames",
                                   "--name-status", "-z", "--no-commit-id"};
  if (ref.parent.empty()) {
    args.push_back("--root");
    args.push_back(ref.id);
  } else {
    args.push_back(ref.parent);
    args.push_back(ref.id);
  }
  ProcessResult tree = Git(repo_.path, args);
  if (tree.exit_code != 0) {
    ++stats_.skipped_unparseable;
    return std::nullopt;
  }
  std::vector<std::string> parts = SplitNul(tree.out);
  if (parts.size() % 2 != 0) {
    ++stats_.skipped_unparseable;
    return std::nullopt;
  }
  const int touched = static_cast<int>(parts.size() / 2);
  if (touched > config_.max_files) {
    ++stats_.skipped_max_files;
    return std::nullopt;
  }
  CommitDiff diff;
  diff.repo = repo_.name;
  diff.commit_id = ref.id;
  diff.parent_id = ref.parent;
  for (size_t i = 0; i + 1 < parts.size(); i += 2) {
    const std::string& status = parts[i];
    const std::string& path = parts[i + 1];
    if (!IsSubjectFile(path)) continue;
    FileDiff file;
    file.path = path;
    const bool added = status == "A";
    const bool deleted = status == "D";
    if (!added) {
      if (ref.parent.empty()) {
        ++stats_.skipped_unparseable;
        return std::nullopt;
      }
      ProcessResult show = Git(repo_.path, {"show", ref.parent + ":" + path});
      if (show.exit_code != 0) {
        ++stats_.skipped_unparseable;
        return std::nullopt;
      }
      file.before = std::move(show.out);
    }
    if (!deleted) {
      ProcessResult show = Git(repo_.path, {"show", ref.id + ":" + path});
      if (show.exit_code != 0) {
        ++stats_.skipped_unparseable;
        return std::nullopt;
      }
      file.after = std::move(show.out);
    }
    if (!added && !deleted) {
      ProcessResult patch =
          Git(repo_.path, {"diff", "-U0", "--no-color", "--no-renames",
                           "--no-ext-diff", ref.parent, ref.id, "--", path});
      if (patch.exit_code != 0) {
        ++stats_.skipped_unparseable;
        return std::nullopt;
      }
      file.hunks = ParseHunks(patch.out);
    }
    diff.files.push_back(std::move(file));
  }
  if (diff.files.empty()) return std::nullopt;
  return diff;
}

std::vector<Hunk> ParseHunks(std::string_view unified_diff) {
  std::vector<Hunk> hunks;
  size_t pos = 0;
  while ((pos = unified_diff.find("\n@@ -", pos)) != std::string_view::npos) {
    pos += 5;
    size_t end = unified_diff.find(" @@", pos);
    if (end == std::string_view::npos) break;
    std::string header(unified_diff.substr(pos, end - pos));  // a,b +c,d
    Hunk h;
    auto parse_range = [](const std::string& text, int& start, int& count) {
      size_t comma = text.find(',');
      start = std::stoi(text.substr(0, comma));
      count = comma == std::string::npos ? 1 : std::stoi(text.substr(comma + 1));
    };
    size_t plus = header.find(" +");
    if (plus == std::string::npos) continue;
    parse_range(header.substr(0, plus), h.old_start, h.old_count);
    parse_range(header.substr(plus + 2), h.new_start, h.new_count);
    hunks.push_back(h);
  }
  return hunks;
}

namespace {

void CollectMethods(const SyntaxTree& tree, const std::vector<StmtId>& stmts,
                    const std::string& prefix,
                    std::vector<std::pair<std::string, StmtId>>& out) {
  for (StmtId id : stmts) {
    const python::Stmt& s = tree.stmt(id);
    if (s.type == StmtType::kFunctionDef) {
      out.push_back({prefix + s.name, id});
    } else if (s.type == StmtType::kClassDef) {
      CollectMethods(tree, s.body, prefix + s.name + ".", out);
    }
  }
}

std::string JoinLines(const std::vector<std::string>& lines, int first,
                      int last) {
  std::string text;
  for (int l = first; l <= last; ++l) {
    text += lines[l - 1];
    text += '\n';
  }
  return text;
}

std::map<std::string, MethodSource> MethodsByName(std::string_view source) {
  std::map<std::string, MethodSource> out;
  for (MethodSource& m : ExtractMethods(source)) {
    out.emplace(m.qualified_name, std::move(m));
  }
  return out;
}

bool SameCode(const std::vector<python::Token>& a,
              const std::vector<python::Token>& b) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i].type != b[i].type || a[i].text != b[i].text) return false;
  }
  return true;
}

std::multiset<std::string> IfKeys(const SyntaxTree& tree) {
  std::multiset<std::string> keys;
  tree.VisitStmt(tree.root(), [&](StmtId id) {
    const python::Stmt& s = tree.stmt(id);
    if (s.type == StmtType::kIf) {
      keys.insert((s.is_elif ? "elif " : "if ") + tree.Render(s.exprs[0]));
    }
  });
  return keys;
}

bool Touches(const std::vector<Hunk>& hunks, const MethodSource* before,
             const MethodSource& after) {
  for (const Hunk& h : hunks) {
    int new_end = h.new_start + std::max(h.new_count, 1) - 1;
    if (h.new_count > 0 && h.new_start <= after.end_line &&
        new_end >= after.start_line) {
      return true;
    }
    if (before != nullptr && h.old_count > 0) {
      int old_end = h.old_start + h.old_count - 1;
      if (h.old_start <= before->end_line && old_end >= before->start_line) {
        return true;
      }
    }
  }
  return false;
}

}  // namespace

std::vector<MethodSource> ExtractMethods(std::string_view module_source) {
  SyntaxTree tree = python::ParseModule(module_source);
  std::vector<std::pair<std::string, StmtId>> found;
  CollectMethods(tree, tree.top_level(), "", found);
  std::map<std::string, int> counts;
  for (const auto& [name, id] : found) ++counts[name];
  std::vector<std::string> lines = SplitLines(module_source);
  std::vector<MethodSource> out;
  for (const auto& [name, id] : found) {
    if (counts[name] != 1) continue;
    const python::Stmt& s = tree.stmt(id);
    MethodSource m;
    m.qualified_name = name;
    m.start_line = s.line;
    m.end_line = s.end_line;
    m.text = JoinLines(lines, s.line, s.end_line);
    out.push_back(std::move(m));
  }
  return out;
}

int AddedIfCount(std::string_view before_method,
                 std::string_view after_method) {
  std::multiset<std::string> before = IfKeys(python::ParseMethod(before_method));
  std::multiset<std::string> after = IfKeys(python::ParseMethod(after_method));
  int added = 0;
  for (const std::string& key : after) {
    auto it = before.find(key);
    if (it == before.end()) {
      ++added;
    } else {
      before.erase(it);
    }
  }
  return added;
}

std::vector<MethodChangeRecord> ClassifyCommit(const CommitDiff& diff,
                                               const MinerConfig& config,
                                               ClassifyStats* stats) {
  ClassifyStats local;
  ClassifyStats& st = stats != nullptr ? *stats : local;
  std::vector<MethodChangeRecord> records;
  for (const FileDiff& file : diff.files) {
    if (file.before.empty() || file.after.empty()) continue;
    std::map<std::string, MethodSource> before_methods;
    std::map<std::string, MethodSource> after_methods;
    try {
      before_methods = MethodsByName(file.before);
      after_methods = MethodsByName(file.after);
    } catch (const ParseError&) {
      ++st.files_unparseable;
      continue;
    }
    for (const auto& [name, after] : after_methods) {
      auto it = before_methods.find(name);
      if (it == before_methods.end()) {
        if (Touches(file.hunks, nullptr, after)) ++st.methods_new;
        continue;
      }
      const MethodSource& before = it->second;
      if (!file.hunks.empty() && !Touches(file.hunks, &before, after)) continue;
      if (before.text == after.text) continue;
      ++st.methods_compared;
      std::vector<python::Token> before_tokens;
      std::vector<python::Token> after_tokens;
      try {
        before_tokens = python::Tokenize(before.text);
        after_tokens = python::Tokenize(after.text);
        python::ParseMethod(before.text);
        python::ParseMethod(after.text);
      } catch (const ParseError&) {
        ++st.files_unparseable;
        continue;
      }
      if (SameCode(before_tokens, after_tokens)) {
        ++st.methods_unchanged_code;
        continue;
      }
      std::vector<std::string> before_lines = SplitLines(before.text);
      std::vector<std::string> after_lines = SplitLines(after.text);
      if (static_cast<int>(std::max(before_lines.size(), after_lines.size())) >
          config.max_method_lines) {
        ++st.methods_too_long;
        continue;
      }
      LineAlignment align = AlignLines(before_lines, after_lines);
      std::vector<int> code_lines = python::CodeLines(after_tokens);
      std::set<int> code(code_lines.begin(), code_lines.end());
      // Maximal runs of added lines, trimmed to lines holding code.
      std::vector<LineSpan> spans;
      const int n = static_cast<int>(after_lines.size());
      for (int i = 0; i < n;) {
        if (align.after_to_before[i] != -1) {
          ++i;
          continue;
        }
        int j = i;
        while (j < n && align.after_to_before[j] == -1) ++j;
        int first = -1;
        int last = -1;
        for (int l = i + 1; l <= j; ++l) {
          if (code.count(l)) {
            if (first == -1) first = l;
            last = l;
          }
        }
        if (first != -1) spans.push_back({first, last});
        i = j;
      }
      if (spans.empty()) {
        ++st.methods_no_added_lines;
        continue;
      }
      MethodChangeRecord record;
      record.repo = diff.repo;
      record.commit_id = diff.commit_id;
      record.file_path = file.path;
      record.method_name = name;
      record.before_source = before.text;
      record.after_source = after.text;
      record.polarity = AddedIfCount(before.text, after.text) > 0
                            ? Polarity::kPathAdding
                            : Polarity::kNonPathAdding;
      record.added_line_spans = std::move(spans);
      records.push_back(std::move(record));
    }
  }
  return records;
}

std::vector<MethodChangeRecord> DedupeAndBalance(
    std::vector<MethodChangeRecord> records, std::uint64_t seed,
    BalanceStats* stats) {
  if (records.empty()) throw DataError("no records to balance");
  BalanceStats local;
  BalanceStats& st = stats != nullptr ? *stats : local;
  std::stable_sort(records.begin(), records.end(),
                   [](const MethodChangeRecord& a, const MethodChangeRecord& b) {
                     return a.key() < b.key();
                   });
  std::set<std::pair<std::string_view, std::string_view>> seen;
  std::vector<MethodChangeRecord> positives;
  std::vector<MethodChangeRecord> negatives;
  for (MethodChangeRecord& r : records) {
    if (!seen.insert({r.before_source, r.after_source}).second) {
      ++st.duplicates_removed;
      st.dropped_duplicates.push_back(r.key());
      continue;
    }
    (r.polarity == Polarity::kPathAdding ? positives : negatives)
        .push_back(std::move(r));
  }
  if (positives.empty()) {
    throw DataError("corpus has no path-adding records");
  }
  if (negatives.size() > positives.size()) {
    std::vector<size_t> order(negatives.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = i;
    Rng rng(seed);
    rng.Shuffle(order);
    std::vector<bool> keep(negatives.size(), false);
    for (size_t i = 0; i < positives.size(); ++i) keep[order[i]] = true;
    std::vector<MethodChangeRecord> kept;
    for (size_t i = 0; i < negatives.size(); ++i) {
      if (keep[i]) {
        kept.push_back(std::move(negatives[i]));
      } else {
        ++st.negatives_downsampled;
        st.dropped_negatives.push_back(negatives[i].key());
      }
    }
    negatives = std::move(kept);
  }
  std::vector<MethodChangeRecord> out = std::move(positives);
  for (MethodChangeRecord& r : negatives) out.push_back(std::move(r));
  std::stable_sort(out.begin(), out.end(),
                   [](const MethodChangeRecord& a, const MethodChangeRecord& b) {
                     return a.key() < b.key();
                   });
  return out;
}

}  // namespace codesoph
