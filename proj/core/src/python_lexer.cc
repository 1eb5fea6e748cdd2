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

#include "codesoph/python_lexer.h"

#include <algorithm>
#include <array>
#include <cctype>
#include <cstring>

#include "codesoph/errors.h"

namespace codesoph::python {
namespace {

constexpr std::array<std::string_view, 24> kMultiCharOps = {
    "**=", "//=", ">>=", "<<=", "...", "->", ":=", "**", "//", "<<",
    ">>",  "<=",  ">=",  "==",  "!=",  "+=", "-=", "*=", "/=", "%=", "&=",
    "|=",  "^=",  "@=",
};

constexpr std::string_view kSingleCharOps = "+-*/%@&|^~<>()[]{},:.;=!";

bool IsIdentStart(unsigned char c) {
  return std::isalpha(c) || c == '_' || c >= 0x80;
}

bool IsIdentChar(unsigned char c) {
  return std::isalnum(c) || c == '_' || c >= 0x80;
}

bool IsStringPrefix(std::string_view word) {
  if (word.size() > 2) return false;
  for (char c : word) {
    char l = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    if (l != 'r' && l != 'b' && l != 'u' && l != 'f') return false;
  }
  return true;
}

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> Run() {
    bool base_set = false;
    while (pos_ < src_.size()) {
      if (at_line_start_ && depth_ > 0) at_line_start_ = false;
      // Start of a physical line outside brackets: measure indentation.
      if (at_line_start_ && depth_ == 0) {
        int width = 0;
        size_t p = pos_;
        while (p < src_.size() &&
               (src_[p] == ' ' || src_[p] == '\t' || src_[p] == '\f')) {
          if (src_[p] == '\t') {
            width = (width / 8 + 1) * 8;
          } else if (src_[p] == ' ') {
            ++width;
          } else {
            width = 0;
          }
          ++p;
        }
        col_ += static_cast<int>(p - pos_);
        pos_ = p;
        at_line_start_ = false;
        if (pos_ >= src_.size()) break;
        char c = src_[pos_];
        if (c == '#' || c == '\n' || c == '\r') {
          SkipRestOfLine();
          continue;
        }
        if (c == '\\' && pos_ + 1 < src_.size() &&
            (src_[pos_ + 1] == '\n' || src_[pos_ + 1] == '\r')) {
          // Backslash on an otherwise empty line joins to the next one.
          ++pos_;
          NewLine();
          continue;
        }
        if (!base_set) {
          indents_.push_back(width);
          base_set = true;
        } else if (width > indents_.back()) {
          indents_.push_back(width);
          Emit(TokenType::kIndent, "", line_, col_);
        } else {
          while (width < indents_.back()) {
            indents_.pop_back();
            if (indents_.empty() || width > indents_.back()) {
              throw ParseError("unindent does not match any outer level",
                               line_, col_);
            }
            Emit(TokenType::kDedent, "", line_, col_);
          }
        }
        logical_line_open_ = true;
      }
      LexOne();
    }
    if (depth_ != 0) {
      throw ParseError("unexpected end of input inside brackets", line_, col_);
    }
    if (logical_line_open_) Emit(TokenType::kNewline, "", line_, col_);
    while (indents_.size() > 1) {
      indents_.pop_back();
      Emit(TokenType::kDedent, "", line_, col_);
    }
    Emit(TokenType::kEnd, "", line_, col_);
    return std::move(tokens_);
  }

 private:
  void Emit(TokenType type, std::string text, int line, int col) {
    tokens_.push_back(Token{type, std::move(text), line, col, line_});
  }

  void NewLine() {
    if (pos_ < src_.size() && src_[pos_] == '\r') ++pos_;
    if (pos_ < src_.size() && src_[pos_] == '\n') ++pos_;
    ++line_;
    col_ = 1;
  }

  void SkipRestOfLine() {
    while (pos_ < src_.size() && src_[pos_] != '\n' && src_[pos_] != '\r') {
      ++pos_;
    }
    NewLine();
    at_line_start_ = true;
  }

  void LexOne() {
    char c = src_[pos_];
    if (c == ' ' || c == '\t' || c == '\f') {
      ++pos_;
      ++col_;
      return;
    }
    if (c == '#') {
      while (pos_ < src_.size() && src_[pos_] != '\n' && src_[pos_] != '\r') {
        ++pos_;
      }
      return;
    }
    if (c == '\n' || c == '\r') {
      if (depth_ == 0 && logical_line_open_) {
        Emit(TokenType::kNewline, "", line_, col_);
        logical_line_open_ = false;
      }
      NewLine();
      at_line_start_ = true;
      return;
    }
    if (c == '\\') {
      if (pos_ + 1 < src_.size() &&
          (src_[pos_ + 1] == '\n' || src_[pos_ + 1] == '\r')) {
        ++pos_;
        NewLine();
        return;
      }
      throw ParseError("unexpected character after line continuation", line_,
                       col_);
    }
    const int line = line_;
    const int col = col_;
    if (IsIdentStart(static_cast<unsigned char>(c))) {
      size_t start = pos_;
      while (pos_ < src_.size() &&
             IsIdentChar(static_cast<unsigned char>(src_[pos_]))) {
        ++pos_;
      }
      std::string_view word = src_.substr(start, pos_ - start);
      col_ += static_cast<int>(pos_ - start);
      if (pos_ < src_.size() && (src_[pos_] == '"' || src_[pos_] == '\'') &&
          IsStringPrefix(word)) {
        LexString(start, line, col);
        return;
      }
      Emit(TokenType::kName, std::string(word), line, col);
      return;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) ||
        (c == '.' && pos_ + 1 < src_.size() &&
         std::isdigit(static_cast<unsigned char>(src_[pos_ + 1])))) {
      LexNumber(line, col);
      return;
    }
    if (c == '"' || c == '\'') {
      LexString(pos_, line, col);
      return;
    }
    for (std::string_view op : kMultiCharOps) {
      if (src_.substr(pos_, op.size()) == op) {
        pos_ += op.size();
        col_ += static_cast<int>(op.size());
        Emit(TokenType::kOp, std::string(op), line, col);
        return;
      }
    }
    if (kSingleCharOps.find(c) != std::string_view::npos) {
      if (c == '(' || c == '[' || c == '{') {
        ++depth_;
      } else if (c == ')' || c == ']' || c == '}') {
        if (depth_ == 0) throw ParseError("unmatched closing bracket", line, col);
        --depth_;
      }
      ++pos_;
      ++col_;
      Emit(TokenType::kOp, std::string(1, c), line, col);
      return;
    }
    throw ParseError(std::string("invalid character '") + c + "'", line, col);
  }

  void LexNumber(int line, int col) {
    size_t start = pos_;
    auto digits = [&](auto pred) {
      while (pos_ < src_.size() &&
             (pred(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) {
        ++pos_;
      }
    };
    auto is_dec = [](unsigned char ch) { return std::isdigit(ch) != 0; };
    if (src_[pos_] == '0' && pos_ + 1 < src_.size() &&
        std::strchr("xXoObB", src_[pos_ + 1]) != nullptr) {
      pos_ += 2;
      digits([](unsigned char ch) { return std::isxdigit(ch) != 0; });
    } else {
      digits(is_dec);
      if (pos_ < src_.size() && src_[pos_] == '.') {
        ++pos_;
        digits(is_dec);
      }
      if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
        size_t save = pos_;
        ++pos_;
        if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-')) {
          ++pos_;
        }
        if (pos_ < src_.size() &&
            std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
          digits(is_dec);
        } else {
          pos_ = save;
        }
      }
      if (pos_ < src_.size() && (src_[pos_] == 'j' || src_[pos_] == 'J')) {
        ++pos_;
      }
    }
    col_ += static_cast<int>(pos_ - start);
    Emit(TokenType::kNumber, std::string(src_.substr(start, pos_ - start)),
         line, col);
  }

  // `start` is the first character of the prefix (or the quote itself).
  void LexString(size_t start, int line, int col) {
    char quote = src_[pos_];
    bool triple = src_.substr(pos_, 3) == std::string(3, quote);
    size_t qlen = triple ? 3 : 1;
    pos_ += qlen;
    col_ += static_cast<int>(qlen);
    while (true) {
      if (pos_ >= src_.size()) {
        throw ParseError("unterminated string literal", line, col);
      }
      char c = src_[pos_];
      if (c == '\\') {
        pos_ += 1;
        col_ += 1;
        if (pos_ < src_.size()) {
          if (src_[pos_] == '\n' || src_[pos_] == '\r') {
            NewLine();
          } else {
            ++pos_;
            ++col_;
          }
        }
        continue;
      }
      if (c == '\n' || c == '\r') {
        if (!triple) throw ParseError("unterminated string literal", line, col);
        NewLine();
        continue;
      }
      if (c == quote) {
        if (!triple) {
          ++pos_;
          ++col_;
          break;
        }
        if (src_.substr(pos_, 3) == std::string(3, quote)) {
          pos_ += 3;
          col_ += 3;
          break;
        }
      }
      ++pos_;
      ++col_;
    }
    Emit(TokenType::kString, std::string(src_.substr(start, pos_ - start)),
         line, col);
  }

  std::string_view src_;
  size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
  int depth_ = 0;
  bool at_line_start_ = true;
  bool logical_line_open_ = false;
  std::vector<int> indents_;
  std::vector<Token> tokens_;
};

}  // namespace

std::vector<Token> Tokenize(std::string_view source) {
  return Lexer(source).Run();
}

std::vector<int> CodeLines(const std::vector<Token>& tokens) {
  std::vector<int> lines;
  for (const Token& t : tokens) {
    if (t.type == TokenType::kNewline || t.type == TokenType::kIndent ||
        t.type == TokenType::kDedent || t.type == TokenType::kEnd) {
      continue;
    }
    for (int l = t.line; l <= t.end_line; ++l) lines.push_back(l);
  }
  std::sort(lines.begin(), lines.end());
  lines.erase(std::unique(lines.begin(), lines.end()), lines.end());
  return lines;
}

}  // namespace codesoph::python
