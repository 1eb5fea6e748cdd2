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

#ifndef CODESOPH_PYTHON_LEXER_H_
#define CODESOPH_PYTHON_LEXER_H_

#include <string>
#include <string_view>
#include <vector>

namespace codesoph::python {

enum class TokenType {
  kName,
  kNumber,
  kString,
  kOp,
  kNewline,
  kIndent,
  kDedent,
  kEnd,
};

struct Token {
  TokenType type;
  std::string text;
  int line = 0;  // 1-based
  int col = 0;   // 1-based
  int end_line = 0;
};

// Tokenizes Python 3 source. The indentation of the first logical line is
// the base level, so an indented method cut out of a class body tokenizes as
// if it were at column zero. Comments and blank lines produce no tokens.
// Throws ParseError on unterminated strings, inconsistent dedents and
// unbalanced brackets.
std::vector<Token> Tokenize(std::string_view source);

// Lines (1-based, sorted, unique) covered by at least one non-layout token.
// Comment-only and blank lines are absent.
std::vector<int> CodeLines(const std::vector<Token>& tokens);

}  // namespace codesoph::python

#endif  // CODESOPH_PYTHON_LEXER_H_
