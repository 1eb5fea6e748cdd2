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

#ifndef CODESOPH_PYTHON_PARSER_H_
#define CODESOPH_PYTHON_PARSER_H_

#include <string_view>

#include "codesoph/python_ast.h"

namespace codesoph::python {

// Parses a whole module. Throws ParseError.
SyntaxTree ParseModule(std::string_view source);

// Parses source holding exactly one (possibly decorated, possibly indented)
// function definition. Throws ParseError otherwise.
SyntaxTree ParseMethod(std::string_view source);

}  // namespace codesoph::python

#endif  // CODESOPH_PYTHON_PARSER_H_
