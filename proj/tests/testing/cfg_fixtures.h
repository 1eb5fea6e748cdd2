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


#ifndef CODESOPH_TESTS_TESTING_CFG_FIXTURES_H_
#define CODESOPH_TESTS_TESTING_CFG_FIXTURES_H_

#include <array>
#include <string>

// Methods with node, edge and path counts worked out by hand. Path counts
// traverse each loop body at most once. `straight` marks methods whose CFG
// is a single chain.

namespace codesoph::testing {

struct CfgFixture {
  const char* name;
  const char* source;
  int nodes;
  int edges;
  int paths;
  bool straight;
};

inline constexpr std::array<CfgFixture, 20> kCfgFixtures = {{
    {"pass_only", "def f():\n    pass\n", 3, 2, 1, true},
    {"return_param", "def f(x):\n    return x\n", 3, 2, 1, true},
    {"assign_chain",
     "def f(a):\n    b = a\n    c = b + 1\n    return c\n", 5, 4, 1, true},
    {"attribute_calls",
     "def f(self):\n    self.x = 1\n    self.y = 2\n    self.z()\n"
     "    log(self.x)\n",
     6, 5, 1, true},
    {"if_no_else",
     "def f(c):\n    a = 1\n    if c:\n        b = 2\n    return b\n", 6, 6, 2,
     false},
    {"if_else",
     "def f(c):\n    if c:\n        x = 1\n    else:\n        x = 2\n"
     "    return x\n",
     6, 6, 2, false},
    {"nested_if",
     "def f(a, b):\n    if a:\n        if b:\n            x = 1\n"
     "    return 0\n",
     6, 7, 3, false},
    {"elif_chain",
     "def f(a):\n    if a == 1:\n        r = 1\n    elif a == 2:\n"
     "        r = 2\n    else:\n        r = 3\n    return r\n",
     8, 9, 3, false},
    {"early_return",
     "def f(x):\n    if x is None:\n        return 0\n    return x + 1\n", 5, 5,
     2, false},
    {"guard_raise",
     "def f(x):\n    if x < 0:\n        raise ValueError(x)\n    y = x * 2\n"
     "    return y\n",
     6, 6, 2, false},
    {"while_counter",
     "def f(n):\n    i = 0\n    while i < n:\n        i += 1\n    return i\n",
     6, 6, 2, false},
    {"for_with_if",
     "def f(xs):\n    total = 0\n    for x in xs:\n        if x > 0:\n"
     "            total += x\n    return total\n",
     7, 8, 3, false},
    {"for_break",
     "def f(xs):\n    for x in xs:\n        if x:\n            break\n"
     "        log(x)\n    return 1\n",
     7, 8, 3, false},
    {"for_continue",
     "def f(xs):\n    for x in xs:\n        if x:\n            continue\n"
     "        log(x)\n    return 1\n",
     7, 8, 3, false},
    {"try_opaque",
     "def f(path):\n    try:\n        data = open(path).read()\n"
     "    except OSError:\n        data = ''\n    return data\n",
     4, 3, 1, true},
    {"with_opaque",
     "def f(self):\n    with self.lock:\n        self.n += 1\n"
     "    return self.n\n",
     4, 3, 1, true},
    {"while_true_break",
     "def f(q):\n    while True:\n        item = q.get()\n"
     "        if item is None:\n            break\n        q.put(item)\n"
     "    return q\n",
     8, 9, 3, false},
    {"for_else",
     "def f(xs, t):\n    for x in xs:\n        if x == t:\n            break\n"
     "    else:\n        return -1\n    return 0\n",
     7, 8, 3, false},
    {"dead_after_return", "def f():\n    return 1\n    x = 2\n", 3, 2, 1,
     false},
    {"nested_definitions",
     "def f(self):\n    def g():\n        return 1\n    class K:\n"
     "        pass\n    return g()\n",
     5, 4, 1, true},
}};

// Inserts an else-less `if` as the first statement of a one-line-header
// method.
inline std::string WithLeadingIf(const char* source) {
  std::string s(source);
  size_t body = s.find('\n') + 1;
  return s.substr(0, body) + "    if flag:\n        log(flag)\n" + s.substr(body);
}

}  // namespace codesoph::testing

#endif  // CODESOPH_TESTS_TESTING_CFG_FIXTURES_H_
