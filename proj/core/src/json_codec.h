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


// nlohmann::json conversions shared by the serializers. Not installed.

#ifndef CODESOPH_SRC_JSON_CODEC_H_
#define CODESOPH_SRC_JSON_CODEC_H_

#include <optional>
#include <string_view>

#include <nlohmann/json.hpp>

#include "codesoph/errors.h"
#include "codesoph/miner.h"

namespace codesoph::json_codec {

using Json = nlohmann::json;

Json Parse(std::string_view text, std::string_view what);

template <typename T>
T Get(const Json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) throw DataError(std::string("missing field '") + key + "'");
  try {
    return it->get<T>();
  } catch (const Json::exception& e) {
    throw DataError(std::string("field '") + key + "': " + e.what());
  }
}

inline Json Optional(const std::optional<double>& v) {
  return v ? Json(*v) : Json(nullptr);
}

Json KeyToJson(const RecordKey& key);
RecordKey KeyFromJson(const Json& j);

}  // namespace codesoph::json_codec

#endif  // CODESOPH_SRC_JSON_CODEC_H_
