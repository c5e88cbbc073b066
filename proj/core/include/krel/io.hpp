// Copyright 2026 The krel Authors.
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

#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "krel/relation.hpp"

namespace krel {

// Database file format:
//
//   { "semiring": "bag",
//     "relations": { "R": { "arity": 2,
//                           "rows": [ { "t": ["a", "b"], "v": "3" } ] } } }
//
// Duplicate tuples and explicit zero values are rejected.

KDatabase database_from_json(const nlohmann::json& j);
nlohmann::json to_json(const KDatabase& db);
nlohmann::json to_json(const KRelation& r);

KDatabase load_database(const std::string& path);
void save_database(const KDatabase& db, const std::string& path);

}  // namespace krel
