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

#include "krel/io.hpp"

#include <fstream>

#include "krel/error.hpp"

namespace krel {

namespace {

const nlohmann::json& member(const nlohmann::json& j, const char* key,
                             const std::string& where) {
  if (!j.is_object() || !j.contains(key)) {
    throw Error(ErrorCode::InvalidArgument,
                where + ": missing field '" + key + "'");
  }
  return j.at(key);
}

}  // namespace

KDatabase database_from_json(const nlohmann::json& j) {
  const auto& sr = member(j, "semiring", "database");
  if (!sr.is_string()) {
    throw Error(ErrorCode::InvalidArgument, "database: semiring must be a string");
  }
  SemiringKind kind = parse_semiring(sr.get<std::string>());
  const auto& rels = member(j, "relations", "database");
  if (!rels.is_object()) {
    throw Error(ErrorCode::InvalidArgument, "database: relations must be an object");
  }

  Schema schema;
  for (const auto& [name, body] : rels.items()) {
    const auto& arity = member(body, "arity", name);
    if (!arity.is_number_unsigned()) {
      throw Error(ErrorCode::InvalidArgument, name + ": arity must be a natural number");
    }
    schema.push_back({name, arity.get<std::size_t>()});
  }
  KDatabase db(kind, schema);

  for (const auto& [name, body] : rels.items()) {
    KRelation& rel = db.relation(name);
    if (!body.contains("rows")) continue;
    const auto& rows = body.at("rows");
    if (!rows.is_array()) {
      throw Error(ErrorCode::InvalidArgument, name + ": rows must be an array");
    }
    for (const auto& row : rows) {
      const auto& t = member(row, "t", name);
      if (!t.is_array()) {
        throw Error(ErrorCode::InvalidArgument, name + ": t must be an array");
      }
      Tuple tup;
      for (const auto& e : t) {
        if (!e.is_string()) {
          throw Error(ErrorCode::InvalidArgument,
                      name + ": domain elements are strings");
        }
        tup.emplace_back(e.get<std::string>());
      }
      if (tup.size() != rel.arity()) {
        throw Error(ErrorCode::ArityMismatch,
                    name + ": tuple " + to_string(tup) + " has wrong arity");
      }
      Value v = value_from_json(kind, member(row, "v", name));
      if (v.is_zero()) {
        throw Error(ErrorCode::ZeroValue,
                    name + ": explicit zero at " + to_string(tup));
      }
      if (rel.rows().count(tup)) {
        throw Error(ErrorCode::DuplicateTuple,
                    name + ": duplicate tuple " + to_string(tup));
      }
      rel.set(tup, v);
    }
  }
  return db;
}

nlohmann::json to_json(const KRelation& r) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& [t, v] : r.rows()) {
    nlohmann::json tj = nlohmann::json::array();
    for (const auto& e : t) tj.push_back(e.symbol);
    rows.push_back({{"t", tj}, {"v", to_json(v)}});
  }
  return {{"arity", r.arity()}, {"rows", rows}};
}

nlohmann::json to_json(const KDatabase& db) {
  nlohmann::json rels = nlohmann::json::object();
  for (const auto& sym : db.schema()) rels[sym.name] = to_json(db.relation(sym.name));
  return {{"semiring", std::string(name_of(db.kind()))}, {"relations", rels}};
}

KDatabase load_database(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::Io, path + ": " + e.what());
  }
  return database_from_json(j);
}

void save_database(const KDatabase& db, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::Io, "cannot write " + path);
  out << to_json(db).dump(2) << '\n';
}

}  // namespace krel
