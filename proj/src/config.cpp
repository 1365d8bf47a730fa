// Copyright 2026 The qw3 Authors
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

#include "qw3/config.hpp"

#include <fmt/format.h>

#include <optional>

#include "qw3/errors.hpp"

namespace qw3 {

using nlohmann::json;

namespace {

double number_at(const json& node, const std::string& where) {
  if (!node.is_number()) throw ConfigError(fmt::format("{}: expected a number", where));
  return node.get<double>();
}

Site integer_at(const json& node, const std::string& where) {
  if (!node.is_number_integer()) throw ConfigError(fmt::format("{}: expected an integer", where));
  return node.get<Site>();
}

const json& member(const json& obj, const char* key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) throw ConfigError(fmt::format("{}: missing key \"{}\"", where, key));
  return *it;
}

CoinMatrix preset_coin(const std::string& name, const std::string& where) {
  if (name == "fourier") return make_fourier();
  if (name == "grover") return make_grover();
  if (name == "identity") {
    // Diagonal coins decouple the self-loop and are rejected by CoinMatrix.
    return CoinMatrix(Mat3::identity());
  }
  throw ConfigError(fmt::format("{}: unknown preset \"{}\" (expected fourier or grover)", where,
                                name));
}

}  // namespace

CoinMatrix parse_coin_json(const json& node, const std::string& where) {
  if (!node.is_object()) throw ConfigError(fmt::format("{}: coin must be an object", where));
  try {
    if (node.contains("preset")) {
      const json& p = node.at("preset");
      if (!p.is_string()) throw ConfigError(fmt::format("{}.preset: expected a string", where));
      CoinMatrix base = preset_coin(p.get<std::string>(), where);
      double phase = 0.0;
      if (node.contains("phase")) phase = number_at(node.at("phase"), where + ".phase");
      return phase == 0.0 ? base : phase_scale(base, phase);
    }
    if (node.contains("rows")) {
      const json& rows = node.at("rows");
      if (!rows.is_array() || rows.size() != 3)
        throw ConfigError(fmt::format("{}.rows: expected 3 rows", where));
      Mat3 m;
      for (std::size_t r = 0; r < 3; ++r) {
        const json& row = rows[r];
        if (!row.is_array() || row.size() != 3)
          throw ConfigError(fmt::format("{}.rows[{}]: expected 3 entries", where, r));
        for (std::size_t c = 0; c < 3; ++c) {
          const json& e = row[c];
          const std::string at = fmt::format("{}.rows[{}][{}]", where, r, c);
          if (!e.is_array() || e.size() != 2)
            throw ConfigError(fmt::format("{}: expected [re, im]", at));
          m(r, c) = cplx{number_at(e[0], at + "[0]"), number_at(e[1], at + "[1]")};
        }
      }
      return CoinMatrix(m);
    }
  } catch (const ConfigError& e) {
    const std::string msg = e.what();
    if (msg.rfind(where, 0) == 0) throw;
    throw ConfigError(fmt::format("{}: {}", where, msg));
  }
  throw ConfigError(fmt::format("{}: coin needs \"preset\" or \"rows\"", where));
}

CoinField parse_field_json(const json& doc) {
  if (!doc.is_object()) throw ConfigError("config: top level must be an object");

  if (doc.contains("model")) {
    const json& m = doc.at("model");
    if (!m.is_string()) throw ConfigError("config.model: expected a string");
    const auto model = m.get<std::string>();
    if (model == "one-defect")
      return field_one_defect(parse_coin_json(member(doc, "bulk", "config"), "bulk"),
                              parse_coin_json(member(doc, "origin", "config"), "origin"));
    if (model == "two-phase")
      return field_two_phase(parse_coin_json(member(doc, "left", "config"), "left"),
                             parse_coin_json(member(doc, "right", "config"), "right"));
    if (model == "homogeneous")
      return field_homogeneous(parse_coin_json(member(doc, "coin", "config"), "coin"));
    throw ConfigError(fmt::format(
        "config.model: unknown model \"{}\" (expected one-defect, two-phase or homogeneous)",
        model));
  }

  CoinMatrix c_minus = parse_coin_json(member(doc, "c_minus", "config"), "c_minus");
  CoinMatrix c_plus = parse_coin_json(member(doc, "c_plus", "config"), "c_plus");

  std::vector<CoinMatrix> defects;
  std::optional<Site> first_pos;
  if (doc.contains("defects")) {
    const json& list = doc.at("defects");
    if (!list.is_array()) throw ConfigError("defects: expected an array");
    for (std::size_t i = 0; i < list.size(); ++i) {
      const std::string where = fmt::format("defects[{}]", i);
      const json& entry = list[i];
      if (entry.is_object() && entry.contains("pos")) {
        const Site pos = integer_at(entry.at("pos"), where + ".pos");
        if (i == 0) {
          first_pos = pos;
        } else if (!first_pos || pos != *first_pos + static_cast<Site>(i)) {
          throw ConfigError(fmt::format("{}.pos: defect positions must be consecutive", where));
        }
      } else if (first_pos) {
        throw ConfigError(fmt::format("{}: missing \"pos\" (earlier defects carry one)", where));
      }
      defects.push_back(parse_coin_json(entry, where));
    }
  }

  Site x_minus = 0;
  Site x_plus = 0;
  if (doc.contains("x_minus") || doc.contains("x_plus")) {
    x_minus = integer_at(member(doc, "x_minus", "config"), "x_minus");
    x_plus = integer_at(member(doc, "x_plus", "config"), "x_plus");
    if (first_pos && *first_pos != x_minus)
      throw ConfigError(fmt::format("defects[0].pos = {} disagrees with x_minus = {}", *first_pos,
                                    x_minus));
  } else if (first_pos) {
    x_minus = *first_pos;
    x_plus = *first_pos + static_cast<Site>(defects.size());
  } else if (!defects.empty()) {
    throw ConfigError("config: defects given without x_minus/x_plus or \"pos\"");
  }

  return CoinField(std::move(c_minus), std::move(c_plus), x_minus, x_plus, std::move(defects));
}

CoinField parse_field_config(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(fmt::format("config: malformed JSON: {}", e.what()));
  }
  return parse_field_json(doc);
}

json coin_to_json(const CoinMatrix& coin) {
  json rows = json::array();
  for (std::size_t r = 0; r < 3; ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < 3; ++c) row.push_back({coin.a(r, c).real(), coin.a(r, c).imag()});
    rows.push_back(std::move(row));
  }
  return json{{"rows", std::move(rows)}};
}

json field_to_json(const CoinField& field) {
  json defects = json::array();
  for (const auto& d : field.defects()) defects.push_back(coin_to_json(d));
  return json{{"c_minus", coin_to_json(field.c_minus())},
              {"c_plus", coin_to_json(field.c_plus())},
              {"x_minus", field.x_minus()},
              {"x_plus", field.x_plus()},
              {"defects", std::move(defects)}};
}

std::string serialize_field(const CoinField& field) { return field_to_json(field).dump(2); }

}  // namespace qw3
