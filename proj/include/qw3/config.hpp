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

#pragma once

#include <string>
#include <string_view>

#include "json.hpp"
#include "qw3/coin.hpp"

namespace qw3 {

// Coin field configuration (JSON).
//
// General form:
//   {"c_minus": <coin>, "c_plus": <coin>, "x_minus": int, "x_plus": int,
//    "defects": [<coin>, ...]}
// Shorthands:
//   {"model": "one-defect", "bulk": <coin>, "origin": <coin>}
//   {"model": "two-phase", "left": <coin>, "right": <coin>}
//   {"model": "homogeneous", "coin": <coin>}
// Coins:
//   {"preset": "fourier" | "grover", "phase": float}  (phase defaults to 0)
//   {"rows": [[[re, im] x 3] x 3]}
// A defect entry may carry "pos"; positions must be consecutive, and when
// x_minus/x_plus are omitted the window is taken from them.
//
// All failures throw ConfigError naming the offending location.

CoinField parse_field_config(std::string_view text);
CoinField parse_field_json(const nlohmann::json& doc);
CoinMatrix parse_coin_json(const nlohmann::json& node, const std::string& where = "coin");

/// General form with every coin written as explicit rows.
nlohmann::json field_to_json(const CoinField& field);
nlohmann::json coin_to_json(const CoinMatrix& coin);

/// Canonical serialization; parse_field_config(serialize_field(f)) reproduces f.
std::string serialize_field(const CoinField& field);

}  // namespace qw3
