#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "json.hpp"

namespace tenetdag {

using Scalar = std::variant<std::string, std::int64_t, double>;
using ScalarList = std::vector<Scalar>;

/// Attribute value carried by a component: a scalar or a flat list of scalars.
using AttrValue = std::variant<std::string, std::int64_t, double, ScalarList>;

/// Typed rendering of a value: `s:text`, `i:42`, `d:0.5`, `l:s:a,s:b`.
/// Backslash and comma inside strings are escaped so list splitting stays
/// unambiguous. Decimals use the shortest round-trip form. Throws
/// UnsupportedValueType for non-finite decimals.
std::string encode_value(const AttrValue& value);

/// Key with `\` and `=` backslash-escaped.
std::string escape_key(std::string_view key);

/// `escape_key(key)=typed-value`.
std::string canonicalize(std::string_view key, const AttrValue& value);

nlohmann::json value_to_json(const AttrValue& value);
/// Strings, integers, floats, and flat arrays of those. Anything else
/// (bool, null, objects, nested arrays) raises UnsupportedValueType.
AttrValue value_from_json(const nlohmann::json& j);

ScalarList string_list(const std::vector<std::string>& items);

} // namespace tenetdag
