#include "tenetdag/value.hpp"

#include <charconv>
#include <cmath>

#include "tenetdag/error.hpp"

namespace tenetdag {
namespace {

void append_escaped(std::string& out, std::string_view text, char special) {
    for (char c : text) {
        if (c == '\\' || c == special) out.push_back('\\');
        out.push_back(c);
    }
}

void encode_scalar(std::string& out, const Scalar& s) {
    if (const auto* str = std::get_if<std::string>(&s)) {
        out += "s:";
        append_escaped(out, *str, ',');
    } else if (const auto* i = std::get_if<std::int64_t>(&s)) {
        out += "i:";
        out += std::to_string(*i);
    } else {
        double d = std::get<double>(s);
        if (!std::isfinite(d)) throw UnsupportedValueType("non-finite decimal value");
        char buf[64];
        auto [end, ec] = std::to_chars(buf, buf + sizeof buf, d);
        out += "d:";
        out.append(buf, end);
    }
}

Scalar scalar_from_json(const nlohmann::json& j) {
    if (j.is_string()) return j.get<std::string>();
    if (j.is_number_integer()) return j.get<std::int64_t>();
    if (j.is_number_float()) return j.get<double>();
    throw UnsupportedValueType("unsupported attribute value: " + j.dump());
}

nlohmann::json scalar_to_json(const Scalar& s) {
    return std::visit([](const auto& v) { return nlohmann::json(v); }, s);
}

} // namespace

std::string encode_value(const AttrValue& value) {
    std::string out;
    if (const auto* list = std::get_if<ScalarList>(&value)) {
        out += "l:";
        for (std::size_t i = 0; i < list->size(); ++i) {
            if (i) out.push_back(',');
            encode_scalar(out, (*list)[i]);
        }
        return out;
    }
    std::visit(
        [&out](const auto& v) {
            if constexpr (!std::is_same_v<std::decay_t<decltype(v)>, ScalarList>) encode_scalar(out, Scalar{v});
        },
        value);
    return out;
}

std::string escape_key(std::string_view key) {
    std::string out;
    append_escaped(out, key, '=');
    return out;
}

std::string canonicalize(std::string_view key, const AttrValue& value) {
    std::string out = escape_key(key);
    out.push_back('=');
    out += encode_value(value);
    return out;
}

nlohmann::json value_to_json(const AttrValue& value) {
    if (const auto* list = std::get_if<ScalarList>(&value)) {
        auto arr = nlohmann::json::array();
        for (const auto& s : *list) arr.push_back(scalar_to_json(s));
        return arr;
    }
    return std::visit(
        [](const auto& v) -> nlohmann::json {
            if constexpr (std::is_same_v<std::decay_t<decltype(v)>, ScalarList>) return {};
            else return nlohmann::json(v);
        },
        value);
}

AttrValue value_from_json(const nlohmann::json& j) {
    if (j.is_array()) {
        ScalarList list;
        list.reserve(j.size());
        for (const auto& e : j) list.push_back(scalar_from_json(e));
        return list;
    }
    Scalar s = scalar_from_json(j);
    return std::visit([](auto v) { return AttrValue{std::move(v)}; }, std::move(s));
}

ScalarList string_list(const std::vector<std::string>& items) {
    return ScalarList(items.begin(), items.end());
}

} // namespace tenetdag
