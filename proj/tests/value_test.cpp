#include "doctest.h"

#include <limits>

#include "tenetdag/error.hpp"
#include "tenetdag/value.hpp"

using namespace tenetdag;

TEST_CASE("typed encodings") {
    CHECK(canonicalize("Type", std::string("memory")) == "Type=s:memory");
    CHECK(canonicalize("Num-CPUs", std::int64_t{1}) == "Num-CPUs=i:1");
    CHECK(canonicalize("Field-Keys", string_list({"a", "b"})) == "Field-Keys=l:s:a,s:b");
    CHECK(encode_value(0.5) == "d:0.5");
    CHECK(encode_value(0.1) == "d:0.1");
    CHECK(encode_value(std::int64_t{-7}) == "i:-7");
    CHECK(encode_value(ScalarList{}) == "l:");
    CHECK(encode_value(ScalarList{std::int64_t{1}, 2.0, std::string("x")}) == "l:i:1,d:2,s:x");
}

TEST_CASE("integer and decimal with equal magnitude stay distinct") {
    CHECK(encode_value(std::int64_t{2}) != encode_value(2.0));
    CHECK(encode_value(std::string("1")) != encode_value(std::int64_t{1}));
}

TEST_CASE("escaping keeps lists and keys unambiguous") {
    // one element holding a comma vs two elements
    CHECK(encode_value(string_list({"a,b"})) != encode_value(string_list({"a", "b"})));
    CHECK(encode_value(string_list({"a,b"})) == "l:s:a\\,b");
    CHECK(encode_value(std::string("a\\")) == "s:a\\\\");
    CHECK(canonicalize("k=v", std::string("x")) != canonicalize("k", std::string("v=s:x")));
    CHECK(escape_key("a=b\\c") == "a\\=b\\\\c");
}

TEST_CASE("non-finite decimals are rejected") {
    CHECK_THROWS_AS(encode_value(std::numeric_limits<double>::quiet_NaN()), UnsupportedValueType);
    CHECK_THROWS_AS(encode_value(ScalarList{std::numeric_limits<double>::infinity()}), UnsupportedValueType);
}

TEST_CASE("json round trip") {
    std::vector<AttrValue> values{std::string("s"), std::int64_t{42}, 1.25, string_list({"x", "y"}),
                                  ScalarList{std::int64_t{3}, 0.75}};
    for (const auto& v : values) {
        auto back = value_from_json(value_to_json(v));
        CHECK(encode_value(back) == encode_value(v));
    }
}

TEST_CASE("unsupported json values") {
    CHECK_THROWS_AS(value_from_json(nlohmann::json(true)), UnsupportedValueType);
    CHECK_THROWS_AS(value_from_json(nlohmann::json(nullptr)), UnsupportedValueType);
    CHECK_THROWS_AS(value_from_json(nlohmann::json::object()), UnsupportedValueType);
    CHECK_THROWS_AS(value_from_json(nlohmann::json::parse("[[1]]")), UnsupportedValueType);
}
