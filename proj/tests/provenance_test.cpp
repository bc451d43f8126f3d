#include "doctest.h"

#include <filesystem>
#include <fstream>

#include "tenetdag/demo.hpp"
#include "tenetdag/error.hpp"
#include "tenetdag/provenance.hpp"
#include "tenetdag/tenets.hpp"

using namespace tenetdag;

namespace {

std::filesystem::path scratch(const std::string& name) {
    auto dir = std::filesystem::temp_directory_path() / ("tenetdag_provenance_" + name);
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

ExecutionRecord demo_record() {
    demo::TrialSpec spec;
    spec.deterministic_trace = true;
    return demo::execute(spec);
}

} // namespace

TEST_CASE("data summaries") {
    auto empty = summarize({});
    CHECK(empty.digest.hex() == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
    CHECK(empty.volume == 0);
    std::vector<double> one{1.0};
    Bytes bytes = encode_f64le(one);
    CHECK(bytes == Bytes{0, 0, 0, 0, 0, 0, 0xf0, 0x3f});
    CHECK(summarize(bytes).volume == 8);
    CHECK(decode_f64le(bytes) == one);
    CHECK_THROWS_AS(decode_f64le(Bytes(7)), InvalidArgument);
}

TEST_CASE("trace digest") {
    TraceLog log;
    log.add("a");
    log.add("b");
    CHECK(log.digest() == sha256(std::string_view("a\nb\n")));
    TraceLog other;
    other.add("ab");
    CHECK(other.digest() != log.digest());
}

TEST_CASE("record round trip through disk") {
    auto dir = scratch("roundtrip");
    ExecutionRecord rec = demo_record();
    write_record(rec, dir / "r.json");
    ExecutionRecord back = read_record(dir / "r.json");
    CHECK(back.run_id == rec.run_id);
    CHECK(back.meta == rec.meta);
    CHECK(graph_to_json(back.graph) == graph_to_json(rec.graph));
    CHECK(sign_all(back) == sign_all(rec));

    const auto* summary = back.graph.find("window")->find(Layer::RG, field::DataSummary);
    auto payload = load_payload(dir / "r.json", std::get<std::string>(*summary));
    CHECK(payload.size() == 33 * 8);

    auto file = payload_dir(dir / "r.json") / (std::get<std::string>(*summary) + ".bin");
    std::ofstream(file, std::ios::binary) << "tampered";
    CHECK_THROWS_AS(load_payload(dir / "r.json", std::get<std::string>(*summary)), RecordValidationError);
    std::filesystem::remove_all(dir);
}

TEST_CASE("validation rejects incomplete records") {
    ExecutionRecord rec = demo_record();
    CHECK_NOTHROW(validate_record(rec));

    ExecutionRecord no_status = rec;
    no_status.graph.find("window")->erase(Layer::RG, field::Status);
    CHECK_THROWS_AS(validate_record(no_status), RecordValidationError);

    ExecutionRecord bad_summary = rec;
    bad_summary.graph.find("window")->set(Layer::RG, field::DataSummary, std::string("xyz"));
    CHECK_THROWS_AS(validate_record(bad_summary), RecordValidationError);

    ExecutionRecord no_trace = rec;
    no_trace.graph.find("sine")->erase(Layer::RG, field::Trace);
    CHECK_THROWS_AS(validate_record(no_trace), RecordValidationError);

    ExecutionRecord wrong_layer = rec;
    wrong_layer.graph.set_layer(Layer::PG);
    CHECK_THROWS_AS(validate_record(wrong_layer), RecordValidationError);
}

TEST_CASE("record parse errors") {
    auto j = record_to_json(demo_record());
    CHECK_NOTHROW(record_from_json(j));
    auto bad_schema = j;
    bad_schema["schema"] = 99;
    CHECK_THROWS_AS(record_from_json(bad_schema), RecordParseError);
    auto no_graph = j;
    no_graph.erase("graph");
    CHECK_THROWS_AS(record_from_json(no_graph), RecordParseError);
    auto bad_value = j;
    bad_value["graph"]["components"][0]["attributes"]["LGT"]["Type"] = nullptr;
    CHECK_THROWS_AS(record_from_json(bad_value), RecordParseError);

    auto dir = scratch("parse");
    std::ofstream(dir / "broken.json") << "{ not json";
    CHECK_THROWS_AS(read_record(dir / "broken.json"), RecordParseError);
    CHECK_THROWS_AS(read_record(dir / "missing.json"), RecordParseError);
    std::filesystem::remove_all(dir);
}

TEST_CASE("meta is opaque to every signature") {
    ExecutionRecord rec = demo_record();
    ExecutionRecord other = rec;
    other.meta["created"] = "1970-01-01T00:00:00Z";
    other.meta["note"] = "anything";
    CHECK(sign_all(other) == sign_all(rec));
}
