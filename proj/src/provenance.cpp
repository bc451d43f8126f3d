#include "tenetdag/provenance.hpp"

#include <bit>
#include <fstream>
#include <algorithm>
#include <iterator>

#include "tenetdag/error.hpp"

namespace tenetdag {
namespace {

bool is_hex_digest(const AttrValue* v) {
    const auto* s = v ? std::get_if<std::string>(v) : nullptr;
    if (!s || s->size() != 64) return false;
    return std::all_of(s->begin(), s->end(), [](char c) { return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'f'); });
}

bool is_status(const AttrValue* v) {
    const auto* s = v ? std::get_if<std::string>(v) : nullptr;
    return s && (*s == status::Completed || *s == status::Failed || *s == status::Skipped);
}

} // namespace

DataSummary summarize(std::span<const std::uint8_t> payload) { return {sha256(payload), payload.size()}; }

Bytes encode_f64le(std::span<const double> values) {
    Bytes out;
    out.reserve(values.size() * 8);
    for (double v : values) {
        auto bits = std::bit_cast<std::uint64_t>(v);
        for (int i = 0; i < 8; ++i) out.push_back(static_cast<std::uint8_t>(bits >> (8 * i)));
    }
    return out;
}

std::vector<double> decode_f64le(std::span<const std::uint8_t> bytes) {
    if (bytes.size() % 8 != 0) throw InvalidArgument("f64 payload size " + std::to_string(bytes.size()) + " is not a multiple of 8");
    std::vector<double> out(bytes.size() / 8);
    for (std::size_t k = 0; k < out.size(); ++k) {
        std::uint64_t bits = 0;
        for (int i = 0; i < 8; ++i) bits |= static_cast<std::uint64_t>(bytes[8 * k + i]) << (8 * i);
        out[k] = std::bit_cast<double>(bits);
    }
    return out;
}

Signature TraceLog::digest() const {
    Sha256 h;
    for (const auto& e : events_) h.update(e).update(std::uint8_t{'\n'});
    return h.finish();
}

void validate_record(const ExecutionRecord& record) {
    std::vector<std::string> problems;
    const auto& g = record.graph;
    if (g.layer() != Layer::RG) problems.push_back("graph layer is " + std::string(layer_name(g.layer())) + ", expected RG");
    for (const auto& v : validate(g)) problems.push_back(v.message);
    for (const auto& c : g.components()) {
        switch (c.category) {
        case Category::ControlConstruct:
            break; // reported by validate()
        case Category::DataArtifact:
            if (!is_hex_digest(c.find(Layer::RG, field::DataSummary)))
                problems.push_back("data artifact '" + c.id + "' lacks a hex RG/Data-Summary");
            [[fallthrough]];
        case Category::ApplicationTask:
            if (!is_status(c.find(Layer::RG, field::Status)))
                problems.push_back("component '" + c.id + "' lacks a valid RG/Status");
            if (c.category == Category::ApplicationTask && !c.find(Layer::RG, field::Trace))
                problems.push_back("application task '" + c.id + "' lacks RG/Trace");
            break;
        }
    }
    if (problems.empty()) return;
    std::string msg = "invalid record:";
    for (const auto& p : problems) msg += "\n  " + p;
    throw RecordValidationError(msg);
}

nlohmann::json record_to_json(const ExecutionRecord& record) {
    nlohmann::json j;
    j["schema"] = kRecordSchema;
    j["run_id"] = record.run_id;
    j["meta"] = record.meta;
    j["graph"] = graph_to_json(record.graph);
    auto payloads = nlohmann::json::array();
    for (const auto& [hex, bytes] : record.payloads) payloads.push_back(hex);
    j["payloads"] = std::move(payloads);
    return j;
}

ExecutionRecord record_from_json(const nlohmann::json& j) {
    ExecutionRecord r;
    try {
        if (!j.is_object()) throw RecordParseError("record must be a JSON object");
        if (j.value("schema", -1) != kRecordSchema)
            throw RecordParseError("unsupported record schema " + (j.contains("schema") ? j["schema"].dump() : "<missing>"));
        r.run_id = j.at("run_id").get<std::string>();
        if (auto it = j.find("meta"); it != j.end()) r.meta = it->get<std::map<std::string, std::string>>();
        r.graph = graph_from_json(j.at("graph"));
    } catch (const RecordParseError&) {
        throw;
    } catch (const nlohmann::json::exception& ex) {
        throw RecordParseError(ex.what());
    } catch (const GraphParseError& ex) {
        throw RecordParseError(ex.what());
    } catch (const UnsupportedValueType& ex) {
        throw RecordParseError(ex.what());
    }
    validate_record(r);
    return r;
}

std::filesystem::path payload_dir(const std::filesystem::path& record_path) {
    return record_path.parent_path() / "payloads";
}

void write_record(const ExecutionRecord& record, const std::filesystem::path& path) {
    validate_record(record);
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    if (!record.payloads.empty()) {
        auto dir = payload_dir(path);
        std::filesystem::create_directories(dir);
        for (const auto& [hex, bytes] : record.payloads) {
            auto file = dir / (hex + ".bin");
            if (std::filesystem::exists(file) && std::filesystem::file_size(file) == bytes.size()) continue;
            std::ofstream out(file, std::ios::binary);
            out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
            if (!out) throw Error("failed writing payload " + file.string());
        }
    }
    std::ofstream out(path);
    if (!out) throw Error("cannot open " + path.string() + " for writing");
    out << record_to_json(record).dump(2) << '\n';
    if (!out) throw Error("failed writing " + path.string());
}

ExecutionRecord read_record(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw RecordParseError("cannot open record " + path.string());
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& ex) {
        throw RecordParseError(path.string() + ": " + ex.what());
    }
    return record_from_json(j);
}

Bytes load_payload(const std::filesystem::path& record_path, const std::string& digest_hex) {
    auto file = payload_dir(record_path) / (digest_hex + ".bin");
    std::ifstream in(file, std::ios::binary);
    if (!in) throw RecordParseError("missing payload " + file.string());
    Bytes bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (sha256(bytes).hex() != digest_hex) throw RecordValidationError("payload " + file.string() + " does not match its digest");
    return bytes;
}

} // namespace tenetdag
