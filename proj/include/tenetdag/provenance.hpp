#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "tenetdag/hash.hpp"
#include "tenetdag/workflow.hpp"

namespace tenetdag {

using Bytes = std::vector<std::uint8_t>;

/// Persisted provenance of one workflow run. Only `graph` feeds signatures;
/// `run_id` reaches them indirectly through RG/Trace, and `meta` never does.
struct ExecutionRecord {
    WorkflowGraph graph{Layer::RG};
    std::string run_id;
    std::map<std::string, std::string> meta;
    /// Artifact payloads by digest hex. Stored out-of-line on disk.
    std::map<std::string, Bytes> payloads;
};

inline constexpr int kRecordSchema = 1;

namespace status {
inline constexpr std::string_view Completed = "completed";
inline constexpr std::string_view Failed = "failed";
inline constexpr std::string_view Skipped = "skipped";
} // namespace status

struct DataSummary {
    Signature digest;
    std::uint64_t volume = 0;
};

DataSummary summarize(std::span<const std::uint8_t> payload);

/// Little-endian IEEE-754 binary64, the payload format for numeric artifacts.
Bytes encode_f64le(std::span<const double> values);
/// Throws InvalidArgument if the size is not a multiple of 8.
std::vector<double> decode_f64le(std::span<const std::uint8_t> bytes);

/// Ordered execution event log whose digest becomes RG/Trace.
class TraceLog {
public:
    void add(std::string event) { events_.push_back(std::move(event)); }
    const std::vector<std::string>& events() const { return events_; }
    /// SHA-256 over the events, each terminated by '\n'.
    Signature digest() const;

private:
    std::vector<std::string> events_;
};

/// Throws RecordValidationError describing the first problems found.
void validate_record(const ExecutionRecord& record);

nlohmann::json record_to_json(const ExecutionRecord& record);
/// Parses and validates. Payloads are not loaded.
ExecutionRecord record_from_json(const nlohmann::json& j);

/// Payload directory shared by all records written to the same directory.
std::filesystem::path payload_dir(const std::filesystem::path& record_path);

/// Writes the record JSON and its payloads (content-addressed, under
/// payload_dir). Existing payload files with the same digest are reused.
void write_record(const ExecutionRecord& record, const std::filesystem::path& path);
/// Throws RecordParseError or RecordValidationError.
ExecutionRecord read_record(const std::filesystem::path& path);
/// Reads one payload and checks it against its digest.
Bytes load_payload(const std::filesystem::path& record_path, const std::string& digest_hex);

} // namespace tenetdag
