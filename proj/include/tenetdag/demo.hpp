#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "tenetdag/field_matrix.hpp"
#include "tenetdag/provenance.hpp"
#include "tenetdag/signal.hpp"
#include "tenetdag/workflow.hpp"

namespace tenetdag::demo {

inline constexpr std::string_view kEngineVersion = "tenetdag-demo 1.0";

/// One lowpass trial: which filter, which noise seed, and whether the
/// NCC stage is appended.
struct TrialSpec {
    dsp::FilterMethod method = dsp::FilterMethod::PointwiseDirect;
    std::uint64_t seed = 0;
    bool extended = false;
    /// `seed` above overrides signal.seed.
    dsp::SignalConfig signal{};
    /// Pins the run id so traces (and Recompute signatures) repeat.
    bool deterministic_trace = false;
    std::string run_id = "deterministic";
    /// Fault injection: this component fails when executed.
    std::optional<std::string> fail_component;
};

/// Trial name: `<method title>[-ncc]-<seed>`.
std::string trial_name(const TrialSpec& spec);

/// Logical graph (layer LG) for the plain or NCC-extended lowpass workflow.
/// Components that are physically realized later already carry their PGS
/// store hints.
WorkflowGraph build_demo_graph(const TrialSpec& spec);

/// Throws NonPowerOfTwoLength or InvalidArgument for specs that cannot run.
void check_spec(const TrialSpec& spec);

/// Unrolls, partitions onto a single local node, and runs every task in
/// topological order. A failing task is recorded as `failed` and everything
/// downstream as `skipped`; the record is still returned.
ExecutionRecord execute(const TrialSpec& spec);

struct TrialRow {
    std::string trial;
    dsp::FilterMethod method = dsp::FilterMethod::PointwiseDirect;
    std::uint64_t seed = 0;
    bool failed = false;
    std::array<Signature, 7> signatures{};
    std::filesystem::path record_path;
};

struct BatchOptions {
    std::vector<dsp::FilterMethod> methods{std::begin(dsp::kAllMethods), std::end(dsp::kAllMethods)};
    std::size_t trials = 10;
    bool extended = false;
    bool deterministic_trace = false;
    dsp::SignalConfig signal{};
    /// When set, each record plus summary.txt and summary.json go here.
    std::optional<std::filesystem::path> out_dir;
    const FieldMatrix* matrix = nullptr;
};

struct BatchResult {
    std::vector<TrialRow> rows;
    /// Only populated when no out_dir is given.
    std::vector<ExecutionRecord> records;
};

/// Runs methods x seeds 0..trials-1 (trials in parallel) and returns rows
/// sorted by (method, seed).
BatchResult run_batch(const BatchOptions& options);

/// Aligned table with 5-character signature prefixes.
std::string render_table(const std::vector<TrialRow>& rows);
/// Same rows with full 64-character signatures.
nlohmann::json table_to_json(const std::vector<TrialRow>& rows, bool extended);

} // namespace tenetdag::demo
