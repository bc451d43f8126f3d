// tenetdag: run the lowpass demo, sign execution records, and compare them
// against the reproducibility tenets.
//
// Exit codes: 0 success (compare: all requested tenets match), 1 runtime
// error or validation failure, 2 unreadable input, 3 compare mismatch.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "tenetdag/blockdag.hpp"
#include "tenetdag/demo.hpp"
#include "tenetdag/error.hpp"
#include "tenetdag/field_matrix.hpp"
#include "tenetdag/provenance.hpp"
#include "tenetdag/tenets.hpp"

using namespace tenetdag;

namespace {

constexpr int kExitError = 1;
constexpr int kExitParse = 2;
constexpr int kExitMismatch = 3;

FieldMatrix resolve_matrix(const std::string& flag) {
    if (!flag.empty()) return load_matrix(flag);
    if (const char* env = std::getenv("TENETDAG_MATRIX"); env && *env) return load_matrix(env);
    return default_matrix();
}

std::vector<Tenet> resolve_tenets(const std::string& which) {
    if (which == "all") return {kAllTenets.begin(), kAllTenets.end()};
    auto t = parse_tenet(which);
    if (!t) throw InvalidArgument("unknown tenet '" + which + "'");
    return {*t};
}

void print_signature(Tenet t, const Signature& s) {
    std::string label(tenet_label(t));
    label.resize(5, ' ');
    std::cout << label << ' ' << s.short_hex() << ' ' << s.hex() << '\n';
}

bool is_parse_error(const std::exception& ex) {
    return dynamic_cast<const RecordParseError*>(&ex) || dynamic_cast<const RecordValidationError*>(&ex) ||
           dynamic_cast<const MatrixParseError*>(&ex) || dynamic_cast<const GraphParseError*>(&ex) ||
           dynamic_cast<const nlohmann::json::exception*>(&ex);
}

struct SignalFlags {
    std::size_t length = 512;
    double stddev = 0.1;
    std::size_t window = 33;

    void attach(CLI::App* cmd) {
        cmd->add_option("--length", length, "Signal length in samples")->capture_default_str();
        cmd->add_option("--stddev", stddev, "Noise standard deviation")->capture_default_str();
        cmd->add_option("--window", window, "Hann window size")->capture_default_str();
    }
    dsp::SignalConfig config() const {
        dsp::SignalConfig cfg;
        cfg.length = length;
        cfg.noise_stddev = stddev;
        cfg.window_size = window;
        return cfg;
    }
};

dsp::FilterMethod to_method(const std::string& name) {
    auto m = dsp::parse_method(name);
    if (!m) throw InvalidArgument("unknown method '" + name + "' (expected pointwise, fft-iter, fft-rec)");
    return *m;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Workflow reproducibility signatures over BlockDAGs"};
    app.require_subcommand(1);
    std::string matrix_path;
    app.add_option("--matrix", matrix_path, "Field matrix JSON (default: $TENETDAG_MATRIX or built-in)");

    // run
    auto* run = app.add_subcommand("run", "Execute one lowpass trial and write its record");
    std::string run_method = "pointwise";
    std::uint64_t run_seed = 0;
    bool run_extended = false;
    std::string run_out = "record.json";
    bool run_deterministic = false;
    std::string run_id = "deterministic";
    SignalFlags run_signal;
    run->add_option("--method", run_method, "pointwise | fft-iter | fft-rec")->capture_default_str();
    run->add_option("--seed", run_seed, "Noise seed")->capture_default_str();
    run->add_flag("--extended", run_extended, "Append the NCC stage");
    run->add_option("--out", run_out, "Record path")->capture_default_str();
    run->add_flag("--deterministic-trace", run_deterministic, "Pin the run id so traces repeat");
    run->add_option("--run-id", run_id, "Run id used with --deterministic-trace")->capture_default_str();
    run_signal.attach(run);

    // sign
    auto* sign_cmd = app.add_subcommand("sign", "Print tenet signatures of a record");
    std::string sign_record;
    std::string sign_tenet = "all";
    std::string sign_dump;
    sign_cmd->add_option("record", sign_record, "Record JSON")->required();
    sign_cmd->add_option("--tenet", sign_tenet, "all or a tenet name")->capture_default_str();
    sign_cmd->add_option("--dump-blockdag", sign_dump, "Write the BlockDAG of the (single) tenet as JSON");

    // compare
    auto* cmp = app.add_subcommand("compare", "Compare two records tenet by tenet");
    std::string cmp_a, cmp_b, cmp_tenet = "all";
    bool cmp_json = false;
    cmp->add_option("record_a", cmp_a, "First record")->required();
    cmp->add_option("record_b", cmp_b, "Second record")->required();
    cmp->add_option("--tenet", cmp_tenet, "all or a tenet name")->capture_default_str();
    cmp->add_flag("--json", cmp_json, "Emit JSON reports");

    // batch
    auto* batch = app.add_subcommand("batch", "Run methods x trials and tabulate signatures");
    std::vector<std::string> batch_methods{"pointwise", "fft-iter", "fft-rec"};
    std::size_t batch_trials = 10;
    bool batch_extended = false;
    bool batch_deterministic = false;
    std::string batch_out = "batch";
    SignalFlags batch_signal;
    batch->add_option("--methods", batch_methods, "Filter methods")->delimiter(',')->capture_default_str();
    batch->add_option("--trials", batch_trials, "Seeds 0..N-1 per method")->capture_default_str();
    batch->add_flag("--extended", batch_extended, "Append the NCC stage");
    batch->add_flag("--deterministic-trace", batch_deterministic, "Pin run ids per trial");
    batch->add_option("--out-dir", batch_out, "Output directory")->capture_default_str();
    batch_signal.attach(batch);

    // validate
    auto* val = app.add_subcommand("validate", "Validate a workflow graph or record file");
    std::string val_path;
    val->add_option("file", val_path, "Graph or record JSON")->required();

    // matrix-dump
    auto* dump = app.add_subcommand("matrix-dump", "Print the active field matrix as JSON");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*run) {
            demo::TrialSpec spec;
            spec.method = to_method(run_method);
            spec.seed = run_seed;
            spec.extended = run_extended;
            spec.signal = run_signal.config();
            spec.deterministic_trace = run_deterministic;
            spec.run_id = run_id;
            FieldMatrix matrix = resolve_matrix(matrix_path);
            ExecutionRecord record = demo::execute(spec);
            write_record(record, run_out);
            std::cout << "record " << run_out << '\n';
            auto sigs = sign_all(record, matrix);
            for (std::size_t i = 0; i < kAllTenets.size(); ++i) print_signature(kAllTenets[i], sigs[i]);
            return 0;
        }

        if (*sign_cmd) {
            FieldMatrix matrix = resolve_matrix(matrix_path);
            auto tenets = resolve_tenets(sign_tenet);
            ExecutionRecord record = read_record(sign_record);
            for (Tenet t : tenets) {
                BlockDAG bdag = build_blockdag(record, t, matrix);
                print_signature(t, workflow_signature(bdag));
                if (!sign_dump.empty() && tenets.size() == 1) std::ofstream(sign_dump) << blockdag_to_json(bdag).dump(2) << '\n';
            }
            if (!sign_dump.empty() && tenets.size() != 1) {
                std::cerr << "--dump-blockdag needs a single --tenet\n";
                return kExitError;
            }
            return 0;
        }

        if (*cmp) {
            FieldMatrix matrix = resolve_matrix(matrix_path);
            auto tenets = resolve_tenets(cmp_tenet);
            ExecutionRecord a = read_record(cmp_a);
            ExecutionRecord b = read_record(cmp_b);
            bool all_match = true;
            auto reports = nlohmann::json::array();
            for (Tenet t : tenets) {
                ComparisonReport report = compare(a, b, t, matrix);
                all_match = all_match && report.match;
                if (cmp_json) reports.push_back(report_to_json(report));
                else std::cout << render_report(report);
            }
            if (cmp_json) std::cout << reports.dump(2) << '\n';
            return all_match ? 0 : kExitMismatch;
        }

        if (*batch) {
            demo::BatchOptions options;
            options.methods.clear();
            for (const auto& m : batch_methods) options.methods.push_back(to_method(m));
            options.trials = batch_trials;
            options.extended = batch_extended;
            options.deterministic_trace = batch_deterministic;
            options.signal = batch_signal.config();
            options.out_dir = batch_out;
            FieldMatrix matrix = resolve_matrix(matrix_path);
            options.matrix = &matrix;
            auto result = demo::run_batch(options);
            std::cout << demo::render_table(result.rows);
            std::cout << "wrote " << result.rows.size() << " records and summary.{txt,json} to " << batch_out << '\n';
            return 0;
        }

        if (*val) {
            std::ifstream in(val_path);
            if (!in) throw RecordParseError("cannot open " + val_path);
            nlohmann::json j;
            try {
                in >> j;
            } catch (const nlohmann::json::exception& ex) {
                throw GraphParseError(val_path + ": " + ex.what());
            }
            ValidationReport report;
            if (j.is_object() && j.contains("schema")) {
                try {
                    ExecutionRecord record = record_from_json(j);
                    report = validate_fields(record.graph, resolve_matrix(matrix_path));
                } catch (const RecordValidationError& ex) {
                    std::cout << ex.what() << '\n';
                    return kExitError;
                }
            } else {
                WorkflowGraph graph = graph_from_json(j);
                report = validate(graph);
                if (report.empty()) report = validate_fields(graph, resolve_matrix(matrix_path));
            }
            for (const auto& v : report) std::cout << violation_kind_name(v.kind) << ": " << v.message << '\n';
            if (report.empty()) std::cout << "valid\n";
            return report.empty() ? 0 : kExitError;
        }

        if (*dump) {
            std::cout << matrix_to_json(resolve_matrix(matrix_path)).dump(2) << '\n';
            return 0;
        }
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << '\n';
        return is_parse_error(ex) ? kExitParse : kExitError;
    }
    return 0;
}
