#include "tenetdag/demo.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <map>
#include <mutex>
#include <numeric>
#include <random>
#include <sstream>
#include <thread>

#include "tenetdag/blockdag.hpp"
#include "tenetdag/error.hpp"
#include "tenetdag/tenets.hpp"

namespace tenetdag::demo {
namespace {

using dsp::FilterMethod;
using Params = std::vector<std::pair<std::string, AttrValue>>;

constexpr std::string_view kLocal = "local";
constexpr std::string_view kLocalAddress = "127.0.0.1";

void set_params(Component& c, const Params& params) {
    std::vector<std::string> keys, values;
    for (const auto& [k, v] : params) {
        keys.push_back(k);
        values.push_back(k + "=" + encode_value(v));
    }
    c.set(Layer::LG, field::FieldKeys, string_list(keys));
    c.set(Layer::LG, field::FieldValues, string_list(values));
}

Component make_task(std::string id, std::string type, std::vector<std::string> in_ports,
                    std::vector<std::string> out_ports, const Params& params) {
    Component c{id, Category::ApplicationTask, {}};
    c.set(Layer::LGT, field::Type, std::move(type));
    c.set(Layer::LGT, field::InPorts, string_list(in_ports));
    c.set(Layer::LGT, field::OutPorts, string_list(out_ports));
    c.set(Layer::LG, field::NumCpus, std::int64_t{1});
    set_params(c, params);
    c.set(Layer::PGS, field::Type, std::string("NativeApp"));
    c.set(Layer::PGS, field::Name, std::move(id));
    return c;
}

Component make_artifact(std::string id, std::string type, std::string producer, std::vector<std::string> consumers,
                        std::size_t volume, bool file) {
    Component c{id, Category::DataArtifact, {}};
    c.set(Layer::LGT, field::Type, std::move(type));
    c.set(Layer::LGT, field::InPorts, string_list({producer}));
    c.set(Layer::LGT, field::OutPorts, string_list(consumers));
    set_params(c, {{"encoding", std::string("f64le")}});
    c.set(Layer::LG, field::DataVolume, static_cast<std::int64_t>(volume));
    c.set(Layer::LG, field::Filenames, file ? string_list({id + ".f64"}) : ScalarList{});
    c.set(Layer::PGS, field::Type, std::string(file ? "FileArtifact" : "MemoryArtifact"));
    c.set(Layer::PGS, field::StorageType, std::string(file ? "file" : "memory"));
    return c;
}

Params filter_params(FilterMethod method) {
    switch (method) {
    case FilterMethod::PointwiseDirect: return {{"convolution", std::string("direct")}};
    case FilterMethod::FftIterative:
        return {{"fft_algorithm", std::string("radix2-iterative")}, {"twiddle_table", std::string("precomputed")}};
    case FilterMethod::FftRecursive:
        return {{"fft_algorithm", std::string("radix2-recursive")}, {"twiddle_recurrence", std::string("per-call")}};
    }
    return {};
}

ScalarList as_scalars(const std::vector<double>& xs) { return ScalarList(xs.begin(), xs.end()); }

std::string random_run_id() {
    std::random_device rd;
    std::ostringstream os;
    os << std::hex << std::setfill('0');
    for (int i = 0; i < 4; ++i) os << std::setw(8) << rd();
    return os.str();
}

std::string utc_timestamp() {
    auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    std::ostringstream os;
    os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
    return os.str();
}

const std::string& string_attr(const Component& c, Layer layer, std::string_view name) {
    return std::get<std::string>(*c.find(layer, name));
}

dsp::SignalConfig effective_signal(const TrialSpec& spec) {
    dsp::SignalConfig cfg = spec.signal;
    cfg.seed = spec.seed;
    return cfg;
}

} // namespace

std::string trial_name(const TrialSpec& spec) {
    return std::string(dsp::method_title(spec.method)) + (spec.extended ? "-ncc-" : "-") + std::to_string(spec.seed);
}

void check_spec(const TrialSpec& spec) {
    const auto& s = spec.signal;
    if (s.length < 1) throw InvalidArgument("signal length must be positive");
    if (dsp::uses_fft(spec.method) && !dsp::is_power_of_two(s.length))
        throw NonPowerOfTwoLength("method " + std::string(dsp::method_name(spec.method)) + " needs a power-of-two length, got " +
                                  std::to_string(s.length));
    if (s.window_size < 2 || s.window_size > s.length)
        throw InvalidArgument("window size must be in [2, length], got " + std::to_string(s.window_size));
    if (!(s.sample_rate > 0.0)) throw InvalidArgument("sample rate must be positive");
    if (!(s.noise_stddev >= 0.0)) throw InvalidArgument("noise stddev must be non-negative");
}

WorkflowGraph build_demo_graph(const TrialSpec& spec) {
    const dsp::SignalConfig cfg = effective_signal(spec);
    const std::size_t signal_bytes = cfg.length * 8;
    const int digits = dsp::PrecisionRule::for_length(cfg.length).digits;

    WorkflowGraph g(Layer::LG);
    g.add_component(make_task("sine", "GenerateSine", {}, {"signal"},
                              {{"frequencies", as_scalars(cfg.frequencies)},
                               {"length", static_cast<std::int64_t>(cfg.length)},
                               {"sample_rate", cfg.sample_rate}}));
    g.add_component(make_artifact("sine_signal", "Signal", "sine.signal", {"add_noise.signal"}, signal_bytes, false));
    g.add_component(make_task("add_noise", "AddNoise", {"signal"}, {"signal"},
                              {{"seed", static_cast<std::int64_t>(cfg.seed)}, {"stddev", cfg.noise_stddev}}));

    std::vector<std::string> noisy_consumers{"lowpass_filter.signal"};
    if (spec.extended) noisy_consumers.push_back("ncc.reference");
    g.add_component(make_artifact("noisy_signal", "Signal", "add_noise.signal", noisy_consumers, signal_bytes, false));

    g.add_component(make_task("hann_window", "HannWindow", {}, {"window"},
                              {{"window_size", static_cast<std::int64_t>(cfg.window_size)}}));
    g.add_component(make_artifact("window", "Window", "hann_window.window", {"lowpass_filter.window"},
                                  cfg.window_size * 8, false));
    g.add_component(make_task("lowpass_filter", "LowpassFilter", {"signal", "window"}, {"filtered"},
                              filter_params(spec.method)));

    if (!spec.extended) {
        g.add_component(make_artifact("filtered_signal", "Signal", "lowpass_filter.filtered", {}, signal_bytes, true));
    } else {
        g.add_component(make_artifact("filtered_signal", "Signal", "lowpass_filter.filtered", {"ncc.filtered"},
                                      signal_bytes, false));
        g.add_component(make_task("ncc", "NormalizedCrossCorrelation", {"filtered", "reference"}, {"ncc"},
                                  {{"estimator", std::string("energy-normalized")},
                                   {"precision_digits", static_cast<std::int64_t>(digits)}}));
        g.add_component(make_artifact("ncc_result", "Scalar", "ncc.ncc", {}, 8, true));
    }

    g.add_edge("sine", "sine_signal");
    g.add_edge("sine_signal", "add_noise");
    g.add_edge("add_noise", "noisy_signal");
    g.add_edge("noisy_signal", "lowpass_filter");
    g.add_edge("hann_window", "window");
    g.add_edge("window", "lowpass_filter");
    g.add_edge("lowpass_filter", "filtered_signal");
    if (spec.extended) {
        g.add_edge("filtered_signal", "ncc");
        g.add_edge("noisy_signal", "ncc");
        g.add_edge("ncc", "ncc_result");
    }
    return g;
}

ExecutionRecord execute(const TrialSpec& spec) {
    check_spec(spec);
    const dsp::SignalConfig cfg = effective_signal(spec);

    WorkflowGraph physical = unroll(build_demo_graph(spec), {});
    std::map<std::string, Placement, std::less<>> assignment;
    for (const auto& c : physical.components()) assignment[c.id] = {std::string(kLocal), std::string(kLocal)};
    WorkflowGraph graph = partition(physical, assignment, {{std::string(kLocal), std::string(kLocalAddress)}});

    ExecutionRecord record;
    record.run_id = spec.deterministic_trace ? spec.run_id : random_run_id();
    record.meta = {{"engine_version", std::string(kEngineVersion)},
                   {"matrix_version", default_matrix().fingerprint().hex()},
                   {"created", utc_timestamp()},
                   {"trial", trial_name(spec)}};

    auto preds = graph.predecessors();
    auto succs = graph.successors();
    std::map<std::string, std::vector<double>> values;

    for (const auto& id : topological_order(graph)) {
        Component& c = *graph.find(id);
        bool inputs_ready = std::all_of(preds[id].begin(), preds[id].end(), [&](const std::string& p) {
            return string_attr(*graph.find(p), Layer::RG, field::Status) == status::Completed;
        });

        if (c.category == Category::DataArtifact) {
            Bytes payload;
            if (inputs_ready) payload = encode_f64le(values.at(id));
            DataSummary summary = summarize(payload);
            c.set(Layer::RG, field::Status, std::string(inputs_ready ? status::Completed : status::Skipped));
            c.set(Layer::RG, field::DataSummary, summary.digest.hex());
            record.payloads.emplace(summary.digest.hex(), std::move(payload));
            continue;
        }

        TraceLog trace;
        trace.add("run:" + record.run_id);
        trace.add("start:" + id);
        std::string_view outcome = status::Completed;
        if (!inputs_ready) {
            trace.add("skip:" + id);
            outcome = status::Skipped;
        } else {
            try {
                for (const auto& p : preds[id]) trace.add("read:" + p);
                const std::string& type = string_attr(c, Layer::LGT, field::Type);
                trace.add("compute:" + type);
                if (spec.fail_component && *spec.fail_component == id) throw Error("injected failure in " + id);

                std::vector<double> out;
                if (type == "GenerateSine") {
                    out = dsp::gen_sine(cfg);
                } else if (type == "AddNoise") {
                    out = dsp::add_noise(values.at("sine_signal"), cfg.seed, cfg.noise_stddev);
                } else if (type == "HannWindow") {
                    out = dsp::normalize(dsp::hann_window(cfg.window_size));
                } else if (type == "LowpassFilter") {
                    trace.add("method:" + std::string(dsp::method_name(spec.method)));
                    out = dsp::apply_filter(values.at("noisy_signal"), values.at("window"), spec.method);
                } else if (type == "NormalizedCrossCorrelation") {
                    auto rule = dsp::PrecisionRule::for_length(cfg.length);
                    out = {dsp::ncc(values.at("noisy_signal"), values.at("filtered_signal"), rule)};
                } else {
                    throw Error("no executor for task type " + type);
                }
                for (const auto& s : succs[id]) {
                    values[s] = out;
                    trace.add("write:" + s);
                }
            } catch (const std::exception& ex) {
                trace.add(std::string("fail:") + ex.what());
                outcome = status::Failed;
            }
        }
        trace.add("end:" + id);
        c.set(Layer::RG, field::Status, std::string(outcome));
        c.set(Layer::RG, field::Trace, trace.digest().hex());
    }

    graph.set_layer(Layer::RG);
    record.graph = std::move(graph);
    return record;
}

BatchResult run_batch(const BatchOptions& options) {
    const FieldMatrix& matrix = options.matrix ? *options.matrix : default_matrix();
    std::vector<TrialSpec> specs;
    for (auto method : options.methods)
        for (std::size_t t = 0; t < options.trials; ++t) {
            TrialSpec spec;
            spec.method = method;
            spec.seed = t;
            spec.extended = options.extended;
            spec.signal = options.signal;
            spec.deterministic_trace = options.deterministic_trace;
            spec.run_id = "deterministic-" + trial_name(spec);
            check_spec(spec);
            specs.push_back(std::move(spec));
        }

    BatchResult result;
    result.rows.resize(specs.size());
    if (!options.out_dir) result.records.resize(specs.size());
    if (options.out_dir) std::filesystem::create_directories(*options.out_dir);

    std::atomic<std::size_t> next{0};
    std::mutex error_mutex;
    std::exception_ptr error;
    auto worker = [&] {
        for (std::size_t i; (i = next++) < specs.size();) {
            try {
                const TrialSpec& spec = specs[i];
                ExecutionRecord record = execute(spec);
                TrialRow& row = result.rows[i];
                row.trial = trial_name(spec);
                row.method = spec.method;
                row.seed = spec.seed;
                row.failed = std::any_of(record.graph.components().begin(), record.graph.components().end(),
                                         [](const Component& c) {
                                             const auto* s = c.find(Layer::RG, field::Status);
                                             return s && std::get<std::string>(*s) != status::Completed;
                                         });
                row.signatures = sign_all(record, matrix);
                if (options.out_dir) {
                    row.record_path = *options.out_dir / (row.trial + ".json");
                    write_record(record, row.record_path);
                } else {
                    result.records[i] = std::move(record);
                }
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error) error = std::current_exception();
            }
        }
    };
    std::size_t workers = std::clamp<std::size_t>(std::thread::hardware_concurrency(), 1, 8);
    {
        std::vector<std::jthread> pool;
        for (std::size_t w = 0; w < std::min(workers, specs.size()); ++w) pool.emplace_back(worker);
    }
    if (error) std::rethrow_exception(error);

    // specs were generated in (method, seed) order already; keep that order explicit.
    std::vector<std::size_t> idx(specs.size());
    std::iota(idx.begin(), idx.end(), 0);
    auto method_rank = [&](FilterMethod m) {
        return std::find(options.methods.begin(), options.methods.end(), m) - options.methods.begin();
    };
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
        const auto& ra = result.rows[a];
        const auto& rb = result.rows[b];
        return std::pair(method_rank(ra.method), ra.seed) < std::pair(method_rank(rb.method), rb.seed);
    });
    BatchResult sorted;
    for (std::size_t i : idx) {
        sorted.rows.push_back(std::move(result.rows[i]));
        if (!result.records.empty()) sorted.records.push_back(std::move(result.records[i]));
    }

    if (options.out_dir) {
        std::ofstream(*options.out_dir / "summary.txt") << render_table(sorted.rows);
        std::ofstream(*options.out_dir / "summary.json") << table_to_json(sorted.rows, options.extended).dump(2) << '\n';
    }
    return sorted;
}

std::string render_table(const std::vector<TrialRow>& rows) {
    std::size_t width = std::string_view("Workflow Trial").size();
    for (const auto& r : rows) width = std::max(width, r.trial.size());
    std::ostringstream os;
    os << std::left << std::setw(static_cast<int>(width)) << "Workflow Trial";
    for (Tenet t : kAllTenets) os << "  " << std::setw(5) << tenet_label(t);
    os << '\n';
    for (const auto& r : rows) {
        os << std::setw(static_cast<int>(width)) << r.trial;
        for (const auto& s : r.signatures) os << "  " << s.short_hex();
        if (r.failed) os << "  (failed)";
        os << '\n';
    }
    return os.str();
}

nlohmann::json table_to_json(const std::vector<TrialRow>& rows, bool extended) {
    auto trials = nlohmann::json::array();
    for (const auto& r : rows) {
        nlohmann::json sigs = nlohmann::json::object();
        for (std::size_t i = 0; i < kAllTenets.size(); ++i)
            sigs[std::string(tenet_label(kAllTenets[i]))] = r.signatures[i].hex();
        nlohmann::json row = {{"trial", r.trial},
                              {"method", std::string(dsp::method_name(r.method))},
                              {"seed", r.seed},
                              {"status", r.failed ? "failed" : "completed"},
                              {"signatures", std::move(sigs)}};
        if (!r.record_path.empty()) row["record"] = r.record_path.filename().string();
        trials.push_back(std::move(row));
    }
    return {{"extended", extended}, {"trials", std::move(trials)}};
}

} // namespace tenetdag::demo
