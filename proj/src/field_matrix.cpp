#include "tenetdag/field_matrix.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>

#include "tenetdag/error.hpp"

namespace tenetdag {
namespace {

constexpr Category kCategories[] = {Category::ApplicationTask, Category::DataArtifact, Category::ControlConstruct};

std::string lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
    return out;
}

// Default table. Each pattern has 21 marks: seven tenet groups in kAllTenets
// order, each group Application/Data/Control. Y = included, T = included on
// terminal components only, - = excluded.
struct DefaultRow {
    Layer layer;
    const char* field;
    const char* marks;
};

constexpr DefaultRow kDefaultRows[] = {
    //                                 RR   RT   RC   RP   RPL-S RPL-C RPL-T
    {Layer::LGT, "Type",              "YYY" "YYY" "YYY" "YYY" "YYY" "YYY" "YYY"},
    {Layer::LGT, "InPorts",           "YYY" "YYY" "YYY" "---" "YYY" "YYY" "YYY"},
    {Layer::LGT, "OutPorts",          "YYY" "YYY" "YYY" "---" "YYY" "YYY" "YYY"},
    {Layer::LG,  "Num-CPUs",          "---" "Y--" "Y--" "---" "---" "Y--" "Y--"},
    {Layer::LG,  "Field-Keys",        "---" "YYY" "YYY" "---" "---" "YYY" "YYY"},
    {Layer::LG,  "Field-Values",      "---" "---" "YYY" "---" "---" "YYY" "---"},
    {Layer::LG,  "Data-Volume",       "---" "-Y-" "-Y-" "---" "---" "-Y-" "-Y-"},
    {Layer::LG,  "Filenames",         "---" "---" "-Y-" "---" "---" "-Y-" "---"},
    {Layer::PGS, "Type",              "YYY" "YYY" "YYY" "-Y-" "YYY" "YYY" "YYY"},
    {Layer::PGS, "Name",              "Y--" "Y--" "Y--" "---" "Y--" "Y--" "Y--"},
    {Layer::PGS, "Storage-Type",      "-Y-" "-Y-" "-Y-" "-Y-" "-Y-" "-Y-" "-Y-"},
    {Layer::PGS, "Rank",              "---" "---" "YYY" "---" "---" "YYY" "---"},
    {Layer::PGT, "Node",              "---" "---" "YYY" "---" "---" "YYY" "---"},
    {Layer::PGT, "Island",            "---" "---" "YYY" "---" "---" "YYY" "---"},
    {Layer::PG,  "Node-IP-Address",   "---" "---" "YYY" "---" "---" "YYY" "---"},
    {Layer::PG,  "Island-IP-Address", "---" "---" "YYY" "---" "---" "YYY" "---"},
    {Layer::RG,  "Status",            "YY-" "YY-" "YY-" "-Y-" "YY-" "YY-" "YY-"},
    {Layer::RG,  "Trace",             "---" "---" "Y--" "---" "---" "Y--" "---"},
    {Layer::RG,  "Data-Summary",      "---" "---" "---" "-T-" "-T-" "-Y-" "-Y-"},
};

FieldMatrix make_default() {
    FieldMatrix m;
    for (const auto& row : kDefaultRows) {
        m.add_row(row.layer, row.field);
        for (std::size_t t = 0; t < kAllTenets.size(); ++t)
            for (std::size_t c = 0; c < 3; ++c) {
                char mark = row.marks[t * 3 + c];
                Inclusion inc = mark == 'Y' ? Inclusion::Included
                                : mark == 'T' ? Inclusion::TerminalOnly
                                              : Inclusion::Excluded;
                m.set(row.layer, row.field, kCategories[c], kAllTenets[t], inc);
            }
    }
    return m;
}

bool is_sorted_list_field(Layer layer, std::string_view name) {
    return layer == Layer::LG && (name == field::FieldKeys || name == field::FieldValues);
}

std::string category_title(Category c) {
    switch (c) {
    case Category::ApplicationTask: return "Application";
    case Category::DataArtifact: return "Data";
    case Category::ControlConstruct: return "Control";
    }
    return "?";
}

} // namespace

std::string_view tenet_name(Tenet tenet) {
    switch (tenet) {
    case Tenet::Rerun: return "Rerun";
    case Tenet::Repeat: return "Repeat";
    case Tenet::Recompute: return "Recompute";
    case Tenet::Reproduce: return "Reproduce";
    case Tenet::ReplicateScientific: return "Replicate-Sci";
    case Tenet::ReplicateComputational: return "Replicate-Comp";
    case Tenet::ReplicateTotal: return "Replicate-Total";
    }
    return "?";
}

std::string_view tenet_label(Tenet tenet) {
    switch (tenet) {
    case Tenet::Rerun: return "RR";
    case Tenet::Repeat: return "RT";
    case Tenet::Recompute: return "RC";
    case Tenet::Reproduce: return "RP";
    case Tenet::ReplicateScientific: return "RPL-S";
    case Tenet::ReplicateComputational: return "RPL-C";
    case Tenet::ReplicateTotal: return "RPL-T";
    }
    return "?";
}

std::optional<Tenet> parse_tenet(std::string_view text) {
    std::string t = lower(text);
    for (Tenet tenet : kAllTenets)
        if (t == lower(tenet_name(tenet)) || t == lower(tenet_label(tenet))) return tenet;
    if (t == "replicate-scientific") return Tenet::ReplicateScientific;
    if (t == "replicate-computational") return Tenet::ReplicateComputational;
    return std::nullopt;
}

void FieldMatrix::add_row(Layer layer, std::string field) {
    Row row{layer, std::move(field)};
    if (std::find(rows_.begin(), rows_.end(), row) == rows_.end()) rows_.push_back(std::move(row));
}

void FieldMatrix::set(Layer layer, std::string_view field, Category category, Tenet tenet, Inclusion inclusion) {
    add_row(layer, std::string(field));
    Key key{layer, std::string(field), category, tenet};
    if (inclusion == Inclusion::Excluded) entries_.erase(key);
    else entries_[key] = inclusion;
}

Inclusion FieldMatrix::inclusion(Layer layer, std::string_view field, Category category, Tenet tenet) const {
    auto it = entries_.find(Key{layer, std::string(field), category, tenet});
    return it == entries_.end() ? Inclusion::Excluded : it->second;
}

std::optional<Layer> FieldMatrix::required_layer(Tenet tenet) const {
    std::optional<Layer> out;
    for (const auto& [key, inc] : entries_)
        if (std::get<3>(key) == tenet && (!out || std::get<0>(key) > *out)) out = std::get<0>(key);
    return out;
}

Signature FieldMatrix::fingerprint() const { return sha256(matrix_to_json(*this).dump()); }

const FieldMatrix& default_matrix() {
    static const FieldMatrix m = make_default();
    return m;
}

nlohmann::json matrix_to_json(const FieldMatrix& matrix) {
    auto arr = nlohmann::json::array();
    for (const auto& row : matrix.rows())
        for (Category c : kCategories) {
            auto tenets = nlohmann::json::array();
            auto terminal = nlohmann::json::array();
            for (Tenet t : kAllTenets) {
                Inclusion inc = matrix.inclusion(row.layer, row.field, c, t);
                if (inc != Inclusion::Excluded) tenets.push_back(std::string(tenet_name(t)));
                if (inc == Inclusion::TerminalOnly) terminal.push_back(std::string(tenet_name(t)));
            }
            nlohmann::json entry = {{"layer", std::string(layer_name(row.layer))},
                                    {"field", row.field},
                                    {"category", category_title(c)},
                                    {"tenets", std::move(tenets)}};
            if (!terminal.empty()) entry["terminal_tenets"] = std::move(terminal);
            arr.push_back(std::move(entry));
        }
    return arr;
}

FieldMatrix matrix_from_json(const nlohmann::json& j) {
    if (!j.is_array()) throw MatrixParseError("matrix must be a JSON array of entries");
    FieldMatrix m;
    for (std::size_t i = 0; i < j.size(); ++i) {
        const auto& e = j[i];
        std::string where = "entry " + std::to_string(i);
        auto fail = [&](const std::string& column, const std::string& what) {
            throw MatrixParseError(where + ", '" + column + "': " + what);
        };
        if (!e.is_object()) throw MatrixParseError(where + ": expected an object");
        auto str = [&](const char* key) {
            auto it = e.find(key);
            if (it == e.end() || !it->is_string()) fail(key, "missing or not a string");
            return it->get<std::string>();
        };
        std::string lname = str("layer");
        auto layer = parse_layer(lname);
        if (!layer) fail("layer", "unknown layer \"" + lname + "\"");
        std::string fname = str("field");
        if (fname.empty()) fail("field", "empty field name");
        std::string cname = str("category");
        auto category = parse_category(cname);
        if (!category) fail("category", "unknown category \"" + cname + "\"");

        auto tenet_list = [&](const char* key) {
            std::vector<Tenet> out;
            auto it = e.find(key);
            if (it == e.end()) return out;
            if (!it->is_array()) fail(key, "expected an array of tenet names");
            for (const auto& t : *it) {
                auto tenet = t.is_string() ? parse_tenet(t.get<std::string>()) : std::nullopt;
                if (!tenet) fail(key, "unknown tenet " + t.dump());
                out.push_back(*tenet);
            }
            return out;
        };
        m.add_row(*layer, fname);
        for (Tenet t : tenet_list("tenets")) m.set(*layer, fname, *category, t, Inclusion::Included);
        for (Tenet t : tenet_list("terminal_tenets")) m.set(*layer, fname, *category, t, Inclusion::TerminalOnly);
    }
    return m;
}

FieldMatrix load_matrix(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw MatrixParseError("cannot open matrix file " + path.string());
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& ex) {
        throw MatrixParseError(path.string() + ": " + ex.what());
    }
    return matrix_from_json(j);
}

std::vector<Leaf> select_fields(const Component& component, Tenet tenet, const FieldMatrix& matrix, bool terminal) {
    std::vector<Leaf> leaves;
    for (const auto& row : matrix.rows()) {
        Inclusion inc = matrix.inclusion(row.layer, row.field, component.category, tenet);
        if (inc == Inclusion::Excluded || (inc == Inclusion::TerminalOnly && !terminal)) continue;
        const AttrValue* value = component.find(row.layer, row.field);
        if (!value)
            throw MissingField("component '" + component.id + "' lacks " + std::string(layer_name(row.layer)) + "/" +
                               row.field + " required by " + std::string(tenet_name(tenet)));
        std::string key = std::string(layer_name(row.layer)) + "/" + row.field;
        if (const auto* list = std::get_if<ScalarList>(value); list && is_sorted_list_field(row.layer, row.field)) {
            ScalarList sorted = *list;
            std::sort(sorted.begin(), sorted.end());
            leaves.push_back(Leaf::make(std::move(key), sorted));
        } else {
            leaves.push_back(Leaf::make(std::move(key), *value));
        }
    }
    return leaves;
}

ValidationReport validate_fields(const WorkflowGraph& graph, const FieldMatrix& matrix) {
    ValidationReport report;
    for (const auto& c : graph.components())
        for (const auto& row : matrix.rows()) {
            if (row.layer > graph.layer()) continue;
            bool needed = std::any_of(kAllTenets.begin(), kAllTenets.end(),
                                      [&](Tenet t) { return matrix.included(row.layer, row.field, c.category, t); });
            if (needed && !c.find(row.layer, row.field))
                report.push_back({Violation::Kind::MissingField,
                                  {c.id},
                                  "component '" + c.id + "' lacks " + std::string(layer_name(row.layer)) + "/" +
                                      row.field});
        }
    return report;
}

} // namespace tenetdag
