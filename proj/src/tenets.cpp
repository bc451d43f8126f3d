#include "tenetdag/tenets.hpp"

#include <map>
#include <sstream>

namespace tenetdag {

Signature sign(const ExecutionRecord& record, Tenet tenet, const FieldMatrix& matrix) {
    return workflow_signature(build_blockdag(record, tenet, matrix));
}

std::array<Signature, 7> sign_all(const ExecutionRecord& record, const FieldMatrix& matrix) {
    std::array<Signature, 7> out;
    for (std::size_t i = 0; i < kAllTenets.size(); ++i) out[i] = sign(record, kAllTenets[i], matrix);
    return out;
}

ComparisonReport compare(const ExecutionRecord& a, const ExecutionRecord& b, Tenet tenet, const FieldMatrix& matrix) {
    BlockDAG da = build_blockdag(a, tenet, matrix);
    BlockDAG db = build_blockdag(b, tenet, matrix);

    ComparisonReport report;
    report.tenet = tenet;
    report.signature_a = workflow_signature(da);
    report.signature_b = workflow_signature(db);
    report.match = report.signature_a == report.signature_b;

    if (!same_topology(da, db)) {
        report.note = "topologies differ; no component-level divergence available";
        return report;
    }
    report.first_divergence = first_divergence(da, db);
    if (!report.first_divergence) return report;

    const std::string& id = *report.first_divergence;
    bool terminal = std::find(da.leaf_ids().begin(), da.leaf_ids().end(), id) != da.leaf_ids().end();
    std::map<std::string, std::pair<std::optional<std::string>, std::optional<std::string>>> by_key;
    for (const auto& leaf : select_fields(*a.graph.find(id), tenet, matrix, terminal)) by_key[leaf.key].first = leaf.value;
    for (const auto& leaf : select_fields(*b.graph.find(id), tenet, matrix, terminal)) by_key[leaf.key].second = leaf.value;
    for (auto& [key, values] : by_key)
        if (values.first != values.second) report.divergent_leaves.push_back({key, values.first, values.second});
    return report;
}

nlohmann::json report_to_json(const ComparisonReport& report) {
    nlohmann::json j;
    j["tenet"] = std::string(tenet_name(report.tenet));
    j["label"] = std::string(tenet_label(report.tenet));
    j["match"] = report.match;
    j["signature_a"] = report.signature_a.hex();
    j["signature_b"] = report.signature_b.hex();
    j["first_divergence"] = report.first_divergence ? nlohmann::json(*report.first_divergence) : nlohmann::json(nullptr);
    auto leaves = nlohmann::json::array();
    for (const auto& d : report.divergent_leaves)
        leaves.push_back({{"key", d.key},
                          {"a", d.value_a ? nlohmann::json(*d.value_a) : nlohmann::json(nullptr)},
                          {"b", d.value_b ? nlohmann::json(*d.value_b) : nlohmann::json(nullptr)}});
    j["divergent_leaves"] = std::move(leaves);
    if (!report.note.empty()) j["note"] = report.note;
    return j;
}

std::string render_report(const ComparisonReport& report) {
    std::ostringstream os;
    std::string label(tenet_label(report.tenet));
    label.resize(6, ' ');
    os << label << ' ' << (report.match ? "MATCH " : "DIFFER") << "  " << report.signature_a.short_hex() << ' '
       << report.signature_b.short_hex() << '\n';
    if (report.first_divergence) {
        os << "       first divergence: " << *report.first_divergence << '\n';
        for (const auto& d : report.divergent_leaves)
            os << "         " << d.key << ": " << d.value_a.value_or("<absent>") << " | "
               << d.value_b.value_or("<absent>") << '\n';
    }
    if (!report.note.empty()) os << "       note: " << report.note << '\n';
    return os.str();
}

} // namespace tenetdag
