#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "tenetdag/blockdag.hpp"
#include "tenetdag/field_matrix.hpp"
#include "tenetdag/provenance.hpp"

namespace tenetdag {

/// Workflow signature of `record` under one tenet.
Signature sign(const ExecutionRecord& record, Tenet tenet, const FieldMatrix& matrix = default_matrix());

/// All seven, in kAllTenets order.
std::array<Signature, 7> sign_all(const ExecutionRecord& record, const FieldMatrix& matrix = default_matrix());

struct LeafDiff {
    std::string key;
    /// Typed encodings; nullopt when the leaf is absent on that side.
    std::optional<std::string> value_a;
    std::optional<std::string> value_b;
};

struct ComparisonReport {
    Tenet tenet = Tenet::Rerun;
    bool match = false;
    Signature signature_a;
    Signature signature_b;
    std::optional<std::string> first_divergence;
    /// Leaf differences at the first divergent component.
    std::vector<LeafDiff> divergent_leaves;
    std::string note;
};

/// Match is decided by signature equality alone. When the two topologies
/// agree, the first divergent component and its leaf differences are
/// filled in; otherwise `note` says the topologies differ.
ComparisonReport compare(const ExecutionRecord& a, const ExecutionRecord& b, Tenet tenet,
                         const FieldMatrix& matrix = default_matrix());

nlohmann::json report_to_json(const ComparisonReport& report);
/// Aligned text: `RR     MATCH   <sig-a> <sig-b>` followed by indented
/// divergence details.
std::string render_report(const ComparisonReport& report);

} // namespace tenetdag
