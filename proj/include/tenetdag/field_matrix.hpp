#pragma once

#include <array>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "json.hpp"
#include "tenetdag/hash.hpp"
#include "tenetdag/merkle.hpp"
#include "tenetdag/workflow.hpp"

namespace tenetdag {

enum class Tenet {
    Rerun,
    Repeat,
    Recompute,
    Reproduce,
    ReplicateScientific,
    ReplicateComputational,
    ReplicateTotal,
};

inline constexpr std::array<Tenet, 7> kAllTenets = {
    Tenet::Rerun,     Tenet::Repeat, Tenet::Recompute, Tenet::Reproduce, Tenet::ReplicateScientific,
    Tenet::ReplicateComputational, Tenet::ReplicateTotal,
};

/// "Rerun", "Repeat", ..., "Replicate-Sci", "Replicate-Comp", "Replicate-Total".
std::string_view tenet_name(Tenet tenet);
/// Table label: RR, RT, RC, RP, RPL-S, RPL-C, RPL-T.
std::string_view tenet_label(Tenet tenet);
/// Accepts the name, the label, or the lowercase CLI spelling
/// (rerun, replicate-sci, ...), case-insensitively.
std::optional<Tenet> parse_tenet(std::string_view text);

/// How a (layer, field) row applies to one category under one tenet.
/// TerminalOnly selects the field only on components without successors;
/// it is used for data summaries under the tenets that compare terminal
/// results only.
enum class Inclusion { Excluded, Included, TerminalOnly };

/// Tenet x layer x category x field inclusion table.
class FieldMatrix {
public:
    struct Row {
        Layer layer;
        std::string field;
        friend auto operator<=>(const Row&, const Row&) = default;
    };

    /// Rows keep their insertion order, which is also the dump order.
    void add_row(Layer layer, std::string field);
    void set(Layer layer, std::string_view field, Category category, Tenet tenet, Inclusion inclusion);

    Inclusion inclusion(Layer layer, std::string_view field, Category category, Tenet tenet) const;
    bool included(Layer layer, std::string_view field, Category category, Tenet tenet) const {
        return inclusion(layer, field, category, tenet) != Inclusion::Excluded;
    }

    const std::vector<Row>& rows() const { return rows_; }
    /// Highest layer any category needs for `tenet`; nullopt for an empty column.
    std::optional<Layer> required_layer(Tenet tenet) const;

    /// Digest of the canonical JSON form; recorded as the matrix version.
    Signature fingerprint() const;

private:
    using Key = std::tuple<Layer, std::string, Category, Tenet>;
    std::vector<Row> rows_;
    std::map<Key, Inclusion> entries_;
};

/// The shipped default table.
const FieldMatrix& default_matrix();

/// JSON array of {layer, field, category, tenets: [...], terminal_tenets: [...]}.
nlohmann::json matrix_to_json(const FieldMatrix& matrix);
/// Throws MatrixParseError naming the offending entry and key.
FieldMatrix matrix_from_json(const nlohmann::json& j);
FieldMatrix load_matrix(const std::filesystem::path& path);

/// Leaves for one component under one tenet, keyed `LAYER/Field`.
/// Field-Keys and Field-Values lists are sorted. `terminal` tells whether
/// the component has no successors. Throws MissingField.
std::vector<Leaf> select_fields(const Component& component, Tenet tenet, const FieldMatrix& matrix,
                                bool terminal = true);

/// Reports every matrix field missing from a component at a layer the
/// graph has reached.
ValidationReport validate_fields(const WorkflowGraph& graph, const FieldMatrix& matrix);

} // namespace tenetdag
