#pragma once

#include <compare>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "json.hpp"
#include "tenetdag/value.hpp"

namespace tenetdag {

enum class Category { ApplicationTask, DataArtifact, ControlConstruct };

/// Provenance layers in the order a workflow passes through them:
/// logical template, logical graph, physical store, physical template,
/// physical graph, runtime graph.
enum class Layer { LGT = 0, LG, PGS, PGT, PG, RG };

inline constexpr Layer kAllLayers[] = {Layer::LGT, Layer::LG, Layer::PGS, Layer::PGT, Layer::PG, Layer::RG};

std::string_view layer_name(Layer layer);
std::optional<Layer> parse_layer(std::string_view name);
/// "application", "data", "control".
std::string_view category_name(Category category);
/// Case-insensitive; also accepts the long enum-style names.
std::optional<Category> parse_category(std::string_view name);

// Field names that the library itself reads or writes.
namespace field {
inline constexpr std::string_view Type = "Type";
inline constexpr std::string_view InPorts = "InPorts";
inline constexpr std::string_view OutPorts = "OutPorts";
inline constexpr std::string_view NumCpus = "Num-CPUs";
inline constexpr std::string_view FieldKeys = "Field-Keys";
inline constexpr std::string_view FieldValues = "Field-Values";
inline constexpr std::string_view DataVolume = "Data-Volume";
inline constexpr std::string_view Filenames = "Filenames";
inline constexpr std::string_view Name = "Name";
inline constexpr std::string_view StorageType = "Storage-Type";
inline constexpr std::string_view Rank = "Rank";
inline constexpr std::string_view Node = "Node";
inline constexpr std::string_view Island = "Island";
inline constexpr std::string_view NodeIp = "Node-IP-Address";
inline constexpr std::string_view IslandIp = "Island-IP-Address";
inline constexpr std::string_view Status = "Status";
inline constexpr std::string_view Trace = "Trace";
inline constexpr std::string_view DataSummary = "Data-Summary";
/// LGT attribute naming the control construct that governs a component.
inline constexpr std::string_view Scope = "Scope";
} // namespace field

using FieldMap = std::map<std::string, AttrValue, std::less<>>;

struct Component {
    std::string id;
    Category category = Category::ApplicationTask;
    std::map<Layer, FieldMap> attributes;

    const AttrValue* find(Layer layer, std::string_view name) const;
    void set(Layer layer, std::string_view name, AttrValue value);
    bool erase(Layer layer, std::string_view name);
};

struct Edge {
    std::string from;
    std::string to;
    friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Typed DAG of components. Copyable value; the transformation functions
/// below return new graphs rather than mutating their input.
class WorkflowGraph {
public:
    WorkflowGraph() = default;
    explicit WorkflowGraph(Layer layer) : layer_(layer) {}

    Layer layer() const { return layer_; }
    void set_layer(Layer layer) { layer_ = layer; }

    /// Duplicate ids are accepted here and reported by validate().
    Component& add_component(Component component);
    void add_edge(std::string from, std::string to);

    const std::vector<Component>& components() const { return components_; }
    const std::vector<Edge>& edges() const { return edges_; }
    std::size_t size() const { return components_.size(); }

    const Component* find(std::string_view id) const;
    Component* find(std::string_view id);

    /// Per-id successor and predecessor lists; edges with unknown endpoints are skipped.
    std::unordered_map<std::string, std::vector<std::string>> successors() const;
    std::unordered_map<std::string, std::vector<std::string>> predecessors() const;
    std::unordered_map<std::string, std::size_t> out_degrees() const;

private:
    Layer layer_ = Layer::LG;
    std::vector<Component> components_;
    std::vector<Edge> edges_;
    std::unordered_map<std::string, std::size_t> index_;
};

struct Violation {
    enum class Kind {
        DuplicateId,
        DanglingEdge,
        Alternation,
        Acyclicity,
        ControlAtPhysicalLayer,
        TerminalControl,
        InvalidScope,
        MissingField,
    };
    Kind kind;
    std::vector<std::string> ids;
    std::string message;
};

using ValidationReport = std::vector<Violation>;

std::string_view violation_kind_name(Violation::Kind kind);

/// Structural checks only: unique ids, edge endpoints, acyclicity,
/// task/data alternation (control constructs are looked through), and
/// control-construct placement. An empty report means valid.
ValidationReport validate(const WorkflowGraph& graph);

/// Resolves scatter constructs into replicated physical components.
/// A component governed by constructs of multiplicities m1..mk becomes
/// m1*...*mk copies with ids `<id>#k1#...#kk`. Edges are re-wired between
/// replicas that agree on their shared scopes, edges through constructs
/// are bypassed, and every output component receives PGS/Rank.
/// Throws UnresolvedControl for a construct without multiplicity.
WorkflowGraph unroll(const WorkflowGraph& graph, const std::map<std::string, int, std::less<>>& multiplicity);

struct Placement {
    std::string node;
    std::string island;
};

/// Sets PGT/Node, PGT/Island and the PG address fields from `addresses`
/// (label -> address). Throws PartialAssignment if any component or label
/// is unmapped.
WorkflowGraph partition(const WorkflowGraph& graph, const std::map<std::string, Placement, std::less<>>& assignment,
                        const std::map<std::string, std::string, std::less<>>& addresses);

nlohmann::json graph_to_json(const WorkflowGraph& graph);
/// Throws GraphParseError (or UnsupportedValueType for attribute values).
WorkflowGraph graph_from_json(const nlohmann::json& j);

} // namespace tenetdag
