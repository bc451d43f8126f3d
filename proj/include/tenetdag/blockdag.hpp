#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "tenetdag/field_matrix.hpp"
#include "tenetdag/hash.hpp"
#include "tenetdag/merkle.hpp"
#include "tenetdag/provenance.hpp"
#include "tenetdag/workflow.hpp"

namespace tenetdag {

/// Kahn's algorithm; ready vertices leave in ascending id order.
/// Throws CycleDetected naming the vertices that never became ready.
std::vector<std::string> topological_order(const WorkflowGraph& graph);

struct Block {
    std::string id;
    /// Merkle root over the component's selected leaves.
    Signature data_root;
    /// Predecessor block signatures, ascending.
    std::vector<Signature> parents;
    /// Merkle root over {data=<data_root>} plus one {parent=<p>} per parent.
    Signature signature;
};

/// Hash DAG mirroring a workflow's topology, one block per component.
class BlockDAG {
public:
    const std::vector<std::string>& order() const { return order_; }
    const Block& block(const std::string& id) const { return blocks_.at(id); }
    const std::map<std::string, Block>& blocks() const { return blocks_; }
    /// Sorted, de-duplicated.
    const std::vector<Edge>& edges() const { return edges_; }
    /// Ids with out-degree zero, ascending.
    const std::vector<std::string>& leaf_ids() const { return leaf_ids_; }
    double average_degree() const;

private:
    friend BlockDAG build_blockdag(const WorkflowGraph&, const std::function<std::vector<Leaf>(const Component&, bool)>&);
    std::vector<std::string> order_;
    std::map<std::string, Block> blocks_;
    std::vector<Edge> edges_;
    std::vector<std::string> leaf_ids_;
};

/// Receives a component and whether it is terminal (no successors).
using LeafSelector = std::function<std::vector<Leaf>(const Component&, bool terminal)>;

/// Builds blocks in topological order. Control constructs are skipped once
/// the graph is at a physical layer.
BlockDAG build_blockdag(const WorkflowGraph& graph, const LeafSelector& select);

/// Tenet-driven construction. Throws MissingLayer when the record has not
/// reached the highest layer the tenet's column uses, MissingField when a
/// selected field is absent.
BlockDAG build_blockdag(const ExecutionRecord& record, Tenet tenet, const FieldMatrix& matrix);

/// Merkle root over {leaf=<signature>} for every terminal block.
Signature workflow_signature(const BlockDAG& bdag);

/// True when both DAGs have the same id set and edge set.
bool same_topology(const BlockDAG& a, const BlockDAG& b);

/// Earliest component, in topological order, whose block signatures
/// differ. Throws TopologyMismatch when the DAGs are not comparable.
std::optional<std::string> first_divergence(const BlockDAG& a, const BlockDAG& b);

/// id -> {data_root, parents, signature}, hex encoded.
nlohmann::json blockdag_to_json(const BlockDAG& bdag);

} // namespace tenetdag
