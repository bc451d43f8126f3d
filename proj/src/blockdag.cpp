#include "tenetdag/blockdag.hpp"

#include <algorithm>
#include <queue>
#include <set>
#include <unordered_map>

#include "tenetdag/error.hpp"

namespace tenetdag {

std::vector<std::string> topological_order(const WorkflowGraph& graph) {
    auto succ = graph.successors();
    std::unordered_map<std::string, std::size_t> in_degree;
    for (const auto& c : graph.components()) in_degree.emplace(c.id, 0);
    for (const auto& [id, out] : succ)
        for (const auto& v : out) ++in_degree[v];

    std::priority_queue<std::string, std::vector<std::string>, std::greater<>> ready;
    for (const auto& [id, deg] : in_degree)
        if (deg == 0) ready.push(id);

    std::vector<std::string> order;
    order.reserve(in_degree.size());
    while (!ready.empty()) {
        std::string u = ready.top();
        ready.pop();
        for (const auto& v : succ[u])
            if (--in_degree[v] == 0) ready.push(v);
        order.push_back(std::move(u));
    }
    if (order.size() != in_degree.size()) {
        std::set<std::string> stuck;
        for (const auto& [id, deg] : in_degree)
            if (deg > 0) stuck.insert(id);
        std::string msg = "graph has a cycle through:";
        for (const auto& id : stuck) msg += " " + id;
        throw CycleDetected(msg);
    }
    return order;
}

double BlockDAG::average_degree() const {
    if (blocks_.empty()) return 0.0;
    return 2.0 * static_cast<double>(edges_.size()) / static_cast<double>(blocks_.size());
}

BlockDAG build_blockdag(const WorkflowGraph& graph, const LeafSelector& select) {
    bool skip_controls = graph.layer() >= Layer::PGS;
    auto included = [&](const Component* c) { return c && !(skip_controls && c->category == Category::ControlConstruct); };

    BlockDAG bdag;
    std::set<Edge> edges;
    for (const auto& e : graph.edges())
        if (included(graph.find(e.from)) && included(graph.find(e.to))) edges.insert(e);
    bdag.edges_.assign(edges.begin(), edges.end());

    std::unordered_map<std::string, std::vector<std::string>> preds;
    std::unordered_map<std::string, std::size_t> out_degree;
    for (const auto& e : bdag.edges_) {
        preds[e.to].push_back(e.from);
        ++out_degree[e.from];
    }

    for (auto& id : topological_order(graph)) {
        const Component* c = graph.find(id);
        if (!included(c)) continue;
        bool terminal = out_degree[id] == 0;

        Block block;
        block.id = id;
        block.data_root = MerkleTree(select(*c, terminal)).root();
        for (const auto& p : preds[id]) block.parents.push_back(bdag.blocks_.at(p).signature);
        std::sort(block.parents.begin(), block.parents.end());

        std::vector<Leaf> leaves;
        leaves.reserve(block.parents.size() + 1);
        leaves.push_back(Leaf::make("data", block.data_root.hex()));
        for (const auto& p : block.parents) leaves.push_back(Leaf::make("parent", p.hex()));
        block.signature = MerkleTree(std::move(leaves)).root();

        if (terminal) bdag.leaf_ids_.push_back(id);
        bdag.order_.push_back(id);
        bdag.blocks_.emplace(std::move(id), std::move(block));
    }
    std::sort(bdag.leaf_ids_.begin(), bdag.leaf_ids_.end());
    return bdag;
}

BlockDAG build_blockdag(const ExecutionRecord& record, Tenet tenet, const FieldMatrix& matrix) {
    if (auto needed = matrix.required_layer(tenet); needed && record.graph.layer() < *needed)
        throw MissingLayer(std::string(tenet_name(tenet)) + " needs layer " + std::string(layer_name(*needed)) +
                           ", record is at " + std::string(layer_name(record.graph.layer())));
    return build_blockdag(record.graph, [&](const Component& c, bool terminal) {
        return select_fields(c, tenet, matrix, terminal);
    });
}

Signature workflow_signature(const BlockDAG& bdag) {
    std::vector<Leaf> leaves;
    leaves.reserve(bdag.leaf_ids().size());
    for (const auto& id : bdag.leaf_ids()) leaves.push_back(Leaf::make("leaf", bdag.block(id).signature.hex()));
    return MerkleTree(std::move(leaves)).root();
}

bool same_topology(const BlockDAG& a, const BlockDAG& b) {
    if (a.blocks().size() != b.blocks().size() || a.edges() != b.edges()) return false;
    return std::equal(a.blocks().begin(), a.blocks().end(), b.blocks().begin(),
                      [](const auto& x, const auto& y) { return x.first == y.first; });
}

std::optional<std::string> first_divergence(const BlockDAG& a, const BlockDAG& b) {
    if (!same_topology(a, b)) throw TopologyMismatch("BlockDAGs have different components or edges");
    for (const auto& id : a.order())
        if (a.block(id).signature != b.block(id).signature) return id;
    return std::nullopt;
}

nlohmann::json blockdag_to_json(const BlockDAG& bdag) {
    nlohmann::json j = nlohmann::json::object();
    for (const auto& [id, block] : bdag.blocks()) {
        auto parents = nlohmann::json::array();
        for (const auto& p : block.parents) parents.push_back(p.hex());
        j[id] = {{"data_root", block.data_root.hex()}, {"parents", std::move(parents)}, {"signature", block.signature.hex()}};
    }
    return j;
}

} // namespace tenetdag
