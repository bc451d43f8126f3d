#include "doctest.h"

#include <algorithm>
#include <map>
#include <random>
#include <set>

#include "support.hpp"
#include "tenetdag/blockdag.hpp"
#include "tenetdag/error.hpp"

using namespace tenetdag;

namespace {

WorkflowGraph shape(std::vector<std::string> ids, std::vector<std::pair<std::string, std::string>> edges) {
    WorkflowGraph g(Layer::RG);
    for (auto& id : ids) g.add_component({std::move(id), Category::ApplicationTask, {}});
    for (auto& [a, b] : edges) g.add_edge(a, b);
    return g;
}

std::vector<Leaf> id_leaf(const Component& c, bool) { return {Leaf::make("id", c.id)}; }

// Repeatedly take the smallest id whose predecessors are all placed.
std::vector<std::string> naive_order(const WorkflowGraph& g) {
    std::set<std::string> remaining;
    for (const auto& c : g.components()) remaining.insert(c.id);
    std::vector<std::string> out;
    while (!remaining.empty()) {
        for (const auto& id : remaining) {
            bool ready = std::none_of(g.edges().begin(), g.edges().end(),
                                      [&](const Edge& e) { return e.to == id && remaining.count(e.from); });
            if (ready) {
                out.push_back(id);
                remaining.erase(id);
                break;
            }
        }
    }
    return out;
}

std::set<std::string> reach(const WorkflowGraph& g, const std::string& from) {
    std::set<std::string> seen{from};
    std::vector<std::string> stack{from};
    while (!stack.empty()) {
        std::string u = stack.back();
        stack.pop_back();
        for (const auto& e : g.edges())
            if (e.from == u && seen.insert(e.to).second) stack.push_back(e.to);
    }
    return seen;
}

} // namespace

TEST_CASE("topological order") {
    CHECK(topological_order(shape({"c", "b", "a"}, {{"a", "b"}, {"b", "c"}})) == std::vector<std::string>{"a", "b", "c"});
    auto diamond = shape({"d", "c", "b", "a"}, {{"a", "b"}, {"a", "c"}, {"b", "d"}, {"c", "d"}});
    CHECK(topological_order(diamond) == std::vector<std::string>{"a", "b", "c", "d"});
    CHECK(topological_order(shape({"z", "y"}, {})) == std::vector<std::string>{"y", "z"});
    CHECK_THROWS_AS(topological_order(shape({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}, {"c", "a"}})), CycleDetected);
}

TEST_CASE("topological order agrees with a naive oracle") {
    std::mt19937_64 rng(3);
    for (int i = 0; i < 100; ++i) {
        auto g = testsupport::random_dag(rng, 1 + rng() % 30, 0.2, Layer::RG);
        CHECK(topological_order(g) == naive_order(g));
    }
}

TEST_CASE("block structure of a diamond") {
    auto diamond = shape({"a", "b", "c", "d"}, {{"a", "b"}, {"a", "c"}, {"b", "d"}, {"c", "d"}});
    auto bdag = build_blockdag(diamond, id_leaf);
    CHECK(bdag.leaf_ids() == std::vector<std::string>{"d"});
    CHECK(bdag.block("a").parents.empty());
    CHECK(bdag.block("d").parents.size() == 2);
    CHECK(std::is_sorted(bdag.block("d").parents.begin(), bdag.block("d").parents.end()));
    CHECK(bdag.average_degree() == doctest::Approx(2.0));

    auto a = bdag.block("a");
    std::vector<Leaf> leaves{Leaf::make("data", a.data_root.hex())};
    CHECK(a.signature == MerkleTree(leaves).root());
    CHECK(a.data_root == MerkleTree({Leaf::make("id", std::string("a"))}).root());

    // a single terminal block: workflow signature is a one-leaf tree over it
    CHECK(workflow_signature(bdag) == MerkleTree({Leaf::make("leaf", bdag.block("d").signature.hex())}).root());
}

TEST_CASE("edge direction and parents matter") {
    auto ab = build_blockdag(shape({"a", "b"}, {{"a", "b"}}), id_leaf);
    auto ba = build_blockdag(shape({"a", "b"}, {{"b", "a"}}), id_leaf);
    auto none = build_blockdag(shape({"a", "b"}, {}), id_leaf);
    CHECK(workflow_signature(ab) != workflow_signature(ba));
    CHECK(workflow_signature(ab) != workflow_signature(none));
    CHECK_FALSE(same_topology(ab, ba));
    CHECK_THROWS_AS(first_divergence(ab, ba), TopologyMismatch);
    CHECK_FALSE(first_divergence(ab, ab).has_value());
}

TEST_CASE("controls are skipped at physical layers") {
    WorkflowGraph g(Layer::LG);
    g.add_component({"k", Category::ControlConstruct, {}});
    g.add_component({"a", Category::ApplicationTask, {}});
    g.add_edge("k", "a");
    CHECK(build_blockdag(g, id_leaf).blocks().size() == 2);
    g.set_layer(Layer::PGS);
    auto phys = build_blockdag(g, id_leaf);
    CHECK(phys.blocks().size() == 1);
    CHECK(phys.block("a").parents.empty());
}

TEST_CASE("insertion order does not change signatures") {
    std::mt19937_64 rng(5);
    for (int i = 0; i < 50; ++i) {
        auto rec = testsupport::random_record(rng, 2 + rng() % 20, 0.25);
        WorkflowGraph shuffled(Layer::RG);
        auto comps = rec.graph.components();
        auto edges = rec.graph.edges();
        std::shuffle(comps.begin(), comps.end(), rng);
        std::shuffle(edges.begin(), edges.end(), rng);
        for (auto& c : comps) shuffled.add_component(c);
        for (auto& e : edges) shuffled.add_edge(e.from, e.to);
        ExecutionRecord other = rec;
        other.graph = shuffled;
        for (Tenet t : kAllTenets) CHECK(workflow_signature(build_blockdag(rec, t, default_matrix())) ==
                                         workflow_signature(build_blockdag(other, t, default_matrix())));
    }
}

TEST_CASE("a mutation changes exactly the mutated block and its descendants") {
    std::mt19937_64 rng(9);
    for (int i = 0; i < 100; ++i) {
        auto rec = testsupport::random_record(rng, 2 + rng() % 25, 0.2);
        const auto& comps = rec.graph.components();
        const Component& victim = comps[rng() % comps.size()];
        auto fields = testsupport::fields_of(victim);
        auto [layer, name] = fields[rng() % fields.size()];
        ExecutionRecord mutated = rec;
        testsupport::mutate_field(*mutated.graph.find(victim.id), layer, name, rng);

        bool terminal = rec.graph.out_degrees().at(victim.id) == 0;
        for (Tenet t : kAllTenets) {
            Inclusion inc = default_matrix().inclusion(layer, name, victim.category, t);
            bool selected = inc == Inclusion::Included || (inc == Inclusion::TerminalOnly && terminal);
            auto da = build_blockdag(rec, t, default_matrix());
            auto db = build_blockdag(mutated, t, default_matrix());
            std::set<std::string> changed;
            for (const auto& [id, block] : da.blocks())
                if (block.signature != db.block(id).signature) changed.insert(id);
            std::set<std::string> expected = selected ? reach(rec.graph, victim.id) : std::set<std::string>{};
            CHECK(changed == expected);
            auto div = first_divergence(da, db);
            CHECK(div.has_value() == selected);
            if (selected) {
                CHECK(*div == victim.id);
            }
        }
    }
}

TEST_CASE("blockdag json") {
    auto bdag = build_blockdag(shape({"a", "b"}, {{"a", "b"}}), id_leaf);
    auto j = blockdag_to_json(bdag);
    CHECK(j["b"]["parents"][0] == bdag.block("a").signature.hex());
    CHECK(j["a"]["signature"].get<std::string>().size() == 64);
}
