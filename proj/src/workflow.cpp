#include "tenetdag/workflow.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <unordered_set>

#include "tenetdag/error.hpp"

namespace tenetdag {
namespace {

bool iequals(std::string_view a, std::string_view b) {
    return std::equal(a.begin(), a.end(), b.begin(), b.end(), [](char x, char y) {
        return std::tolower(static_cast<unsigned char>(x)) == std::tolower(static_cast<unsigned char>(y));
    });
}

bool is_control(const Component* c) { return c && c->category == Category::ControlConstruct; }

// Successor lists with control constructs bypassed: each non-control
// component maps to the non-control components reachable through paths
// whose interior vertices are all controls.
std::map<std::string, std::vector<std::string>> effective_successors(const WorkflowGraph& graph) {
    auto succ = graph.successors();
    std::map<std::string, std::vector<std::string>> out;
    for (const auto& c : graph.components()) {
        if (c.category == Category::ControlConstruct) continue;
        std::set<std::string> targets;
        std::unordered_set<std::string> seen;
        std::vector<std::string> stack(succ[c.id].begin(), succ[c.id].end());
        while (!stack.empty()) {
            std::string v = std::move(stack.back());
            stack.pop_back();
            if (!seen.insert(v).second) continue;
            const Component* vc = graph.find(v);
            if (is_control(vc)) {
                for (const auto& w : succ[v]) stack.push_back(w);
            } else {
                targets.insert(v);
            }
        }
        out[c.id] = {targets.begin(), targets.end()};
    }
    return out;
}

// Scope chain (outermost first) for a component, or nullopt if the scope
// attribute is malformed, dangling, or cyclic.
std::optional<std::vector<std::string>> scope_chain(const WorkflowGraph& graph, const Component& c) {
    std::vector<std::string> chain;
    const Component* cur = &c;
    std::unordered_set<std::string> seen{c.id};
    while (const AttrValue* scope = cur->find(Layer::LGT, field::Scope)) {
        const auto* name = std::get_if<std::string>(scope);
        if (!name) return std::nullopt;
        const Component* parent = graph.find(*name);
        if (!is_control(parent) || !seen.insert(parent->id).second) return std::nullopt;
        chain.push_back(parent->id);
        cur = parent;
    }
    std::reverse(chain.begin(), chain.end());
    return chain;
}

void report_cycles(const WorkflowGraph& graph, ValidationReport& report) {
    auto succ = graph.successors();
    enum class Color { White, Gray, Black };
    std::unordered_map<std::string, Color> color;
    for (const auto& c : graph.components()) color.emplace(c.id, Color::White);

    struct Frame {
        std::string id;
        std::size_t next = 0;
    };
    for (const auto& root : graph.components()) {
        if (color[root.id] != Color::White) continue;
        std::vector<Frame> stack{{root.id}};
        color[root.id] = Color::Gray;
        while (!stack.empty()) {
            Frame& top = stack.back();
            const auto& out = succ[top.id];
            if (top.next == out.size()) {
                color[top.id] = Color::Black;
                stack.pop_back();
                continue;
            }
            const std::string& v = out[top.next++];
            Color vc = color[v];
            if (vc == Color::White) {
                color[v] = Color::Gray;
                stack.push_back({v});
            } else if (vc == Color::Gray) {
                std::vector<std::string> cycle;
                auto it = std::find_if(stack.begin(), stack.end(), [&](const Frame& f) { return f.id == v; });
                for (; it != stack.end(); ++it) cycle.push_back(it->id);
                std::string msg = "cycle:";
                for (const auto& id : cycle) msg += " " + id + " ->";
                msg += " " + v;
                report.push_back({Violation::Kind::Acyclicity, std::move(cycle), std::move(msg)});
            }
        }
    }
}

} // namespace

std::string_view layer_name(Layer layer) {
    switch (layer) {
    case Layer::LGT: return "LGT";
    case Layer::LG: return "LG";
    case Layer::PGS: return "PGS";
    case Layer::PGT: return "PGT";
    case Layer::PG: return "PG";
    case Layer::RG: return "RG";
    }
    return "?";
}

std::optional<Layer> parse_layer(std::string_view name) {
    for (Layer l : kAllLayers)
        if (iequals(name, layer_name(l))) return l;
    return std::nullopt;
}

std::string_view category_name(Category category) {
    switch (category) {
    case Category::ApplicationTask: return "application";
    case Category::DataArtifact: return "data";
    case Category::ControlConstruct: return "control";
    }
    return "?";
}

std::optional<Category> parse_category(std::string_view name) {
    if (iequals(name, "application") || iequals(name, "ApplicationTask")) return Category::ApplicationTask;
    if (iequals(name, "data") || iequals(name, "DataArtifact")) return Category::DataArtifact;
    if (iequals(name, "control") || iequals(name, "ControlConstruct")) return Category::ControlConstruct;
    return std::nullopt;
}

std::string_view violation_kind_name(Violation::Kind kind) {
    switch (kind) {
    case Violation::Kind::DuplicateId: return "DuplicateId";
    case Violation::Kind::DanglingEdge: return "DanglingEdge";
    case Violation::Kind::Alternation: return "Alternation";
    case Violation::Kind::Acyclicity: return "Acyclicity";
    case Violation::Kind::ControlAtPhysicalLayer: return "ControlAtPhysicalLayer";
    case Violation::Kind::TerminalControl: return "TerminalControl";
    case Violation::Kind::InvalidScope: return "InvalidScope";
    case Violation::Kind::MissingField: return "MissingField";
    }
    return "?";
}

const AttrValue* Component::find(Layer layer, std::string_view name) const {
    auto lit = attributes.find(layer);
    if (lit == attributes.end()) return nullptr;
    auto fit = lit->second.find(name);
    return fit == lit->second.end() ? nullptr : &fit->second;
}

void Component::set(Layer layer, std::string_view name, AttrValue value) {
    attributes[layer].insert_or_assign(std::string(name), std::move(value));
}

bool Component::erase(Layer layer, std::string_view name) {
    auto lit = attributes.find(layer);
    if (lit == attributes.end()) return false;
    auto fit = lit->second.find(name);
    if (fit == lit->second.end()) return false;
    lit->second.erase(fit);
    if (lit->second.empty()) attributes.erase(lit);
    return true;
}

Component& WorkflowGraph::add_component(Component component) {
    index_.try_emplace(component.id, components_.size());
    components_.push_back(std::move(component));
    return components_.back();
}

void WorkflowGraph::add_edge(std::string from, std::string to) { edges_.push_back({std::move(from), std::move(to)}); }

const Component* WorkflowGraph::find(std::string_view id) const {
    auto it = index_.find(std::string(id));
    return it == index_.end() ? nullptr : &components_[it->second];
}

Component* WorkflowGraph::find(std::string_view id) {
    auto it = index_.find(std::string(id));
    return it == index_.end() ? nullptr : &components_[it->second];
}

std::unordered_map<std::string, std::vector<std::string>> WorkflowGraph::successors() const {
    std::unordered_map<std::string, std::vector<std::string>> out;
    for (const auto& c : components_) out[c.id];
    for (const auto& e : edges_)
        if (index_.count(e.from) && index_.count(e.to)) out[e.from].push_back(e.to);
    return out;
}

std::unordered_map<std::string, std::vector<std::string>> WorkflowGraph::predecessors() const {
    std::unordered_map<std::string, std::vector<std::string>> out;
    for (const auto& c : components_) out[c.id];
    for (const auto& e : edges_)
        if (index_.count(e.from) && index_.count(e.to)) out[e.to].push_back(e.from);
    return out;
}

std::unordered_map<std::string, std::size_t> WorkflowGraph::out_degrees() const {
    std::unordered_map<std::string, std::size_t> out;
    for (const auto& c : components_) out[c.id] = 0;
    for (const auto& e : edges_)
        if (index_.count(e.from) && index_.count(e.to)) ++out[e.from];
    return out;
}

ValidationReport validate(const WorkflowGraph& graph) {
    ValidationReport report;

    std::unordered_set<std::string> ids;
    for (const auto& c : graph.components())
        if (!ids.insert(c.id).second)
            report.push_back({Violation::Kind::DuplicateId, {c.id}, "duplicate component id '" + c.id + "'"});

    for (const auto& e : graph.edges()) {
        for (const auto* end : {&e.from, &e.to})
            if (!ids.count(*end))
                report.push_back({Violation::Kind::DanglingEdge,
                                  {e.from, e.to},
                                  "edge " + e.from + " -> " + e.to + " references unknown component '" + *end + "'"});
    }

    report_cycles(graph, report);

    for (const auto& [from, targets] : effective_successors(graph)) {
        const Component* a = graph.find(from);
        for (const auto& to : targets) {
            const Component* b = graph.find(to);
            if (a->category == b->category)
                report.push_back({Violation::Kind::Alternation,
                                  {from, to},
                                  "edge " + from + " -> " + to + " connects two " +
                                      std::string(category_name(a->category)) + " components"});
        }
    }

    auto out_degree = graph.out_degrees();
    for (const auto& c : graph.components()) {
        if (c.category == Category::ControlConstruct) {
            if (graph.layer() >= Layer::PGS)
                report.push_back({Violation::Kind::ControlAtPhysicalLayer,
                                  {c.id},
                                  "control construct '" + c.id + "' present at layer " +
                                      std::string(layer_name(graph.layer()))});
            if (out_degree[c.id] == 0)
                report.push_back({Violation::Kind::TerminalControl, {c.id},
                                  "control construct '" + c.id + "' has no successors"});
        }
        if (c.find(Layer::LGT, field::Scope) && !scope_chain(graph, c))
            report.push_back({Violation::Kind::InvalidScope, {c.id},
                              "component '" + c.id + "' has a dangling, non-control, or cyclic scope"});
    }
    return report;
}

WorkflowGraph unroll(const WorkflowGraph& graph, const std::map<std::string, int, std::less<>>& multiplicity) {
    if (graph.layer() > Layer::LG)
        throw InvalidArgument("unroll expects a logical graph, got layer " + std::string(layer_name(graph.layer())));
    for (const auto& c : graph.components()) {
        if (c.category != Category::ControlConstruct) continue;
        auto it = multiplicity.find(c.id);
        if (it == multiplicity.end()) throw UnresolvedControl("control construct '" + c.id + "' has no multiplicity");
        if (it->second < 1)
            throw InvalidArgument("multiplicity for '" + c.id + "' must be positive, got " + std::to_string(it->second));
    }

    struct Expanded {
        std::vector<std::string> chain;
        std::vector<std::vector<int>> indices;
        std::vector<std::string> ids;
    };
    std::map<std::string, Expanded> expanded;
    WorkflowGraph out(Layer::PGT);

    for (const auto& c : graph.components()) {
        if (c.category == Category::ControlConstruct) continue;
        auto chain = scope_chain(graph, c);
        if (!chain) throw InvalidArgument("component '" + c.id + "' has an invalid scope");
        Expanded e;
        e.chain = *chain;
        e.indices.push_back({});
        for (const auto& scope : e.chain) {
            int m = multiplicity.find(scope)->second;
            std::vector<std::vector<int>> next;
            for (const auto& prefix : e.indices)
                for (int k = 0; k < m; ++k) {
                    next.push_back(prefix);
                    next.back().push_back(k);
                }
            e.indices = std::move(next);
        }
        for (std::size_t r = 0; r < e.indices.size(); ++r) {
            Component copy = c;
            for (int k : e.indices[r]) copy.id += "#" + std::to_string(k);
            copy.erase(Layer::LGT, field::Scope);
            copy.set(Layer::PGS, field::Rank, static_cast<std::int64_t>(r));
            e.ids.push_back(copy.id);
            out.add_component(std::move(copy));
        }
        expanded.emplace(c.id, std::move(e));
    }

    std::set<Edge> edges;
    for (const auto& [from, targets] : effective_successors(graph)) {
        const Expanded& a = expanded.at(from);
        for (const auto& to : targets) {
            const Expanded& b = expanded.at(to);
            std::size_t shared = 0;
            while (shared < a.chain.size() && shared < b.chain.size() && a.chain[shared] == b.chain[shared]) ++shared;
            for (std::size_t i = 0; i < a.ids.size(); ++i)
                for (std::size_t j = 0; j < b.ids.size(); ++j)
                    if (std::equal(a.indices[i].begin(), a.indices[i].begin() + shared, b.indices[j].begin()))
                        edges.insert({a.ids[i], b.ids[j]});
        }
    }
    for (const auto& e : edges) out.add_edge(e.from, e.to);
    return out;
}

WorkflowGraph partition(const WorkflowGraph& graph, const std::map<std::string, Placement, std::less<>>& assignment,
                        const std::map<std::string, std::string, std::less<>>& addresses) {
    std::vector<std::string> missing;
    for (const auto& c : graph.components())
        if (!assignment.count(c.id)) missing.push_back(c.id);
    if (!missing.empty()) {
        std::string msg = "no placement for:";
        for (const auto& id : missing) msg += " " + id;
        throw PartialAssignment(msg);
    }
    auto address_of = [&](const std::string& label) -> const std::string& {
        auto it = addresses.find(label);
        if (it == addresses.end()) throw PartialAssignment("no address for label '" + label + "'");
        return it->second;
    };

    WorkflowGraph out(Layer::PG);
    for (Component c : graph.components()) {
        const Placement& p = assignment.find(c.id)->second;
        c.set(Layer::PGT, field::Node, p.node);
        c.set(Layer::PGT, field::Island, p.island);
        c.set(Layer::PG, field::NodeIp, address_of(p.node));
        c.set(Layer::PG, field::IslandIp, address_of(p.island));
        out.add_component(std::move(c));
    }
    for (const auto& e : graph.edges()) out.add_edge(e.from, e.to);
    return out;
}

nlohmann::json graph_to_json(const WorkflowGraph& graph) {
    nlohmann::json j;
    j["layer"] = std::string(layer_name(graph.layer()));
    auto comps = nlohmann::json::array();
    for (const auto& c : graph.components()) {
        nlohmann::json attrs = nlohmann::json::object();
        for (const auto& [layer, fields] : c.attributes) {
            nlohmann::json fj = nlohmann::json::object();
            for (const auto& [name, value] : fields) fj[name] = value_to_json(value);
            attrs[std::string(layer_name(layer))] = std::move(fj);
        }
        comps.push_back({{"id", c.id}, {"category", std::string(category_name(c.category))}, {"attributes", attrs}});
    }
    j["components"] = std::move(comps);
    auto edges = nlohmann::json::array();
    for (const auto& e : graph.edges()) edges.push_back({e.from, e.to});
    j["edges"] = std::move(edges);
    return j;
}

WorkflowGraph graph_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw GraphParseError("graph must be a JSON object");
    auto require = [&](const nlohmann::json& obj, const char* key) -> const nlohmann::json& {
        auto it = obj.find(key);
        if (it == obj.end()) throw GraphParseError(std::string("missing key '") + key + "'");
        return *it;
    };
    const auto& layer_j = require(j, "layer");
    auto layer = layer_j.is_string() ? parse_layer(layer_j.get<std::string>()) : std::nullopt;
    if (!layer) throw GraphParseError("invalid layer " + layer_j.dump());
    WorkflowGraph graph(*layer);

    const auto& comps = require(j, "components");
    if (!comps.is_array()) throw GraphParseError("'components' must be an array");
    for (const auto& cj : comps) {
        if (!cj.is_object()) throw GraphParseError("component entries must be objects");
        const auto& id = require(cj, "id");
        const auto& cat = require(cj, "category");
        if (!id.is_string()) throw GraphParseError("component id must be a string");
        auto category = cat.is_string() ? parse_category(cat.get<std::string>()) : std::nullopt;
        if (!category) throw GraphParseError("component '" + id.get<std::string>() + "': invalid category " + cat.dump());
        Component c{id.get<std::string>(), *category, {}};
        if (auto it = cj.find("attributes"); it != cj.end()) {
            if (!it->is_object()) throw GraphParseError("component '" + c.id + "': attributes must be an object");
            for (const auto& [lname, fields] : it->items()) {
                auto l = parse_layer(lname);
                if (!l) throw GraphParseError("component '" + c.id + "': unknown layer '" + lname + "'");
                if (!fields.is_object()) throw GraphParseError("component '" + c.id + "': layer " + lname + " must be an object");
                for (const auto& [fname, value] : fields.items()) c.set(*l, fname, value_from_json(value));
            }
        }
        graph.add_component(std::move(c));
    }

    const auto& edges = require(j, "edges");
    if (!edges.is_array()) throw GraphParseError("'edges' must be an array");
    for (const auto& ej : edges) {
        if (!ej.is_array() || ej.size() != 2 || !ej[0].is_string() || !ej[1].is_string())
            throw GraphParseError("edge entries must be [from, to] string pairs, got " + ej.dump());
        graph.add_edge(ej[0].get<std::string>(), ej[1].get<std::string>());
    }
    return graph;
}

} // namespace tenetdag
