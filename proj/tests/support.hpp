#pragma once

// Random workflow and record generators shared by the unit and acceptance tests.

#include <random>
#include <string>
#include <vector>

#include "tenetdag/field_matrix.hpp"
#include "tenetdag/provenance.hpp"
#include "tenetdag/workflow.hpp"

namespace testsupport {

using namespace tenetdag;

inline std::string pad_id(std::size_t i) {
    std::string s = std::to_string(i);
    return "c" + std::string(s.size() < 3 ? 3 - s.size() : 0, '0') + s;
}

inline std::string random_token(std::mt19937_64& rng) {
    static constexpr char kChars[] = "abcdefghijklmnopqrstuvwxyz0123456789";
    std::string s(8, 'a');
    for (char& c : s) c = kChars[rng() % (sizeof kChars - 1)];
    return s;
}

/// A fresh value of the same shape the field usually carries.
inline AttrValue random_value(std::mt19937_64& rng, Layer layer, std::string_view name) {
    if (name == field::NumCpus || name == field::DataVolume || name == field::Rank)
        return static_cast<std::int64_t>(rng() % 1'000'000);
    if (name == field::InPorts || name == field::OutPorts || name == field::FieldKeys || name == field::FieldValues ||
        name == field::Filenames)
        return string_list({random_token(rng), random_token(rng)});
    if (layer == Layer::RG && (name == field::Trace || name == field::DataSummary))
        return sha256(random_token(rng)).hex();
    if (layer == Layer::RG && name == field::Status) {
        static constexpr std::string_view kStates[] = {status::Completed, status::Failed, status::Skipped};
        return std::string(kStates[rng() % 3]);
    }
    return random_token(rng);
}

/// Sets every field any tenet of `matrix` reads for the component's category.
inline void populate(Component& c, const FieldMatrix& matrix, std::mt19937_64& rng) {
    for (const auto& row : matrix.rows()) {
        bool needed = false;
        for (Tenet t : kAllTenets) needed = needed || matrix.included(row.layer, row.field, c.category, t);
        if (needed) c.set(row.layer, row.field, random_value(rng, row.layer, row.field));
    }
}

/// Random DAG of application tasks and data artifacts with alternation
/// respected: edges run from lower to higher index between categories.
inline WorkflowGraph random_dag(std::mt19937_64& rng, std::size_t n, double edge_prob, Layer layer) {
    WorkflowGraph g(layer);
    std::vector<Category> cats(n);
    for (std::size_t i = 0; i < n; ++i) {
        cats[i] = rng() % 2 ? Category::ApplicationTask : Category::DataArtifact;
        g.add_component({pad_id(i), cats[i], {}});
    }
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (cats[i] != cats[j] && u(rng) < edge_prob) g.add_edge(pad_id(i), pad_id(j));
    return g;
}

/// Runtime-layer record over a random DAG with every matrix field filled.
inline ExecutionRecord random_record(std::mt19937_64& rng, std::size_t n, double edge_prob,
                                     const FieldMatrix& matrix = default_matrix()) {
    ExecutionRecord r;
    r.run_id = random_token(rng);
    WorkflowGraph g = random_dag(rng, n, edge_prob, Layer::RG);
    WorkflowGraph filled(Layer::RG);
    for (Component c : g.components()) {
        populate(c, matrix, rng);
        filled.add_component(std::move(c));
    }
    for (const auto& e : g.edges()) filled.add_edge(e.from, e.to);
    r.graph = std::move(filled);
    return r;
}

/// Every (layer, field) the component carries.
inline std::vector<std::pair<Layer, std::string>> fields_of(const Component& c) {
    std::vector<std::pair<Layer, std::string>> out;
    for (const auto& [layer, fields] : c.attributes)
        for (const auto& [name, value] : fields) out.emplace_back(layer, name);
    return out;
}

/// Replaces one field of one component with a different value.
inline void mutate_field(Component& c, Layer layer, const std::string& name, std::mt19937_64& rng) {
    const AttrValue* old = c.find(layer, name);
    AttrValue fresh = random_value(rng, layer, name);
    while (old && encode_value(fresh) == encode_value(*old)) fresh = random_value(rng, layer, name);
    c.set(layer, name, std::move(fresh));
}

} // namespace testsupport
