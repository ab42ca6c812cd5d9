#include "holoshear/shipped_graphs.hpp"

namespace holoshear {

namespace {

const char* kTorus1 = R"({
  "half_edges": 6,
  "sigma": [[0, 3], [1, 4], [2, 5]],
  "nu": [[0, 1, 2], [3, 4, 5]],
  "edge_labels": ["a", "b", "c"]
})";

const char* kSphere3 = R"({
  "half_edges": 6,
  "sigma": [[0, 3], [1, 4], [2, 5]],
  "nu": [[0, 1, 2], [3, 5, 4]],
  "edge_labels": ["a", "b", "c"]
})";

const char* kSphere4 = R"({
  "half_edges": 12,
  "sigma": [[0, 1], [2, 3], [4, 5], [6, 7], [8, 9], [10, 11]],
  "nu": [[0, 2, 4], [1, 8, 6], [3, 7, 10], [5, 11, 9]],
  "edge_labels": ["e01", "e02", "e03", "e12", "e13", "e23"]
})";

const char* kGenus2 = R"({
  "half_edges": 18,
  "sigma": [[0, 7], [1, 11], [2, 10], [3, 6], [4, 12], [5, 17], [8, 16], [9, 14], [13, 15]],
  "nu": [[0, 1, 2], [3, 4, 5], [6, 8, 7], [9, 11, 10], [12, 14, 13], [15, 17, 16]],
  "edge_labels": ["e0", "e1", "e2", "e3", "e4", "e5", "e6", "e7", "e8"]
})";

} // namespace

const std::vector<ShippedGraphInfo>& shipped_graph_table() {
    static const std::vector<ShippedGraphInfo> table = {
        {"torus_1", kTorus1, 1, 1},
        {"sphere_3", kSphere3, 0, 3},
        {"sphere_4", kSphere4, 0, 4},
        {"genus2_1", kGenus2, 2, 1},
    };
    return table;
}

FatGraph shipped_graph(const std::string& name) {
    for (const auto& g : shipped_graph_table())
        if (name == g.name) return FatGraph::from_json(g.json);
    throw GraphValidationError("unknown shipped graph: " + name);
}

std::vector<std::string> shipped_graph_names() {
    std::vector<std::string> out;
    for (const auto& g : shipped_graph_table()) out.emplace_back(g.name);
    return out;
}

} // namespace holoshear
