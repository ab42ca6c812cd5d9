#pragma once

#include "holoshear/fatgraph.hpp"

#include <string>
#include <vector>

namespace holoshear {

struct ShippedGraphInfo {
    const char* name;
    const char* json;
    int genus;
    int punctures;
};

// Bundled example graphs: once-punctured torus, thrice-punctured sphere,
// four-punctured sphere, genus-2 surface with one puncture.
const std::vector<ShippedGraphInfo>& shipped_graph_table();
FatGraph shipped_graph(const std::string& name);
std::vector<std::string> shipped_graph_names();

} // namespace holoshear
