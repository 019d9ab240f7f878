#pragma once

#include <string_view>

#include "pstar/graph.hpp"

namespace pstar::fixtures {

/// Adjacency-matrix text of the 16-family Florentine business network,
/// identical to data/florentine.adj.
std::string_view florentine_adjacency();

Graph florentine();

}  // namespace pstar::fixtures
