#pragma once

// Morse theory of a generic component <mu, xi> of a toric moment map, read
// off the moment polytope: critical points are the vertices and the index at
// a vertex is twice the number of edges along which xi decreases.

#include <optional>
#include <vector>

#include <nlohmann/json.hpp>

#include "gctoric/polytope.hpp"

namespace gct::morse {

using polytope::HPolytope;
using Direction = std::vector<long long>;

struct VertexIndex {
    polytope::QVec vertex;
    int index = 0;
};

struct MorseReport {
    Direction xi;
    std::vector<VertexIndex> per_vertex;
    std::vector<int> betti;  // b_0, b_2, ..., b_2k
    bool odd_betti_zero = true;
};

/// First xi (by max-norm, then lexicographically, positive entries first) with
/// <xi, u> != 0 on every edge. Throws PreconditionError unless P is Delzant.
Direction generic_xi(const HPolytope& p);

bool is_generic(const HPolytope& p, const Direction& xi);

/// Per-vertex indices; throws PreconditionError for a non-generic xi or a non-Delzant P.
MorseReport morse_indices(const HPolytope& p, const Direction& xi);

/// Indices plus Betti numbers b_{2i} = #{vertices of index 2i}.
MorseReport betti(const HPolytope& p, const std::optional<Direction>& xi = std::nullopt);

nlohmann::ordered_json to_json(const MorseReport& r);

}  // namespace gct::morse
