#include "gctoric/morse.hpp"

#include <algorithm>

namespace gct::morse {

using namespace polytope;

namespace {

std::vector<VertexData> delzant_vertices(const HPolytope& p) {
    if (p.dim() < 1) throw PreconditionError("Morse data needs a polytope of dimension >= 1");
    if (!is_delzant(p).delzant) throw PreconditionError("Morse data needs a Delzant polytope");
    return vertices(p);
}

Integer pair(const Direction& xi, const ZVec& u) {
    Integer s = 0;
    for (std::size_t i = 0; i < xi.size(); ++i) s += Integer(xi[i]) * u[i];
    return s;
}

bool generic_on(const std::vector<VertexData>& vs, const Direction& xi) {
    for (const auto& v : vs)
        for (const auto& e : v.edges)
            if (pair(xi, e) == 0) return false;
    return true;
}

// Advance to the next vector in [1, n]^k in lexicographic order; false after the last.
bool next_candidate(Direction& xi, long long n) {
    for (int i = static_cast<int>(xi.size()) - 1; i >= 0; --i) {
        if (xi[i] < n) {
            ++xi[i];
            std::fill(xi.begin() + i + 1, xi.end(), 1);
            return true;
        }
    }
    return false;
}

}  // namespace

bool is_generic(const HPolytope& p, const Direction& xi) {
    if (static_cast<int>(xi.size()) != p.dim()) throw DimensionError("direction has the wrong length");
    return generic_on(vertices(p), xi);
}

Direction generic_xi(const HPolytope& p) {
    auto vs = delzant_vertices(p);
    for (long long n = 1;; ++n) {
        Direction xi(p.dim(), 1);
        do {
            bool on_shell = std::any_of(xi.begin(), xi.end(), [n](long long c) { return c == n; });
            if (on_shell && generic_on(vs, xi)) return xi;
        } while (next_candidate(xi, n));
    }
}

MorseReport morse_indices(const HPolytope& p, const Direction& xi) {
    if (static_cast<int>(xi.size()) != p.dim()) throw DimensionError("direction has the wrong length");
    auto vs = delzant_vertices(p);
    if (!generic_on(vs, xi)) throw PreconditionError("direction is not generic: it is orthogonal to an edge");
    MorseReport r;
    r.xi = xi;
    for (const auto& v : vs) {
        int down = 0;
        for (const auto& e : v.edges)
            if (pair(xi, e) < 0) ++down;
        r.per_vertex.push_back({v.point, 2 * down});
    }
    return r;
}

MorseReport betti(const HPolytope& p, const std::optional<Direction>& xi) {
    MorseReport r = morse_indices(p, xi ? *xi : generic_xi(p));
    r.betti.assign(p.dim() + 1, 0);
    for (const auto& v : r.per_vertex) ++r.betti[v.index / 2];
    r.odd_betti_zero = true;
    return r;
}

nlohmann::ordered_json to_json(const MorseReport& r) {
    nlohmann::ordered_json j;
    j["xi"] = r.xi;
    j["perVertex"] = nlohmann::ordered_json::array();
    for (const auto& v : r.per_vertex)
        j["perVertex"].push_back({{"vertex", polytope::to_json(v.vertex)}, {"index", v.index}});
    if (!r.betti.empty()) {
        j["betti"] = r.betti;
        // coefficients of t^0 .. t^{2k}
        std::vector<int> poly(2 * r.betti.size() - 1, 0);
        for (std::size_t i = 0; i < r.betti.size(); ++i) poly[2 * i] = r.betti[i];
        j["poincarePolynomial"] = poly;
        j["bettiDegrees"] = nlohmann::ordered_json::array();
        for (std::size_t i = 0; i < r.betti.size(); ++i) j["bettiDegrees"].push_back(2 * i);
        j["oddBettiZero"] = r.odd_betti_zero;
    }
    j["scope"] = "toric moment maps with isolated fixed points (vertices)";
    return j;
}

}  // namespace gct::morse
