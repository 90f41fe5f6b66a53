#include <gtest/gtest.h>

#include <algorithm>
#include <fstream>
#include <random>

#include "gctoric/morse.hpp"
#include "oracle/oracle.hpp"

using namespace gct;
using namespace gct::morse;
using namespace gct::polytope;

namespace {

HPolytope load(const std::string& file) {
    std::ifstream in(std::string(GCTORIC_DATA_DIR) + "/polytopes/" + file);
    return polytope_from_json(nlohmann::json::parse(in));
}

nlohmann::json manifest() {
    std::ifstream in(std::string(GCTORIC_DATA_DIR) + "/polytopes/manifest.json");
    return nlohmann::json::parse(in)["polytopes"];
}

std::vector<int> sorted_indices(const MorseReport& r) {
    std::vector<int> out;
    for (const auto& v : r.per_vertex) out.push_back(v.index);
    std::sort(out.begin(), out.end());
    return out;
}

Rational height(const Direction& xi, const QVec& v) {
    Rational s = 0;
    for (std::size_t i = 0; i < xi.size(); ++i) s += Rational(xi[i]) * v[i];
    return s;
}

}  // namespace

TEST(GenericXi, Examples) {
    HPolytope sq = load("unit-square.json");
    EXPECT_TRUE(is_generic(sq, {1, 2}));
    EXPECT_FALSE(is_generic(sq, {0, 1}));
    EXPECT_TRUE(is_generic(sq, generic_xi(sq)));
    EXPECT_EQ(generic_xi(load("segment.json")), Direction{1});
    EXPECT_EQ(generic_xi(load("simplex.json")), (Direction{1, 2}));
    EXPECT_THROW(generic_xi(load("weighted-triangle.json")), PreconditionError);
}

TEST(MorseIndices, Examples) {
    EXPECT_EQ(sorted_indices(morse_indices(load("unit-square.json"), {1, 2})), (std::vector<int>{0, 2, 2, 4}));
    EXPECT_EQ(sorted_indices(morse_indices(load("simplex.json"), {1, 2})), (std::vector<int>{0, 2, 4}));
    EXPECT_EQ(sorted_indices(morse_indices(load("segment.json"), {1})), (std::vector<int>{0, 2}));
    EXPECT_THROW(morse_indices(load("simplex.json"), {1, 1}), PreconditionError);
    EXPECT_THROW(morse_indices(load("simplex.json"), {1}), DimensionError);
}

TEST(Betti, Examples) {
    EXPECT_EQ(betti(load("unit-square.json")).betti, (std::vector<int>{1, 2, 1}));
    EXPECT_EQ(betti(load("simplex.json")).betti, (std::vector<int>{1, 1, 1}));
    EXPECT_EQ(betti(load("segment.json")).betti, (std::vector<int>{1, 1}));
    auto j = to_json(betti(load("simplex.json")));
    EXPECT_EQ(j["poincarePolynomial"], nlohmann::ordered_json::array({1, 0, 1, 0, 1}));
    EXPECT_EQ(j["oddBettiZero"], true);
}

// Betti numbers against the h-vector of the face lattice, independence of the
// direction, extreme vertices, duality and the vertex count.
TEST(Properties, CorpusAgainstHVector) {
    std::mt19937_64 rng(99);
    for (const auto& entry : manifest()) {
        if (!entry["delzant"].get<bool>()) continue;
        std::string file = entry["file"];
        SCOPED_TRACE(file);
        HPolytope p = load(file);
        auto verts = oracle::grid_vertices(p, 1, 4);
        auto h = oracle::h_vector(p, verts);
        std::vector<int> expected(h.begin(), h.end());
        auto base = betti(p);
        EXPECT_EQ(base.betti, expected);
        EXPECT_EQ(base.betti, entry["betti"].get<std::vector<int>>());

        int total = 0;
        for (int b : base.betti) total += b;
        EXPECT_EQ(total, static_cast<int>(verts.size()));
        auto rev = base.betti;
        std::reverse(rev.begin(), rev.end());
        EXPECT_EQ(rev, base.betti);
        EXPECT_EQ(base.betti[0], 1);

        int tried = 0;
        std::uniform_int_distribution<long long> d(-50, 50);
        while (tried < 10) {
            Direction xi(p.dim());
            for (auto& c : xi) c = d(rng);
            if (!is_generic(p, xi)) continue;
            ++tried;
            auto r = betti(p, xi);
            EXPECT_EQ(r.betti, base.betti);
            auto lo = std::min_element(r.per_vertex.begin(), r.per_vertex.end(),
                                       [&](auto& a, auto& b) { return height(xi, a.vertex) < height(xi, b.vertex); });
            auto hi = std::max_element(r.per_vertex.begin(), r.per_vertex.end(),
                                       [&](auto& a, auto& b) { return height(xi, a.vertex) < height(xi, b.vertex); });
            EXPECT_EQ(lo->index, 0);
            EXPECT_EQ(hi->index, 2 * p.dim());
            for (const auto& v : r.per_vertex) EXPECT_EQ(v.index % 2, 0);
        }
    }
}
