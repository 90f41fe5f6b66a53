#include <gtest/gtest.h>

#include <fstream>
#include <random>

#include "gctoric/polytope.hpp"
#include "oracle/oracle.hpp"

using namespace gct;
using namespace gct::polytope;

namespace {

using Raw = std::vector<std::pair<ZVec, Rational>>;

HPolytope P(int k, Raw raw) { return HPolytope::normalized(k, std::move(raw)); }

HPolytope box(std::vector<std::pair<long, long>> sides) {
    Raw raw;
    int k = static_cast<int>(sides.size());
    for (int i = 0; i < k; ++i) {
        ZVec up(k, 0), down(k, 0);
        up[i] = 1;
        down[i] = -1;
        raw.push_back({down, Rational(-sides[i].first)});
        raw.push_back({up, Rational(sides[i].second)});
    }
    return P(k, raw);
}

// x >= 0, y >= 0, x + y <= s
HPolytope triangle(long s) { return P(2, {{{-1, 0}, 0}, {{0, -1}, 0}, {{1, 1}, Rational(s)}}); }

// Delta_2 x [-1, 1] in R^3, optionally translated by -1 in x and y
HPolytope prism(bool shifted) {
    Rational o = shifted ? 1 : 0;
    return P(3, {{{-1, 0, 0}, o}, {{0, -1, 0}, o}, {{1, 1, 0}, 1}, {{0, 0, 1}, 1},
                 {{0, 0, -1}, 1}});
}

QVec q(std::initializer_list<long> v) {
    QVec out;
    for (long x : v) out.emplace_back(x);
    return out;
}

std::set<QVec> point_set(const HPolytope& p) {
    std::set<QVec> s;
    for (const auto& v : vertices(p)) s.insert(v.point);
    return s;
}

std::string data(const std::string& rel) { return std::string(GCTORIC_DATA_DIR) + "/" + rel; }

HPolytope load(const std::string& file) {
    std::ifstream in(data("polytopes/" + file));
    return polytope_from_json(nlohmann::json::parse(in));
}

nlohmann::json manifest() {
    std::ifstream in(data("polytopes/manifest.json"));
    return nlohmann::json::parse(in)["polytopes"];
}

}  // namespace

TEST(HPolytope, ConstructionInvariants) {
    EXPECT_THROW(HPolytope(2, {{{2, 0}, 1}, {{-1, 0}, 0}, {{0, 1}, 1}, {{0, -1}, 0}}), PolytopeError);
    EXPECT_THROW(HPolytope(2, {{{0, 0}, 1}}), PolytopeError);
    EXPECT_THROW(HPolytope(1, {{{1}, 1}, {{1}, 1}, {{-1}, 0}}), PolytopeError);
    EXPECT_THROW(P(2, {{{1, 0}, 1}, {{-1, 0}, 0}}), UnboundedPolytope);
    EXPECT_THROW(vertices(P(1, {{{-1}, 0}, {{1}, -1}})), EmptyPolytope);
    // normalization divides through by the gcd
    HPolytope h = P(1, {{{2}, 3}, {{-1}, 0}});
    EXPECT_EQ(h.facets()[0].offset, Rational(3, 2));
    EXPECT_NO_THROW(HPolytope(0, {}));
}

TEST(Vertices, Examples) {
    EXPECT_EQ(point_set(box({{0, 1}, {0, 1}})), (std::set<QVec>{q({0, 0}), q({0, 1}), q({1, 0}), q({1, 1})}));
    EXPECT_EQ(point_set(triangle(2)), (std::set<QVec>{q({0, 0}), q({2, 0}), q({0, 2})}));
    for (const auto& v : vertices(triangle(2))) {
        EXPECT_EQ(v.active.size(), 2u);
        EXPECT_EQ(v.edges.size(), 2u);
    }
}

TEST(Vertices, EdgesPointInwardAndArePrimitive) {
    for (const auto& v : vertices(prism(true)))
        for (const auto& e : v.edges) {
            Integer g = 0;
            for (const auto& c : e) g = gcd(g, c);
            EXPECT_EQ(abs(g), 1);
            QVec w = v.point;
            for (std::size_t i = 0; i < w.size(); ++i) w[i] += Rational(e[i], 100);
            EXPECT_TRUE(prism(true).contains(w));
        }
}

TEST(Delzant, Examples) {
    EXPECT_TRUE(is_delzant(box({{0, 1}, {-1, 1}})).delzant);
    EXPECT_TRUE(is_delzant(triangle(2)).delzant);

    // triangle (0,0), (1,0), (0,2): 2x + y <= 2
    HPolytope bad = P(2, {{{-1, 0}, 0}, {{0, -1}, 0}, {{2, 1}, 2}});
    auto r = is_delzant(bad);
    EXPECT_FALSE(r.delzant);
    bool found = false;
    for (const auto& v : r.vertices)
        if (v.point == q({1, 0})) {
            found = true;
            EXPECT_FALSE(v.smooth);
            EXPECT_EQ(abs(*v.determinant), 2);
        }
    EXPECT_TRUE(found);
}

TEST(Delzant, NonSimpleVertexReported) {
    auto r = is_delzant(load("square-pyramid.json"));
    EXPECT_FALSE(r.delzant);
    bool apex = false;
    for (const auto& v : r.vertices)
        if (v.point == q({0, 0, 1})) {
            apex = true;
            EXPECT_FALSE(v.simple);
            EXPECT_FALSE(v.reason.empty());
        }
    EXPECT_TRUE(apex);
}

TEST(Orth, Examples) {
    EXPECT_TRUE(orth_check(box({{0, 1}, {-1, 1}}), 2).ok);
    auto t = orth_check(triangle(2), 2);
    EXPECT_FALSE(t.ok);
    bool vertex_on_h = false;
    for (const auto& w : t.witnesses) vertex_on_h |= w.kind == "vertex-on-hyperplane";
    EXPECT_TRUE(vertex_on_h);
    EXPECT_TRUE(orth_check(prism(false), 3).ok);
    EXPECT_THROW(orth_check(box({{0, 1}, {1, 2}}), 2), SliceError);
}

TEST(Orth, FacetNotOrthogonalWitness) {
    // hexagon-like: x in [-1,1], y in [-1,1], x + y <= 3/2 clips a corner but stays off y = 0
    HPolytope ok = P(2, {{{-1, 0}, 1}, {{1, 0}, 1}, {{0, -1}, 1}, {{0, 1}, 1}, {{1, 1}, Rational(3, 2)}});
    EXPECT_TRUE(orth_check(ok, 2).ok);
    // x + y <= 1/2 is tight at the slice vertex (1/2, 0) with a slanted normal
    HPolytope slanted = P(2, {{{-1, 0}, 1}, {{0, -1}, 1}, {{0, 1}, 1}, {{1, 1}, Rational(1, 2)}});
    auto r = orth_check(slanted, 2);
    EXPECT_FALSE(r.ok);
    ASSERT_FALSE(r.witnesses.empty());
    EXPECT_EQ(r.witnesses[0].kind, "facet-not-orthogonal");
    EXPECT_EQ(r.witnesses[0].point, (QVec{Rational(1, 2), 0}));
}

TEST(Slab, MaxDelta) {
    EXPECT_EQ(max_slab_delta(box({{0, 1}, {-1, 1}}), 2), Rational(1, 2));
    EXPECT_EQ(max_slab_delta(prism(false), 3), Rational(1, 2));
    EXPECT_EQ(max_slab_delta(box({{0, 1}, {-3, 2}}), 2), Rational(1));
    EXPECT_THROW(max_slab_delta(triangle(2), 2), PreconditionError);
}

TEST(Slab, Cut) {
    HPolytope b = box({{0, 1}, {-1, 1}});
    HPolytope c = cut_slab(b, 2, Rational(1, 2));
    HPolytope expected = P(2, {{{-1, 0}, 0}, {{1, 0}, 1}, {{0, -1}, Rational(1, 2)}, {{0, 1}, Rational(1, 2)}});
    EXPECT_EQ(c.canonical(), expected.canonical());
    EXPECT_EQ(point_set(c), (std::set<QVec>{{0, Rational(-1, 2)}, {0, Rational(1, 2)}, {1, Rational(-1, 2)},
                                            {1, Rational(1, 2)}}));
    EXPECT_EQ(c.facets().size(), 4u);
    EXPECT_THROW(cut_slab(b, 2, Rational(2)), PreconditionError);
    EXPECT_THROW(cut_slab(b, 2, Rational(0)), PreconditionError);
}

TEST(Slice, Examples) {
    HPolytope b = box({{0, 1}, {-1, 1}});
    auto s = slice(b, {1});
    EXPECT_EQ(s.polytope.canonical(), box({{-1, 1}}).canonical());
    EXPECT_TRUE(s.delzant);
    EXPECT_EQ(slice(prism(false), {1, 2}).polytope.canonical(), box({{-1, 1}}).canonical());
    EXPECT_THROW(slice(b, {1, 2}), SliceError);
    EXPECT_EQ(slice_allow_point(b, {1, 2}).dim(), 0);
    EXPECT_THROW(slice(box({{1, 2}, {0, 1}}), {1}), SliceError);
}

TEST(Freeness, Examples) {
    auto f = freeness_check(box({{0, 1}, {-1, 1}}), {1});
    EXPECT_FALSE(f.free);
    ASSERT_FALSE(f.offending.empty());
    EXPECT_FALSE(f.offending[0].rank_condition);
    EXPECT_TRUE(freeness_check(box({{-1, 1}, {-1, 1}}), {1}).free);
    EXPECT_TRUE(freeness_check(box({{0, 1}, {-1, 1}}), {}).free);
    EXPECT_THROW(freeness_check(box({{1, 2}, {0, 1}}), {1}), SliceError);
}

TEST(Json, ParseAndErrors) {
    auto p = polytope_from_json(nlohmann::json::parse(
        R"({"dim": 2, "facets": [{"normal": [-1, 0], "offset": "0"}, {"normal": [0, -1], "offset": 0},
            {"normal": [1, 1], "offset": "4/2"}]})"));
    EXPECT_EQ(p.canonical(), triangle(2).canonical());
    EXPECT_THROW(polytope_from_json(nlohmann::json::parse(R"({"dim": 2})")), PolytopeError);
    EXPECT_THROW(polytope_from_json(nlohmann::json::parse(R"({"dim": 1, "facets": [{"normal": [1], "offset": "x"}]})")),
                 PolytopeError);
    EXPECT_THROW(polytope_from_json(nlohmann::json::parse(R"({"dim": 1, "facets": [{"normal": [1, 0], "offset": 1}]})")),
                 PolytopeError);
    auto j = to_json(triangle(2));
    EXPECT_EQ(j["facets"][2]["offset"], "2/1");
    EXPECT_EQ(polytope_from_json(nlohmann::json::parse(j.dump())), triangle(2));
}

// Every corpus polytope: library vertices agree with a grid search, the Delzant
// verdict agrees with facet-normal determinants, and the manifest's expectations hold.
TEST(Corpus, AgreesWithOracles) {
    for (const auto& entry : manifest()) {
        std::string file = entry["file"];
        SCOPED_TRACE(file);
        HPolytope p = load(file);
        EXPECT_EQ(point_set(p), oracle::grid_vertices(p, 1, 4));

        bool oracle_delzant = true;
        for (const auto& v : oracle::grid_vertices(p, 1, 4)) oracle_delzant &= oracle::normal_basis_at(p, v);
        auto rep = is_delzant(p);
        EXPECT_EQ(rep.delzant, oracle_delzant);
        EXPECT_EQ(rep.delzant, entry["delzant"].get<bool>());
        if (!rep.delzant) {
            QVec w;
            for (const auto& c : entry["witness"]) w.emplace_back(c.get<std::string>());
            bool hit = false;
            for (const auto& v : rep.vertices)
                if (v.point == w) {
                    hit = true;
                    EXPECT_FALSE(v.reason.empty());
                    EXPECT_NE(v.reason.find(entry["reason"].get<std::string>()), std::string::npos) << v.reason;
                }
            EXPECT_TRUE(hit);
            continue;
        }
        EXPECT_EQ(orth_check(p, p.dim()).ok, entry["orthLastAxis"].get<bool>());
    }
}

TEST(Properties, CutIsSliceTimesInterval) {
    for (const auto& entry : manifest()) {
        if (!entry["delzant"].get<bool>() || !entry["orthLastAxis"].get<bool>()) continue;
        HPolytope p = load(entry["file"]);
        if (p.dim() < 2) continue;
        SCOPED_TRACE(entry["file"].get<std::string>());
        int k = p.dim();
        Rational bound = max_slab_delta(p, k);
        EXPECT_GT(bound, 0);
        for (Rational d : std::vector<Rational>{bound, Rational(bound / 3), Rational(bound * Rational(3, 2))}) {
            HPolytope c = cut_slab(p, k, d);
            std::set<QVec> expected;
            for (const auto& v : vertices(slice(p, {k}).polytope))
                for (int s : {-1, 1}) {
                    QVec w = v.point;
                    w.push_back(d * s);
                    expected.insert(w);
                }
            EXPECT_EQ(point_set(c), expected);
            EXPECT_TRUE(is_delzant(c).delzant);
        }
    }
}

TEST(Properties, SliceComposition) {
    HPolytope cube = load("cube.json");
    HPolytope ps = load("prism-shifted.json");
    for (const HPolytope& p : {cube, ps}) {
        // slicing x1 first leaves old x2 as the new x1
        auto two_step = slice(slice(p, {1}).polytope, {1}).polytope;
        EXPECT_EQ(two_step.canonical(), slice(p, {1, 2}).polytope.canonical());
    }
    auto a = slice(slice(cube, {2}).polytope, {1}).polytope;
    EXPECT_EQ(a.canonical(), slice(cube, {1, 2}).polytope.canonical());
}

TEST(Properties, OrthInvariantUnderTranslationAndShear) {
    std::mt19937_64 rng(3);
    for (const auto& entry : manifest()) {
        if (!entry["delzant"].get<bool>()) continue;
        HPolytope p = load(entry["file"]);
        int k = p.dim();
        if (k < 2) continue;
        SCOPED_TRACE(entry["file"].get<std::string>());
        bool base = orth_check(p, k).ok;
        for (int trial = 0; trial < 4; ++trial) {
            // x -> U x + t with U unimodular fixing e_k, t orthogonal to e_k.
            // Facet a.x <= b becomes (U^-T a).y <= b + (U^-T a).t.
            std::uniform_int_distribution<int> d(-2, 2);
            // shears only exist when there are two non-axis coordinates
            int i = 0, j = k >= 3 ? 1 + trial % (k - 2) : 0;
            long c = k >= 3 ? d(rng) : 0;
            QVec t(k, 0);
            for (int l = 0; l < k - 1; ++l) t[l] = Rational(d(rng), 2);
            Raw raw;
            for (const auto& f : p.facets()) {
                // U = I + c E_{ij} on the non-axis block; U^-T a = a - c a_i e_j
                ZVec a = f.normal;
                a[j] -= c * a[i];
                Rational off = f.offset;
                for (int l = 0; l < k; ++l) off += Rational(a[l]) * t[l];
                raw.push_back({a, off});
            }
            HPolytope moved = P(k, raw);
            try {
                EXPECT_EQ(orth_check(moved, k).ok, base);
            } catch (const SliceError&) {
                ADD_FAILURE() << "translation emptied the slice";
            }
        }
    }
}
