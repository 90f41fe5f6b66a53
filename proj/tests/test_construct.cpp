#include <gtest/gtest.h>

#include <fstream>
#include <random>

#include "gctoric/construct.hpp"

using namespace gct;
using namespace gct::construct;
using namespace gct::polytope;

namespace {

using Raw = std::vector<std::pair<ZVec, Rational>>;

HPolytope P(int k, Raw raw) { return HPolytope::normalized(k, std::move(raw)); }

HPolytope load(const std::string& file) {
    std::ifstream in(std::string(GCTORIC_DATA_DIR) + "/polytopes/" + file);
    return polytope_from_json(nlohmann::json::parse(in));
}

nlohmann::json manifest() {
    std::ifstream in(std::string(GCTORIC_DATA_DIR) + "/polytopes/manifest.json");
    return nlohmann::json::parse(in)["polytopes"];
}

Failure failure_of(const HPolytope& p) {
    try {
        certify(p);
    } catch (const CertificationError& e) {
        return e.kind();
    }
    ADD_FAILURE() << "certification unexpectedly succeeded";
    return Failure::NotFree;
}

// x -> U x on the first k-1 coordinates, U = I + c E_{ij}; facets transform by U^-T.
HPolytope shear(const HPolytope& p, int i, int j, long c) {
    Raw raw;
    for (const auto& f : p.facets()) {
        ZVec a = f.normal;
        a[j] -= c * a[i];
        raw.push_back({a, f.offset});
    }
    return P(p.dim(), raw);
}

}  // namespace

TEST(Certify, Rectangle) {
    HPolytope rect = P(2, {{{-1, 0}, 0}, {{1, 0}, 1}, {{0, -1}, 1}, {{0, 1}, 1}});
    auto c = certify(rect);
    EXPECT_EQ(c.n, 3);
    EXPECT_EQ(c.a_polytope.canonical(), P(1, {{{-1}, 0}, {{1}, 1}}).canonical());
    EXPECT_EQ(c.delta, Rational(1, 2));
    EXPECT_EQ(c.residual_torus_rank, 1);
    EXPECT_EQ(c.dim_m_tilde, 6);
    EXPECT_EQ(c.locus.dim, 4);
    EXPECT_EQ(c.locus.fiber, "T2");
    EXPECT_EQ(c.twist_class, "PD[A×{0}×S¹(θ₂)]");
    EXPECT_TRUE(c.audits.delzant && c.audits.orthogonality && c.audits.rank_bound && c.audits.saturation);
}

TEST(Certify, Prism) {
    auto c = certify(load("prism.json"));
    EXPECT_EQ(c.n, 4);
    EXPECT_EQ(c.a_polytope.canonical(), P(2, {{{-1, 0}, 0}, {{0, -1}, 0}, {{1, 1}, 1}}).canonical());
    EXPECT_EQ(c.residual_torus_rank, 2);
    EXPECT_EQ(c.dim_m_tilde, 8);
}

TEST(Certify, Failures) {
    EXPECT_EQ(failure_of(P(2, {{{-1, 0}, 0}, {{0, -1}, 0}, {{1, 1}, 2}})), Failure::OrthogonalityFailed);
    EXPECT_EQ(failure_of(load("weighted-triangle.json")), Failure::NotDelzant);
    EXPECT_EQ(failure_of(P(2, {{{-1, 0}, 0}, {{1, 0}, 1}, {{0, -1}, -1}, {{0, 1}, 2}})), Failure::SliceEmpty);
    try {
        certify(P(2, {{{-1, 0}, 0}, {{0, -1}, 0}, {{1, 1}, 2}}));
    } catch (const CertificationError& e) {
        EXPECT_FALSE(e.witnesses().empty());
        EXPECT_EQ(to_string(e.kind()), "OrthogonalityFailed");
    }
}

TEST(RankAudit, Examples) {
    auto c3 = certify(load("rect.json"));
    auto a3 = rank_bound_audit(c3);
    EXPECT_TRUE(a3.pass);
    EXPECT_TRUE(a3.saturated);
    EXPECT_EQ(a3.rank, 1);
    EXPECT_EQ(a3.half_codimension, 1);
    auto a4 = rank_bound_audit(certify(load("prism.json")));
    EXPECT_EQ(a4.rank, 2);
    EXPECT_TRUE(a4.saturated);
    c3.residual_torus_rank = c3.n - 1;
    EXPECT_FALSE(rank_bound_audit(c3).pass);
}

TEST(Commute, Examples) {
    HPolytope sq = load("square.json");
    auto r = commute_check(sq, 1);
    EXPECT_TRUE(r.pass);
    EXPECT_EQ(r.reduced_a.dim(), 0);
    EXPECT_EQ(reduce_certificate(sq, 1).input.canonical(), P(1, {{{-1}, 1}, {{1}, 1}}).canonical());
    EXPECT_TRUE(commute_check(sq, 0).pass);

    auto p = commute_check(load("prism-shifted.json"), 1);
    EXPECT_TRUE(p.pass);
    EXPECT_EQ(p.reduced_a.dim(), 1);
    EXPECT_EQ(p.common_delta, std::min(p.delta_original, p.delta_reduced));

    EXPECT_THROW(commute_check(sq, 2), PreconditionError);
    try {
        commute_check(load("rect.json"), 1);
        ADD_FAILURE();
    } catch (const CertificationError& e) {
        EXPECT_EQ(e.kind(), Failure::NotFree);
        EXPECT_FALSE(e.witnesses().empty());
    }
}

TEST(BaseCase, Examples) {
    auto b = base_case_check(load("square.json"));
    EXPECT_TRUE(b.pass);
    EXPECT_EQ(b.segment.canonical(), P(1, {{{-1}, 1}, {{1}, 1}}).canonical());
    EXPECT_NEAR(b.twist_integral, -1.0, 1e-6);
    EXPECT_TRUE(base_case_check(load("prism-shifted.json")).pass);
    EXPECT_THROW(base_case_check(load("simplex.json")), CertificationError);
}

TEST(Json, CertificateShape) {
    auto j = to_json(certify(load("rect.json")));
    std::vector<std::string> keys;
    for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
    EXPECT_EQ(keys, (std::vector<std::string>{"n", "inputPolytope", "aPolytope", "delta", "dimMTilde", "typeJumpLocus",
                                              "residualTorusRank", "twistClass", "audits"}));
    EXPECT_EQ(j["delta"], "1/2");
    EXPECT_EQ(j["typeJumpLocus"]["dim"], 4);
}

TEST(Corpus, ManifestExpectations) {
    for (const auto& entry : manifest()) {
        std::string file = entry["file"];
        SCOPED_TRACE(file);
        HPolytope p = load(file);
        bool expect = entry.value("certify", false);
        if (!expect) {
            EXPECT_THROW(certify(p), CertificationError);
            continue;
        }
        auto c = certify(p);
        EXPECT_EQ(c.n, entry["n"].get<int>());
        EXPECT_EQ(c.residual_torus_rank, c.n - 2);
        EXPECT_EQ(c.dim_m_tilde - c.locus.dim, 2);
        EXPECT_TRUE(is_delzant(c.a_polytope).delzant);
        for (int r : entry["commute"]) EXPECT_TRUE(commute_check(p, r).pass) << "r = " << r;
        if (entry["baseCase"].get<bool>())
            EXPECT_TRUE(base_case_check(p).pass);
        else
            EXPECT_THROW(base_case_check(p), CertificationError);
    }
}

TEST(Properties, UnimodularInvariance) {
    std::mt19937_64 rng(17);
    for (const char* file : {"prism.json", "prism-shifted.json", "cube.json"}) {
        HPolytope p = load(file);
        auto base = certify(p);
        for (int t = 0; t < 4; ++t) {
            long c = std::uniform_int_distribution<long>(-3, 3)(rng);
            HPolytope q = shear(p, t % 2, 1 - t % 2, c);
            auto moved = certify(q);
            EXPECT_EQ(moved.delta, base.delta);
            EXPECT_EQ(moved.residual_torus_rank, base.residual_torus_rank);
            EXPECT_EQ(moved.dim_m_tilde, base.dim_m_tilde);
            // the A-polytopes are related by the same shear
            EXPECT_EQ(moved.a_polytope.canonical(), shear(base.a_polytope, t % 2, 1 - t % 2, c).canonical());
        }
    }
}
