#include "gctoric/construct.hpp"

#include <cmath>

#include "gctoric/checks.hpp"
#include "gctoric/models.hpp"

namespace gct::construct {

using namespace polytope;

namespace {

nlohmann::ordered_json failing_vertices(const DelzantReport& r) {
    auto out = nlohmann::ordered_json::array();
    if (!r.full_dimensional) out.push_back({{"reason", "polytope is not full-dimensional"}});
    for (const auto& v : r.vertices)
        if (!v.reason.empty()) out.push_back({{"vertex", polytope::to_json(v.point)}, {"reason", v.reason}});
    return out;
}

HPolytope checked_slice(const HPolytope& p, const std::set<int>& axes, bool allow_point) {
    try {
        return allow_point ? slice_allow_point(p, axes) : slice(p, axes).polytope;
    } catch (const SliceError& e) {
        throw CertificationError(Failure::SliceEmpty, e.what(), nlohmann::ordered_json::array());
    }
}

void require_free(const HPolytope& p, int r) {
    FreenessReport fr;
    try {
        fr = freeness_check(p, first_axes(r));
    } catch (const SliceError& e) {
        throw CertificationError(Failure::SliceEmpty, e.what(), nlohmann::ordered_json::array());
    }
    if (!fr.free)
        throw CertificationError(Failure::NotFree,
                                 "the subtorus of the first " + std::to_string(r) + " axes does not act freely",
                                 polytope::to_json(fr)["offending"]);
}

void require_r(const HPolytope& p, int r) {
    int n = p.dim() + 1;
    if (r < 0 || r > n - 2)
        throw PreconditionError("reduction rank " + std::to_string(r) + " must lie in [0, " + std::to_string(n - 2) +
                                "]");
}

constexpr double kTwistExpected = -1.0;
constexpr double kTwistTolerance = 1e-6;

}  // namespace

std::string to_string(Failure f) {
    switch (f) {
        case Failure::NotDelzant: return "NotDelzant";
        case Failure::OrthogonalityFailed: return "OrthogonalityFailed";
        case Failure::SliceEmpty: return "SliceEmpty";
        case Failure::NotFree: return "NotFree";
    }
    return "Unknown";
}

SurgeryCertificate certify(const HPolytope& delta) {
    const int k = delta.dim();
    if (k < 1) throw PreconditionError("certification needs a polytope of dimension >= 1");

    DelzantReport dz = is_delzant(delta);
    if (!dz.delzant) throw CertificationError(Failure::NotDelzant, "input polytope is not Delzant", failing_vertices(dz));

    OrthReport orth;
    try {
        orth = orth_check(delta, k);
    } catch (const SliceError& e) {
        throw CertificationError(Failure::SliceEmpty, e.what(), nlohmann::ordered_json::array());
    }
    if (!orth.ok)
        throw CertificationError(Failure::OrthogonalityFailed,
                                 "polytope does not meet x_" + std::to_string(k) + " = 0 orthogonally",
                                 polytope::to_json(orth)["witnesses"]);

    HPolytope a = checked_slice(delta, {k}, true);
    if (!is_delzant(a).delzant)
        throw CertificationError(Failure::NotDelzant, "slice polytope is not Delzant", failing_vertices(is_delzant(a)));

    SurgeryCertificate c{k + 1, delta, a, max_slab_delta(delta, k), 0, {a, "T2", 0}, 0, "PD[A×{0}×S¹(θ₂)]", {}};
    c.dim_m_tilde = 2 * c.n;
    c.locus.dim = 2 * c.n - 2;
    c.residual_torus_rank = c.n - 2;
    c.audits.delzant = true;
    c.audits.orthogonality = true;
    RankAudit ra = rank_bound_audit(c);
    c.audits.rank_bound = ra.pass;
    c.audits.saturation = ra.saturated;
    return c;
}

RankAudit rank_bound_audit(const SurgeryCertificate& cert) {
    RankAudit a;
    a.rank = cert.residual_torus_rank;
    a.bound = cert.n - 2;
    a.pass = a.rank <= a.bound;
    a.saturated = a.rank == a.bound;
    a.half_codimension = (cert.dim_m_tilde - cert.locus.dim) / 2;
    return a;
}

SurgeryCertificate reduce_certificate(const HPolytope& delta, int r) {
    require_r(delta, r);
    if (r == 0) return certify(delta);
    require_free(delta, r);
    return certify(checked_slice(delta, first_axes(r), false));
}

CommuteReport commute_check(const HPolytope& delta, int r) {
    require_r(delta, r);
    SurgeryCertificate full = certify(delta);
    SurgeryCertificate reduced = reduce_certificate(delta, r);
    HPolytope sliced = r == 0 ? full.a_polytope : checked_slice(full.a_polytope, first_axes(r), true);

    CommuteReport rep{false, r, reduced.a_polytope.canonical(), sliced.canonical(), false,
                      full.delta, reduced.delta, 0};
    rep.common_delta = full.delta < reduced.delta ? full.delta : reduced.delta;
    rep.both_delzant = is_delzant(rep.reduced_a).delzant && is_delzant(rep.sliced_a).delzant;
    rep.pass = rep.both_delzant && rep.reduced_a == rep.sliced_a;
    return rep;
}

BaseCaseReport base_case_check(const HPolytope& delta) {
    SurgeryCertificate cert = certify(delta);
    int r = cert.n - 2;
    if (r > 0) require_free(delta, r);
    HPolytope seg = r == 0 ? delta : checked_slice(delta, first_axes(r), false);

    BaseCaseReport rep{false, seg, false, 0.0, false};
    rep.segment_ok = seg.dim() == 1 && irredundant(seg).facets().size() == 2 && is_delzant(seg).delzant;
    charts::Model four = charts::model("product-surgery(0)");
    rep.twist_integral = charts::twist_integral(four.chart, charts::BumpProfile{}.r1() + 0.5);
    rep.twist_nonzero = std::abs(rep.twist_integral - kTwistExpected) < kTwistTolerance;
    rep.pass = rep.segment_ok && rep.twist_nonzero;
    return rep;
}

nlohmann::ordered_json to_json(const SurgeryCertificate& c) {
    nlohmann::ordered_json j;
    j["n"] = c.n;
    j["inputPolytope"] = polytope::to_json(c.input);
    j["aPolytope"] = polytope::to_json(c.a_polytope);
    j["delta"] = format_rational(c.delta);
    j["dimMTilde"] = c.dim_m_tilde;
    j["typeJumpLocus"] = {{"base", polytope::to_json(c.locus.base)}, {"fiber", c.locus.fiber}, {"dim", c.locus.dim}};
    j["residualTorusRank"] = c.residual_torus_rank;
    j["twistClass"] = c.twist_class;
    j["audits"] = {{"delzant", c.audits.delzant},
                   {"orthogonality", c.audits.orthogonality},
                   {"rankBound", c.audits.rank_bound},
                   {"saturation", c.audits.saturation}};
    return j;
}

nlohmann::ordered_json to_json(const RankAudit& a) {
    nlohmann::ordered_json j;
    j["pass"] = a.pass;
    j["saturated"] = a.saturated;
    j["rank"] = a.rank;
    j["bound"] = a.bound;
    j["halfCodimensionOfLocus"] = a.half_codimension;
    j["note"] = "the type-jump locus is not claimed to be a fixed-point component";
    return j;
}

nlohmann::ordered_json to_json(const CommuteReport& r) {
    nlohmann::ordered_json j;
    j["pass"] = r.pass;
    j["r"] = r.r;
    j["reducedA"] = polytope::to_json(r.reduced_a);
    j["slicedA"] = polytope::to_json(r.sliced_a);
    j["bothDelzant"] = r.both_delzant;
    j["deltaOriginal"] = format_rational(r.delta_original);
    j["deltaReduced"] = format_rational(r.delta_reduced);
    j["commonDelta"] = format_rational(r.common_delta);
    return j;
}

nlohmann::ordered_json to_json(const BaseCaseReport& r) {
    nlohmann::ordered_json j;
    j["pass"] = r.pass;
    j["segment"] = polytope::to_json(r.segment);
    j["segmentIsDelzantInterval"] = r.segment_ok;
    j["twistIntegral"] = r.twist_integral;
    j["twistExpected"] = kTwistExpected;
    j["twistNonzero"] = r.twist_nonzero;
    return j;
}

}  // namespace gct::construct
