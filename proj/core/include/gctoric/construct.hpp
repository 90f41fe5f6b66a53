#pragma once

// Surgery certificates: checks that a Delzant polytope Delta in R^k seeds the
// logarithmic-transform construction on the toric 2n-manifold (n = k + 1 after
// the slab cut), and records the invariants of the result.

#include <stdexcept>
#include <string>

#include <nlohmann/json.hpp>

#include "gctoric/polytope.hpp"

namespace gct::construct {

using polytope::HPolytope;

enum class Failure { NotDelzant, OrthogonalityFailed, SliceEmpty, NotFree };

std::string to_string(Failure f);

/// Certification failed; carries the structured reason and its witnesses.
class CertificationError : public std::runtime_error {
public:
    CertificationError(Failure kind, const std::string& what, nlohmann::ordered_json witnesses)
        : std::runtime_error(what), kind_(kind), witnesses_(std::move(witnesses)) {}

    Failure kind() const { return kind_; }
    const nlohmann::ordered_json& witnesses() const { return witnesses_; }

private:
    Failure kind_;
    nlohmann::ordered_json witnesses_;
};

struct TypeJumpLocus {
    HPolytope base;
    std::string fiber = "T2";
    int dim = 0;
};

struct Audits {
    bool delzant = false;
    bool orthogonality = false;
    bool rank_bound = false;
    bool saturation = false;
};

struct SurgeryCertificate {
    int n = 0;
    HPolytope input;
    HPolytope a_polytope;
    Rational delta;
    int dim_m_tilde = 0;
    TypeJumpLocus locus;
    int residual_torus_rank = 0;
    std::string twist_class = "PD[A×{0}×S¹(θ₂)]";
    Audits audits;
};

/// Runs is_delzant, orth_check on the last axis, max_slab_delta and the slice.
/// Throws CertificationError on failure.
SurgeryCertificate certify(const HPolytope& delta);

struct RankAudit {
    bool pass = false;
    bool saturated = false;
    int rank = 0;
    int bound = 0;
    int half_codimension = 0;  // (dim M~ - dim locus) / 2, informational
};

RankAudit rank_bound_audit(const SurgeryCertificate& cert);

/// certify(slice(delta, {1..r})); requires 0 <= r <= n - 2 and freeness of {1..r}.
SurgeryCertificate reduce_certificate(const HPolytope& delta, int r);

struct CommuteReport {
    bool pass = false;
    int r = 0;
    HPolytope reduced_a;      // A-polytope of the reduced certificate
    HPolytope sliced_a;       // slice of the original A-polytope
    bool both_delzant = false;
    Rational delta_original;
    Rational delta_reduced;
    Rational common_delta;
};

CommuteReport commute_check(const HPolytope& delta, int r);

struct BaseCaseReport {
    bool pass = false;
    HPolytope segment;
    bool segment_ok = false;
    double twist_integral = 0.0;
    bool twist_nonzero = false;
};

/// Full reduction to a segment plus the four-dimensional twist integral.
BaseCaseReport base_case_check(const HPolytope& delta);

nlohmann::ordered_json to_json(const SurgeryCertificate& c);
nlohmann::ordered_json to_json(const RankAudit& a);
nlohmann::ordered_json to_json(const CommuteReport& r);
nlohmann::ordered_json to_json(const BaseCaseReport& r);

}  // namespace gct::construct
