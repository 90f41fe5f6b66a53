#pragma once

// Pointwise verification runs over sample plans. Every report names its worst
// sample point so failures come with a witness.

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "gctoric/charts.hpp"
#include "gctoric/gclin.hpp"
#include "gctoric/models.hpp"

namespace gct::charts {

/// Twisted-Courant closure of annihilator(phi) and the condition
/// d phi - H ^ phi = (X + xi) . phi (least squares over X + xi).
/// Throws PreconditionError at a sample point where phi is impure or degenerate.
CheckReport involutivity_check(const Chart& chart, const SamplePlan& plan, std::string_view spinor = "phi",
                               std::string_view twist = "H", const gclin::Tolerance& tol = {});

/// annihilator(rho) against annihilator(e^{B + i gamma}) on the cgu-model.
/// Throws PreconditionError for points on z1 = 0.
CheckReport verify_spinor_match(const Chart& cgu, const SamplePlan& plan);

enum class JacobianMode { Analytic, FiniteDifference };

/// psi'^* omega = alpha and psi'^*(Btilde + i omega) = B + i alpha on the gluing annulus.
/// The finite-difference Jacobian uses the second-order central stencil with step plan.h.
CheckReport verify_gluing(const Chart& source, const Chart& target, const GluingMap& psi, const SamplePlan& plan,
                          JacobianMode mode = JacobianMode::Analytic);

/// d Btilde = H on the plan, H = 0 off [r0, r1], and the transverse integral of H.
CheckReport verify_twist_form(const Chart& product, const BumpProfile& bump, const SamplePlan& plan);

/// Integral of H over {(r, theta3, theta1) : 0 < r < radius} at the base point, unit orientation (r, theta3, theta1).
double twist_integral(const Chart& product, double radius);

/// -J d mu = xi_M + alpha, d alpha = i_{xi_M} H and alpha(xi_M) = 0 for every generator.
CheckReport verify_moment(const Chart& chart, const ActionData& action, std::string_view j_field,
                          std::string_view twist, const SamplePlan& plan);

inline const std::vector<std::string>& check_names() {
    static const std::vector<std::string> names{"spinor-match", "gluing", "twist-form", "moment", "involutivity"};
    return names;
}

struct CheckOptions {
    std::optional<PlanSpec> plan;
    std::optional<std::uint64_t> seed;
    std::optional<double> h;
    std::optional<double> tolerance;
    JacobianMode jacobian = JacobianMode::Analytic;
    Stencil stencil = Stencil::Central4;
};

/// Default plan for a (model, check) pair.
PlanSpec default_plan(std::string_view model_name, std::string_view check);

/// Resolve options against the defaults and run; throws UnknownName for unknown pairs.
CheckReport run_check(std::string_view model_name, std::string_view check, const CheckOptions& options = {});

/// The (model, check) pairs exercised by a full suite run.
std::vector<std::pair<std::string, std::string>> default_suite();

}  // namespace gct::charts
