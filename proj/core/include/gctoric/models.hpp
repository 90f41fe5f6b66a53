#pragma once

// Built-in chart models: the type-jumping local model, its B-symplectic form
// off the locus, the two sides of the logarithmic-transform gluing, and the
// product chart carrying the bump two-form, twisting three-form and the
// A-factor torus action.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gctoric/charts.hpp"

namespace gct::charts {

/// f(r) = g(r1 - r) / (g(r1 - r) + g(r - r0)), g(t) = exp(-1/t) for t > 0 and 0 otherwise.
/// Smooth, equal to 1 on [0, r0] and to 0 on [r1, inf).
class BumpProfile {
public:
    BumpProfile() : BumpProfile(1.0, 1.5) {}
    BumpProfile(double r0, double r1);  // throws PreconditionError unless 0 < r0 < r1

    double r0() const { return r0_; }
    double r1() const { return r1_; }
    double value(double r) const;
    double derivative(double r) const;

private:
    double r0_;
    double r1_;
};

/// Inner radius of the gluing annulus, 1/sqrt(e).
double gluing_radius();

/// (x, r, t1, t2, t3) -> (x, sqrt(log(e r^2)), t3, t2, -t1), identity on the A-coordinates.
class GluingMap {
public:
    explicit GluingMap(int a_dim = 2);

    int a_dim() const { return a_dim_; }
    int dim() const { return a_dim_ + 4; }
    Point apply(const Point& source) const;
    /// jac[k][i] = d y_k / d x_i.
    std::vector<std::vector<double>> jacobian(const Point& source) const;

private:
    int a_dim_;
};

struct Model {
    Chart chart;
    std::optional<ActionData> action;
    int a_dim = 0;
};

/// cgu-model, b-symplectic, glue-source[(a)], glue-target, product-surgery[(a)] with a in {0, 2, 4}.
/// Throws UnknownName otherwise.
Model model(std::string_view name, const BumpProfile& bump = {});

std::vector<std::string> model_names();

}  // namespace gct::charts
