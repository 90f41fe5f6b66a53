#pragma once

// Coordinate charts carrying evaluable fields, finite-difference calculus on
// them (exterior derivative, Lie bracket, twisted Courant bracket), and sample
// plans for pointwise verification runs.

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "gctoric/dense.hpp"
#include "gctoric/form.hpp"

namespace gct::charts {

using Point = std::vector<double>;
using algebra::FloatForm;
using CVector = algebra::GVector<Complex>;

using ScalarFn = std::function<Complex(const Point&)>;
using FormFn = std::function<FloatForm(const Point&)>;
using VectorFn = std::function<std::vector<Complex>(const Point&)>;
using SectionFn = std::function<CVector(const Point&)>;
using MatrixFn = std::function<DenseMatrix<double>(const Point&)>;

/// Unknown model, check or field name.
class UnknownName : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct Coordinate {
    std::string name;
    std::optional<double> period;  // set for angle coordinates
};

struct FormField {
    std::optional<int> degree;  // nullopt for inhomogeneous forms (spinors)
    FormFn eval;
};

class Chart {
public:
    Chart(std::string name, std::vector<Coordinate> coords, std::function<bool(const Point&)> domain);

    const std::string& name() const { return name_; }
    int dim() const { return static_cast<int>(coords_.size()); }
    const std::vector<Coordinate>& coordinates() const { return coords_; }
    int coordinate_index(std::string_view name) const;

    bool in_domain(const Point& p) const;
    /// Throws DomainError unless p has the chart dimension and satisfies the domain predicate.
    void require_domain(const Point& p) const;

    void add_scalar(std::string name, ScalarFn fn);
    void add_form(std::string name, std::optional<int> degree, FormFn fn);
    void add_vector(std::string name, VectorFn fn);
    void add_matrix(std::string name, MatrixFn fn);

    bool has_scalar(std::string_view name) const { return scalars_.count(std::string(name)) != 0; }
    bool has_form(std::string_view name) const { return forms_.count(std::string(name)) != 0; }
    bool has_matrix(std::string_view name) const { return matrices_.count(std::string(name)) != 0; }

    /// Domain-checked evaluations; form values are validated against the declared degree.
    Complex scalar(std::string_view name, const Point& p) const;
    FloatForm form(std::string_view name, const Point& p) const;
    std::vector<Complex> vector(std::string_view name, const Point& p) const;
    DenseMatrix<double> matrix(std::string_view name, const Point& p) const;

    /// Domain-checked callable for a registered field.
    FormFn form_fn(std::string_view name) const;
    ScalarFn scalar_fn(std::string_view name) const;
    std::optional<int> form_degree(std::string_view name) const;

    /// Per-coordinate sampling interval used by seeded random plans.
    void set_sample_box(std::vector<std::pair<double, double>> box);
    const std::vector<std::pair<double, double>>& sample_box() const { return box_; }

    /// Free-form conventions recorded into every report produced on this chart.
    void add_note(std::string key, std::string value) { notes_[std::move(key)] = std::move(value); }
    const std::map<std::string, std::string>& notes() const { return notes_; }

private:
    std::string name_;
    std::vector<Coordinate> coords_;
    std::function<bool(const Point&)> domain_;
    std::map<std::string, ScalarFn> scalars_;
    std::map<std::string, FormField> forms_;
    std::map<std::string, VectorFn> vectors_;
    std::map<std::string, MatrixFn> matrices_;
    std::vector<std::pair<double, double>> box_;
    std::map<std::string, std::string> notes_;
};

enum class Stencil {
    Central2,  // (f(p+h) - f(p-h)) / 2h
    Central4,  // five-point, exact for polynomials of degree <= 4
};

/// Reject points whose coordinate or registered scalar field value falls in [min, max].
struct Exclusion {
    std::string field;
    double min = 0.0;
    double max = 0.0;
};

/// Unresolved plan as read from a plan file: explicit points or {seed, count, exclusion}.
struct PlanSpec {
    std::optional<std::vector<Point>> points;
    std::uint64_t seed = 0;
    int count = 100;
    std::map<std::string, std::pair<double, double>> box;
    std::vector<Exclusion> exclusions;
    double h = 1e-4;
    double tolerance = 1e-6;
};

struct SamplePlan {
    std::vector<Point> points;
    double h = 1e-4;
    double tolerance = 1e-6;
    std::optional<std::uint64_t> seed;
    Stencil stencil = Stencil::Central4;
};

/// Materialize a plan on a chart; random plans are reproducible from the seed.
/// Throws PreconditionError for non-positive h or tolerance and DomainError for
/// points outside the chart domain.
SamplePlan resolve(const PlanSpec& spec, const Chart& chart);

PlanSpec plan_from_json(const nlohmann::json& j);

/// Estimate of df at p: sum_j e_j ^ d_j f with central differences of step h.
/// Throws DomainError when a stencil point leaves the domain.
FloatForm d_numeric(const Chart& chart, const FormFn& f, const Point& p, double h,
                    Stencil stencil = Stencil::Central4);

/// d of a scalar field, as a one-form.
FloatForm d_scalar(const Chart& chart, const ScalarFn& f, const Point& p, double h,
                   Stencil stencil = Stencil::Central4);

/// Lie bracket [X, Y] of vector fields at p.
std::vector<Complex> lie_bracket(const Chart& chart, const VectorFn& x, const VectorFn& y, const Point& p,
                                 double h, Stencil stencil = Stencil::Central4);

/// H-twisted Courant bracket
///   [X+xi, Y+eta] = [X,Y] + L_X eta - L_Y xi - 1/2 d(eta(X) - xi(Y)) + i_Y i_X H
/// evaluated at p with L_X eta = i_X d eta + d(eta(X)).
CVector courant_bracket(const Chart& chart, const SectionFn& a, const SectionFn& b, const FormFn& h_form,
                        const Point& p, double h, Stencil stencil = Stencil::Central4);

/// Torus action data: induced vector field, moment component and moment one-form per generator.
struct Generator {
    VectorFn xi_m;
    ScalarFn mu;
    FormFn alpha;
};

struct ActionData {
    int rank = 0;
    std::vector<Generator> generators;
};

struct CheckReport {
    std::string model;
    std::string check;
    std::size_t points = 0;
    double max_residual = 0.0;
    double tolerance = 0.0;
    bool pass = false;
    std::optional<std::uint64_t> seed;
    nlohmann::ordered_json details = nlohmann::ordered_json::object();
};

nlohmann::ordered_json to_json(const CheckReport& r);

}  // namespace gct::charts
