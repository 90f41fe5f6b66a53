#include "gctoric/charts.hpp"

#include <cmath>
#include <random>
#include <set>
#include <sstream>

#include "gctoric/errors.hpp"

namespace gct::charts {

namespace {

std::string format_point(const Point& p) {
    std::ostringstream os;
    os.precision(17);
    os << '(';
    for (std::size_t i = 0; i < p.size(); ++i) os << (i ? ", " : "") << p[i];
    os << ')';
    return os.str();
}

template <class Map>
const typename Map::mapped_type& lookup(const Map& m, std::string_view name, const std::string& chart,
                                        const char* kind) {
    auto it = m.find(std::string(name));
    if (it == m.end())
        throw UnknownName("chart '" + chart + "' has no " + kind + " field '" + std::string(name) + "'");
    return it->second;
}

// Offsets (in units of h) and weights of the first-derivative stencils.
const std::vector<std::pair<int, double>>& stencil_terms(Stencil s) {
    static const std::vector<std::pair<int, double>> c2{{1, 0.5}, {-1, -0.5}};
    static const std::vector<std::pair<int, double>> c4{
        {2, -1.0 / 12.0}, {1, 8.0 / 12.0}, {-1, -8.0 / 12.0}, {-2, 1.0 / 12.0}};
    return s == Stencil::Central2 ? c2 : c4;
}

void axpy(FloatForm& acc, double w, const FloatForm& x) { acc += x * Complex(w, 0.0); }
void axpy(Complex& acc, double w, const Complex& x) { acc += w * x; }
void axpy(std::vector<Complex>& acc, double w, const std::vector<Complex>& x) {
    for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += w * x[i];
}

FloatForm zero_like(const FloatForm& f) { return FloatForm(f.dim()); }
Complex zero_like(const Complex&) { return {}; }
std::vector<Complex> zero_like(const std::vector<Complex>& v) { return std::vector<Complex>(v.size()); }

// Partial derivative along coordinate j of any field with linear structure.
template <class F>
auto partial(const Chart& chart, const F& f, const Point& p, int j, double h, Stencil s) {
    using T = std::decay_t<decltype(f(p))>;
    std::optional<T> acc;
    for (auto [offset, weight] : stencil_terms(s)) {
        Point q = p;
        q[j] += offset * h;
        if (!chart.in_domain(q))
            throw DomainError("finite-difference stencil leaves the domain of '" + chart.name() + "' at " +
                              format_point(p) + " (step " + std::to_string(h) + ")");
        T value = f(q);
        if (!acc) acc = zero_like(value);
        axpy(*acc, weight / h, value);
    }
    return *acc;
}

FloatForm basis_one_form(int m, int j) { return FloatForm::monomial(m, {j + 1}); }

}  // namespace

Chart::Chart(std::string name, std::vector<Coordinate> coords, std::function<bool(const Point&)> domain)
    : name_(std::move(name)), coords_(std::move(coords)), domain_(std::move(domain)) {
    algebra::check_dim(dim());
    box_.assign(coords_.size(), {0.0, 1.0});
}

int Chart::coordinate_index(std::string_view name) const {
    for (std::size_t i = 0; i < coords_.size(); ++i)
        if (coords_[i].name == name) return static_cast<int>(i);
    return -1;
}

bool Chart::in_domain(const Point& p) const {
    if (static_cast<int>(p.size()) != dim()) return false;
    for (double x : p)
        if (!std::isfinite(x)) return false;
    return !domain_ || domain_(p);
}

void Chart::require_domain(const Point& p) const {
    if (static_cast<int>(p.size()) != dim())
        throw DimensionError("point " + format_point(p) + " has " + std::to_string(p.size()) +
                             " coordinates; chart '" + name_ + "' has " + std::to_string(dim()));
    if (!in_domain(p)) throw DomainError("point " + format_point(p) + " lies outside the domain of '" + name_ + "'");
}

void Chart::add_scalar(std::string name, ScalarFn fn) { scalars_[std::move(name)] = std::move(fn); }
void Chart::add_form(std::string name, std::optional<int> degree, FormFn fn) {
    forms_[std::move(name)] = FormField{degree, std::move(fn)};
}
void Chart::add_vector(std::string name, VectorFn fn) { vectors_[std::move(name)] = std::move(fn); }
void Chart::add_matrix(std::string name, MatrixFn fn) { matrices_[std::move(name)] = std::move(fn); }

Complex Chart::scalar(std::string_view name, const Point& p) const {
    const auto& fn = lookup(scalars_, name, name_, "scalar");
    require_domain(p);
    return fn(p);
}

FloatForm Chart::form(std::string_view name, const Point& p) const {
    const auto& field = lookup(forms_, name, name_, "form");
    require_domain(p);
    FloatForm value = field.eval(p);
    if (value.dim() != dim()) throw DimensionError("form field '" + std::string(name) + "' has the wrong dimension");
    if (field.degree && !value.is_zero() && value.pure_degree() != field.degree)
        throw DimensionError("form field '" + std::string(name) + "' is not of declared degree " +
                             std::to_string(*field.degree));
    return value;
}

std::vector<Complex> Chart::vector(std::string_view name, const Point& p) const {
    const auto& fn = lookup(vectors_, name, name_, "vector");
    require_domain(p);
    auto v = fn(p);
    if (static_cast<int>(v.size()) != dim()) throw DimensionError("vector field has the wrong dimension");
    return v;
}

DenseMatrix<double> Chart::matrix(std::string_view name, const Point& p) const {
    const auto& fn = lookup(matrices_, name, name_, "matrix");
    require_domain(p);
    return fn(p);
}

FormFn Chart::form_fn(std::string_view name) const {
    lookup(forms_, name, name_, "form");
    std::string key(name);
    return [this, key](const Point& p) { return form(key, p); };
}

ScalarFn Chart::scalar_fn(std::string_view name) const {
    lookup(scalars_, name, name_, "scalar");
    std::string key(name);
    return [this, key](const Point& p) { return scalar(key, p); };
}

std::optional<int> Chart::form_degree(std::string_view name) const {
    return lookup(forms_, name, name_, "form").degree;
}

void Chart::set_sample_box(std::vector<std::pair<double, double>> box) {
    if (static_cast<int>(box.size()) != dim()) throw DimensionError("sample box has the wrong dimension");
    box_ = std::move(box);
}

// ---------------------------------------------------------------------------
// Sample plans

SamplePlan resolve(const PlanSpec& spec, const Chart& chart) {
    if (!(spec.h > 0.0)) throw PreconditionError("finite-difference step h must be positive");
    if (!(spec.tolerance > 0.0)) throw PreconditionError("tolerance must be positive");
    SamplePlan plan;
    plan.h = spec.h;
    plan.tolerance = spec.tolerance;
    if (spec.points) {
        for (const auto& p : *spec.points) chart.require_domain(p);
        plan.points = *spec.points;
        return plan;
    }
    if (spec.count < 1) throw PreconditionError("sample count must be positive");
    plan.seed = spec.seed;

    auto box = chart.sample_box();
    for (const auto& [coord, range] : spec.box) {
        int idx = chart.coordinate_index(coord);
        if (idx < 0) throw UnknownName("chart '" + chart.name() + "' has no coordinate '" + coord + "'");
        if (!(range.first < range.second)) throw PreconditionError("empty sampling interval for '" + coord + "'");
        box[idx] = range;
    }
    for (const auto& ex : spec.exclusions)
        if (chart.coordinate_index(ex.field) < 0 && !chart.has_scalar(ex.field))
            throw UnknownName("exclusion refers to unknown field '" + ex.field + "'");

    auto excluded = [&](const Point& p) {
        for (const auto& ex : spec.exclusions) {
            int idx = chart.coordinate_index(ex.field);
            double v = idx >= 0 ? p[idx] : chart.scalar(ex.field, p).real();
            if (v >= ex.min && v <= ex.max) return true;
        }
        return false;
    };

    // mt19937_64 output is fixed by the standard; the [0,1) map is spelled out
    // so the sample sequence does not depend on the library's distributions.
    std::mt19937_64 rng(spec.seed);
    auto uniform = [&] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
    const std::size_t max_draws = static_cast<std::size_t>(spec.count) * 10000;
    std::size_t draws = 0;
    while (static_cast<int>(plan.points.size()) < spec.count) {
        if (++draws > max_draws) throw PreconditionError("sampling box and exclusions leave no admissible points");
        Point p(chart.dim());
        for (int i = 0; i < chart.dim(); ++i) p[i] = box[i].first + (box[i].second - box[i].first) * uniform();
        if (!chart.in_domain(p) || excluded(p)) continue;
        plan.points.push_back(std::move(p));
    }
    return plan;
}

PlanSpec plan_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw std::invalid_argument("plan must be a JSON object");
    static const std::set<std::string> known{"points", "seed", "count", "h", "tolerance", "box", "exclusion"};
    for (const auto& [k, v] : j.items())
        if (!known.count(k)) throw std::invalid_argument("unknown plan key '" + k + "'");
    PlanSpec spec;
    spec.seed = 1;
    if (j.contains("points")) spec.points = j.at("points").get<std::vector<Point>>();
    if (j.contains("seed")) spec.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("count")) spec.count = j.at("count").get<int>();
    if (j.contains("h")) spec.h = j.at("h").get<double>();
    if (j.contains("tolerance")) spec.tolerance = j.at("tolerance").get<double>();
    if (j.contains("box"))
        for (const auto& [k, v] : j.at("box").items()) spec.box[k] = {v.at(0).get<double>(), v.at(1).get<double>()};
    if (j.contains("exclusion")) {
        const auto& ex = j.at("exclusion");
        auto read = [](const nlohmann::json& e) {
            Exclusion out;
            out.field = e.contains("field") ? e.at("field").get<std::string>() : e.at("coord").get<std::string>();
            out.min = e.contains("min") ? e.at("min").get<double>() : -HUGE_VAL;
            out.max = e.contains("max") ? e.at("max").get<double>() : HUGE_VAL;
            return out;
        };
        if (ex.is_array())
            for (const auto& e : ex) spec.exclusions.push_back(read(e));
        else
            spec.exclusions.push_back(read(ex));
    }
    return spec;
}

// ---------------------------------------------------------------------------
// Calculus

FloatForm d_numeric(const Chart& chart, const FormFn& f, const Point& p, double h, Stencil stencil) {
    chart.require_domain(p);
    FloatForm out(chart.dim());
    for (int j = 0; j < chart.dim(); ++j) {
        FloatForm dj = partial(chart, f, p, j, h, stencil);
        out += algebra::wedge(basis_one_form(chart.dim(), j), dj);
    }
    return out;
}

FloatForm d_scalar(const Chart& chart, const ScalarFn& f, const Point& p, double h, Stencil stencil) {
    chart.require_domain(p);
    std::vector<Complex> c(chart.dim());
    for (int j = 0; j < chart.dim(); ++j) c[j] = partial(chart, f, p, j, h, stencil);
    return algebra::one_form(c);
}

std::vector<Complex> lie_bracket(const Chart& chart, const VectorFn& x, const VectorFn& y, const Point& p, double h,
                                 Stencil stencil) {
    chart.require_domain(p);
    int m = chart.dim();
    auto xp = x(p);
    auto yp = y(p);
    std::vector<Complex> out(m);
    for (int i = 0; i < m; ++i) {
        auto dy = partial(chart, y, p, i, h, stencil);
        auto dx = partial(chart, x, p, i, h, stencil);
        for (int k = 0; k < m; ++k) out[k] += xp[i] * dy[k] - yp[i] * dx[k];
    }
    return out;
}

CVector courant_bracket(const Chart& chart, const SectionFn& a, const SectionFn& b, const FormFn& h_form,
                        const Point& p, double h, Stencil stencil) {
    using algebra::contract;
    using algebra::one_form;
    chart.require_domain(p);
    VectorFn x = [&](const Point& q) { return a(q).vec; };
    VectorFn y = [&](const Point& q) { return b(q).vec; };
    FormFn xi = [&](const Point& q) { return one_form(a(q).cov); };
    FormFn eta = [&](const Point& q) { return one_form(b(q).cov); };
    auto pairing = [](const std::vector<Complex>& form, const std::vector<Complex>& vec) {
        Complex acc{};
        for (std::size_t i = 0; i < vec.size(); ++i) acc += form[i] * vec[i];
        return acc;
    };
    ScalarFn eta_x = [&](const Point& q) {
        auto s = a(q);
        return pairing(b(q).cov, s.vec);
    };
    ScalarFn xi_y = [&](const Point& q) {
        auto s = b(q);
        return pairing(a(q).cov, s.vec);
    };

    CVector ap = a(p);
    CVector bp = b(p);
    auto bracket = lie_bracket(chart, x, y, p, h, stencil);

    // L_X eta - L_Y xi - 1/2 d(eta(X) - xi(Y))
    //   = i_X d eta - i_Y d xi + 1/2 d(eta(X) - xi(Y))
    FloatForm cov = contract(ap.vec, d_numeric(chart, eta, p, h, stencil)) -
                    contract(bp.vec, d_numeric(chart, xi, p, h, stencil));
    FloatForm d_pair = d_scalar(chart, eta_x, p, h, stencil) - d_scalar(chart, xi_y, p, h, stencil);
    cov += d_pair * Complex(0.5, 0.0);
    cov += contract(bp.vec, contract(ap.vec, h_form(p)));

    return CVector(bracket, algebra::one_form_components(cov));
}

nlohmann::ordered_json to_json(const CheckReport& r) {
    nlohmann::ordered_json j;
    j["model"] = r.model;
    j["check"] = r.check;
    j["points"] = r.points;
    j["maxResidual"] = r.max_residual;
    j["tolerance"] = r.tolerance;
    j["pass"] = r.pass;
    if (r.seed)
        j["seed"] = *r.seed;
    else
        j["seed"] = nullptr;
    if (!r.details.empty()) j["details"] = r.details;
    return j;
}

}  // namespace gct::charts
