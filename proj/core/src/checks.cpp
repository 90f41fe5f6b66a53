#include "gctoric/checks.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include <Eigen/Dense>
#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "gctoric/errors.hpp"

namespace gct::charts {

namespace {

using algebra::Blade;

nlohmann::ordered_json point_json(const Point& p) { return nlohmann::ordered_json(p); }

// Running maximum that remembers where it was attained.
struct Worst {
    double value = 0.0;
    std::optional<std::size_t> index;

    void update(double v, std::size_t i) {
        if (!index || v > value) {
            value = v;
            index = i;
        }
    }
};

CheckReport start_report(const Chart& chart, std::string check, const SamplePlan& plan) {
    CheckReport r;
    r.model = chart.name();
    r.check = std::move(check);
    r.points = plan.points.size();
    r.tolerance = plan.tolerance;
    r.seed = plan.seed;
    for (const auto& [k, v] : chart.notes()) r.details["conventions"][k] = v;
    r.details["h"] = plan.h;
    return r;
}

void record_witness(CheckReport& r, const SamplePlan& plan, const Worst& w) {
    if (!w.index) return;
    r.details["worstPointIndex"] = *w.index;
    r.details["worstPoint"] = point_json(plan.points[*w.index]);
}

std::string describe(const Point& p, std::size_t idx) {
    std::string s = "sample point " + std::to_string(idx) + " (";
    for (std::size_t i = 0; i < p.size(); ++i) s += (i ? ", " : "") + std::to_string(p[i]);
    return s + ")";
}

CVector row_vector(const DenseMatrix<Complex>& m, int row) {
    int dim = m.cols() / 2;
    CVector v(dim);
    for (int j = 0; j < m.cols(); ++j) v[j] = m(row, j);
    return v;
}

double form_norm(const FloatForm& f) { return algebra::max_abs_diff(f, FloatForm(f.dim())); }

// min over v of |C v - rhs|_inf where C has columns v_j . phi in the monomial basis.
double condition_b_residual(const FloatForm& phi, const FloatForm& rhs) {
    int m = phi.dim();
    int rows = 1 << m;
    Eigen::MatrixXcd c(rows, 2 * m);
    Eigen::VectorXcd b(rows);
    for (int j = 0; j < 2 * m; ++j) {
        CVector v(m);
        v[j] = 1.0;
        FloatForm col = algebra::clifford(v, phi);
        for (int r = 0; r < rows; ++r) c(r, j) = col.coeff(static_cast<Blade>(r));
    }
    for (int r = 0; r < rows; ++r) b(r) = rhs.coeff(static_cast<Blade>(r));
    Eigen::VectorXcd x = c.completeOrthogonalDecomposition().solve(b);
    return (c * x - b).cwiseAbs().maxCoeff();
}

}  // namespace

CheckReport involutivity_check(const Chart& chart, const SamplePlan& plan, std::string_view spinor,
                               std::string_view twist, const gclin::Tolerance& tol) {
    FormFn phi = chart.form_fn(spinor);
    FormFn h_form = chart.form_fn(twist);
    CheckReport report = start_report(chart, "involutivity", plan);
    Worst bracket_worst, b_worst;

    for (std::size_t idx = 0; idx < plan.points.size(); ++idx) {
        const Point& p = plan.points[idx];
        FloatForm phi_p = phi(p);
        if (!gclin::is_pure(phi_p, tol) || !gclin::nondegenerate(phi_p, tol))
            throw PreconditionError("spinor is impure or degenerate at " + describe(p, idx));
        auto lp = gclin::annihilator(phi_p, tol);
        const auto pivots = lp.pivots;

        // One smooth frame near p: annihilator bases normalized on the pivots at p.
        std::map<Point, DenseMatrix<Complex>> frames;
        auto frame = [&](const Point& q) -> const DenseMatrix<Complex>& {
            auto it = frames.find(q);
            if (it == frames.end())
                it = frames.emplace(q, gclin::basis_on_pivots(gclin::annihilator(phi(q), tol), pivots, tol)).first;
            return it->second;
        };

        const DenseMatrix<Complex>& at_p = frame(p);
        int n = at_p.rows();
        double point_residual = 0.0;
        for (int a = 0; a < n; ++a)
            for (int b = a + 1; b < n; ++b) {
                SectionFn sa = [&, a](const Point& q) { return row_vector(frame(q), a); };
                SectionFn sb = [&, b](const Point& q) { return row_vector(frame(q), b); };
                CVector z = courant_bracket(chart, sa, sb, h_form, p, plan.h, plan.stencil);
                for (int k = 0; k < n; ++k)
                    point_residual =
                        std::max(point_residual, std::abs(algebra::natural_pairing(z, row_vector(at_p, k))));
            }
        bracket_worst.update(point_residual, idx);

        FloatForm rhs = d_numeric(chart, phi, p, plan.h, plan.stencil) - algebra::wedge(h_form(p), phi_p);
        b_worst.update(condition_b_residual(phi_p, rhs), idx);
    }

    report.max_residual = bracket_worst.value;
    report.details["bracketResidual"] = bracket_worst.value;
    report.details["conditionBResidual"] = b_worst.value;
    report.pass = bracket_worst.value < plan.tolerance && b_worst.value < plan.tolerance;
    record_witness(report, plan, bracket_worst.value >= b_worst.value ? bracket_worst : b_worst);
    return report;
}

CheckReport verify_spinor_match(const Chart& cgu, const SamplePlan& plan) {
    CheckReport report = start_report(cgu, "spinor-match", plan);
    Worst worst;
    for (std::size_t idx = 0; idx < plan.points.size(); ++idx) {
        const Point& p = plan.points[idx];
        if (std::abs(cgu.scalar("z1", p)) == 0.0)
            throw PreconditionError("spinor match is undefined on the type-jump locus, " + describe(p, idx));
        auto l_rho = gclin::annihilator(cgu.form("rho", p));
        auto l_sym = gclin::annihilator(cgu.form("phi_symplectic", p));
        worst.update(gclin::subspace_distance(l_rho, l_sym), idx);
    }
    report.max_residual = worst.value;
    report.pass = worst.value < plan.tolerance;
    record_witness(report, plan, worst);
    return report;
}

CheckReport verify_gluing(const Chart& source, const Chart& target, const GluingMap& psi, const SamplePlan& plan,
                          JacobianMode mode) {
    CheckReport report = start_report(source, "gluing", plan);
    report.details["target"] = target.name();
    report.details["jacobian"] = mode == JacobianMode::Analytic ? "analytic" : "finite-difference";
    const Complex i{0.0, 1.0};
    const int m = source.dim();
    if (target.dim() != m || psi.dim() != m) throw DimensionError("gluing charts differ in dimension");
    Worst omega_worst, spinor_worst;

    for (std::size_t idx = 0; idx < plan.points.size(); ++idx) {
        const Point& p = plan.points[idx];
        source.require_domain(p);
        Point q = psi.apply(p);
        std::vector<std::vector<double>> jac;
        if (mode == JacobianMode::Analytic) {
            jac = psi.jacobian(p);
        } else {
            jac.assign(m, std::vector<double>(m, 0.0));
            for (int c = 0; c < m; ++c) {
                Point lo = p, hi = p;
                lo[c] -= plan.h;
                hi[c] += plan.h;
                Point ylo = psi.apply(lo), yhi = psi.apply(hi);
                for (int k = 0; k < m; ++k) jac[k][c] = (yhi[k] - ylo[k]) / (2.0 * plan.h);
            }
        }
        FloatForm omega_t = target.form("omega", q);
        FloatForm pulled = algebra::pullback(omega_t, jac, m);
        omega_worst.update(algebra::max_abs_diff(pulled, source.form("alpha", p)), idx);

        FloatForm spin_t = target.form("Btilde", q) + omega_t * i;
        FloatForm spin_s = source.form("B", p) + source.form("alpha", p) * i;
        spinor_worst.update(algebra::max_abs_diff(algebra::pullback(spin_t, jac, m), spin_s), idx);
    }

    report.max_residual = std::max(omega_worst.value, spinor_worst.value);
    report.details["omegaResidual"] = omega_worst.value;
    report.details["complexFormResidual"] = spinor_worst.value;
    report.pass = report.max_residual < plan.tolerance;
    record_witness(report, plan, omega_worst.value >= spinor_worst.value ? omega_worst : spinor_worst);
    return report;
}

double twist_integral(const Chart& product, double radius) {
    using boost::math::quadrature::gauss;
    using boost::math::quadrature::gauss_kronrod;
    int ir = product.coordinate_index("r");
    int i1 = product.coordinate_index("theta1");
    int i3 = product.coordinate_index("theta3");
    if (ir < 0 || i1 < 0 || i3 < 0) throw UnknownName("chart '" + product.name() + "' has no (r, theta1, theta3)");
    double p1 = product.coordinates()[i1].period.value_or(1.0);
    double p3 = product.coordinates()[i3].period.value_or(1.0);

    auto density = [&](double r, double t3, double t1) {
        Point p(product.dim(), 0.0);
        p[ir] = r;
        p[i3] = t3;
        p[i1] = t1;
        FloatForm h = product.form("H", p);
        // H(d_r, d_theta3, d_theta1)
        FloatForm c = algebra::contract_basis(i1 + 1, algebra::contract_basis(i3 + 1, algebra::contract_basis(ir + 1, h)));
        return c.coeff(0).real();
    };
    auto over_angles = [&](double r) {
        return gauss<double, 7>::integrate(
            [&](double t1) { return gauss<double, 7>::integrate([&](double t3) { return density(r, t3, t1); }, 0.0, p3); },
            0.0, p1);
    };
    return gauss_kronrod<double, 61>::integrate(over_angles, 0.0, radius, 15, 1e-13);
}

CheckReport verify_twist_form(const Chart& product, const BumpProfile& bump, const SamplePlan& plan) {
    CheckReport report = start_report(product, "twist-form", plan);
    int ir = product.coordinate_index("r");
    FormFn b_tilde = product.form_fn("Btilde");
    Worst d_worst, outside_worst;
    for (std::size_t idx = 0; idx < plan.points.size(); ++idx) {
        const Point& p = plan.points[idx];
        FloatForm h = product.form("H", p);
        d_worst.update(algebra::max_abs_diff(d_numeric(product, b_tilde, p, plan.h, plan.stencil), h), idx);
        double r = p[ir];
        if (r < bump.r0() || r > bump.r1()) outside_worst.update(form_norm(h), idx);
    }
    double radius = bump.r1() + 0.5;
    double integral = twist_integral(product, radius);
    constexpr double expected = -1.0;
    constexpr double quadrature_tol = 1e-6;

    report.max_residual = std::max(d_worst.value, outside_worst.value);
    report.details["dBtildeMinusHResidual"] = d_worst.value;
    report.details["supportResidual"] = outside_worst.value;
    report.details["integralRadius"] = radius;
    report.details["integral"] = integral;
    report.details["expectedIntegral"] = expected;
    report.details["integralTolerance"] = quadrature_tol;
    report.pass = report.max_residual < plan.tolerance && std::abs(integral - expected) < quadrature_tol;
    record_witness(report, plan, d_worst.value >= outside_worst.value ? d_worst : outside_worst);
    return report;
}

CheckReport verify_moment(const Chart& chart, const ActionData& action, std::string_view j_field,
                          std::string_view twist, const SamplePlan& plan) {
    if (action.rank < 0 || static_cast<int>(action.generators.size()) != action.rank)
        throw PreconditionError("action data lists " + std::to_string(action.generators.size()) +
                                " generators for rank " + std::to_string(action.rank));
    for (const auto& g : action.generators)
        if (!g.xi_m || !g.mu || !g.alpha) throw PreconditionError("missing action data for a generator");
    if (!chart.has_matrix(j_field)) throw UnknownName("chart '" + chart.name() + "' has no matrix field '" + std::string(j_field) + "'");
    FormFn h_form = chart.form_fn(twist);

    CheckReport report = start_report(chart, "moment", plan);
    report.details["rank"] = action.rank;
    Worst a_worst, b_worst, c_worst;
    for (std::size_t idx = 0; idx < plan.points.size(); ++idx) {
        const Point& p = plan.points[idx];
        chart.require_domain(p);
        double ra = 0.0, rb = 0.0, rc = 0.0;
        for (const auto& gen : action.generators) {
            auto xi = gen.xi_m(p);
            FloatForm alpha = gen.alpha(p);
            FloatForm dmu = d_scalar(chart, gen.mu, p, plan.h, plan.stencil);
            CVector v(std::vector<Complex>(chart.dim()), algebra::one_form_components(dmu));
            CVector jv = gclin::apply(chart.matrix(j_field, p), v);
            auto alpha_c = algebra::one_form_components(alpha);
            for (int k = 0; k < chart.dim(); ++k) {
                ra = std::max(ra, std::abs(-jv.vec[k] - xi[k]));
                ra = std::max(ra, std::abs(-jv.cov[k] - alpha_c[k]));
            }
            FloatForm dalpha = d_numeric(chart, gen.alpha, p, plan.h, plan.stencil);
            rb = std::max(rb, algebra::max_abs_diff(dalpha, algebra::contract(xi, h_form(p))));
            Complex pairing{};
            for (int k = 0; k < chart.dim(); ++k) pairing += alpha_c[k] * xi[k];
            rc = std::max(rc, std::abs(pairing));
        }
        a_worst.update(ra, idx);
        b_worst.update(rb, idx);
        c_worst.update(rc, idx);
    }
    report.max_residual = std::max({a_worst.value, b_worst.value, c_worst.value});
    report.details["momentResidual"] = a_worst.value;
    report.details["equivariantClosureResidual"] = b_worst.value;
    report.details["alphaXiResidual"] = c_worst.value;
    report.pass = report.max_residual < plan.tolerance;
    const Worst* w = &a_worst;
    if (b_worst.value > w->value) w = &b_worst;
    if (c_worst.value > w->value) w = &c_worst;
    record_witness(report, plan, *w);
    return report;
}

// ---------------------------------------------------------------------------
// Dispatch

namespace {

bool is_product(std::string_view name) { return name.rfind("product-surgery", 0) == 0 || name == "glue-target"; }
bool is_glue_source(std::string_view name) { return name.rfind("glue-source", 0) == 0; }

[[noreturn]] void unavailable(std::string_view model_name, std::string_view check) {
    throw UnknownName("check '" + std::string(check) + "' is not available for model '" + std::string(model_name) + "'");
}

}  // namespace

PlanSpec default_plan(std::string_view model_name, std::string_view check) {
    PlanSpec spec;
    spec.seed = 1;
    spec.count = 100;
    spec.h = 1e-4;
    spec.tolerance = 1e-6;
    if (check == "involutivity") {
        if (model_name == "cgu-model") {
            spec.exclusions = {{"r", 0.0, 0.3}, {"r", 0.97, HUGE_VAL}};
        } else if (model_name == "b-symplectic") {
            spec.box["r"] = {0.2, 0.95};
        } else if (is_glue_source(model_name)) {
            spec.count = 30;
        } else if (is_product(model_name)) {
            spec.count = 30;
            spec.box["r"] = {0.1, 2.0};
        }
    } else if (check == "spinor-match") {
        spec.exclusions = {{"r", 0.0, 0.1}, {"r", 0.99, HUGE_VAL}};
    } else if (check == "gluing") {
        spec.count = 200;
        spec.tolerance = 1e-9;
    } else if (check == "twist-form") {
        spec.box["r"] = {0.05, 2.0};
    } else if (check == "moment") {
        spec.box["r"] = {0.05, 2.0};
    }
    return spec;
}

CheckReport run_check(std::string_view model_name, std::string_view check, const CheckOptions& options) {
    if (std::find(check_names().begin(), check_names().end(), check) == check_names().end())
        throw UnknownName("unknown check '" + std::string(check) + "'");
    Model m = model(model_name);

    PlanSpec spec = options.plan ? *options.plan : default_plan(model_name, check);
    if (options.seed) spec.seed = *options.seed;
    if (options.h) spec.h = *options.h;
    if (options.tolerance) spec.tolerance = *options.tolerance;

    if (check == "involutivity") {
        SamplePlan plan = resolve(spec, m.chart);
        plan.stencil = options.stencil;
        return involutivity_check(m.chart, plan);
    }
    if (check == "spinor-match") {
        if (model_name != "cgu-model") unavailable(model_name, check);
        return verify_spinor_match(m.chart, resolve(spec, m.chart));
    }
    if (check == "gluing") {
        // Either side names the gluing; points are always drawn on the source annulus.
        if (!is_glue_source(model_name) && model_name != "glue-target") unavailable(model_name, check);
        Model source = model_name == "glue-target" ? charts::model("glue-source") : std::move(m);
        Model target = charts::model(source.a_dim == 2 ? "product-surgery"
                                                       : "product-surgery(" + std::to_string(source.a_dim) + ")");
        SamplePlan plan = resolve(spec, source.chart);
        return verify_gluing(source.chart, target.chart, GluingMap(source.a_dim), plan, options.jacobian);
    }
    if (!is_product(model_name)) unavailable(model_name, check);
    SamplePlan plan = resolve(spec, m.chart);
    plan.stencil = options.stencil;
    if (check == "twist-form") return verify_twist_form(m.chart, BumpProfile{}, plan);
    return verify_moment(m.chart, *m.action, "J", "H", plan);
}

std::vector<std::pair<std::string, std::string>> default_suite() {
    return {{"cgu-model", "spinor-match"},   {"cgu-model", "involutivity"},       {"b-symplectic", "involutivity"},
            {"glue-source", "gluing"},       {"product-surgery", "twist-form"},   {"product-surgery", "moment"},
            {"product-surgery", "involutivity"}};
}

}  // namespace gct::charts
