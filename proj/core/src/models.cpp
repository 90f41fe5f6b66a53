#include "gctoric/models.hpp"

#include <cmath>
#include <regex>

#include "gctoric/errors.hpp"
#include "gctoric/gclin.hpp"

namespace gct::charts {

namespace {

constexpr Complex kI{0.0, 1.0};

double g(double t) { return t > 0.0 ? std::exp(-1.0 / t) : 0.0; }
double g_prime(double t) { return t > 0.0 ? std::exp(-1.0 / t) / (t * t) : 0.0; }

FloatForm mono(int m, std::initializer_list<int> idx, Complex c = 1.0) { return FloatForm::monomial(m, idx, c); }

FloatForm one_form_real(const std::vector<double>& c) {
    std::vector<Complex> z(c.begin(), c.end());
    return algebra::one_form(z);
}

// Round-sphere area forms in stereographic coordinates, one sphere per pair (u_k, v_k).
FloatForm sphere_area(int m, int a_dim, const Point& p) {
    FloatForm out(m);
    for (int k = 0; k < a_dim / 2; ++k) {
        double u = p[2 * k], v = p[2 * k + 1];
        double s = 1.0 + u * u + v * v;
        out += mono(m, {2 * k + 1, 2 * k + 2}, 4.0 / (s * s));
    }
    return out;
}

std::vector<Coordinate> a_coords(int a_dim) {
    std::vector<Coordinate> c;
    for (int k = 0; k < a_dim / 2; ++k) {
        std::string suffix = a_dim > 2 ? std::to_string(k + 1) : "";
        c.push_back({"u" + suffix, std::nullopt});
        c.push_back({"v" + suffix, std::nullopt});
    }
    return c;
}

std::vector<Coordinate> with_disc_torus(std::vector<Coordinate> c) {
    c.push_back({"r", std::nullopt});
    c.push_back({"theta1", 1.0});
    c.push_back({"theta2", 1.0});
    c.push_back({"theta3", 1.0});
    return c;
}

std::vector<std::pair<double, double>> box_for(int a_dim, double r_lo, double r_hi) {
    std::vector<std::pair<double, double>> b(a_dim, {-1.0, 1.0});
    b.push_back({r_lo, r_hi});
    for (int i = 0; i < 3; ++i) b.push_back({0.0, 1.0});
    return b;
}

int parse_a_dim(const std::smatch& m) {
    if (!m[2].matched) return 2;
    int a = std::stoi(m[2].str());
    if (a != 0 && a != 2 && a != 4) throw UnknownName("A-factor dimension must be 0, 2 or 4");
    return a;
}

// ---------------------------------------------------------------------------

Model cgu_model() {
    constexpr int m = 4;
    Chart c("cgu-model", {{"x1", std::nullopt}, {"y1", std::nullopt}, {"theta2", 1.0}, {"theta3", 1.0}},
            [](const Point& p) { return p[0] * p[0] + p[1] * p[1] < 1.0; });
    c.set_sample_box({{-1.0, 1.0}, {-1.0, 1.0}, {0.0, 1.0}, {0.0, 1.0}});
    c.add_note("z2", "dz2 = dtheta2 + i dtheta3");

    auto radius = [](const Point& p) { return std::hypot(p[0], p[1]); };
    c.add_scalar("r", [radius](const Point& p) { return Complex(radius(p), 0.0); });
    c.add_scalar("z1", [](const Point& p) { return Complex(p[0], p[1]); });

    auto rho = [](const Point& p) {
        FloatForm dz1 = mono(m, {1}) + mono(m, {2}, kI);
        FloatForm dz2 = mono(m, {3}) + mono(m, {4}, kI);
        return FloatForm::constant(m, Complex(p[0], p[1])) + algebra::wedge(dz1, dz2);
    };
    c.add_form("rho", std::nullopt, rho);
    c.add_form("phi", std::nullopt, rho);
    c.add_form("H", 3, [](const Point&) { return FloatForm(m); });

    // dlog r and dtheta1 in Cartesian coordinates; undefined on the locus.
    auto polar = [](const Point& p) {
        double r2 = p[0] * p[0] + p[1] * p[1];
        if (r2 == 0.0) throw DomainError("polar one-forms are undefined at z1 = 0");
        FloatForm dlogr = one_form_real({p[0] / r2, p[1] / r2, 0.0, 0.0});
        FloatForm dtheta = one_form_real({-p[1] / r2, p[0] / r2, 0.0, 0.0});
        return std::pair{dlogr, dtheta};
    };
    auto b_form = [polar](const Point& p) {
        auto [dlogr, dt1] = polar(p);
        return algebra::wedge(dlogr, mono(m, {3})) - algebra::wedge(dt1, mono(m, {4}));
    };
    auto gamma = [polar](const Point& p) {
        auto [dlogr, dt1] = polar(p);
        return algebra::wedge(dlogr, mono(m, {4})) + algebra::wedge(dt1, mono(m, {3}));
    };
    c.add_form("B", 2, b_form);
    c.add_form("gamma", 2, gamma);
    c.add_form("phi_symplectic", std::nullopt,
               [b_form, gamma](const Point& p) { return algebra::exp_form(b_form(p) + gamma(p) * kI); });
    return {std::move(c), std::nullopt, 0};
}

Model b_symplectic() {
    constexpr int m = 4;
    Chart c("b-symplectic", with_disc_torus({}), [](const Point& p) { return p[0] > 0.0 && p[0] < 1.0; });
    c.set_sample_box(box_for(0, 0.0, 1.0));
    auto b_form = [](const Point& p) { return mono(m, {1, 3}, 1.0 / p[0]) - mono(m, {2, 4}); };
    auto gamma = [](const Point& p) { return mono(m, {1, 4}, 1.0 / p[0]) + mono(m, {2, 3}); };
    c.add_scalar("r", [](const Point& p) { return Complex(p[0], 0.0); });
    c.add_form("B", 2, b_form);
    c.add_form("gamma", 2, gamma);
    c.add_form("phi", std::nullopt,
               [b_form, gamma](const Point& p) { return algebra::exp_form(b_form(p) + gamma(p) * kI); });
    c.add_form("H", 3, [](const Point&) { return FloatForm(m); });
    return {std::move(c), std::nullopt, 0};
}

Model glue_source(int a_dim) {
    const int m = a_dim + 4;
    const int ir = a_dim + 1;  // 1-based index of r
    const double r_in = gluing_radius();
    Chart c(a_dim == 2 ? "glue-source" : "glue-source(" + std::to_string(a_dim) + ")", with_disc_torus(a_coords(a_dim)),
            [a_dim, r_in](const Point& p) { return p[a_dim] > r_in && p[a_dim] < 1.0; });
    c.set_sample_box(box_for(a_dim, r_in, 1.0));
    auto sigma = [m, a_dim](const Point& p) { return sphere_area(m, a_dim, p); };
    auto gamma = [m, ir, a_dim](const Point& p) {
        return mono(m, {ir, ir + 3}, 1.0 / p[a_dim]) + mono(m, {ir + 1, ir + 2});
    };
    auto b_form = [m, ir, a_dim](const Point& p) {
        return mono(m, {ir, ir + 2}, 1.0 / p[a_dim]) - mono(m, {ir + 1, ir + 3});
    };
    auto alpha = [sigma, gamma](const Point& p) { return sigma(p) + gamma(p); };
    c.add_scalar("r", [a_dim](const Point& p) { return Complex(p[a_dim], 0.0); });
    c.add_form("sigma", 2, sigma);
    c.add_form("gamma", 2, gamma);
    c.add_form("B", 2, b_form);
    c.add_form("alpha", 2, alpha);
    c.add_form("phi", std::nullopt,
               [b_form, alpha](const Point& p) { return algebra::exp_form(b_form(p) + alpha(p) * kI); });
    c.add_form("H", 3, [m](const Point&) { return FloatForm(m); });
    return {std::move(c), std::nullopt, a_dim};
}

Model product_surgery(int a_dim, const BumpProfile& bump, std::string name) {
    const int m = a_dim + 4;
    const int ir = a_dim + 1;
    Chart c(std::move(name), with_disc_torus(a_coords(a_dim)),
            [a_dim](const Point& p) { return p[a_dim] > 0.0 && p[a_dim] < 3.0; });
    c.set_sample_box(box_for(a_dim, 0.0, 2.0));
    c.add_note("bump", "r0 = " + std::to_string(bump.r0()) + ", r1 = " + std::to_string(bump.r1()));
    c.add_note("twistOrientation", "transverse cycle oriented by (r, theta3, theta1)");
    c.add_note("angularPeriods", "theta1, theta2, theta3 have period 1");

    auto sigma = [m, a_dim](const Point& p) { return sphere_area(m, a_dim, p); };
    auto omega = [m, ir, a_dim, sigma](const Point& p) {
        return sigma(p) + mono(m, {ir, ir + 1}, p[a_dim]) + mono(m, {ir + 2, ir + 3});
    };
    // f(r) times the inverse-gluing pullback of B, written in the target coordinates.
    auto b_tilde = [m, ir, a_dim, bump](const Point& p) {
        double r = p[a_dim];
        return (mono(m, {ir, ir + 2}, r) - mono(m, {ir + 1, ir + 3})) * Complex(bump.value(r), 0.0);
    };
    auto h_form = [m, ir, a_dim, bump](const Point& p) {
        return mono(m, {ir, ir + 1, ir + 3}, -bump.derivative(p[a_dim]));
    };
    c.add_scalar("r", [a_dim](const Point& p) { return Complex(p[a_dim], 0.0); });
    c.add_scalar("bump", [a_dim, bump](const Point& p) { return Complex(bump.value(p[a_dim]), 0.0); });
    c.add_form("sigma", 2, sigma);
    c.add_form("omega", 2, omega);
    c.add_form("Btilde", 2, b_tilde);
    c.add_form("H", 3, h_form);
    c.add_form("phi", std::nullopt,
               [omega, b_tilde](const Point& p) { return algebra::exp_form(b_tilde(p) + omega(p) * kI); });
    c.add_matrix("J", [omega, b_tilde](const Point& p) {
        auto j = gclin::j_symplectic(omega(p));
        return gclin::b_transform_j(j, b_tilde(p)).matrix;
    });

    ActionData action;
    action.rank = a_dim / 2;
    for (int k = 0; k < a_dim / 2; ++k) {
        Generator gen;
        gen.xi_m = [m, k](const Point& p) {
            std::vector<Complex> v(m);
            v[2 * k] = -p[2 * k + 1];
            v[2 * k + 1] = p[2 * k];
            return v;
        };
        gen.mu = [k](const Point& p) {
            double u = p[2 * k], v = p[2 * k + 1];
            return Complex(2.0 / (1.0 + u * u + v * v), 0.0);
        };
        // The B-transformed structure carries alpha = -i_{xi_M} Btilde.
        gen.alpha = [xi = gen.xi_m, b_tilde](const Point& p) { return -algebra::contract(xi(p), b_tilde(p)); };
        action.generators.push_back(std::move(gen));
    }
    return {std::move(c), std::move(action), a_dim};
}

}  // namespace

BumpProfile::BumpProfile(double r0, double r1) : r0_(r0), r1_(r1) {
    if (!(r0 > 0.0 && r0 < r1)) throw PreconditionError("bump profile needs 0 < r0 < r1");
}

double BumpProfile::value(double r) const {
    double a = g(r1_ - r), b = g(r - r0_);
    return a / (a + b);
}

double BumpProfile::derivative(double r) const {
    double a = g(r1_ - r), b = g(r - r0_);
    double da = -g_prime(r1_ - r), db = g_prime(r - r0_);
    double s = a + b;
    return (da * b - a * db) / (s * s);
}

double gluing_radius() { return std::exp(-0.5); }

GluingMap::GluingMap(int a_dim) : a_dim_(a_dim) {
    if (a_dim < 0 || a_dim > 4 || a_dim % 2) throw PreconditionError("A-factor dimension must be 0, 2 or 4");
}

Point GluingMap::apply(const Point& s) const {
    if (static_cast<int>(s.size()) != dim()) throw DimensionError("gluing map input has the wrong dimension");
    double r = s[a_dim_];
    if (!(r > gluing_radius() && r < 1.0)) throw DomainError("gluing map is defined on 1/sqrt(e) < r < 1");
    Point t(s.begin(), s.begin() + a_dim_);
    t.push_back(std::sqrt(1.0 + 2.0 * std::log(r)));
    t.push_back(s[a_dim_ + 3]);
    t.push_back(s[a_dim_ + 2]);
    t.push_back(-s[a_dim_ + 1]);
    return t;
}

std::vector<std::vector<double>> GluingMap::jacobian(const Point& s) const {
    Point t = apply(s);
    int n = dim(), a = a_dim_;
    std::vector<std::vector<double>> jac(n, std::vector<double>(n, 0.0));
    for (int i = 0; i < a; ++i) jac[i][i] = 1.0;
    jac[a][a] = 1.0 / (s[a] * t[a]);
    jac[a + 1][a + 3] = 1.0;
    jac[a + 2][a + 2] = 1.0;
    jac[a + 3][a + 1] = -1.0;
    return jac;
}

Model model(std::string_view name, const BumpProfile& bump) {
    static const std::regex pattern(R"((glue-source|product-surgery)(?:\((\d+)\))?)");
    std::string s(name);
    if (s == "cgu-model") return cgu_model();
    if (s == "b-symplectic") return b_symplectic();
    if (s == "glue-target") return product_surgery(2, bump, "glue-target");
    std::smatch match;
    if (std::regex_match(s, match, pattern)) {
        int a = parse_a_dim(match);
        if (match[1] == "glue-source") return glue_source(a);
        return product_surgery(a, bump, a == 2 ? "product-surgery" : "product-surgery(" + std::to_string(a) + ")");
    }
    throw UnknownName("unknown model '" + s + "'");
}

std::vector<std::string> model_names() {
    return {"cgu-model", "b-symplectic", "glue-source", "glue-target", "product-surgery"};
}

}  // namespace gct::charts
