#include "gctoric/polytope.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>

#include "gctoric/dense.hpp"

namespace gct::polytope {

namespace {

// Inequality system sum_j a[i][j] x_j <= b[i] over the rationals.
struct System {
    int dim = 0;
    std::vector<QVec> a;
    std::vector<Rational> b;
};

struct RawVertex {
    QVec point;
    std::vector<int> tight;  // every inequality attained, redundant ones included
};

void for_each_subset(int n, int k, const std::function<void(const std::vector<int>&)>& fn) {
    std::vector<int> idx(k);
    std::iota(idx.begin(), idx.end(), 0);
    if (k > n) return;
    while (true) {
        fn(idx);
        int i = k - 1;
        while (i >= 0 && idx[i] == n - k + i) --i;
        if (i < 0) return;
        ++idx[i];
        for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
}

Rational dot(const QVec& a, const QVec& x) {
    Rational s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * x[i];
    return s;
}

QVec to_q(const ZVec& v) { return QVec(v.begin(), v.end()); }

System system_of(const HPolytope& p) {
    System s;
    s.dim = p.dim();
    for (const auto& f : p.facets()) {
        s.a.push_back(to_q(f.normal));
        s.b.push_back(f.offset);
    }
    return s;
}

std::vector<int> tight_set(const System& s, const QVec& x) {
    std::vector<int> t;
    for (std::size_t i = 0; i < s.a.size(); ++i)
        if (dot(s.a[i], x) == s.b[i]) t.push_back(static_cast<int>(i));
    return t;
}

bool feasible(const System& s, const QVec& x) {
    for (std::size_t i = 0; i < s.a.size(); ++i)
        if (dot(s.a[i], x) > s.b[i]) return false;
    return true;
}

// Basic feasible solutions: every point fixed by dim linearly independent tight inequalities.
std::vector<RawVertex> enumerate(const System& s) {
    std::map<QVec, std::vector<int>> found;
    if (s.dim == 0) {
        QVec origin;
        if (feasible(s, origin)) found.emplace(origin, tight_set(s, origin));
    } else {
        for_each_subset(static_cast<int>(s.a.size()), s.dim, [&](const std::vector<int>& rows) {
            DenseMatrix<Rational> m(s.dim, s.dim);
            for (int r = 0; r < s.dim; ++r)
                for (int c = 0; c < s.dim; ++c) m(r, c) = s.a[rows[r]][c];
            if (determinant(m) == 0) return;
            DenseMatrix<Rational> inv = inverse(m);
            QVec x(s.dim, Rational(0));
            for (int r = 0; r < s.dim; ++r)
                for (int c = 0; c < s.dim; ++c) x[r] += inv(r, c) * s.b[rows[c]];
            if (!feasible(s, x) || found.count(x)) return;
            found.emplace(x, tight_set(s, x));
        });
    }
    std::vector<RawVertex> out;
    for (auto& [x, t] : found) out.push_back({x, std::move(t)});
    return out;
}

int affine_rank(const std::vector<const QVec*>& pts) {
    if (pts.size() <= 1) return 0;
    int dim = static_cast<int>(pts[0]->size());
    DenseMatrix<Rational> m(static_cast<int>(pts.size()) - 1, dim);
    for (std::size_t i = 1; i < pts.size(); ++i)
        for (int c = 0; c < dim; ++c) m(static_cast<int>(i) - 1, c) = (*pts[i])[c] - (*pts[0])[c];
    return rank(m);
}

int affine_rank(const std::vector<RawVertex>& vs) {
    std::vector<const QVec*> pts;
    for (const auto& v : vs) pts.push_back(&v.point);
    return affine_rank(pts);
}

// true[i] <=> inequality i supports a facet of the full-dimensional polytope.
std::vector<bool> true_facets(const System& s, const std::vector<RawVertex>& vs) {
    std::vector<bool> out(s.a.size(), false);
    for (std::size_t i = 0; i < s.a.size(); ++i) {
        std::vector<const QVec*> pts;
        for (const auto& v : vs)
            if (std::binary_search(v.tight.begin(), v.tight.end(), static_cast<int>(i))) pts.push_back(&v.point);
        out[i] = !pts.empty() && affine_rank(pts) == s.dim - 1;
    }
    return out;
}

Integer gcd_of(const ZVec& v) {
    Integer g = 0;
    for (const auto& x : v) g = boost::multiprecision::gcd(g, boost::multiprecision::abs(x));
    return g;
}

ZVec primitive_direction(const QVec& d) {
    Integer l = 1;
    for (const auto& x : d) {
        Integer den = boost::multiprecision::denominator(x);
        l = boost::multiprecision::lcm(l, den);
    }
    ZVec z;
    for (const auto& x : d) z.push_back(boost::multiprecision::numerator(x) * (l / boost::multiprecision::denominator(x)));
    Integer g = gcd_of(z);
    for (auto& x : z) x /= g;
    return z;
}

// Rows of the inequality system restricted to the coordinates outside `axes`
// (those coordinates set to zero); rows whose restriction vanishes become 0 <= b.
struct Restricted {
    System system;
    bool infeasible = false;
};

Restricted restrict_system(const HPolytope& p, const std::set<int>& axes) {
    Restricted out;
    out.system.dim = p.dim() - static_cast<int>(axes.size());
    for (const auto& f : p.facets()) {
        QVec row;
        for (int c = 0; c < p.dim(); ++c)
            if (!axes.count(c + 1)) row.push_back(Rational(f.normal[c]));
        bool zero = std::all_of(row.begin(), row.end(), [](const Rational& x) { return x == 0; });
        if (zero) {
            if (f.offset < 0) out.infeasible = true;
            continue;
        }
        out.system.a.push_back(std::move(row));
        out.system.b.push_back(f.offset);
    }
    return out;
}

QVec lift(const QVec& x, int dim, const std::set<int>& axes) {
    QVec out(dim, Rational(0));
    std::size_t j = 0;
    for (int c = 0; c < dim; ++c)
        if (!axes.count(c + 1)) out[c] = x[j++];
    return out;
}

// Vertices of P cap {x_i = 0, i in axes}, in the coordinates of P.
std::vector<QVec> slice_vertices(const HPolytope& p, const std::set<int>& axes) {
    Restricted r = restrict_system(p, axes);
    if (r.infeasible) return {};
    std::vector<QVec> out;
    for (const auto& v : enumerate(r.system)) out.push_back(lift(v.point, p.dim(), axes));
    return out;
}

void check_axes(const HPolytope& p, const std::set<int>& axes) {
    for (int a : axes)
        if (a < 1 || a > p.dim())
            throw DimensionError("axis " + std::to_string(a) + " out of range for a polytope in dimension " +
                                 std::to_string(p.dim()));
}

struct Analysis {
    System system;
    std::vector<RawVertex> raw;
    std::vector<bool> is_facet;
    bool full_dimensional = false;
};

Analysis analyze(const HPolytope& p) {
    Analysis a;
    a.system = system_of(p);
    a.raw = enumerate(a.system);
    if (a.raw.empty()) throw EmptyPolytope("polytope is empty");
    a.full_dimensional = affine_rank(a.raw) == p.dim();
    if (a.full_dimensional)
        a.is_facet = true_facets(a.system, a.raw);
    else
        a.is_facet.assign(a.system.a.size(), true);
    return a;
}

std::vector<int> active_facets(const Analysis& a, const std::vector<int>& tight) {
    std::vector<int> out;
    for (int i : tight)
        if (a.is_facet[i]) out.push_back(i);
    return out;
}

HPolytope from_system(const System& s) {
    std::vector<std::pair<ZVec, Rational>> raw;
    for (std::size_t i = 0; i < s.a.size(); ++i) {
        // Rows come from integer normals, so numerators are the entries.
        ZVec n;
        for (const auto& x : s.a[i]) n.push_back(boost::multiprecision::numerator(x));
        raw.emplace_back(std::move(n), s.b[i]);
    }
    return HPolytope::normalized(s.dim, std::move(raw));
}

// Shared body of slice() and slice_allow_point().
HPolytope slice_impl(const HPolytope& p, const std::set<int>& axes, bool allow_point) {
    check_axes(p, axes);
    Restricted r = restrict_system(p, axes);
    auto verts = r.infeasible ? std::vector<RawVertex>{} : enumerate(r.system);
    if (verts.empty()) throw SliceError("slice is empty");
    if (r.system.dim == 0) {
        if (!allow_point) throw SliceError("slice is a point, not full-dimensional");
        return HPolytope(0, {});
    }
    if (affine_rank(verts) < r.system.dim) throw SliceError("slice is not full-dimensional in its subspace");
    return irredundant(from_system(r.system));
}

}  // namespace

// ---------------------------------------------------------------------------

HPolytope::HPolytope(int dim, std::vector<Facet> facets) : dim_(dim), facets_(std::move(facets)) {
    if (dim < 0) throw PolytopeError("negative dimension");
    if (dim == 0) {
        if (!facets_.empty()) throw PolytopeError("the dimension-0 polytope takes no facets");
        return;
    }
    if (facets_.empty()) throw UnboundedPolytope("a polytope of positive dimension needs facets");
    for (std::size_t i = 0; i < facets_.size(); ++i) {
        const auto& n = facets_[i].normal;
        if (static_cast<int>(n.size()) != dim)
            throw PolytopeError("normal of facet " + std::to_string(i) + " has the wrong length");
        Integer g = gcd_of(n);
        if (g == 0) throw PolytopeError("normal of facet " + std::to_string(i) + " is zero");
        if (g != 1) throw PolytopeError("normal of facet " + std::to_string(i) + " is not primitive");
        for (std::size_t j = 0; j < i; ++j)
            if (facets_[j] == facets_[i])
                throw PolytopeError("facets " + std::to_string(j) + " and " + std::to_string(i) + " coincide");
    }

    // Bounded iff the recession cone {d : A d <= 0} is {0}: A has full column
    // rank and no extreme ray, i.e. no (k-1)-subset of rows cuts out a line
    // on which +d or -d stays in the cone.
    DenseMatrix<Rational> a(static_cast<int>(facets_.size()), dim);
    for (std::size_t i = 0; i < facets_.size(); ++i)
        for (int c = 0; c < dim; ++c) a(static_cast<int>(i), c) = facets_[i].normal[c];
    if (rank(a) < dim) throw UnboundedPolytope("facet normals do not span; the polytope is unbounded");
    System s = system_of(*this);
    bool unbounded = false;
    for_each_subset(static_cast<int>(facets_.size()), dim - 1, [&](const std::vector<int>& rows) {
        if (unbounded) return;
        DenseMatrix<Rational> m(dim - 1, dim);
        for (int r = 0; r < dim - 1; ++r)
            for (int c = 0; c < dim; ++c) m(r, c) = s.a[rows[r]][c];
        DenseMatrix<Rational> ker = kernel(m);
        if (ker.rows() != 1) return;
        QVec d(dim);
        for (int c = 0; c < dim; ++c) d[c] = ker(0, c);
        for (int sign : {1, -1}) {
            bool in_cone = true;
            for (const auto& row : s.a)
                if (sign * dot(row, d) > 0) {
                    in_cone = false;
                    break;
                }
            if (in_cone) unbounded = true;
        }
    });
    if (unbounded) throw UnboundedPolytope("polytope is unbounded");
}

HPolytope HPolytope::normalized(int dim, std::vector<std::pair<ZVec, Rational>> raw) {
    std::vector<Facet> facets;
    for (auto& [n, b] : raw) {
        Integer g = gcd_of(n);
        if (g == 0) throw PolytopeError("zero facet normal");
        for (auto& x : n) x /= g;
        Facet f{std::move(n), b / Rational(g)};
        if (std::find(facets.begin(), facets.end(), f) == facets.end()) facets.push_back(std::move(f));
    }
    return HPolytope(dim, std::move(facets));
}

HPolytope HPolytope::canonical() const {
    auto f = facets_;
    std::sort(f.begin(), f.end());
    return HPolytope(dim_, std::move(f));
}

bool HPolytope::contains(const QVec& x) const {
    if (static_cast<int>(x.size()) != dim_) throw DimensionError("point dimension differs from the polytope");
    return feasible(system_of(*this), x);
}

std::vector<VertexData> vertices(const HPolytope& p) {
    Analysis a = analyze(p);
    std::vector<VertexData> out;
    for (const auto& v : a.raw) out.push_back({v.point, active_facets(a, v.tight), {}});
    // v, w span an edge iff no third vertex is tight on every inequality tight at both.
    for (std::size_t i = 0; i < a.raw.size(); ++i)
        for (std::size_t j = 0; j < a.raw.size(); ++j) {
            if (i == j) continue;
            std::vector<int> common;
            std::set_intersection(a.raw[i].tight.begin(), a.raw[i].tight.end(), a.raw[j].tight.begin(),
                                  a.raw[j].tight.end(), std::back_inserter(common));
            bool edge = true;
            for (std::size_t u = 0; u < a.raw.size() && edge; ++u) {
                if (u == i || u == j) continue;
                if (std::includes(a.raw[u].tight.begin(), a.raw[u].tight.end(), common.begin(), common.end()))
                    edge = false;
            }
            if (!edge) continue;
            QVec d(p.dim());
            for (int c = 0; c < p.dim(); ++c) d[c] = a.raw[j].point[c] - a.raw[i].point[c];
            out[i].edges.push_back(primitive_direction(d));
        }
    return out;
}

std::vector<int> redundant_facets(const HPolytope& p) {
    if (p.dim() == 0) return {};
    Analysis a = analyze(p);
    std::vector<int> out;
    for (std::size_t i = 0; i < a.is_facet.size(); ++i)
        if (!a.is_facet[i]) out.push_back(static_cast<int>(i));
    return out;
}

HPolytope irredundant(const HPolytope& p) {
    auto drop = redundant_facets(p);
    if (drop.empty()) return p;
    std::vector<Facet> kept;
    for (std::size_t i = 0; i < p.facets().size(); ++i)
        if (!std::binary_search(drop.begin(), drop.end(), static_cast<int>(i))) kept.push_back(p.facets()[i]);
    return HPolytope(p.dim(), std::move(kept));
}

DelzantReport is_delzant(const HPolytope& p) {
    DelzantReport report;
    if (p.dim() == 0) {
        report.delzant = report.full_dimensional = true;
        report.vertices.push_back({QVec{}, true, true, true, Integer(1), ""});
        return report;
    }
    Analysis a = analyze(p);
    report.full_dimensional = a.full_dimensional;
    auto verts = vertices(p);
    bool all = a.full_dimensional;
    for (const auto& v : verts) {
        VertexVerdict vv;
        vv.point = v.point;
        vv.simple = static_cast<int>(v.active.size()) == p.dim() && static_cast<int>(v.edges.size()) == p.dim();
        vv.rational = std::all_of(v.edges.begin(), v.edges.end(), [](const ZVec& e) { return gcd_of(e) == 1; });
        if (!vv.simple) {
            vv.reason = "simplicity: " + std::to_string(v.active.size()) + " facets and " +
                        std::to_string(v.edges.size()) + " edges meet";
        } else {
            DenseMatrix<Rational> m(p.dim(), p.dim());
            for (int r = 0; r < p.dim(); ++r)
                for (int c = 0; c < p.dim(); ++c) m(r, c) = v.edges[c][r];
            Rational det = determinant(m);
            vv.determinant = boost::multiprecision::numerator(det);
            vv.smooth = det == 1 || det == -1;
            if (!vv.smooth) vv.reason = "smoothness: edge matrix determinant " + format_rational(det);
        }
        if (!vv.rational && vv.reason.empty()) vv.reason = "rationality: edge direction not primitive";
        all = all && vv.simple && vv.rational && vv.smooth;
        report.vertices.push_back(std::move(vv));
    }
    report.delzant = all;
    return report;
}

OrthReport orth_check(const HPolytope& p, int axis) {
    check_axes(p, {axis});
    OrthReport report;
    report.axis = axis;
    auto hits = slice_vertices(p, {axis});
    if (hits.empty()) throw SliceError("polytope does not meet the hyperplane x_" + std::to_string(axis) + " = 0");
    Analysis a = analyze(p);
    std::set<int> reported;
    for (const auto& x : hits) {
        auto active = active_facets(a, tight_set(a.system, x));
        bool is_vertex = std::any_of(a.raw.begin(), a.raw.end(), [&](const RawVertex& v) { return v.point == x; });
        if (is_vertex) report.witnesses.push_back({"vertex-on-hyperplane", std::nullopt, x});
        for (int i : active)
            if (p.facets()[i].normal[axis - 1] != 0 && reported.insert(i).second)
                report.witnesses.push_back({"facet-not-orthogonal", i, x});
    }
    report.ok = report.witnesses.empty();
    return report;
}

Rational max_slab_delta(const HPolytope& p, int axis) {
    if (!orth_check(p, axis).ok) throw PreconditionError("orthogonality check fails on axis " + std::to_string(axis));
    std::optional<Rational> least;
    for (const auto& v : vertices(p)) {
        Rational x = boost::multiprecision::abs(v.point[axis - 1]);
        if (x != 0 && (!least || x < *least)) least = x;
    }
    if (!least) throw PreconditionError("every vertex lies on the hyperplane");
    return *least / 2;
}

HPolytope cut_slab(const HPolytope& p, int axis, const Rational& delta) {
    Rational bound = 2 * max_slab_delta(p, axis);
    if (!(delta > 0 && delta < bound))
        throw PreconditionError("slab half-width " + format_rational(delta) + " must lie in (0, " +
                                format_rational(bound) + ") so the slab contains no vertices");
    auto facets = p.facets();
    for (int sign : {1, -1}) {
        ZVec n(p.dim(), Integer(0));
        n[axis - 1] = sign;
        Facet f{n, delta};
        if (std::find(facets.begin(), facets.end(), f) == facets.end()) facets.push_back(std::move(f));
    }
    return irredundant(HPolytope(p.dim(), std::move(facets)));
}

SliceResult slice(const HPolytope& p, const std::set<int>& axes) {
    HPolytope q = slice_impl(p, axes, false);
    bool d = is_delzant(q).delzant;
    return {std::move(q), d};
}

HPolytope slice_allow_point(const HPolytope& p, const std::set<int>& axes) { return slice_impl(p, axes, true); }

FreenessReport freeness_check(const HPolytope& p, const std::set<int>& axes) {
    check_axes(p, axes);
    FreenessReport report;
    auto hits = slice_vertices(p, axes);
    if (hits.empty()) throw SliceError("slice is empty");
    if (axes.empty()) {
        report.free = true;
        return report;
    }
    Analysis a = analyze(p);
    const int k = p.dim();
    for (const auto& x : hits) {
        auto facets = active_facets(a, tight_set(a.system, x));
        int rows = static_cast<int>(axes.size() + facets.size());
        DenseMatrix<Rational> m(rows, k), normals(static_cast<int>(facets.size()), k);
        int r = 0;
        for (int ax : axes) m(r++, ax - 1) = 1;
        for (std::size_t j = 0; j < facets.size(); ++j, ++r)
            for (int c = 0; c < k; ++c) {
                m(r, c) = p.facets()[facets[j]].normal[c];
                normals(static_cast<int>(j), c) = m(r, c);
            }
        int rk = rank(m);
        bool rank_ok = rk == static_cast<int>(axes.size()) + rank(normals);

        // The integer row span is saturated iff the gcd of its rk x rk minors is 1.
        Integer g = 0;
        for_each_subset(rows, rk, [&](const std::vector<int>& rs) {
            if (g == 1) return;
            for_each_subset(k, rk, [&](const std::vector<int>& cs) {
                if (g == 1) return;
                DenseMatrix<Rational> minor(rk, rk);
                for (int i = 0; i < rk; ++i)
                    for (int j = 0; j < rk; ++j) minor(i, j) = m(rs[i], cs[j]);
                Rational det = determinant(minor);
                g = boost::multiprecision::gcd(g, boost::multiprecision::abs(boost::multiprecision::numerator(det)));
            });
        });
        bool saturated = g == 1;
        if (!rank_ok || !saturated) report.offending.push_back({x, facets, rank_ok, saturated});
    }
    report.free = report.offending.empty();
    return report;
}

std::set<int> first_axes(int r) {
    std::set<int> s;
    for (int i = 1; i <= r; ++i) s.insert(i);
    return s;
}

}  // namespace gct::polytope
