#include "gctoric/gclin.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>

namespace gct::gclin {

namespace {

using algebra::Blade;
using algebra::clifford;

template <class S>
constexpr bool kExact = ScalarTraits<S>::exact;

/// Column j holds the coefficients (indexed by blade) of basis_j . phi.
template <class S>
DenseMatrix<S> clifford_matrix(const Form<S>& phi) {
    const int m = phi.dim();
    const int rows = 1 << m;
    DenseMatrix<S> c(rows, 2 * m, ScalarTraits<S>::zero());
    for (int j = 0; j < 2 * m; ++j) {
        GVector<S> v = j < m ? GVector<S>::partial(m, j + 1) : GVector<S>::dual(m, j - m + 1);
        Form<S> image = clifford(v, phi);
        for (const auto& [b, coeff] : image.terms()) c(static_cast<int>(b), j) = coeff;
    }
    return c;
}

Eigen::MatrixXcd to_eigen(const DenseMatrix<Complex>& m) {
    Eigen::MatrixXcd out(m.rows(), m.cols());
    for (int r = 0; r < m.rows(); ++r)
        for (int c = 0; c < m.cols(); ++c) out(r, c) = m(r, c);
    return out;
}

DenseMatrix<Complex> from_eigen(const Eigen::MatrixXcd& m) {
    DenseMatrix<Complex> out(static_cast<int>(m.rows()), static_cast<int>(m.cols()));
    for (int r = 0; r < out.rows(); ++r)
        for (int c = 0; c < out.cols(); ++c) out(r, c) = m(r, c);
    return out;
}

/// Float null space from the SVD with a relative singular-value threshold.
DenseMatrix<Complex> float_kernel(const DenseMatrix<Complex>& c, double rank_rel) {
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(to_eigen(c), Eigen::ComputeFullV);
    const auto& s = svd.singularValues();
    const int n = c.cols();
    double smax = s.size() > 0 ? s(0) : 0.0;
    std::vector<int> null_cols;
    for (int k = 0; k < n; ++k) {
        bool small = k >= s.size() || s(k) <= rank_rel * smax;
        if (small) null_cols.push_back(k);
    }
    DenseMatrix<Complex> out(static_cast<int>(null_cols.size()), n);
    const auto& v = svd.matrixV();
    for (std::size_t r = 0; r < null_cols.size(); ++r)
        for (int k = 0; k < n; ++k) out(static_cast<int>(r), k) = v(k, null_cols[r]);
    return out;
}

template <class S>
double max_coeff(const Form<S>& phi) {
    double worst = 0.0;
    for (const auto& [b, c] : phi.terms()) worst = std::max(worst, ScalarTraits<S>::magnitude(c));
    return worst;
}

template <class R>
double max_abs(const DenseMatrix<R>& m) {
    double worst = 0.0;
    for (int r = 0; r < m.rows(); ++r)
        for (int c = 0; c < m.cols(); ++c) worst = std::max(worst, std::abs(RealTraits<R>::to_double(m(r, c))));
    return worst;
}

template <class R>
DenseMatrix<R> block(const DenseMatrix<R>& tl, const DenseMatrix<R>& tr, const DenseMatrix<R>& bl,
                     const DenseMatrix<R>& br) {
    const int m = tl.rows();
    DenseMatrix<R> out(2 * m, 2 * m);
    for (int r = 0; r < m; ++r)
        for (int c = 0; c < m; ++c) {
            out(r, c) = tl(r, c);
            out(r, m + c) = tr(r, c);
            out(m + r, c) = bl(r, c);
            out(m + r, m + c) = br(r, c);
        }
    return out;
}

}  // namespace

template <class S>
GVector<S> IsotropicSubspace<S>::vector(int k) const {
    GVector<S> v(ambient_dim);
    for (int j = 0; j < 2 * ambient_dim; ++j) v[j] = basis(k, j);
    return v;
}

template <class R>
DenseMatrix<R> pairing_gram(int m) {
    DenseMatrix<R> p(2 * m, 2 * m);
    for (int i = 0; i < m; ++i) {
        p(i, m + i) = R(1) / R(2);
        p(m + i, i) = R(1) / R(2);
    }
    return p;
}

template <class S>
IsotropicSubspace<S> canonical_subspace(int m, const DenseMatrix<S>& rows, const Tolerance& tol) {
    DenseMatrix<S> work = rows;
    auto pivots = rref(work, tol.zero);
    IsotropicSubspace<S> out;
    out.ambient_dim = m;
    out.pivots = pivots;
    out.basis = DenseMatrix<S>(static_cast<int>(pivots.size()), 2 * m);
    for (int r = 0; r < out.basis.rows(); ++r)
        for (int c = 0; c < 2 * m; ++c) out.basis(r, c) = work(r, c);
    return out;
}

template <class S>
IsotropicSubspace<S> annihilator(const Form<S>& phi, const Tolerance& tol) {
    if (phi.is_zero()) throw PreconditionError("annihilator of the zero spinor");
    auto c = clifford_matrix(phi);
    if constexpr (kExact<S>) {
        return canonical_subspace(phi.dim(), kernel(c), tol);
    } else {
        return canonical_subspace(phi.dim(), float_kernel(c, tol.rank_rel), tol);
    }
}

template <class S>
DenseMatrix<S> basis_on_pivots(const IsotropicSubspace<S>& L, const std::vector<int>& pivots, const Tolerance& tol) {
    const int d = L.dim();
    if (static_cast<int>(pivots.size()) != d) throw PreconditionError("pivot count differs from subspace dimension");
    DenseMatrix<S> sub(d, d);
    for (int r = 0; r < d; ++r)
        for (int k = 0; k < d; ++k) sub(r, k) = L.basis(r, pivots[k]);
    DenseMatrix<S> inv;
    try {
        inv = inverse(sub, tol.zero);
    } catch (const PreconditionError&) {
        throw PreconditionError("subspace is not a graph over the requested pivot columns");
    }
    // Rows of inv * basis restrict to the identity on the pivot columns.
    return inv * L.basis;
}

template <class S>
bool is_pure(const Form<S>& phi, const Tolerance& tol) {
    return annihilator(phi, tol).dim() == phi.dim();
}

template <class S>
bool nondegenerate(const Form<S>& phi, const Tolerance& tol) {
    if (!is_pure(phi, tol)) throw PreconditionError("nondegeneracy is defined for pure spinors only");
    S z = algebra::mukai(phi, phi.conj());
    if constexpr (kExact<S>) {
        return !z.is_zero();
    } else {
        double scale = std::max(1.0, max_coeff(phi) * max_coeff(phi));
        return std::abs(z) > tol.zero * scale;
    }
}

template <class S>
DenseMatrix<RealOf<S>> two_form_matrix(const Form<S>& w, const Tolerance& tol) {
    using R = RealOf<S>;
    if (!w.is_zero() && w.pure_degree() != 2) throw PreconditionError("expected a homogeneous two-form");
    const int m = w.dim();
    DenseMatrix<R> out(m, m);
    for (const auto& [b, c] : w.terms()) {
        if (!ScalarTraits<S>::is_real(c, tol.zero)) throw PreconditionError("expected a real two-form");
        auto idx = algebra::blade_indices(b);
        int i = idx[0] - 1;
        int j = idx[1] - 1;
        R v = ScalarTraits<S>::real_part(c);
        out(j, i) = v;
        out(i, j) = -v;
    }
    return out;
}

template <class S>
GCLinear<RealOf<S>> j_symplectic(const Form<S>& omega, const Tolerance& tol) {
    using R = RealOf<S>;
    auto w = two_form_matrix(omega, tol);
    DenseMatrix<R> winv;
    try {
        winv = inverse(w, tol.zero);
    } catch (const PreconditionError&) {
        throw PreconditionError("two-form is degenerate");
    }
    const int m = omega.dim();
    DenseMatrix<R> zero(m, m);
    return {m, block(zero, -winv, w, zero)};
}

template <class S>
GCLinear<RealOf<S>> b_transform_j(const GCLinear<RealOf<S>>& j, const Form<S>& b, const Tolerance& tol) {
    using R = RealOf<S>;
    if (b.dim() != j.dim) throw DimensionError("two-form and structure dimensions differ");
    auto bhat = -two_form_matrix(b, tol);
    const int m = j.dim;
    auto id = DenseMatrix<R>::identity(m);
    DenseMatrix<R> zero(m, m);
    auto shear = block(id, zero, bhat, id);
    auto unshear = block(id, zero, -bhat, id);
    return {m, shear * j.matrix * unshear};
}

template <class S>
GCLinear<RealOf<S>> j_from_spinor(const Form<S>& phi, const Tolerance& tol) {
    using R = RealOf<S>;
    const int m = phi.dim();
    auto L = annihilator(phi, tol);
    if (L.dim() != m) throw PreconditionError("spinor is not pure");
    DenseMatrix<S> frame(2 * m, 2 * m);
    for (int k = 0; k < m; ++k)
        for (int r = 0; r < 2 * m; ++r) {
            frame(r, k) = L.basis(k, r);
            frame(r, m + k) = ScalarTraits<S>::conj(L.basis(k, r));
        }
    DenseMatrix<S> eig(2 * m, 2 * m);
    for (int k = 0; k < m; ++k) {
        eig(k, k) = ScalarTraits<S>::i();
        eig(m + k, m + k) = -ScalarTraits<S>::i();
    }
    DenseMatrix<S> jc;
    if constexpr (kExact<S>) {
        DenseMatrix<S> inv;
        try {
            inv = inverse(frame);
        } catch (const PreconditionError&) {
            throw PreconditionError("degenerate spinor: annihilator meets its conjugate");
        }
        jc = frame * eig * inv;
    } else {
        Eigen::MatrixXcd f = to_eigen(frame);
        Eigen::JacobiSVD<Eigen::MatrixXcd> svd(f);
        const auto& s = svd.singularValues();
        if (s(s.size() - 1) <= tol.rank_rel * s(0))
            throw PreconditionError("degenerate spinor: annihilator meets its conjugate");
        jc = from_eigen(f * to_eigen(eig) * f.inverse());
    }
    DenseMatrix<R> out(2 * m, 2 * m);
    for (int r = 0; r < 2 * m; ++r)
        for (int c = 0; c < 2 * m; ++c) {
            if constexpr (kExact<S>) {
                if (!jc(r, c).is_real()) throw std::logic_error("structure matrix is not real");
            }
            out(r, c) = ScalarTraits<S>::real_part(jc(r, c));
        }
    return {m, out};
}

template <class S>
int type_of(const Form<S>& phi, const Tolerance& tol) {
    if (phi.is_zero()) throw PreconditionError("type of the zero spinor");
    if (!is_pure(phi, tol)) throw PreconditionError("type is defined for pure spinors only");
    const double scale = max_coeff(phi);
    for (int q = 0; q <= phi.dim(); ++q) {
        auto part = phi.homogeneous_part(q);
        if constexpr (kExact<S>) {
            if (!part.is_zero()) return q;
        } else {
            if (max_coeff(part) > tol.zero * scale) return q;
        }
    }
    throw std::logic_error("unreachable: nonzero spinor without a nonzero component");
}

template <class R>
double j_squared_residual(const GCLinear<R>& j) {
    auto sq = j.matrix * j.matrix;
    return max_abs(sq + DenseMatrix<R>::identity(2 * j.dim));
}

template <class R>
double orthogonality_residual(const GCLinear<R>& j) {
    auto p = pairing_gram<R>(j.dim);
    return max_abs(j.matrix.transpose() * p * j.matrix - p);
}

template <class S>
bool is_isotropic(const IsotropicSubspace<S>& L, const Tolerance& tol) {
    for (int a = 0; a < L.dim(); ++a)
        for (int b = a; b < L.dim(); ++b) {
            S z = algebra::natural_pairing(L.vector(a), L.vector(b));
            if (!ScalarTraits<S>::is_zero(z, tol.zero)) return false;
        }
    return true;
}

double subspace_distance(const IsotropicSubspace<Complex>& a, const IsotropicSubspace<Complex>& b) {
    if (a.dim() != b.dim() || a.ambient_dim != b.ambient_dim) return 1.0;
    auto projector = [](const IsotropicSubspace<Complex>& s) {
        Eigen::MatrixXcd cols = to_eigen(s.basis).transpose();
        Eigen::HouseholderQR<Eigen::MatrixXcd> qr(cols);
        Eigen::MatrixXcd q = qr.householderQ() * Eigen::MatrixXcd::Identity(cols.rows(), cols.cols());
        return Eigen::MatrixXcd(q * q.adjoint());
    };
    Eigen::MatrixXcd diff = projector(a) - projector(b);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(diff);
    return es.eigenvalues().cwiseAbs().maxCoeff();
}

IsotropicSubspace<Complex> to_float(const IsotropicSubspace<GaussianRational>& L) {
    IsotropicSubspace<Complex> out;
    out.ambient_dim = L.ambient_dim;
    out.pivots = L.pivots;
    out.basis = DenseMatrix<Complex>(L.basis.rows(), L.basis.cols());
    for (int r = 0; r < L.basis.rows(); ++r)
        for (int c = 0; c < L.basis.cols(); ++c) out.basis(r, c) = to_complex(L.basis(r, c));
    return out;
}

template <class S>
StructureReport structure_report(const Form<S>& phi, const Tolerance& tol) {
    StructureReport r;
    if (phi.is_zero()) return r;
    r.pure = is_pure(phi, tol);
    if (!r.pure) return r;
    r.type = type_of(phi, tol);
    r.nondegenerate = nondegenerate(phi, tol);
    if (!r.nondegenerate) return r;
    auto j = j_from_spinor(phi, tol);
    r.j_squared_residual = j_squared_residual(j);
    r.orthogonality_residual = orthogonality_residual(j);
    return r;
}

nlohmann::ordered_json to_json(const StructureReport& r) {
    nlohmann::ordered_json j;
    j["pure"] = r.pure;
    j["nondegenerate"] = r.nondegenerate;
    j["type"] = r.type ? nlohmann::ordered_json(*r.type) : nlohmann::ordered_json(nullptr);
    j["jSquaredResidual"] =
        r.j_squared_residual ? nlohmann::ordered_json(*r.j_squared_residual) : nlohmann::ordered_json(nullptr);
    j["orthogonalityResidual"] =
        r.orthogonality_residual ? nlohmann::ordered_json(*r.orthogonality_residual) : nlohmann::ordered_json(nullptr);
    return j;
}

template <class R>
GVector<typename RealTraits<R>::Scalar> apply(const DenseMatrix<R>& m, const GVector<typename RealTraits<R>::Scalar>& v) {
    using S = typename RealTraits<R>::Scalar;
    GVector<S> out(v.dim());
    for (int r = 0; r < 2 * v.dim(); ++r) {
        S acc = ScalarTraits<S>::zero();
        for (int c = 0; c < 2 * v.dim(); ++c) acc += S(m(r, c)) * v[c];
        out[r] = acc;
    }
    return out;
}

#define GCT_INSTANTIATE(S)                                                                                       \
    template struct IsotropicSubspace<S>;                                                                        \
    template IsotropicSubspace<S> annihilator(const Form<S>&, const Tolerance&);                                 \
    template IsotropicSubspace<S> canonical_subspace(int, const DenseMatrix<S>&, const Tolerance&);              \
    template DenseMatrix<S> basis_on_pivots(const IsotropicSubspace<S>&, const std::vector<int>&,                \
                                            const Tolerance&);                                                   \
    template bool is_pure(const Form<S>&, const Tolerance&);                                                     \
    template bool nondegenerate(const Form<S>&, const Tolerance&);                                               \
    template GCLinear<RealOf<S>> j_from_spinor(const Form<S>&, const Tolerance&);                                \
    template GCLinear<RealOf<S>> j_symplectic(const Form<S>&, const Tolerance&);                                 \
    template GCLinear<RealOf<S>> b_transform_j(const GCLinear<RealOf<S>>&, const Form<S>&, const Tolerance&);    \
    template int type_of(const Form<S>&, const Tolerance&);                                                      \
    template DenseMatrix<RealOf<S>> two_form_matrix(const Form<S>&, const Tolerance&);                           \
    template bool is_isotropic(const IsotropicSubspace<S>&, const Tolerance&);                                   \
    template StructureReport structure_report(const Form<S>&, const Tolerance&);

GCT_INSTANTIATE(GaussianRational)
GCT_INSTANTIATE(Complex)
#undef GCT_INSTANTIATE

template DenseMatrix<Rational> pairing_gram<Rational>(int);
template DenseMatrix<double> pairing_gram<double>(int);
template double j_squared_residual(const GCLinear<Rational>&);
template double j_squared_residual(const GCLinear<double>&);
template double orthogonality_residual(const GCLinear<Rational>&);
template double orthogonality_residual(const GCLinear<double>&);
template GVector<GaussianRational> apply<Rational>(const DenseMatrix<Rational>&, const GVector<GaussianRational>&);
template GVector<Complex> apply<double>(const DenseMatrix<double>&, const GVector<Complex>&);

}  // namespace gct::gclin
