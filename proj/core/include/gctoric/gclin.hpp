#pragma once

// Pointwise generalized complex linear algebra on V + V*: Clifford
// annihilators of spinors, purity, the Mukai nondegeneracy condition, type,
// and the real matrices J of generalized complex structures.
//
// Matrices act on column vectors in the ordered basis (d_1..d_m, e_1..e_m).
// A two-form w enters as the map X -> i_X w, whose matrix W has
// W(j, i) = w(d_i, d_j).

#include <optional>
#include <vector>

#include <nlohmann/json.hpp>

#include "gctoric/dense.hpp"
#include "gctoric/form.hpp"

namespace gct::gclin {

using algebra::Form;
using algebra::GVector;

/// Thresholds for the float backend; the exact backend ignores them.
struct Tolerance {
    /// Singular values <= rank_rel * (largest singular value) count as zero.
    double rank_rel = 1e-9;
    /// Absolute threshold for scalar zero tests (pairings, imaginary parts, pivots).
    double zero = 1e-9;
};

/// Real 2m x 2m matrix; constructors guarantee J^2 = -I and J^T P J = P.
template <class R>
struct GCLinear {
    int dim = 0;
    DenseMatrix<R> matrix;
};

/// Row basis of a subspace of the complexified V + V*, in reduced row-echelon form.
template <class S>
struct IsotropicSubspace {
    int ambient_dim = 0;  // m; vectors have 2m coordinates
    DenseMatrix<S> basis;
    std::vector<int> pivots;

    int dim() const { return basis.rows(); }
    GVector<S> vector(int k) const;

    friend bool operator==(const IsotropicSubspace& a, const IsotropicSubspace& b) {
        return a.ambient_dim == b.ambient_dim && a.pivots == b.pivots && a.basis == b.basis;
    }
};

template <class S>
using RealOf = typename ScalarTraits<S>::Real;

/// Gram matrix of the natural pairing: P = 1/2 [[0, I], [I, 0]].
template <class R>
DenseMatrix<R> pairing_gram(int m);

/// Kernel of v -> v . phi on the complexified V + V*.
template <class S>
IsotropicSubspace<S> annihilator(const Form<S>& phi, const Tolerance& tol = {});

/// Canonical reduced row-echelon form of the span of the given rows.
template <class S>
IsotropicSubspace<S> canonical_subspace(int m, const DenseMatrix<S>& rows, const Tolerance& tol = {});

/// Section basis normalized on fixed pivot columns: row k has coordinate
/// pivots[l] equal to delta_{kl}. Used to follow one smooth frame of a
/// subspace that varies with a point. Throws PreconditionError if the
/// subspace is not a graph over those columns.
template <class S>
DenseMatrix<S> basis_on_pivots(const IsotropicSubspace<S>& L, const std::vector<int>& pivots,
                               const Tolerance& tol = {});

template <class S>
bool is_pure(const Form<S>& phi, const Tolerance& tol = {});

/// mukai(phi, conj(phi)) != 0; requires phi pure.
template <class S>
bool nondegenerate(const Form<S>& phi, const Tolerance& tol = {});

/// J whose +i eigenspace is annihilator(phi); requires phi pure with L cap conj(L) = 0.
template <class S>
GCLinear<RealOf<S>> j_from_spinor(const Form<S>& phi, const Tolerance& tol = {});

/// [[0, -W^-1], [W, 0]] for an invertible real two-form w.
template <class S>
GCLinear<RealOf<S>> j_symplectic(const Form<S>& omega, const Tolerance& tol = {});

/// Conjugation e^B J e^-B by the shear e^B = [[I, 0], [Bhat, I]], where Bhat is
/// the matrix of X -> -i_X B. With this sign, annihilator(e^B ^ phi) is the
/// image of annihilator(phi) under the shear.
template <class S>
GCLinear<RealOf<S>> b_transform_j(const GCLinear<RealOf<S>>& j, const Form<S>& b, const Tolerance& tol = {});

/// Lowest nonzero homogeneous degree of a pure spinor.
template <class S>
int type_of(const Form<S>& phi, const Tolerance& tol = {});

/// Matrix of X -> i_X w for a real two-form w.
template <class S>
DenseMatrix<RealOf<S>> two_form_matrix(const Form<S>& w, const Tolerance& tol = {});

template <class R>
double j_squared_residual(const GCLinear<R>& j);

template <class R>
double orthogonality_residual(const GCLinear<R>& j);

/// Every pairwise natural pairing of the basis vanishes.
template <class S>
bool is_isotropic(const IsotropicSubspace<S>& L, const Tolerance& tol = {});

/// Spectral norm of the difference of the orthogonal projectors (1 when dimensions differ).
double subspace_distance(const IsotropicSubspace<Complex>& a, const IsotropicSubspace<Complex>& b);

IsotropicSubspace<Complex> to_float(const IsotropicSubspace<GaussianRational>& L);

struct StructureReport {
    bool pure = false;
    bool nondegenerate = false;
    std::optional<int> type;
    std::optional<double> j_squared_residual;
    std::optional<double> orthogonality_residual;
};

template <class S>
StructureReport structure_report(const Form<S>& phi, const Tolerance& tol = {});

nlohmann::ordered_json to_json(const StructureReport& r);

/// Apply a real matrix to a complex generalized vector.
template <class R>
GVector<typename RealTraits<R>::Scalar> apply(const DenseMatrix<R>& m,
                                              const GVector<typename RealTraits<R>::Scalar>& v);

}  // namespace gct::gclin
