#pragma once

// Exterior algebra of an m-dimensional space V (m <= 8) with complex
// coefficients, and the Clifford action of V + V* on it.
//
// Basis monomials e_{i1} ^ ... ^ e_{iq} (i1 < ... < iq) are stored as bitmasks:
// bit (i - 1) set <=> e_i is a factor. Indices in the public API are 1-based.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gctoric/errors.hpp"
#include "gctoric/scalar.hpp"

namespace gct::algebra {

using Blade = std::uint32_t;
inline constexpr int kMaxDim = 8;

inline int degree(Blade b) { return std::popcount(b); }

/// Sign s with e_a ^ e_b = s * e_{a|b} for disjoint a, b: (-1)^{#{(i,j): i in a, j in b, i > j}}.
inline int reorder_sign(Blade a, Blade b) {
    int swaps = 0;
    for (Blade rest = b; rest != 0; rest &= rest - 1) {
        Blade low = rest & (~rest + 1);
        swaps += std::popcount(a & ~((low << 1) - 1));
    }
    return (swaps & 1) ? -1 : 1;
}

/// (-1)^{q(q-1)/2}: the sign the reversal anti-automorphism puts on degree q.
inline int reversal_sign(int q) { return ((q * (q - 1) / 2) & 1) ? -1 : 1; }

inline std::vector<int> blade_indices(Blade b) {
    std::vector<int> out;
    for (int i = 0; i < kMaxDim; ++i)
        if (b & (Blade{1} << i)) out.push_back(i + 1);
    return out;
}

inline void check_dim(int m) {
    if (m < 1 || m > kMaxDim) throw DimensionError("form dimension must lie in [1, 8], got " + std::to_string(m));
}

template <class S>
class Form {
public:
    using Traits = ScalarTraits<S>;
    using Terms = std::map<Blade, S>;

    explicit Form(int dim) : dim_(dim) { check_dim(dim); }

    static Form constant(int dim, const S& c) {
        Form f(dim);
        f.add(0, c);
        return f;
    }

    /// c * e_{i1} ^ ... ^ e_{iq}; indices are 1-based and may come in any order.
    static Form monomial(int dim, std::initializer_list<int> indices, const S& c = Traits::one()) {
        return monomial(dim, std::vector<int>(indices), c);
    }

    static Form monomial(int dim, const std::vector<int>& indices, const S& c = Traits::one()) {
        Form f(dim);
        Blade acc = 0;
        int sign = 1;
        for (int idx : indices) {
            if (idx < 1 || idx > dim) throw DimensionError("basis index out of range");
            Blade bit = Blade{1} << (idx - 1);
            if (acc & bit) return f;
            sign *= reorder_sign(acc, bit);
            acc |= bit;
        }
        f.add(acc, sign < 0 ? -c : c);
        return f;
    }

    int dim() const { return dim_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    S coeff(Blade b) const {
        auto it = terms_.find(b);
        return it == terms_.end() ? Traits::zero() : it->second;
    }

    /// Accumulate c into the coefficient of b, pruning (near-)zero results.
    void add(Blade b, const S& c) {
        if (b >> dim_) throw DimensionError("blade does not fit the ambient dimension");
        auto [it, inserted] = terms_.try_emplace(b, c);
        if (!inserted) it->second += c;
        if (negligible(it->second)) terms_.erase(it);
    }

    Form homogeneous_part(int q) const {
        Form out(dim_);
        for (const auto& [b, c] : terms_)
            if (degree(b) == q) out.terms_.emplace(b, c);
        return out;
    }

    /// The degree if all terms share one, nullopt otherwise (and for the zero form).
    std::optional<int> pure_degree() const {
        std::optional<int> q;
        for (const auto& [b, c] : terms_) {
            if (q && *q != degree(b)) return std::nullopt;
            q = degree(b);
        }
        return q;
    }

    Form conj() const {
        Form out(dim_);
        for (const auto& [b, c] : terms_) out.terms_.emplace(b, Traits::conj(c));
        return out;
    }

    Form& operator+=(const Form& o) {
        same_dim(o);
        for (const auto& [b, c] : o.terms_) add(b, c);
        return *this;
    }
    Form& operator-=(const Form& o) {
        same_dim(o);
        for (const auto& [b, c] : o.terms_) add(b, -c);
        return *this;
    }
    Form& operator*=(const S& s) {
        Terms scaled;
        for (const auto& [b, c] : terms_) {
            S v = c * s;
            if (!negligible(v)) scaled.emplace(b, std::move(v));
        }
        terms_ = std::move(scaled);
        return *this;
    }

    friend Form operator+(Form a, const Form& b) { return a += b; }
    friend Form operator-(Form a, const Form& b) { return a -= b; }
    friend Form operator-(Form a) { return a *= -Traits::one(); }
    friend Form operator*(Form a, const S& s) { return a *= s; }
    friend Form operator*(const S& s, Form a) { return a *= s; }
    friend bool operator==(const Form& a, const Form& b) { return a.dim_ == b.dim_ && a.terms_ == b.terms_; }

    void same_dim(const Form& o) const {
        if (o.dim_ != dim_) throw DimensionError("forms live in different dimensions");
    }

private:
    static bool negligible(const S& c) {
        if constexpr (Traits::exact)
            return Traits::is_zero(c);
        else
            return Traits::is_zero(c, Traits::prune_epsilon);
    }

    int dim_;
    Terms terms_;
};

using ExactForm = Form<GaussianRational>;
using FloatForm = Form<Complex>;

/// Element X + xi of V + V*.
template <class S>
struct GVector {
    std::vector<S> vec;
    std::vector<S> cov;

    explicit GVector(int dim) : vec(dim, ScalarTraits<S>::zero()), cov(dim, ScalarTraits<S>::zero()) {}
    GVector(std::vector<S> v, std::vector<S> c) : vec(std::move(v)), cov(std::move(c)) {
        if (vec.size() != cov.size()) throw DimensionError("vector and covector parts differ in length");
    }

    int dim() const { return static_cast<int>(vec.size()); }

    /// Coordinate j in the ordered basis (d_1..d_m, e_1..e_m), 0-based.
    const S& operator[](int j) const { return j < dim() ? vec[j] : cov[j - dim()]; }
    S& operator[](int j) { return j < dim() ? vec[j] : cov[j - dim()]; }

    static GVector partial(int dim, int i) {
        GVector v(dim);
        v.vec.at(i - 1) = ScalarTraits<S>::one();
        return v;
    }
    static GVector dual(int dim, int i) {
        GVector v(dim);
        v.cov.at(i - 1) = ScalarTraits<S>::one();
        return v;
    }

    GVector& operator+=(const GVector& o) {
        for (int j = 0; j < 2 * dim(); ++j) (*this)[j] += o[j];
        return *this;
    }
    GVector& operator*=(const S& s) {
        for (int j = 0; j < 2 * dim(); ++j) (*this)[j] *= s;
        return *this;
    }
    friend GVector operator+(GVector a, const GVector& b) { return a += b; }
    friend GVector operator*(const S& s, GVector a) { return a *= s; }
    friend bool operator==(const GVector& a, const GVector& b) { return a.vec == b.vec && a.cov == b.cov; }
};

template <class S>
Form<S> wedge(const Form<S>& a, const Form<S>& b) {
    a.same_dim(b);
    Form<S> out(a.dim());
    for (const auto& [ba, ca] : a.terms())
        for (const auto& [bb, cb] : b.terms()) {
            if (ba & bb) continue;
            S c = ca * cb;
            out.add(ba | bb, reorder_sign(ba, bb) < 0 ? -c : c);
        }
    return out;
}

/// Interior product with the i-th coordinate vector (1-based).
template <class S>
Form<S> contract_basis(int i, const Form<S>& a) {
    if (i < 1 || i > a.dim()) throw DimensionError("contraction index out of range");
    Blade bit = Blade{1} << (i - 1);
    Form<S> out(a.dim());
    for (const auto& [b, c] : a.terms()) {
        if (!(b & bit)) continue;
        bool odd = std::popcount(b & (bit - 1)) & 1;
        out.add(b & ~bit, odd ? -c : c);
    }
    return out;
}

/// Interior product with X = sum_i x[i] d_i.
template <class S>
Form<S> contract(const std::vector<S>& x, const Form<S>& a) {
    if (static_cast<int>(x.size()) != a.dim()) throw DimensionError("vector and form dimensions differ");
    Form<S> out(a.dim());
    for (int i = 0; i < a.dim(); ++i) {
        if (ScalarTraits<S>::is_zero(x[i], 0.0)) continue;
        out += contract_basis(i + 1, a) * x[i];
    }
    return out;
}

/// The one-form sum_i c[i] e_i.
template <class S>
Form<S> one_form(const std::vector<S>& c) {
    Form<S> out(static_cast<int>(c.size()));
    for (std::size_t i = 0; i < c.size(); ++i) out.add(Blade{1} << i, c[i]);
    return out;
}

/// Component list of a one-form (terms of other degrees are ignored).
template <class S>
std::vector<S> one_form_components(const Form<S>& a) {
    std::vector<S> out(a.dim(), ScalarTraits<S>::zero());
    for (int i = 0; i < a.dim(); ++i) out[i] = a.coeff(Blade{1} << i);
    return out;
}

template <class S>
Form<S> reversal(const Form<S>& a) {
    Form<S> out(a.dim());
    for (const auto& [b, c] : a.terms()) out.add(b, reversal_sign(degree(b)) < 0 ? -c : c);
    return out;
}

/// Top-degree coefficient of reversal(a) ^ b.
template <class S>
S mukai(const Form<S>& a, const Form<S>& b) {
    a.same_dim(b);
    Blade top = (Blade{1} << a.dim()) - 1;
    S acc = ScalarTraits<S>::zero();
    for (const auto& [ba, ca] : a.terms()) {
        auto it = b.terms().find(top & ~ba);
        if (it == b.terms().end()) continue;
        int sign = reversal_sign(degree(ba)) * reorder_sign(ba, it->first);
        S c = ca * it->second;
        acc += sign < 0 ? -c : c;
    }
    return acc;
}

/// (X + xi) . a = i_X a + xi ^ a.
template <class S>
Form<S> clifford(const GVector<S>& v, const Form<S>& a) {
    if (v.dim() != a.dim()) throw DimensionError("generalized vector and form dimensions differ");
    return contract(v.vec, a) + wedge(one_form(v.cov), a);
}

/// <X + xi, Y + eta> = (xi(Y) + eta(X)) / 2.
template <class S>
S natural_pairing(const GVector<S>& v, const GVector<S>& w) {
    if (v.dim() != w.dim()) throw DimensionError("generalized vectors differ in dimension");
    S acc = ScalarTraits<S>::zero();
    for (int i = 0; i < v.dim(); ++i) acc += v.cov[i] * w.vec[i] + w.cov[i] * v.vec[i];
    return acc * ScalarTraits<S>::half();
}

/// e^B = sum_k B^k / k! for B of pure degree 2 (the zero form counts as degree 2).
template <class S>
Form<S> exp_form(const Form<S>& b) {
    auto q = b.pure_degree();
    if (!b.is_zero() && q != 2) throw PreconditionError("exp_form expects a homogeneous two-form");
    Form<S> out = Form<S>::constant(b.dim(), ScalarTraits<S>::one());
    Form<S> power = out;
    for (int k = 1; 2 * k <= b.dim(); ++k) {
        power = wedge(power, b);
        S inv = ScalarTraits<S>::one();
        if constexpr (ScalarTraits<S>::exact)
            inv = GaussianRational(Rational(1, k));
        else
            inv = Complex(1.0 / k, 0.0);
        power *= inv;
        out += power;
    }
    return out;
}

/// Pullback along a linear map with Jacobian jac[k][i] = d y_k / d x_i, from a
/// target of dimension a.dim() to a source of dimension source_dim.
template <class S, class Matrix>
Form<S> pullback(const Form<S>& a, const Matrix& jac, int source_dim) {
    std::vector<Form<S>> rows;
    rows.reserve(a.dim());
    for (int k = 0; k < a.dim(); ++k) {
        std::vector<S> c(source_dim, ScalarTraits<S>::zero());
        for (int i = 0; i < source_dim; ++i) c[i] = S(jac[k][i]);
        rows.push_back(one_form(c));
    }
    Form<S> out(source_dim);
    for (const auto& [b, c] : a.terms()) {
        Form<S> term = Form<S>::constant(source_dim, c);
        for (int k : blade_indices(b)) term = wedge(term, rows[k - 1]);
        out += term;
    }
    return out;
}

/// Largest coefficient magnitude of a - b (float diagnostics).
template <class S>
double max_abs_diff(const Form<S>& a, const Form<S>& b) {
    double worst = 0.0;
    Form<S> diff = a - b;
    for (const auto& [bl, c] : diff.terms()) worst = std::max(worst, ScalarTraits<S>::magnitude(c));
    return worst;
}

inline FloatForm to_float(const ExactForm& f) {
    FloatForm out(f.dim());
    for (const auto& [b, c] : f.terms()) out.add(b, to_complex(c));
    return out;
}

}  // namespace gct::algebra
