#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <string_view>

#include <boost/multiprecision/gmp.hpp>

namespace gct {

using Rational = boost::multiprecision::mpq_rational;
using Integer = boost::multiprecision::mpz_int;
using Complex = std::complex<double>;

/// Parse "p/q", "p" or "-p/q". Throws std::invalid_argument on anything else
/// (including a zero denominator).
Rational parse_rational(std::string_view text);

/// Always "p/q" with q > 0, e.g. "1/1", "-3/2".
std::string format_rational(const Rational& value);

/// Exact complex scalar: a pair of rationals.
struct GaussianRational {
    Rational re;
    Rational im;

    GaussianRational() = default;
    GaussianRational(Rational real) : re(std::move(real)) {}
    GaussianRational(Rational real, Rational imag) : re(std::move(real)), im(std::move(imag)) {}
    GaussianRational(long long real) : re(real) {}

    static GaussianRational i() { return {Rational(0), Rational(1)}; }

    GaussianRational conj() const { return {re, -im}; }
    bool is_zero() const { return re == 0 && im == 0; }
    bool is_real() const { return im == 0; }

    GaussianRational& operator+=(const GaussianRational& o) {
        re += o.re;
        im += o.im;
        return *this;
    }
    GaussianRational& operator-=(const GaussianRational& o) {
        re -= o.re;
        im -= o.im;
        return *this;
    }
    GaussianRational& operator*=(const GaussianRational& o) {
        Rational r = re * o.re - im * o.im;
        Rational m = re * o.im + im * o.re;
        re = std::move(r);
        im = std::move(m);
        return *this;
    }
    GaussianRational& operator/=(const GaussianRational& o);

    friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
    friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
    friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
    friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }
    friend GaussianRational operator-(const GaussianRational& a) { return {-a.re, -a.im}; }
    friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
        return a.re == b.re && a.im == b.im;
    }
};

std::string to_string(const GaussianRational& z);

/// Uniform access to the two scalar backends. Float comparisons always take an
/// explicit tolerance; the exact backend ignores it.
template <class S>
struct ScalarTraits;

template <>
struct ScalarTraits<GaussianRational> {
    using Real = Rational;
    static constexpr bool exact = true;

    static GaussianRational zero() { return {}; }
    static GaussianRational one() { return GaussianRational(1); }
    static GaussianRational i() { return GaussianRational::i(); }
    static GaussianRational from_int(long long v) { return GaussianRational(v); }
    static GaussianRational from_real(const Rational& v) { return GaussianRational(v); }
    static GaussianRational half() { return GaussianRational(Rational(1, 2)); }
    static GaussianRational conj(const GaussianRational& z) { return z.conj(); }
    static bool is_zero(const GaussianRational& z, double /*tol*/ = 0.0) { return z.is_zero(); }
    static bool is_real(const GaussianRational& z, double /*tol*/ = 0.0) { return z.is_real(); }
    static Rational real_part(const GaussianRational& z) { return z.re; }
    static Rational imag_part(const GaussianRational& z) { return z.im; }
    /// Magnitude proxy used only for diagnostics.
    static double magnitude(const GaussianRational& z) {
        return std::abs(z.re.convert_to<double>()) + std::abs(z.im.convert_to<double>());
    }
};

template <>
struct ScalarTraits<Complex> {
    using Real = double;
    static constexpr bool exact = false;
    /// Coefficients at or below this magnitude are dropped from float forms.
    static constexpr double prune_epsilon = 1e-14;

    static Complex zero() { return {}; }
    static Complex one() { return {1.0, 0.0}; }
    static Complex i() { return {0.0, 1.0}; }
    static Complex from_int(long long v) { return {static_cast<double>(v), 0.0}; }
    static Complex from_real(double v) { return {v, 0.0}; }
    static Complex half() { return {0.5, 0.0}; }
    static Complex conj(const Complex& z) { return std::conj(z); }
    static bool is_zero(const Complex& z, double tol) { return std::abs(z) <= tol; }
    static bool is_real(const Complex& z, double tol) { return std::abs(z.imag()) <= tol; }
    static double real_part(const Complex& z) { return z.real(); }
    static double imag_part(const Complex& z) { return z.imag(); }
    static double magnitude(const Complex& z) { return std::abs(z); }
};

/// Real scalar traits for the real matrices of generalized complex structures.
template <class R>
struct RealTraits;

template <>
struct RealTraits<Rational> {
    using Scalar = GaussianRational;
    static bool is_zero(const Rational& v, double /*tol*/ = 0.0) { return v == 0; }
    static double to_double(const Rational& v) { return v.convert_to<double>(); }
};

template <>
struct RealTraits<double> {
    using Scalar = Complex;
    static bool is_zero(double v, double tol) { return std::abs(v) <= tol; }
    static double to_double(double v) { return v; }
};

inline Complex to_complex(const GaussianRational& z) {
    return {z.re.convert_to<double>(), z.im.convert_to<double>()};
}

}  // namespace gct
