#include "gctoric/scalar.hpp"

#include <cctype>
#include <stdexcept>

namespace gct {

namespace {

bool is_integer_literal(std::string_view s) {
    if (s.empty()) return false;
    std::size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (start == s.size()) return false;
    for (std::size_t i = start; i < s.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
    auto slash = text.find('/');
    std::string_view num = text.substr(0, slash);
    std::string_view den = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
    if (!is_integer_literal(num) || !is_integer_literal(den) || den[0] == '-' || den[0] == '+')
        throw std::invalid_argument("not a rational literal: '" + std::string(text) + "'");
    std::string n(num.front() == '+' ? num.substr(1) : num);
    Integer q(std::string{den});
    if (q == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
    return Rational(Integer(n), q);
}

std::string format_rational(const Rational& value) {
    return boost::multiprecision::numerator(value).str() + "/" + boost::multiprecision::denominator(value).str();
}

GaussianRational& GaussianRational::operator/=(const GaussianRational& o) {
    Rational norm = o.re * o.re + o.im * o.im;
    if (norm == 0) throw std::domain_error("division by zero Gaussian rational");
    Rational r = (re * o.re + im * o.im) / norm;
    Rational m = (im * o.re - re * o.im) / norm;
    re = std::move(r);
    im = std::move(m);
    return *this;
}

std::string to_string(const GaussianRational& z) {
    return format_rational(z.re) + (z.im < 0 ? " - " : " + ") + format_rational(abs(z.im)) + "i";
}

}  // namespace gct
