#include "gctoric/form_json.hpp"

namespace gct::algebra {

nlohmann::ordered_json to_json(const ExactForm& f) {
    auto out = nlohmann::ordered_json::array();
    for (const auto& [b, c] : f.terms()) {
        nlohmann::ordered_json t;
        t["subset"] = blade_indices(b);
        t["re"] = format_rational(c.re);
        t["im"] = format_rational(c.im);
        out.push_back(std::move(t));
    }
    return out;
}

nlohmann::ordered_json to_json(const FloatForm& f) {
    auto out = nlohmann::ordered_json::array();
    for (const auto& [b, c] : f.terms()) {
        nlohmann::ordered_json t;
        t["subset"] = blade_indices(b);
        t["re"] = c.real();
        t["im"] = c.imag();
        out.push_back(std::move(t));
    }
    return out;
}

ExactForm exact_form_from_json(int dim, const nlohmann::json& terms) {
    ExactForm out(dim);
    for (const auto& t : terms) {
        auto subset = t.at("subset").get<std::vector<int>>();
        GaussianRational c(parse_rational(t.at("re").get<std::string>()),
                           t.contains("im") ? parse_rational(t.at("im").get<std::string>()) : Rational(0));
        out += ExactForm::monomial(dim, subset, c);
    }
    return out;
}

}  // namespace gct::algebra
