#include "gctoric/polytope.hpp"

namespace gct::polytope {

namespace {

Rational read_rational(const nlohmann::json& v, const std::string& where) {
    if (v.is_string()) {
        try {
            return parse_rational(v.get<std::string>());
        } catch (const std::invalid_argument&) {
            throw PolytopeError(where + ": '" + v.get<std::string>() + "' is not a rational \"p/q\"");
        }
    }
    if (v.is_number_integer()) return Rational(v.get<long long>());
    throw PolytopeError(where + ": expected a rational string \"p/q\" or an integer");
}

nlohmann::ordered_json zvec_json(const ZVec& v) {
    auto out = nlohmann::ordered_json::array();
    for (const auto& x : v) out.push_back(x.convert_to<long long>());
    return out;
}

}  // namespace

HPolytope polytope_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw PolytopeError("polytope must be a JSON object");
    if (!j.contains("dim") || !j.at("dim").is_number_integer()) throw PolytopeError("missing integer field 'dim'");
    int dim = j.at("dim").get<int>();
    if (dim < 0 || dim > 8) throw PolytopeError("'dim' must lie in [0, 8]");
    if (!j.contains("facets") || !j.at("facets").is_array()) throw PolytopeError("missing array field 'facets'");
    std::vector<Facet> facets;
    std::size_t idx = 0;
    for (const auto& f : j.at("facets")) {
        std::string where = "facet " + std::to_string(idx++);
        if (!f.is_object() || !f.contains("normal") || !f.contains("offset"))
            throw PolytopeError(where + ": expected {\"normal\": [...], \"offset\": \"p/q\"}");
        const auto& n = f.at("normal");
        if (!n.is_array()) throw PolytopeError(where + ": 'normal' must be an array of integers");
        ZVec normal;
        for (const auto& x : n) {
            if (!x.is_number_integer()) throw PolytopeError(where + ": normal entries must be integers");
            normal.emplace_back(x.get<long long>());
        }
        facets.push_back({std::move(normal), read_rational(f.at("offset"), where)});
    }
    return HPolytope(dim, std::move(facets));
}

nlohmann::ordered_json to_json(const QVec& v) {
    auto out = nlohmann::ordered_json::array();
    for (const auto& x : v) out.push_back(format_rational(x));
    return out;
}

nlohmann::ordered_json to_json(const HPolytope& p) {
    nlohmann::ordered_json j;
    j["dim"] = p.dim();
    j["facets"] = nlohmann::ordered_json::array();
    for (const auto& f : p.facets()) {
        nlohmann::ordered_json fj;
        fj["normal"] = zvec_json(f.normal);
        fj["offset"] = format_rational(f.offset);
        j["facets"].push_back(std::move(fj));
    }
    return j;
}

nlohmann::ordered_json to_json(const DelzantReport& r) {
    nlohmann::ordered_json j;
    j["delzant"] = r.delzant;
    j["fullDimensional"] = r.full_dimensional;
    j["vertices"] = nlohmann::ordered_json::array();
    for (const auto& v : r.vertices) {
        nlohmann::ordered_json vj;
        vj["point"] = to_json(v.point);
        vj["simple"] = v.simple;
        vj["rational"] = v.rational;
        vj["smooth"] = v.smooth;
        if (v.determinant)
            vj["determinant"] = v.determinant->convert_to<long long>();
        else
            vj["determinant"] = nullptr;
        if (!v.reason.empty()) vj["reason"] = v.reason;
        j["vertices"].push_back(std::move(vj));
    }
    return j;
}

nlohmann::ordered_json to_json(const OrthReport& r) {
    nlohmann::ordered_json j;
    j["ok"] = r.ok;
    j["axis"] = r.axis;
    j["witnesses"] = nlohmann::ordered_json::array();
    for (const auto& w : r.witnesses) {
        nlohmann::ordered_json wj;
        wj["kind"] = w.kind;
        if (w.facet)
            wj["facet"] = *w.facet;
        else
            wj["facet"] = nullptr;
        wj["point"] = to_json(w.point);
        j["witnesses"].push_back(std::move(wj));
    }
    return j;
}

nlohmann::ordered_json to_json(const FreenessReport& r) {
    nlohmann::ordered_json j;
    j["free"] = r.free;
    j["offending"] = nlohmann::ordered_json::array();
    for (const auto& w : r.offending) {
        nlohmann::ordered_json wj;
        wj["point"] = to_json(w.point);
        wj["facets"] = w.facets;
        wj["rankCondition"] = w.rank_condition;
        wj["saturated"] = w.saturated;
        j["offending"].push_back(std::move(wj));
    }
    return j;
}

}  // namespace gct::polytope
