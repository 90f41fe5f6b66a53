#include "cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "gctoric/checks.hpp"
#include "gctoric/construct.hpp"
#include "gctoric/morse.hpp"
#include "gctoric/polytope.hpp"

namespace gct::cli {

namespace {

using json = nlohmann::ordered_json;
using polytope::HPolytope;

class InputError : public std::runtime_error {
public:
    explicit InputError(const std::string& what, json extra = json::object())
        : std::runtime_error(what), extra_(std::move(extra)) {}
    const json& extra() const { return extra_; }

private:
    json extra_;
};

struct Outcome {
    int code = kPass;
    json report = json::object();
    std::string summary;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot read '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

/// Parses a JSON file; syntax errors carry the 1-based line and column.
nlohmann::json parse_json_file(const std::string& path) {
    std::string text = read_file(path);
    try {
        return nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        std::size_t offset = e.byte == 0 ? 0 : std::min<std::size_t>(e.byte - 1, text.size());
        std::size_t line = 1, column = 1;
        for (std::size_t i = 0; i < offset; ++i) {
            if (text[i] == '\n') {
                ++line;
                column = 1;
            } else {
                ++column;
            }
        }
        throw InputError("malformed JSON in '" + path + "' at line " + std::to_string(line) + ", column " +
                             std::to_string(column),
                         {{"line", line}, {"column", column}});
    }
}

HPolytope load_polytope(const std::string& path) {
    auto j = parse_json_file(path);
    try {
        return polytope::polytope_from_json(j);
    } catch (const polytope::PolytopeError& e) {
        throw InputError("invalid polytope in '" + path + "': " + e.what());
    }
}

json error_json(const std::string& kind, const std::string& message, const json& extra = json::object()) {
    json e;
    e["kind"] = kind;
    e["message"] = message;
    for (auto it = extra.begin(); it != extra.end(); ++it) e[it.key()] = it.value();
    return e;
}

Outcome failure(int code, const std::string& kind, const std::string& message, const json& extra = json::object()) {
    Outcome o;
    o.code = code;
    o.report["pass"] = false;
    o.report["error"] = error_json(kind, message, extra);
    o.summary = kind + ": " + message;
    return o;
}

/// "1..r", "1,2,...,r" or "" for the empty set; the axes must be exactly {1, ..., r}.
int parse_first_axes(const std::string& text) {
    std::set<int> axes;
    auto number = [&](const std::string& s) {
        try {
            std::size_t used = 0;
            int v = std::stoi(s, &used);
            if (used != s.size()) throw std::invalid_argument(s);
            return v;
        } catch (const std::exception&) {
            throw InputError("bad axis '" + s + "' in --axes");
        }
    };
    if (auto dots = text.find(".."); dots != std::string::npos) {
        int lo = number(text.substr(0, dots)), hi = number(text.substr(dots + 2));
        for (int i = lo; i <= hi; ++i) axes.insert(i);
    } else if (!text.empty()) {
        std::stringstream ss(text);
        std::string item;
        while (std::getline(ss, item, ',')) axes.insert(number(item));
    }
    int r = static_cast<int>(axes.size());
    if (axes != polytope::first_axes(r)) throw InputError("--axes must list the first r axes, e.g. 1..2");
    return r;
}

morse::Direction parse_direction(const std::string& text) {
    morse::Direction xi;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            long long v = std::stoll(item, &used);
            if (used != item.size()) throw std::invalid_argument(item);
            xi.push_back(v);
        } catch (const std::exception&) {
            throw InputError("bad component '" + item + "' in --xi");
        }
    }
    return xi;
}

double tolerance_factor() {
    const char* env = std::getenv(kToleranceProfileEnv);
    std::string profile = env ? env : "default";
    if (profile == "default" || profile.empty()) return 1.0;
    if (profile == "strict") return 0.01;
    if (profile == "loose") return 100.0;
    throw InputError(std::string(kToleranceProfileEnv) + " must be default, strict or loose, not '" + profile + "'");
}

std::string point_text(const polytope::QVec& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + v[i].str();
    return s + ")";
}

Outcome certification_failure(const construct::CertificationError& e) {
    return failure(kCertificationFailed, construct::to_string(e.kind()), e.what(), {{"witnesses", e.witnesses()}});
}

// ---------------------------------------------------------------------------
// Commands

Outcome cmd_validate(const std::string& file) {
    HPolytope p = load_polytope(file);
    auto r = polytope::is_delzant(p);
    Outcome o;
    o.code = r.delzant ? kPass : kCheckFailed;
    o.report["pass"] = r.delzant;
    o.report["result"] = polytope::to_json(r);
    o.summary = r.delzant ? "Delzant" : "not Delzant";
    for (const auto& v : r.vertices)
        if (!v.reason.empty()) {
            o.summary += ": " + v.reason + " at vertex " + point_text(v.point);
            break;
        }
    if (!r.full_dimensional) o.summary += ": not full-dimensional";
    return o;
}

polytope::OrthReport orth_or_fail(const HPolytope& p, int axis, std::optional<Outcome>& fail) {
    if (axis < 1 || axis > p.dim()) throw InputError("--axis must lie in [1, " + std::to_string(p.dim()) + "]");
    try {
        return polytope::orth_check(p, axis);
    } catch (const polytope::SliceError& e) {
        fail = failure(kCheckFailed, "SliceEmpty", e.what());
        return {};
    }
}

Outcome cmd_orth(const std::string& file, int axis) {
    HPolytope p = load_polytope(file);
    std::optional<Outcome> fail;
    auto r = orth_or_fail(p, axis, fail);
    if (fail) return *fail;
    Outcome o;
    o.code = r.ok ? kPass : kCheckFailed;
    o.report["pass"] = r.ok;
    o.report["result"] = polytope::to_json(r);
    o.summary = r.ok ? "meets x_" + std::to_string(axis) + " = 0 orthogonally"
                     : std::to_string(r.witnesses.size()) + " orthogonality witnesses";
    return o;
}

Outcome cmd_cut(const std::string& file, int axis, const std::optional<std::string>& delta_text) {
    HPolytope p = load_polytope(file);
    std::optional<Outcome> fail;
    auto orth = orth_or_fail(p, axis, fail);
    if (fail) return *fail;
    if (!orth.ok)
        return failure(kCheckFailed, "OrthogonalityFailed", "cut needs a polytope meeting the hyperplane orthogonally",
                       {{"witnesses", polytope::to_json(orth)["witnesses"]}});
    Rational delta;
    if (delta_text) {
        try {
            delta = parse_rational(*delta_text);
        } catch (const std::invalid_argument& e) {
            throw InputError(std::string("--delta: ") + e.what());
        }
    } else {
        delta = polytope::max_slab_delta(p, axis);
    }
    HPolytope cut(0, {});
    try {
        cut = polytope::cut_slab(p, axis, delta);
    } catch (const PreconditionError& e) {
        throw InputError(e.what());
    }
    Outcome o;
    o.report["pass"] = true;
    json res;
    res["axis"] = axis;
    res["delta"] = format_rational(delta);
    res["polytope"] = polytope::to_json(cut);
    res["delzant"] = polytope::is_delzant(cut).delzant;
    res["vertices"] = json::array();
    for (const auto& v : polytope::vertices(cut)) res["vertices"].push_back(polytope::to_json(v.point));
    o.report["result"] = res;
    o.summary = "cut with delta " + format_rational(delta) + ", " + std::to_string(res["vertices"].size()) + " vertices";
    return o;
}

Outcome cmd_certify(const std::string& file) {
    HPolytope p = load_polytope(file);
    try {
        auto c = construct::certify(p);
        Outcome o;
        o.report["pass"] = true;
        o.report["result"] = construct::to_json(c);
        o.report["rankAudit"] = construct::to_json(construct::rank_bound_audit(c));
        o.summary = "certified: n = " + std::to_string(c.n) + ", residual torus rank " +
                    std::to_string(c.residual_torus_rank) + ", delta " + format_rational(c.delta);
        return o;
    } catch (const construct::CertificationError& e) {
        return certification_failure(e);
    }
}

Outcome cmd_reduce(const std::string& file, const std::string& axes) {
    HPolytope p = load_polytope(file);
    int r = parse_first_axes(axes);
    try {
        auto c = construct::reduce_certificate(p, r);
        Outcome o;
        o.report["pass"] = true;
        o.report["r"] = r;
        o.report["result"] = construct::to_json(c);
        o.summary = "reduced by " + std::to_string(r) + " axes: n = " + std::to_string(c.n);
        return o;
    } catch (const construct::CertificationError& e) {
        return certification_failure(e);
    } catch (const PreconditionError& e) {
        throw InputError(e.what());
    }
}

Outcome cmd_commute(const std::string& file, const std::string& axes) {
    HPolytope p = load_polytope(file);
    int r = parse_first_axes(axes);
    try {
        auto c = construct::commute_check(p, r);
        Outcome o;
        o.code = c.pass ? kPass : kCheckFailed;
        o.report["pass"] = c.pass;
        o.report["result"] = construct::to_json(c);
        o.summary = c.pass ? "surgery commutes with reduction for r = " + std::to_string(r)
                           : "reduced and sliced A-polytopes differ for r = " + std::to_string(r);
        return o;
    } catch (const construct::CertificationError& e) {
        return certification_failure(e);
    } catch (const PreconditionError& e) {
        throw InputError(e.what());
    }
}

Outcome cmd_morse(const std::string& file, const std::optional<std::string>& xi_text) {
    HPolytope p = load_polytope(file);
    auto dz = polytope::is_delzant(p);
    if (!dz.delzant)
        return failure(kCheckFailed, "NotDelzant", "Morse data needs a Delzant polytope",
                       {{"delzant", polytope::to_json(dz)}});
    std::optional<morse::Direction> xi;
    if (xi_text) {
        xi = parse_direction(*xi_text);
        if (static_cast<int>(xi->size()) != p.dim())
            throw InputError("--xi needs " + std::to_string(p.dim()) + " components");
        if (!morse::is_generic(p, *xi)) throw InputError("--xi is orthogonal to an edge of the polytope");
    }
    auto r = morse::betti(p, xi);
    Outcome o;
    o.report["pass"] = true;
    o.report["result"] = morse::to_json(r);
    std::string b;
    for (std::size_t i = 0; i < r.betti.size(); ++i) b += (i ? ", " : "") + std::to_string(r.betti[i]);
    o.summary = "even Betti numbers (" + b + ")";
    return o;
}

struct ChartsArgs {
    std::string model;
    std::string check;
    std::optional<std::uint64_t> seed;
    std::optional<double> h;
    std::optional<double> tolerance;
    std::optional<std::string> plan;
    std::string jacobian = "analytic";
    std::string stencil = "central4";
};

Outcome cmd_charts(const ChartsArgs& a) {
    charts::CheckOptions opt;
    if (a.plan) {
        try {
            opt.plan = charts::plan_from_json(parse_json_file(*a.plan));
        } catch (const InputError&) {
            throw;
        } catch (const std::exception& e) {
            throw InputError("invalid plan '" + *a.plan + "': " + e.what());
        }
    }
    opt.seed = a.seed;
    opt.h = a.h;
    opt.tolerance = a.tolerance;
    if (!opt.tolerance) {
        double factor = tolerance_factor();
        if (factor != 1.0) {
            double base = opt.plan ? opt.plan->tolerance : charts::default_plan(a.model, a.check).tolerance;
            opt.tolerance = base * factor;
        }
    }
    if (a.jacobian == "analytic")
        opt.jacobian = charts::JacobianMode::Analytic;
    else if (a.jacobian == "fd")
        opt.jacobian = charts::JacobianMode::FiniteDifference;
    else
        throw InputError("--jacobian must be analytic or fd");
    if (a.stencil == "central2")
        opt.stencil = charts::Stencil::Central2;
    else if (a.stencil == "central4")
        opt.stencil = charts::Stencil::Central4;
    else
        throw InputError("--stencil must be central2 or central4");

    charts::CheckReport r;
    try {
        r = charts::run_check(a.model, a.check, opt);
    } catch (const charts::UnknownName& e) {
        throw InputError(e.what());
    } catch (const PreconditionError& e) {
        throw InputError(e.what());
    } catch (const DomainError& e) {
        throw InputError(e.what());
    }
    Outcome o;
    o.code = r.pass ? kPass : kCheckFailed;
    o.report = charts::to_json(r);
    char buf[160];
    std::snprintf(buf, sizeof buf, "%s %s: max residual %.3g over %zu points (tolerance %.3g)", a.model.c_str(),
                  a.check.c_str(), r.max_residual, r.points, r.tolerance);
    o.summary = std::string(r.pass ? "pass, " : "FAIL, ") + buf;
    return o;
}

Outcome cmd_suite(const std::optional<std::string>& corpus) {
    Outcome o;
    bool all = true;
    json checks = json::array();
    for (const auto& [model, check] : charts::default_suite()) {
        auto r = charts::run_check(model, check);
        all = all && r.pass;
        checks.push_back(charts::to_json(r));
    }
    o.report["charts"] = checks;
    int corpus_count = 0, corpus_bad = 0;
    if (corpus) {
        namespace fs = std::filesystem;
        if (!fs::is_directory(*corpus)) throw InputError("--corpus '" + *corpus + "' is not a directory");
        std::map<std::string, nlohmann::json> expected;
        fs::path manifest = fs::path(*corpus) / "manifest.json";
        if (fs::exists(manifest))
            for (const auto& e : parse_json_file(manifest.string())["polytopes"]) expected[e["file"]] = e;
        std::vector<fs::path> files;
        for (const auto& entry : fs::directory_iterator(*corpus))
            if (entry.path().extension() == ".json" && entry.path().filename() != "manifest.json")
                files.push_back(entry.path());
        std::sort(files.begin(), files.end());
        json items = json::array();
        for (const auto& f : files) {
            HPolytope p = load_polytope(f.string());
            json item;
            item["file"] = f.filename().string();
            bool delzant = polytope::is_delzant(p).delzant;
            item["delzant"] = delzant;
            bool certified = false;
            try {
                auto c = construct::certify(p);
                certified = true;
                item["n"] = c.n;
                item["residualTorusRank"] = c.residual_torus_rank;
            } catch (const construct::CertificationError& e) {
                item["certificationFailure"] = construct::to_string(e.kind());
            }
            item["certified"] = certified;
            if (auto it = expected.find(item["file"].get<std::string>()); it != expected.end()) {
                bool ok = it->second["delzant"].get<bool>() == delzant &&
                          it->second.value("certify", false) == certified;
                item["matchesManifest"] = ok;
                if (!ok) ++corpus_bad;
            }
            ++corpus_count;
            items.push_back(item);
        }
        o.report["corpus"] = items;
    }
    all = all && corpus_bad == 0;
    o.code = all ? kPass : kCheckFailed;
    o.report["pass"] = all;
    o.summary = std::to_string(checks.size()) + " chart checks" +
                (corpus ? ", " + std::to_string(corpus_count) + " corpus polytopes" : std::string()) +
                (all ? ": all pass" : ": failures present");
    return o;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Generalized complex toric verification toolkit", "gctoric"};
    app.require_subcommand(1);
    app.fallthrough();
    std::optional<std::string> output;
    bool quiet = false;
    app.add_option("-o,--output", output, "Write the JSON report to this file instead of standard output");
    app.add_flag("-q,--quiet", quiet, "Suppress the summary on standard error");
    app.add_flag("--json", "Reports are always JSON; accepted and ignored");

    std::string file, axes, xi, delta;
    int axis = 0;
    auto* validate = app.add_subcommand("validate", "Check the Delzant conditions");
    validate->add_option("polytope", file)->required();
    auto* orth = app.add_subcommand("orth", "Check that the polytope meets x_axis = 0 orthogonally");
    orth->add_option("polytope", file)->required();
    orth->add_option("--axis", axis)->required();
    auto* cut = app.add_subcommand("cut", "Two-sided symplectic cut by a slab around x_axis = 0");
    cut->add_option("polytope", file)->required();
    cut->add_option("--axis", axis)->required();
    cut->add_option("--delta", delta, "Half-width p/q; defaults to half the smallest nonzero |x_axis| of a vertex");
    auto* reduce = app.add_subcommand("reduce", "Certificate of the reduction by the first r axes");
    reduce->add_option("polytope", file)->required();
    reduce->add_option("--axes", axes, "1..r")->required();
    auto* certify = app.add_subcommand("certify", "Surgery certificate for the last axis");
    certify->add_option("polytope", file)->required();
    auto* commute = app.add_subcommand("commute", "Check that surgery commutes with reduction");
    commute->add_option("polytope", file)->required();
    commute->add_option("--axes", axes, "1..r")->required();
    auto* morse_cmd = app.add_subcommand("morse", "Morse indices and Betti numbers");
    morse_cmd->add_option("polytope", file)->required();
    morse_cmd->add_option("--xi", xi, "Generic direction c1,c2,...");

    ChartsArgs ca;
    std::uint64_t seed = 0;
    double h = 0, tol = 0;
    std::string plan;
    auto* charts_cmd = app.add_subcommand("charts", "Numeric check on a chart model");
    charts_cmd->set_help_flag("--help", "Print this help message and exit");
    charts_cmd->add_option("model", ca.model)->required();
    charts_cmd->add_option("check", ca.check)->required();
    auto* seed_opt = charts_cmd->add_option("--seed", seed);
    auto* h_opt = charts_cmd->add_option("--h", h, "Finite-difference step");
    auto* tol_opt = charts_cmd->add_option("--tolerance", tol);
    auto* plan_opt = charts_cmd->add_option("--plan", plan, "Plan file with points or {seed, count, exclusion}");
    charts_cmd->add_option("--jacobian", ca.jacobian, "analytic or fd");
    charts_cmd->add_option("--stencil", ca.stencil, "central2 or central4");

    std::string corpus;
    auto* suite = app.add_subcommand("suite", "Default chart checks, optionally with a polytope corpus");
    auto* corpus_opt = suite->add_option("--corpus", corpus, "Directory of polytope files (with optional manifest)");

    Outcome o;
    std::string command = args.empty() ? "" : args.front();
    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
        command = app.get_subcommands().front()->get_name();
        if (*seed_opt) ca.seed = seed;
        if (*h_opt) ca.h = h;
        if (*tol_opt) ca.tolerance = tol;
        if (*plan_opt) ca.plan = plan;

        if (*validate) o = cmd_validate(file);
        else if (*orth) o = cmd_orth(file, axis);
        else if (*cut) o = cmd_cut(file, axis, cut->count("--delta") ? std::optional(delta) : std::nullopt);
        else if (*reduce) o = cmd_reduce(file, axes);
        else if (*certify) o = cmd_certify(file);
        else if (*commute) o = cmd_commute(file, axes);
        else if (*morse_cmd) o = cmd_morse(file, morse_cmd->count("--xi") ? std::optional(xi) : std::nullopt);
        else if (*charts_cmd) o = cmd_charts(ca);
        else o = cmd_suite(*corpus_opt ? std::optional(corpus) : std::nullopt);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kPass;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kPass;
    } catch (const CLI::ParseError& e) {
        o = failure(kInputError, "UsageError", e.what());
    } catch (const InputError& e) {
        o = failure(kInputError, "InputError", e.what(), e.extra());
    } catch (const polytope::PolytopeError& e) {
        o = failure(kInputError, "InputError", e.what());
    } catch (const std::exception& e) {
        o = failure(kCheckFailed, "Error", e.what());
    }

    json report;
    report["command"] = command;
    if (!file.empty()) report["input"] = file;
    for (auto it = o.report.begin(); it != o.report.end(); ++it) report[it.key()] = it.value();
    std::string text = report.dump(2) + "\n";
    if (output) {
        std::ofstream f(*output, std::ios::binary);
        if (!f) {
            err << "gctoric: cannot write report to '" << *output << "'\n";
            return kInputError;
        }
        f << text;
    } else {
        out << text;
    }
    if (!quiet) err << "gctoric " << command << (file.empty() ? "" : " " + file) << ": " << o.summary << "\n";
    return o.code;
}

}  // namespace gct::cli
