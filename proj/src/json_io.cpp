#include "hardy_means/json_io.hpp"

#include "hardy_means/errors.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace hardy_means {

namespace {

json number_or_null(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

json limit_to_json(const DeclaredLimit& v) {
    if (!v) return "estimate";
    return number_or_null(*v);
}

// null and "inf"/"-inf" map to infinity; `null_value` is the field's natural infinity.
double extended(const json& j, double null_value, const char* field) {
    if (j.is_null()) return null_value;
    if (j.is_number()) return j.get<double>();
    if (j.is_string()) {
        const auto s = j.get<std::string>();
        if (s == "inf" || s == "+inf" || s == "infinity") return kInf;
        if (s == "-inf" || s == "-infinity") return -kInf;
    }
    throw ArgumentError(std::string("field '") + field + "' must be a number, null or \"inf\"");
}

DeclaredLimit limit_from_json(const json& j, const char* field, double null_value) {
    if (!j.contains(field)) return std::nullopt;
    const auto& v = j.at(field);
    if (v.is_string() && v.get<std::string>() == "estimate") return std::nullopt;
    return extended(v, null_value, field);
}

double number(const json& j, const char* field) {
    if (!j.contains(field) || !j.at(field).is_number()) {
        throw ArgumentError(std::string("missing numeric field '") + field + "'");
    }
    return j.at(field).get<double>();
}

PiecewisePolynomial piecewise_from_json(const json& j) {
    if (!j.contains("coeffs")) throw ArgumentError("piecewise generator needs \"coeffs\"");
    PiecewisePolynomial poly;
    if (j.contains("breakpoints")) poly.breakpoints = j.at("breakpoints").get<std::vector<double>>();
    for (const auto& c : j.at("coeffs")) poly.pieces.emplace_back(c.get<std::vector<double>>());
    return poly;
}

double parse_number(const std::string& s, const std::string& what) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != s.size() || s.empty()) throw ArgumentError("bad number '" + s + "' in " + what);
    return v;
}

json parse_json_text(const std::string& text, const std::string& origin) {
    try {
        return json::parse(text);
    } catch (const json::exception& e) {
        throw ArgumentError("invalid JSON in " + origin + ": " + e.what());
    }
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

json panels_json(const std::vector<Panel>& panels) {
    json out = json::array();
    for (const auto& p : panels) {
        out.push_back({{"lo", p.lo}, {"hi", number_or_null(p.hi)}, {"value", p.value}, {"abs_error", p.abs_error},
                       {"method", p.method}});
    }
    return out;
}

std::string condition_name(ConditionId id) { return std::string(to_string(id)); }

}  // namespace

json to_json(const GeneratorSpec& g) {
    json j;
    struct Visitor {
        json& j;
        void operator()(const PowerKind& k) const {
            j["kind"] = "power";
            j["p"] = k.p;
        }
        void operator()(const LogKind&) const { j["kind"] = "log"; }
        void operator()(const TruncatedLinearKind& k) const {
            j["kind"] = "truncated_linear";
            j["M"] = k.M;
        }
        void operator()(const PiecewiseKind& k) const {
            j["kind"] = "piecewise";
            json coeffs = json::array();
            for (const auto& p : k.poly.pieces) {
                coeffs.push_back(std::vector<double>(p.coeffs().begin(), p.coeffs().end()));
            }
            j["piecewise"] = {{"breakpoints", k.poly.breakpoints}, {"coeffs", coeffs}};
        }
    };
    std::visit(Visitor{j}, g.kind());
    j["alpha"] = g.alpha();
    j["beta"] = number_or_null(g.beta());
    j["g0plus"] = limit_to_json(g.g0plus());
    j["q_inf"] = limit_to_json(g.q_inf());
    j["sup_g"] = limit_to_json(g.sup_g());
    return j;
}

GeneratorSpec generator_from_json(const json& j) {
    try {
        if (!j.is_object() || !j.contains("kind")) throw ArgumentError("generator JSON needs a \"kind\" field");
        const auto kind = j.at("kind").get<std::string>();
        std::optional<GeneratorSpec> g;
        if (kind == "power") {
            g = GeneratorSpec::power(number(j, "p"));
        } else if (kind == "log") {
            g = GeneratorSpec::log();
        } else if (kind == "truncated_linear") {
            g = GeneratorSpec::truncated_linear(number(j, "M"));
        } else if (kind == "piecewise") {
            g = GeneratorSpec::piecewise(piecewise_from_json(j.contains("piecewise") ? j.at("piecewise") : j));
        } else {
            throw ArgumentError("unknown generator kind '" + kind + "'");
        }
        if (std::holds_alternative<TruncatedLinearKind>(g->kind())) {
            // Forced data: accept only consistent declarations.
            const double M = std::get<TruncatedLinearKind>(g->kind()).M;
            const double alpha = j.contains("alpha") ? number(j, "alpha") : 0.0;
            const double beta = j.contains("beta") ? extended(j.at("beta"), kInf, "beta") : kInf;
            auto g0 = limit_from_json(j, "g0plus", -kInf);
            auto q = limit_from_json(j, "q_inf", kInf);
            auto sup = limit_from_json(j, "sup_g", kInf);
            g = g->with_interval(alpha, beta).with_limits(g0 ? g0 : -1.0, q ? q : 0.0, sup ? sup : M);
            return *g;
        }
        const double alpha = j.contains("alpha") ? number(j, "alpha") : 0.0;
        const double beta = j.contains("beta") ? extended(j.at("beta"), kInf, "beta") : kInf;
        return g->with_interval(alpha, beta)
            .with_limits(limit_from_json(j, "g0plus", -kInf), limit_from_json(j, "q_inf", kInf),
                         limit_from_json(j, "sup_g", kInf));
    } catch (const json::exception& e) {
        throw ArgumentError(std::string("malformed generator JSON: ") + e.what());
    }
}

json to_json(const ValidationReport& r) {
    json j;
    j["condition_id"] = condition_name(r.condition);
    j["passed"] = r.passed;
    if (r.witness) {
        j["witness"] = {{"t", r.witness->t}, {"lhs", number_or_null(r.witness->lhs)},
                        {"rhs", number_or_null(r.witness->rhs)}};
    } else {
        j["witness"] = nullptr;
    }
    j["grid_size"] = r.grid_size;
    if (!r.note.empty()) j["note"] = r.note;
    return j;
}

json to_json(const std::vector<ValidationReport>& rs) {
    json j = json::array();
    for (const auto& r : rs) j.push_back(to_json(r));
    return j;
}

json to_json(const EnvelopeParams& e) {
    return json{{"a", e.a}, {"b", number_or_null(e.b)}, {"p", e.p}, {"q", e.q}, {"envelope", to_json(e.envelope)}};
}

json to_json(const IntegralResult& r) {
    json j{{"value", number_or_null(r.value)},
           {"converged", r.converged},
           {"abs_error_estimate", number_or_null(r.abs_error_estimate)},
           {"divergence_flag", r.divergence_flag}};
    if (!r.panels.empty()) j["panels"] = panels_json(r.panels);
    return j;
}

json to_json(const HardyReport& r) {
    json j;
    j["constant"] = number_or_null(r.constant);
    j["route"] = std::string(to_string(r.route));
    j["K_value"] = r.K_value ? json(*r.K_value) : json(nullptr);
    j["residual"] = r.residual;
    if (r.factorial_bounds) {
        json fb = json::array();
        for (const auto& [n, bound] : *r.factorial_bounds) fb.push_back({{"n", n}, {"bound", bound}});
        j["factorial_bounds"] = fb;
    } else {
        j["factorial_bounds"] = nullptr;
    }
    j["envelope"] = r.envelope ? to_json(*r.envelope) : json(nullptr);
    j["direct_constant"] = r.direct_constant ? number_or_null(*r.direct_constant) : json(nullptr);
    j["g_in_F"] = r.g_in_F;
    j["diagnosis"] = r.diagnosis;
    j["notes"] = r.notes;
    if (!r.trace.empty()) {
        json t = json::array();
        for (const auto& s : r.trace) t.push_back({{"c", s.c}, {"residual", s.residual}, {"phase", s.phase}});
        j["trace"] = t;
    }
    if (!r.panels.empty()) j["panels"] = panels_json(r.panels);
    return j;
}

json to_json(const RatioReport& r) {
    json partial = json::array();
    for (const auto& [n, ratio] : r.partial_ratios) partial.push_back({{"N", n}, {"ratio", ratio}});
    return json{{"partial_ratios", partial},
                {"final_ratio", r.final_ratio},
                {"theoretical_constant", number_or_null(r.theoretical_constant)},
                {"dominated", r.dominated}};
}

SequenceSpec sequence_from_json(const json& j) {
    try {
        SequenceSpec seq;
        const auto kind = j.at("kind").get<std::string>();
        if (kind == "geometric") {
            seq.kind = GeometricSeq{number(j, "r")};
        } else if (kind == "power_decay") {
            seq.kind = PowerDecaySeq{number(j, "s")};
        } else if (kind == "constant") {
            seq.kind = ConstantSeq{};
        } else if (kind == "csv") {
            seq.kind = CsvSeq{j.at("path").get<std::string>()};
        } else {
            throw ArgumentError("unknown sequence kind '" + kind + "'");
        }
        if (j.contains("N")) seq.N = j.at("N").get<std::size_t>();
        if (j.contains("scale")) seq.scale = number(j, "scale");
        return seq;
    } catch (const json::exception& e) {
        throw ArgumentError(std::string("malformed sequence JSON: ") + e.what());
    }
}

SequenceSpec parse_sequence(const std::string& text, std::size_t N) {
    if (!text.empty() && text.front() == '{') {
        const json j = parse_json_text(text, "--sequence");
        auto seq = sequence_from_json(j);
        if (!j.contains("N")) seq.N = N;
        seq.check();
        return seq;
    }
    SequenceSpec seq;
    seq.N = N;
    const auto colon = text.find(':');
    const std::string name = text.substr(0, colon);
    const std::string arg = colon == std::string::npos ? "" : text.substr(colon + 1);
    if (name == "geometric") {
        seq.kind = GeometricSeq{parse_number(arg, "geometric:<r>")};
    } else if (name == "power_decay") {
        seq.kind = PowerDecaySeq{parse_number(arg, "power_decay:<s>")};
    } else if (name == "constant") {
        seq.kind = ConstantSeq{};
        if (!arg.empty()) seq.scale = parse_number(arg, "constant:<value>");
    } else if (name == "csv") {
        seq.kind = CsvSeq{arg};
    } else {
        throw ArgumentError("unknown sequence '" + text + "'");
    }
    seq.check();
    return seq;
}

GeneratorSpec preset_g_dip() {
    PiecewisePolynomial poly{{2.0, 3.0}, {Polynomial({-1.0, 1.0}), Polynomial({2.8, -1.5, 0.3}), Polynomial({1.0})}};
    return GeneratorSpec::piecewise(std::move(poly), 0.0, 2.0);
}

GeneratorSpec preset_g_L() {
    PiecewisePolynomial poly{{0.5, 1.0, 2.0},
                             {Polynomial({-1.0, 0.0, 1.0}), Polynomial({-1.5, 1.5}), Polynomial({-1.0, 1.0}),
                              Polynomial({1.0})}};
    return GeneratorSpec::piecewise(std::move(poly), 0.5, kInf).with_limits(-1.0, std::nullopt, std::nullopt);
}

GeneratorSpec parse_generator(const std::string& text) {
    if (text.empty()) throw ArgumentError("empty generator");
    if (text.front() == '{') return generator_from_json(parse_json_text(text, "--generator"));
    const auto colon = text.find(':');
    const std::string name = text.substr(0, colon);
    const std::string arg = colon == std::string::npos ? "" : text.substr(colon + 1);
    if (name == "power" && colon != std::string::npos) return GeneratorSpec::power(parse_number(arg, text));
    if ((name == "truncated_linear" || name == "truncated") && colon != std::string::npos) {
        return GeneratorSpec::truncated_linear(parse_number(arg, text));
    }
    if (text == "log") return GeneratorSpec::log();
    if (text == "g_dip") return preset_g_dip();
    if (text == "g_L" || text == "gL") return preset_g_L();
    std::ifstream probe(text);
    if (probe) return generator_from_json(parse_json_text(read_file(text), text));
    const bool path_like = text.find('/') != std::string::npos || text.ends_with(".json");
    if (path_like) throw IoError("cannot open generator file " + text);
    throw ArgumentError("unknown generator '" + text +
                        "'; expected power:<p>, log, truncated_linear:<M>, g_dip, g_L, JSON or a file path");
}

SweepConfig sweep_config_from_json(const json& j) {
    try {
        SweepConfig cfg;
        const std::size_t N = j.contains("N") ? j.at("N").get<std::size_t>() : 4096;
        if (j.contains("generators")) {
            for (const auto& g : j.at("generators")) {
                if (g.is_string()) {
                    cfg.generators.push_back({g.get<std::string>(), parse_generator(g.get<std::string>())});
                } else {
                    auto spec = generator_from_json(g);
                    const std::string id = g.contains("id") ? g.at("id").get<std::string>() : spec.describe();
                    cfg.generators.push_back({id, std::move(spec)});
                }
            }
        }
        if (j.contains("sequences")) {
            for (const auto& s : j.at("sequences")) {
                if (s.is_string()) {
                    cfg.sequences.push_back(parse_sequence(s.get<std::string>(), N));
                } else {
                    auto seq = sequence_from_json(s);
                    if (!s.contains("N")) seq.N = N;
                    seq.check();
                    cfg.sequences.push_back(std::move(seq));
                }
            }
        }
        return cfg;
    } catch (const json::exception& e) {
        throw ArgumentError(std::string("malformed sweep config: ") + e.what());
    }
}

}  // namespace hardy_means
