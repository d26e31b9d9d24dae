#include "gsdyn/config.hpp"

#include "gsdyn/errors.hpp"

#include <cmath>
#include <cstdio>
#include <map>
#include <set>
#include <sstream>

namespace gsdyn {

namespace {

const std::vector<std::pair<Command, std::string>> kCommandNames{
    {Command::VerifyLemmas, "verify-lemmas"},
    {Command::Iterate, "iterate"},
    {Command::BoundCert, "bound-cert"},
    {Command::DerivativeBounds, "derivative-bounds"},
    {Command::SeminormSweep, "seminorm-sweep"},
    {Command::Cesaro, "cesaro"},
    {Command::Neumann, "neumann"},
    {Command::DivergenceCert, "divergence-cert"},
    {Command::WeightCheck, "weight-check"},
};

Json default_psi() { return Json::array({"1/2", "0", "1"}); }
Json gevrey(double d) { return Json{{"kind", "gevrey"}, {"parameter", d}, {"scale_a", 1.0}}; }
Json gaussian() { return Json{{"kind", "gaussian"}, {"scale", 1.0}}; }

std::vector<ParamSpec> grid_params(double radius, int points, int depth) {
    return {
        {"radius", ParamType::Double, radius, "grid half-width R"},
        {"points", ParamType::Int, points, "Chebyshev points on [-R, R]"},
        {"critical_depth", ParamType::Int, depth, "add critical points of psi_m for m <= depth"},
    };
}

std::vector<ParamSpec> join(std::vector<ParamSpec> a, const std::vector<ParamSpec>& b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
}

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(text);
    while (std::getline(in, cur, sep)) {
        auto b = cur.find_first_not_of(" \t");
        auto e = cur.find_last_not_of(" \t");
        out.push_back(b == std::string::npos ? "" : cur.substr(b, e - b + 1));
    }
    return out;
}

double parse_double(const std::string& s, const std::string& what) {
    try {
        std::size_t used = 0;
        double v = std::stod(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw ParseError(what + ": not a number: '" + s + "'");
    }
}

long long parse_int(const std::string& s, const std::string& what) {
    try {
        std::size_t used = 0;
        long long v = std::stoll(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw ParseError(what + ": not an integer: '" + s + "'");
    }
}

double as_double(const Json& v, const std::string& what) {
    if (!v.is_number()) throw ParseError(what + ": expected a number");
    double d = v.get<double>();
    if (!std::isfinite(d)) throw ParseError(what + ": expected a finite number");
    return d;
}

long long as_int(const Json& v, const std::string& what) {
    if (v.is_number_integer()) return v.get<long long>();
    if (v.is_number_float()) {
        double d = v.get<double>();
        if (std::isfinite(d) && d == std::floor(d) && std::fabs(d) < 9e15) return static_cast<long long>(d);
    }
    throw ParseError(what + ": expected an integer");
}

void reject_unknown(const Json& obj, const std::set<std::string>& known, const std::string& where) {
    for (const auto& [k, v] : obj.items())
        if (!known.count(k)) throw ParseError(where + ": unknown field '" + k + "'");
}

}  // namespace

std::string to_string(Command c) {
    for (const auto& [cmd, name] : kCommandNames)
        if (cmd == c) return name;
    return "?";
}

Command command_from_string(const std::string& name) {
    for (const auto& [cmd, n] : kCommandNames)
        if (n == name) return cmd;
    throw ParseError("unknown command '" + name + "'");
}

const std::vector<Command>& all_commands() {
    static const std::vector<Command> all = [] {
        std::vector<Command> v;
        for (const auto& [cmd, name] : kCommandNames) v.push_back(cmd);
        return v;
    }();
    return all;
}

std::string to_string(OutputFormat f) { return f == OutputFormat::Csv ? "csv" : "json"; }

OutputFormat format_from_string(const std::string& name) {
    if (name == "csv") return OutputFormat::Csv;
    if (name == "json") return OutputFormat::Json;
    throw ParseError("unknown format '" + name + "' (expected csv or json)");
}

const std::vector<ParamSpec>& param_schema(Command c) {
    static const std::map<Command, std::vector<ParamSpec>> schemas{
        {Command::VerifyLemmas,
         {
             {"n_max", ParamType::Int, 25, "largest n for the H(n,k) product and factorial-sum checks"},
             {"inverse_binomial_n_max", ParamType::Int, 200, "largest n for the inverse binomial sums"},
         }},
        {Command::Iterate,
         {
             {"psi", ParamType::Poly, default_psi(), "coefficients, constant term first"},
             {"x", ParamType::DoubleList, Json::array({0.0, 1.0, -2.5}), "starting points"},
             {"horizon", ParamType::Int, 64, "maximal number of iterations"},
             {"escape_threshold", ParamType::Double, 1e6, "escape threshold (raised to the doubling radius)"},
         }},
        {Command::BoundCert,
         join(
             {
                 {"psi", ParamType::Poly, default_psi(), "coefficients, constant term first"},
                 {"b", ParamType::Double, 2.0, "base b > 1 of the bound b^(2^k)"},
                 {"k_max", ParamType::Int, 6, "largest k checked"},
             },
             grid_params(50.0, 201, 6))},
        {Command::DerivativeBounds,
         join(
             {
                 {"psi", ParamType::Poly, default_psi(), "coefficients, constant term first"},
                 {"alpha", ParamType::Double, 2.0, "exponent alpha > 1"},
                 {"n_max", ParamType::Int, 20, "largest derivative order"},
                 {"m_max", ParamType::Int, 10, "largest iterate"},
             },
             grid_params(50.0, 201, 6))},
        {Command::SeminormSweep,
         {
             {"f", ParamType::Function, gaussian(), "test function"},
             {"psi", ParamType::Poly, default_psi(), "coefficients, constant term first"},
             {"omega", ParamType::Weight, gevrey(2.0), "source weight"},
             {"sigma", ParamType::Weight, gevrey(5.0), "target weight"},
             {"lambda", ParamType::Double, 1.0, "seminorm parameter lambda"},
             {"m_max", ParamType::Int, 8, "largest iterate"},
             {"n_max", ParamType::Int, 40, "derivative truncation"},
             {"q_max", ParamType::Int, 40, "moment truncation"},
             {"radius", ParamType::Double, 20.0, "grid half-width"},
             {"points", ParamType::Int, 401, "grid points"},
         }},
        {Command::Cesaro,
         {
             {"f", ParamType::Function, gaussian(), "test function"},
             {"psi", ParamType::Poly, default_psi(), "coefficients, constant term first"},
             {"x", ParamType::Double, 0.0, "starting point"},
             {"n_values", ParamType::IntList, Json::array({10, 100, 1000}), "averaging lengths"},
         }},
        {Command::Neumann,
         {
             {"f", ParamType::Function, gaussian(), "test function"},
             {"psi", ParamType::Poly, default_psi(), "coefficients, constant term first"},
             {"mu", ParamType::ComplexList, Json::array({Json::array({2.0, 0.0}), Json::array({0.5, 0.0}),
                                                         Json::array({-3.0, 0.0}), Json::array({1.0, 1.0})}),
              "spectral parameters, as [re, im]"},
             {"tol", ParamType::Double, 1e-10, "tail tolerance"},
             {"radius", ParamType::Double, 10.0, "evaluation grid half-width"},
             {"points", ParamType::Int, 100, "evaluation grid points"},
         }},
        {Command::DivergenceCert,
         {
             {"d", ParamType::Double, 1.5, "Gevrey index d"},
             {"d_prime", ParamType::OptionalDouble, nullptr, "d' for part (2); null selects part (1)"},
             {"mu", ParamType::Double, 2.0, "|mu| > 1"},
             {"n_max", ParamType::Int, 10000, "largest n scanned"},
             {"x0", ParamType::Double, 2.0, "start of the backward orbit (x0 >= 2)"},
             {"recurrence_n_max", ParamType::Int, 10000, "largest n for y_n >= ((n+2)/(n+1))^2"},
             {"chain_n_max", ParamType::Int, 12, "largest n for the chain-rule product"},
             {"telescoping_n_max", ParamType::Int, 1000, "largest n for the telescoping product bound"},
         }},
        {Command::WeightCheck,
         {
             {"weight", ParamType::Weight, gevrey(2.0), "weight to check"},
             {"t_max", ParamType::Double, 1e6, "largest sampled t"},
             {"samples", ParamType::Int, 2000, "samples per condition"},
             {"s_values", ParamType::DoubleList, Json::array({0.5, 1.0, 2.0, 5.0, 10.0}),
              "points for the conjugate comparison"},
         }},
    };
    return schemas.at(c);
}

// --------------------------------------------------------------- values

Json to_json(const WeightSpec& w) {
    return Json{{"kind", w.kind() == WeightKind::Gevrey ? "gevrey" : "log_power"},
                {"parameter", w.parameter()},
                {"scale_a", w.scale_a()}};
}

WeightSpec weight_from_json(const Json& j) {
    if (!j.is_object()) throw ParseError("weight: expected an object");
    reject_unknown(j, {"kind", "parameter", "scale_a"}, "weight");
    if (!j.contains("kind") || !j["kind"].is_string()) throw ParseError("weight: missing string field 'kind'");
    if (!j.contains("parameter")) throw ParseError("weight: missing field 'parameter'");
    double param = as_double(j["parameter"], "weight.parameter");
    double a = j.contains("scale_a") ? as_double(j["scale_a"], "weight.scale_a") : 1.0;
    std::string kind = j["kind"].get<std::string>();
    try {
        if (kind == "gevrey") return WeightSpec::gevrey(param, a);
        if (kind == "log_power") return WeightSpec::log_power(param, a);
    } catch (const DomainError& e) {
        throw ParseError(std::string("weight: ") + e.what());
    }
    throw ParseError("weight: unknown kind '" + kind + "' (expected gevrey or log_power)");
}

Json to_json(const Polynomial& p) {
    Json arr = Json::array();
    for (const auto& c : p.coeffs()) arr.push_back(to_string(c));
    if (arr.empty()) arr.push_back("0");
    return arr;
}

Polynomial polynomial_from_json(const Json& j) {
    if (!j.is_array() || j.empty()) throw ParseError("polynomial: expected a non-empty coefficient array");
    std::vector<Rational> c;
    for (const auto& v : j) {
        if (v.is_string()) {
            try {
                c.push_back(parse_rational(v.get<std::string>()));
            } catch (const std::exception& e) {
                throw ParseError("polynomial: bad coefficient '" + v.get<std::string>() + "'");
            }
        } else if (v.is_number_integer()) {
            c.emplace_back(static_cast<long>(v.get<long long>()));
        } else if (v.is_number()) {
            c.push_back(rational_from_double(as_double(v, "polynomial coefficient")));
        } else {
            throw ParseError("polynomial: coefficients must be strings or numbers");
        }
    }
    return Polynomial(c);
}

Json normalize_param(const ParamSpec& spec, const Json& v) {
    const std::string& what = spec.name;
    switch (spec.type) {
        case ParamType::Int: return as_int(v, what);
        case ParamType::Double: return as_double(v, what);
        case ParamType::OptionalDouble: return v.is_null() ? Json(nullptr) : Json(as_double(v, what));
        case ParamType::DoubleList: {
            if (!v.is_array()) throw ParseError(what + ": expected an array of numbers");
            Json out = Json::array();
            for (const auto& e : v) out.push_back(as_double(e, what));
            return out;
        }
        case ParamType::IntList: {
            if (!v.is_array()) throw ParseError(what + ": expected an array of integers");
            Json out = Json::array();
            for (const auto& e : v) out.push_back(as_int(e, what));
            return out;
        }
        case ParamType::Poly: return to_json(polynomial_from_json(v));
        case ParamType::Weight: return to_json(weight_from_json(v));
        case ParamType::Function: {
            if (!v.is_object() || !v.contains("kind") || !v["kind"].is_string())
                throw ParseError(what + ": expected {\"kind\": \"gaussian\" | \"zero\", ...}");
            std::string kind = v["kind"].get<std::string>();
            if (kind == "zero") {
                reject_unknown(v, {"kind"}, what);
                return Json{{"kind", "zero"}};
            }
            if (kind == "gaussian") {
                reject_unknown(v, {"kind", "scale"}, what);
                double s = v.contains("scale") ? as_double(v["scale"], what + ".scale") : 1.0;
                if (!(s > 0)) throw ParseError(what + ".scale must be positive");
                return Json{{"kind", "gaussian"}, {"scale", s}};
            }
            throw ParseError(what + ": unknown function kind '" + kind + "'");
        }
        case ParamType::ComplexList: {
            if (!v.is_array()) throw ParseError(what + ": expected an array of [re, im] pairs");
            Json out = Json::array();
            for (const auto& e : v) {
                if (e.is_number()) {
                    out.push_back(Json::array({as_double(e, what), 0.0}));
                } else if (e.is_array() && e.size() == 2) {
                    out.push_back(Json::array({as_double(e[0], what), as_double(e[1], what)}));
                } else {
                    throw ParseError(what + ": expected [re, im] pairs");
                }
            }
            return out;
        }
    }
    throw ParseError(what + ": unsupported parameter type");
}

Json param_from_text(const ParamSpec& spec, const std::string& text) {
    const std::string& what = "--" + spec.name;
    switch (spec.type) {
        case ParamType::Int: return parse_int(text, what);
        case ParamType::Double: return parse_double(text, what);
        case ParamType::OptionalDouble:
            return (text == "null" || text.empty()) ? Json(nullptr) : Json(parse_double(text, what));
        case ParamType::DoubleList: {
            Json out = Json::array();
            for (const auto& s : split(text, ',')) out.push_back(parse_double(s, what));
            return out;
        }
        case ParamType::IntList: {
            Json out = Json::array();
            for (const auto& s : split(text, ',')) out.push_back(parse_int(s, what));
            return out;
        }
        case ParamType::Poly: {
            Json out = Json::array();
            for (const auto& s : split(text, ',')) out.push_back(s);
            return normalize_param(spec, out);
        }
        case ParamType::Weight: {
            // kind:parameter[:scale_a]
            auto parts = split(text, ':');
            if (parts.size() < 2 || parts.size() > 3) throw ParseError(what + ": expected kind:parameter[:scale_a]");
            Json w{{"kind", parts[0]}, {"parameter", parse_double(parts[1], what)}};
            if (parts.size() == 3) w["scale_a"] = parse_double(parts[2], what);
            return normalize_param(spec, w);
        }
        case ParamType::Function: {
            auto parts = split(text, ':');
            Json f{{"kind", parts[0]}};
            if (parts.size() == 2) f["scale"] = parse_double(parts[1], what);
            if (parts.size() > 2) throw ParseError(what + ": expected gaussian[:scale] or zero");
            return normalize_param(spec, f);
        }
        case ParamType::ComplexList: {
            // a, a+bi, a-bi, bi
            Json out = Json::array();
            for (const auto& s : split(text, ',')) {
                if (s.empty()) throw ParseError(what + ": empty entry");
                if (s.back() != 'i') {
                    out.push_back(Json::array({parse_double(s, what), 0.0}));
                    continue;
                }
                std::string body = s.substr(0, s.size() - 1);
                std::size_t cut = std::string::npos;
                for (std::size_t i = body.size(); i-- > 1;)
                    if ((body[i] == '+' || body[i] == '-') && body[i - 1] != 'e' && body[i - 1] != 'E') {
                        cut = i;
                        break;
                    }
                double re = 0.0, im;
                if (cut == std::string::npos) {
                    im = (body.empty() || body == "+") ? 1.0 : (body == "-" ? -1.0 : parse_double(body, what));
                } else {
                    re = parse_double(body.substr(0, cut), what);
                    std::string ims = body.substr(cut);
                    im = ims == "+" ? 1.0 : (ims == "-" ? -1.0 : parse_double(ims, what));
                }
                out.push_back(Json::array({re, im}));
            }
            return out;
        }
    }
    throw ParseError(what + ": unsupported parameter type");
}

// --------------------------------------------------------------- configs

ExperimentConfig parse_config(const Json& j) {
    if (!j.is_object()) throw ParseError("config: expected a JSON object");
    reject_unknown(j, {"command", "params", "output", "precision_bits"}, "config");
    if (!j.contains("command") || !j["command"].is_string()) throw ParseError("config: missing string 'command'");
    ExperimentConfig c;
    c.command = command_from_string(j["command"].get<std::string>());
    const auto& schema = param_schema(c.command);
    Json given = j.value("params", Json::object());
    if (!given.is_object()) throw ParseError("config.params: expected an object");
    std::set<std::string> known;
    for (const auto& s : schema) known.insert(s.name);
    reject_unknown(given, known, "config.params (" + to_string(c.command) + ")");
    c.params = Json::object();
    for (const auto& s : schema)
        c.params[s.name] = normalize_param(s, given.contains(s.name) ? given[s.name] : s.default_value);
    if (j.contains("output")) {
        const Json& o = j["output"];
        if (!o.is_object()) throw ParseError("config.output: expected an object");
        reject_unknown(o, {"path", "format"}, "config.output");
        if (o.contains("path")) {
            if (!o["path"].is_string()) throw ParseError("config.output.path: expected a string");
            c.output.path = o["path"].get<std::string>();
        }
        if (o.contains("format")) {
            if (!o["format"].is_string()) throw ParseError("config.output.format: expected a string");
            c.output.format = format_from_string(o["format"].get<std::string>());
        }
    }
    if (j.contains("precision_bits")) {
        c.precision_bits = as_int(j["precision_bits"], "precision_bits");
        if (c.precision_bits < 53 || c.precision_bits > 1 << 20)
            throw ParseError("precision_bits must lie in [53, 1048576]");
    }
    return c;
}

ExperimentConfig parse_config_text(const std::string& text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw ParseError(std::string("config: invalid JSON: ") + e.what());
    }
    return parse_config(j);
}

Json to_json(const ExperimentConfig& c) {
    Json out{{"command", to_string(c.command)}, {"params", c.params}, {"precision_bits", c.precision_bits}};
    Json o{{"format", to_string(c.output.format)}};
    if (!c.output.path.empty()) o["path"] = c.output.path;
    out["output"] = o;
    return out;
}

std::uint64_t config_hash(const ExperimentConfig& c) {
    Json basis{{"command", to_string(c.command)}, {"params", c.params}, {"precision_bits", c.precision_bits}};
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : basis.dump()) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string config_hash_hex(const ExperimentConfig& c) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(config_hash(c)));
    return buf;
}

// --------------------------------------------------------------- accessors

Polynomial poly_param(const Json& params, const std::string& key) { return polynomial_from_json(params.at(key)); }

WeightSpec weight_param(const Json& params, const std::string& key) { return weight_from_json(params.at(key)); }

SmoothFunction function_param(const Json& params, const std::string& key) {
    const Json& f = params.at(key);
    if (f.at("kind") == "zero") return zero_function();
    return hermite_gaussian_oracle(f.at("scale").get<double>());
}

std::vector<Complex> complex_list_param(const Json& params, const std::string& key) {
    std::vector<Complex> out;
    for (const auto& e : params.at(key)) out.emplace_back(e[0].get<double>(), e[1].get<double>());
    return out;
}

}  // namespace gsdyn
