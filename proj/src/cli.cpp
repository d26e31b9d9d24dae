#include "gsdyn/cli.hpp"

#include "gsdyn/dynamics.hpp"
#include "gsdyn/errors.hpp"
#include "gsdyn/faadibruno.hpp"
#include "gsdyn/resolvent.hpp"
#include "gsdyn/weights.hpp"

#include "CLI11.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

namespace gsdyn {

namespace {

// Non-finite doubles become strings so both writers can carry them.
Json num(double v) {
    if (std::isfinite(v)) return v;
    if (std::isnan(v)) return "nan";
    return v > 0 ? "inf" : "-inf";
}

Json opt_int(const std::optional<int>& v) { return v ? Json(*v) : Json(nullptr); }
Json opt_long(const std::optional<long>& v) { return v ? Json(*v) : Json(nullptr); }

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void key_value(Report& r, const std::string& key, Json value) { r.rows.push_back({key, std::move(value)}); }

GridSpec grid_from(const Json& p, const Polynomial& psi) {
    return dynamics_grid(psi, p.at("radius").get<double>(), p.at("points").get<int>(),
                         p.at("critical_depth").get<int>());
}

// ------------------------------------------------------------- commands

Report run_verify_lemmas(const Json& p, unsigned jobs) {
    Report r;
    r.columns = {"check", "n", "k", "count", "lhs", "rhs", "holds"};
    int n_max = p.at("n_max").get<int>();
    int ib_max = p.at("inverse_binomial_n_max").get<int>();
    if (n_max < 1 || ib_max < 1) throw DomainError("verify-lemmas requires n_max >= 1");
    std::size_t failures = 0;
    for (const auto& row : lemma_sweep(n_max, jobs)) {
        bool ok = row.product_holds && row.sum_holds;
        failures += !ok;
        r.rows.push_back({"partition_product", row.n, row.k, row.count, row.sum.get_str(), row.n_factorial.get_str(),
                          ok});
    }
    Rational prev(0);
    for (int n = 1; n <= ib_max; ++n) {
        auto s = inverse_binomial_sum(n);
        bool ok = s.direct == s.closed_form && s.direct <= 3;
        if (n > 1) {
            Rational factor(n + 1, 2 * n);
            factor.canonicalize();
            ok = ok && s.direct == 1 + factor * prev;
        }
        prev = s.direct;
        failures += !ok;
        r.rows.push_back({"inverse_binomial", n, nullptr, nullptr, to_string(s.direct), to_string(s.closed_form), ok});
    }
    r.summary["failures"] = failures;
    if (failures) r.exit_code = kExitViolation;
    return r;
}

Report run_iterate(const Json& p) {
    Report r;
    r.columns = {"x", "diverges_at", "bounded_hint", "doubling_radius", "threshold_used", "orbit_prefix"};
    Polynomial psi = poly_param(p, "psi");
    for (const auto& xv : p.at("x")) {
        double x = xv.get<double>();
        auto o = orbit_classify(psi, x, p.at("horizon").get<int>(), p.at("escape_threshold").get<double>());
        std::string prefix;
        for (std::size_t i = 0; i < o.orbit_prefix.size() && i < 16; ++i) {
            if (i) prefix += ';';
            prefix += fmt17(o.orbit_prefix[i]);
        }
        r.rows.push_back({x, opt_int(o.diverges_at), o.bounded_hint, num(o.doubling_radius), num(o.threshold_used),
                          prefix});
    }
    return r;
}

Report run_bound_cert(const Json& p) {
    Report r;
    r.columns = {"key", "value"};
    Polynomial psi = poly_param(p, "psi");
    auto cert = find_m0(psi, p.at("b").get<double>(), p.at("k_max").get<int>(), grid_from(p, psi));
    auto v = verify_iterate_lower_bound(cert, psi);
    key_value(r, "psi", psi.to_string());
    key_value(r, "b", cert.b);
    key_value(r, "k_max", cert.k_max);
    key_value(r, "m0", cert.m0);
    key_value(r, "m0_proof", cert.m0_proof);
    key_value(r, "B", cert.B);
    key_value(r, "a_gap", to_string(cert.a_gap));
    key_value(r, "min_phi_lower_bound", to_string(cert.min_phi));
    key_value(r, "e", cert.e);
    key_value(r, "d", cert.d);
    key_value(r, "grid_points", cert.grid.nodes().size());
    key_value(r, "min_margin", num(cert.min_margin));
    key_value(r, "verify_points", v.points_checked);
    key_value(r, "verify_min_margin", num(v.min_margin));
    key_value(r, "witness_x", v.witness_x);
    key_value(r, "witness_k", v.witness_k);
    key_value(r, "passed", v.passed);
    r.notes.push_back(v.detail);
    if (!v.passed) r.exit_code = kExitViolation;
    return r;
}

Report run_derivative_bounds(const Json& p, unsigned jobs) {
    Report r;
    r.columns = {"key", "value"};
    Polynomial psi = poly_param(p, "psi");
    auto d = derivative_growth_ratio(psi, p.at("alpha").get<double>(), p.at("n_max").get<int>(),
                                     p.at("m_max").get<int>(), grid_from(p, psi), jobs);
    key_value(r, "psi", psi.to_string());
    key_value(r, "alpha", d.alpha);
    key_value(r, "n_max", d.n_max);
    key_value(r, "m_max", d.m_max);
    key_value(r, "grid_points", d.grid_points);
    for (const auto& [rr, lc] : d.log_C_by_r) key_value(r, "log_C[r=" + fmt17(rr) + "]", num(lc));
    key_value(r, "r", d.r);
    key_value(r, "log_C", num(d.log_C));
    key_value(r, "C", num(d.C));
    key_value(r, "max_ratio_observed", num(d.max_ratio_observed));
    key_value(r, "argmax_n", d.argmax_n);
    key_value(r, "argmax_m", d.argmax_m);
    key_value(r, "argmax_x", d.argmax_x);
    key_value(r, "c", d.c);
    key_value(r, "lambda", d.lambda);
    key_value(r, "x0", d.x0);
    key_value(r, "x0_exact", d.x0_exact);
    key_value(r, "m0", d.m0);
    key_value(r, "d_order", d.d_order);
    key_value(r, "log_D", num(d.log_D));
    key_value(r, "log_r_proof", num(d.log_r_proof));
    key_value(r, "induction_min_slack", num(d.induction_min_slack));
    key_value(r, "induction_witness_n", d.induction_witness_n);
    key_value(r, "induction_witness_m", d.induction_witness_m);
    key_value(r, "induction_witness_x", d.induction_witness_x);
    key_value(r, "induction_holds", d.induction_holds);
    for (const auto& [x, ratio] : d.one_step_ratio) key_value(r, "one_step_ratio[x=" + fmt17(x) + "]", num(ratio));
    key_value(r, "sign_unstable", d.sign_unstable);
    if (!d.induction_holds || d.max_ratio_observed > d.C) r.exit_code = kExitViolation;
    return r;
}

Report run_seminorm_sweep(const Json& p, unsigned jobs) {
    Report r;
    r.columns = {"m", "log_value", "value", "argmax_x", "argmax_n", "argmax_q", "boundary"};
    SeminormParams sp;
    sp.n_max = p.at("n_max").get<int>();
    sp.q_max = p.at("q_max").get<int>();
    sp.grid.radius = p.at("radius").get<double>();
    sp.grid.points = p.at("points").get<int>();
    Polynomial psi = poly_param(p, "psi");
    auto s = power_bound_seminorm_sweep(function_param(p, "f"), psi, weight_param(p, "omega"),
                                        weight_param(p, "sigma"), p.at("lambda").get<double>(),
                                        p.at("m_max").get<int>(), sp, jobs);
    for (std::size_t m = 0; m < s.rows.size(); ++m) {
        const auto& row = s.rows[m];
        r.rows.push_back({m, num(row.log_value), num(row.value), row.argmax_x, row.argmax_n, row.argmax_q,
                          row.boundary});
    }
    r.summary["a_effective"] = s.a_effective;
    r.summary["outside_hypothesis"] = s.outside_hypothesis;
    r.summary["has_fixed_points"] = s.has_fixed_points;
    r.summary["certificate_m0"] = opt_int(s.certificate_m0);
    r.summary["bounded"] = s.bounded;
    r.summary["eventually_decaying"] = s.eventually_decaying;
    r.summary["verdict"] = s.verdict;
    if (s.certificate_m0 && (!s.bounded || (static_cast<int>(s.rows.size()) - 1 > std::max(*s.certificate_m0, 1) &&
                                            !s.eventually_decaying)))
        r.exit_code = kExitViolation;
    return r;
}

Report run_cesaro(const Json& p) {
    Report r;
    r.columns = {"n", "average", "change"};
    auto f = function_param(p, "f");
    Polynomial psi = poly_param(p, "psi");
    double x = p.at("x").get<double>();
    std::optional<double> prev;
    for (const auto& nv : p.at("n_values")) {
        int n = nv.get<int>();
        double a = cesaro_average(f, psi, n, x);
        r.rows.push_back({n, num(a), prev ? num(std::fabs(a - *prev)) : Json(nullptr)});
        prev = a;
    }
    return r;
}

Report run_neumann(const Json& p) {
    Report r;
    r.columns = {"mu_re", "mu_im", "x", "value_re", "value_im", "terms_used", "tail_kind", "tail_bound", "residual",
                 "identity_ok"};
    auto f = function_param(p, "f");
    Polynomial psi = poly_param(p, "psi");
    double tol = p.at("tol").get<double>();
    GridSpec g;
    g.radius = p.at("radius").get<double>();
    g.points = p.at("points").get<int>();
    auto xs = g.nodes();
    Json per_mu = Json::array();
    for (Complex mu : complex_list_param(p, "mu")) {
        NeumannSeries series(f, psi, mu, tol);
        double worst = 0.0;
        bool all_ok = true;
        for (double x : xs) {
            auto res = series.apply(x);
            worst = std::max(worst, res.residual);
            all_ok = all_ok && res.identity_ok;
            r.rows.push_back({mu.real(), mu.imag(), x, num(res.value.real()), num(res.value.imag()), res.terms_used,
                              to_string(res.cert.kind), num(res.cert.tail_bound), num(res.residual),
                              res.identity_ok});
        }
        per_mu.push_back({{"mu", Json::array({mu.real(), mu.imag()})},
                          {"terms_used", series.terms_used()},
                          {"tail_kind", to_string(series.certificate().kind)},
                          {"m0", series.certificate().m0},
                          {"max_residual", num(worst)},
                          {"identity_ok", all_ok}});
        if (!series.warning().empty())
            r.notes.push_back("mu=" + fmt17(mu.real()) + (mu.imag() >= 0 ? "+" : "") + fmt17(mu.imag()) +
                              "i: " + series.warning());
        if (series.certified() && !all_ok) r.exit_code = kExitViolation;
    }
    r.summary["per_mu"] = per_mu;
    return r;
}

Report run_divergence(const Json& p, long precision_bits) {
    Report r;
    r.columns = {"key", "value"};
    DivergenceParams dp;
    dp.d = p.at("d").get<double>();
    if (!p.at("d_prime").is_null()) dp.d_prime = p.at("d_prime").get<double>();
    dp.mu_abs = p.at("mu").get<double>();
    dp.n_max = p.at("n_max").get<long>();
    auto cert = divergence_certificate(dp);

    Json n_star = Json::object();
    for (const auto& [label, v] : cert.n_star) n_star[label] = opt_long(v);
    Json slopes = Json::object();
    for (const auto& [k, v] : cert.slopes) slopes[k] = num(v);
    r.summary["part"] = cert.part;
    r.summary["status"] = cert.status;
    r.summary["n_star_for_C"] = n_star;
    r.summary["slopes"] = slopes;
    r.summary["stays_above"] = cert.stays_above;
    r.summary["log_gap_at_n_max"] = num(cert.log_gap_at_n_max);
    r.summary["extended_crossing"] = cert.extended_crossing ? num(*cert.extended_crossing) : Json(nullptr);

    key_value(r, "part", cert.part);
    key_value(r, "d", dp.d);
    key_value(r, "d_prime", dp.d_prime ? Json(*dp.d_prime) : Json(nullptr));
    key_value(r, "mu", dp.mu_abs);
    key_value(r, "n_max", dp.n_max);
    key_value(r, "status", cert.status);
    for (const auto& [label, v] : cert.n_star) key_value(r, "n_star[C=" + label + "]", opt_long(v));
    key_value(r, "stays_above", cert.stays_above);
    key_value(r, "log_gap_at_n_max", num(cert.log_gap_at_n_max));
    for (const auto& [k, v] : cert.slopes) key_value(r, "slope." + k, num(v));
    key_value(r, "extended_crossing", r.summary["extended_crossing"]);
    bool violation = cert.status == "not certified within n_max";

    // The backward-orbit ingredients, at the requested precision.
    Rational x0 = rational_from_double(p.at("x0").get<double>());
    int rec_n = p.at("recurrence_n_max").get<int>();
    int chain_n = p.at("chain_n_max").get<int>();
    int tele_n = p.at("telescoping_n_max").get<int>();
    auto rec = sqrt_recurrence_check(2 * x0, rec_n, precision_bits);
    key_value(r, "sqrt_recurrence.holds", rec.holds);
    key_value(r, "sqrt_recurrence.min_slack", num(rec.min_slack));
    key_value(r, "sqrt_recurrence.min_slack_n", rec.min_slack_n);
    key_value(r, "sqrt_recurrence.min_relative_slack", num(rec.min_relative_slack));
    r.summary["sqrt_recurrence"] = {{"holds", rec.holds},
                            {"n_max", rec_n},
                            {"min_slack", num(rec.min_slack)},
                            {"min_relative_slack", num(rec.min_relative_slack)}};
    violation = violation || !rec.holds;
    auto orbit = backward_orbit(x0, std::max({chain_n, tele_n, 1}), precision_bits);
    const double chain_tol = std::ldexp(1.0, -static_cast<int>(precision_bits - 60));
    double worst_chain = 0.0;
    for (int n = 1; n <= chain_n; ++n)
        worst_chain = std::max(worst_chain, chain_rule_product(orbit, n).relative_difference);
    key_value(r, "chain_rule.max_relative_difference", num(worst_chain));
    key_value(r, "chain_rule.tolerance", chain_tol);
    r.summary["chain_rule"] = {{"n_max", chain_n}, {"max_relative_difference", num(worst_chain)}};
    violation = violation || worst_chain > chain_tol;
    if (tele_n >= 1) {
        auto tele = telescoping_product_check(orbit, tele_n);
        key_value(r, "telescoping.holds", tele.holds);
        key_value(r, "telescoping.min_log_slack", num(tele.min_log_slack));
        r.summary["telescoping"] = {{"holds", tele.holds}, {"n_max", tele_n}, {"min_log_slack", num(tele.min_log_slack)}};
        violation = violation || !tele.holds;
    }
    if (violation) r.exit_code = kExitViolation;
    return r;
}

Report run_weight_check(const Json& p) {
    Report r;
    r.columns = {"check", "s", "consistent", "value", "secondary", "detail"};
    WeightSpec w = weight_param(p, "weight");
    auto rep = check_weight_conditions(w, p.at("t_max").get<double>(), p.at("samples").get<int>());
    bool ok = true;
    for (const auto* v : rep.all()) {
        r.rows.push_back({v->name, nullptr, v->consistent, num(v->witness), num(v->secondary), v->detail});
        if (v != &rep.subadditivity) ok = ok && v->consistent;
    }
    for (const auto& sv : p.at("s_values")) {
        double s = sv.get<double>();
        double closed = young_conjugate(w, s, ConjugateMode::ClosedForm);
        double numeric = young_conjugate(w, s, ConjugateMode::Numeric);
        bool agree = std::fabs(closed - numeric) <= 1e-6 * std::max(1.0, std::fabs(closed));
        ok = ok && agree;
        r.rows.push_back({"conjugate", s, agree, num(closed), num(numeric), "closed form vs numeric"});
    }
    if (!ok) r.exit_code = kExitViolation;
    r.notes.push_back(describe(w));
    return r;
}

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

}  // namespace

Report run_experiment(const ExperimentConfig& config, unsigned jobs) {
    const Json& p = config.params;
    switch (config.command) {
        case Command::VerifyLemmas: return run_verify_lemmas(p, jobs);
        case Command::Iterate: return run_iterate(p);
        case Command::BoundCert: return run_bound_cert(p);
        case Command::DerivativeBounds: return run_derivative_bounds(p, jobs);
        case Command::SeminormSweep: return run_seminorm_sweep(p, jobs);
        case Command::Cesaro: return run_cesaro(p);
        case Command::Neumann: return run_neumann(p);
        case Command::DivergenceCert: return run_divergence(p, config.precision_bits);
        case Command::WeightCheck: return run_weight_check(p);
    }
    throw UnsupportedError("unknown command");
}

std::string format_cell(const Json& cell) {
    if (cell.is_null()) return "";
    if (cell.is_boolean()) return cell.get<bool>() ? "true" : "false";
    if (cell.is_number_integer()) return cell.dump();
    if (cell.is_number_float()) return fmt17(cell.get<double>());
    if (cell.is_string()) return csv_escape(cell.get<std::string>());
    return csv_escape(cell.dump());
}

void write_csv(const Report& report, const ExperimentConfig& config, std::ostream& out) {
    out << "# gsdyn " << GSDYN_VERSION << "\n";
    out << "# command: " << to_string(config.command) << "\n";
    out << "# config_hash: fnv1a64:" << config_hash_hex(config) << "\n";
    out << "# precision_bits: " << config.precision_bits << "\n";
    for (const auto& [k, v] : report.summary.items()) out << "# " << k << ": " << v.dump() << "\n";
    for (const auto& n : report.notes) out << "# note: " << n << "\n";
    for (std::size_t i = 0; i < report.columns.size(); ++i) out << (i ? "," : "") << report.columns[i];
    out << "\n";
    for (const auto& row : report.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << format_cell(row[i]);
        out << "\n";
    }
}

void write_json(const Report& report, const ExperimentConfig& config, std::ostream& out) {
    Json j;
    j["tool"] = "gsdyn";
    j["version"] = GSDYN_VERSION;
    j["command"] = to_string(config.command);
    j["config_hash"] = "fnv1a64:" + config_hash_hex(config);
    // The output path is run metadata, not part of the experiment.
    Json cfg = to_json(config);
    cfg["output"].erase("path");
    j["config"] = cfg;
    j["columns"] = report.columns;
    j["rows"] = report.rows;
    j["summary"] = report.summary;
    j["notes"] = report.notes;
    j["exit_code"] = report.exit_code;
    out << j.dump(2) << "\n";
}

// ------------------------------------------------------------------ main

namespace {

std::string command_description(Command c) {
    switch (c) {
        case Command::VerifyLemmas: return "exact partition-product, factorial-sum and inverse-binomial checks";
        case Command::Iterate: return "orbit classification with the doubling radius";
        case Command::BoundCert: return "iterate lower-bound certificate |psi_{m0+k}| >= b^(2^k)";
        case Command::DerivativeBounds: return "growth of derivatives of iterates against C r^n n!^2 (1+|psi_m|)^alpha";
        case Command::SeminormSweep: return "seminorms of f o psi_m for m <= m_max";
        case Command::Cesaro: return "Cesaro averages of f along an orbit";
        case Command::Neumann: return "pointwise Neumann series with tail certificates and identity residuals";
        case Command::DivergenceCert: return "growth comparison, backward orbit and chain-rule product checks";
        case Command::WeightCheck: return "weight conditions and Young conjugate closed form vs numeric";
    }
    return "";
}

std::string flag_syntax(ParamType t) {
    switch (t) {
        case ParamType::Poly: return " (flag: 1/2,0,1)";
        case ParamType::Weight: return " (flag: gevrey:5 or log_power:2:3)";
        case ParamType::Function: return " (flag: gaussian[:scale] or zero)";
        case ParamType::ComplexList: return " (flag: 2,0.5,-3,1+1i)";
        case ParamType::DoubleList:
        case ParamType::IntList: return " (flag: comma-separated)";
        case ParamType::OptionalDouble: return " (flag: number or null)";
        default: return "";
    }
}

}  // namespace

int cli_main(int argc, char** argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Orbit growth, Faa di Bruno and Gelfand-Shilov seminorm experiments", "gsdyn"};
    app.set_version_flag("--version", std::string(GSDYN_VERSION));
    app.require_subcommand(1);

    struct Sub {
        Command command;
        CLI::App* app;
        std::string config_path, out_path, format;
        long precision_bits = kDefaultPrecisionBits;
        unsigned jobs = 1;
        bool print_config = false;
        std::map<std::string, std::string> values;  // param name -> flag text
        std::map<std::string, CLI::Option*> options;
    };
    std::vector<std::unique_ptr<Sub>> subs;
    for (Command c : all_commands()) {
        auto s = std::make_unique<Sub>();
        s->command = c;
        s->app = app.add_subcommand(to_string(c), command_description(c));
        s->app->add_option("--config", s->config_path, "JSON experiment config");
        s->app->add_option("--out", s->out_path, "output file (default: standard output)");
        s->app->add_option("--format", s->format, "csv or json (default csv)");
        s->app->add_option("--precision-bits", s->precision_bits, "MPFR precision in bits")->capture_default_str();
        s->app->add_option("--jobs", s->jobs, "worker threads; output does not depend on it")->capture_default_str();
        s->app->add_flag("--print-config", s->print_config, "print the normalized config as JSON and exit");
        for (const auto& spec : param_schema(c)) {
            std::string flag = "--" + spec.name;
            for (auto& ch : flag)
                if (ch == '_') ch = '-';
            std::string def = spec.default_value.is_string() ? spec.default_value.get<std::string>()
                                                            : spec.default_value.dump();
            s->options[spec.name] = s->app->add_option(
                flag, s->values[spec.name], spec.help + flag_syntax(spec.type) + " [default: " + def + "]");
        }
        subs.push_back(std::move(s));
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::CallForVersion&) {
        out << GSDYN_VERSION << "\n";
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kExitConfig;
    }

    Sub* chosen = nullptr;
    for (auto& s : subs)
        if (s->app->parsed()) chosen = s.get();
    if (!chosen) return kExitConfig;

    ExperimentConfig config;
    try {
        Json j = Json::object();
        if (!chosen->config_path.empty()) {
            std::ifstream in(chosen->config_path);
            if (!in) throw ParseError("cannot read config '" + chosen->config_path + "'");
            std::stringstream buf;
            buf << in.rdbuf();
            try {
                j = Json::parse(buf.str());
            } catch (const Json::parse_error& e) {
                throw ParseError(std::string("config: invalid JSON: ") + e.what());
            }
            if (!j.is_object()) throw ParseError("config: expected a JSON object");
            if (j.contains("command") && j["command"] != to_string(chosen->command))
                throw ParseError("config command '" + j["command"].dump() + "' does not match subcommand '" +
                                 to_string(chosen->command) + "'");
        }
        j["command"] = to_string(chosen->command);
        if (!j.contains("params")) j["params"] = Json::object();
        for (const auto& spec : param_schema(chosen->command))
            if (chosen->options[spec.name]->count() > 0)
                j["params"][spec.name] = param_from_text(spec, chosen->values[spec.name]);
        if (chosen->app->get_option("--precision-bits")->count() > 0) j["precision_bits"] = chosen->precision_bits;
        config = parse_config(j);
        if (!chosen->out_path.empty()) config.output.path = chosen->out_path;
        if (!chosen->format.empty()) config.output.format = format_from_string(chosen->format);
    } catch (const ParseError& e) {
        err << "config error: " << e.what() << "\n";
        return kExitConfig;
    }
    if (chosen->print_config) {
        out << to_json(config).dump(2) << "\n";
        return kExitOk;
    }

    Report report;
    try {
        report = run_experiment(config, std::max(1u, chosen->jobs));
    } catch (const ParseError& e) {
        err << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const DomainError& e) {
        err << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const PreconditionError& e) {
        err << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const UnsupportedError& e) {
        err << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const DegreeCapError& e) {
        err << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitViolation;
    }

    std::ofstream file;
    std::ostream* sink = &out;
    if (!config.output.path.empty()) {
        file.open(config.output.path);
        if (!file) {
            err << "config error: cannot write '" << config.output.path << "'\n";
            return kExitConfig;
        }
        sink = &file;
    }
    if (config.output.format == OutputFormat::Json) write_json(report, config, *sink);
    else write_csv(report, config, *sink);
    if (report.exit_code == kExitViolation) err << "invariant violation reported by " << to_string(config.command) << "\n";
    return report.exit_code;
}

}  // namespace gsdyn
