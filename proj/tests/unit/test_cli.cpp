#include "doctest.h"

#include "gsdyn/cli.hpp"
#include "gsdyn/errors.hpp"

#include <sstream>

using namespace gsdyn;

namespace {

int run_cli(std::vector<std::string> args, std::string* out_text = nullptr, std::string* err_text = nullptr) {
    args.insert(args.begin(), "gsdyn");
    std::vector<char*> argv;
    for (auto& a : args) argv.push_back(a.data());
    std::ostringstream out, err;
    int code = cli_main(static_cast<int>(argv.size()), argv.data(), out, err);
    if (out_text) *out_text = out.str();
    if (err_text) *err_text = err.str();
    return code;
}

}  // namespace

TEST_CASE("every command round-trips its default config") {
    for (Command c : all_commands()) {
        auto cfg = parse_config(Json{{"command", to_string(c)}});
        auto again = parse_config(to_json(cfg));
        CHECK(again == cfg);
        CHECK(config_hash(again) == config_hash(cfg));
        CHECK(command_from_string(to_string(c)) == c);
        for (const auto& spec : param_schema(c)) CHECK(cfg.params.contains(spec.name));
    }
}

TEST_CASE("round trip keeps non-default values") {
    Json j = {{"command", "seminorm-sweep"},
              {"params",
               {{"psi", Json::array({"3/7", 0, 2.5})},
                {"sigma", {{"kind", "log_power"}, {"parameter", 2}, {"scale_a", 4}}},
                {"f", {{"kind", "zero"}}},
                {"m_max", 3}}},
              {"output", {{"path", "x.json"}, {"format", "json"}}},
              {"precision_bits", 256}};
    auto cfg = parse_config(j);
    CHECK(cfg.params["psi"] == Json::array({"3/7", "0", "5/2"}));
    CHECK(cfg.params["m_max"] == 3);
    CHECK(cfg.output.format == OutputFormat::Json);
    CHECK(cfg.output.path == "x.json");
    CHECK(cfg.precision_bits == 256);
    CHECK(parse_config_text(to_json(cfg).dump()) == cfg);
}

TEST_CASE("strict parsing") {
    CHECK_THROWS_AS(parse_config(Json{{"command", "bound-cert"}, {"params", {{"bogus", 1}}}}), ParseError);
    CHECK_THROWS_AS(parse_config(Json{{"command", "bound-cert"}, {"extra", 1}}), ParseError);
    CHECK_THROWS_AS(parse_config(Json{{"command", "nope"}}), ParseError);
    CHECK_THROWS_AS(parse_config(Json{{"params", Json::object()}}), ParseError);
    CHECK_THROWS_AS(parse_config(Json{{"command", "bound-cert"}, {"params", {{"k_max", 1.5}}}}), ParseError);
    CHECK_THROWS_AS(parse_config(Json{{"command", "bound-cert"}, {"params", {{"b", "two"}}}}), ParseError);
    CHECK_THROWS_AS(parse_config(Json{{"command", "bound-cert"}, {"params", {{"psi", Json::array()}}}}), ParseError);
    CHECK_THROWS_AS(parse_config(Json{{"command", "bound-cert"}, {"params", {{"psi", Json::array({"1/0"})}}}}),
                    ParseError);
    CHECK_THROWS_AS(parse_config(Json{{"command", "seminorm-sweep"},
                                      {"params", {{"sigma", {{"kind", "gevrey"}, {"parameter", 0.5}}}}}}),
                    ParseError);
    CHECK_THROWS_AS(parse_config(Json{{"command", "seminorm-sweep"},
                                      {"params", {{"sigma", {{"kind", "gevrey"}, {"parameter", 2}, {"x", 1}}}}}}),
                    ParseError);
    CHECK_THROWS_AS(parse_config(Json{{"command", "iterate"}, {"output", {{"format", "xml"}}}}), ParseError);
    CHECK_THROWS_AS(parse_config(Json{{"command", "iterate"}, {"precision_bits", 8}}), ParseError);
    CHECK_THROWS_AS(parse_config_text("{not json"), ParseError);
}

TEST_CASE("config hash") {
    auto a = parse_config(Json{{"command", "cesaro"}});
    auto b = parse_config(Json{{"command", "cesaro"}, {"params", {{"x", 0.0}}}});
    CHECK(config_hash(a) == config_hash(b));
    auto c = parse_config(Json{{"command", "cesaro"}, {"params", {{"x", 0.5}}}});
    CHECK(config_hash(a) != config_hash(c));
    auto d = a;
    d.output.path = "elsewhere.csv";
    CHECK(config_hash(a) == config_hash(d));
    CHECK(config_hash_hex(a).size() == 16);
}

TEST_CASE("flag text parsing") {
    auto find = [](Command c, const std::string& name) {
        for (const auto& s : param_schema(c))
            if (s.name == name) return s;
        throw std::runtime_error("missing " + name);
    };
    CHECK(param_from_text(find(Command::Neumann, "mu"), "2,1+1i,-0.5i,1e-3-2i") ==
          Json::array({Json::array({2.0, 0.0}), Json::array({1.0, 1.0}), Json::array({0.0, -0.5}),
                       Json::array({1e-3, -2.0})}));
    CHECK(param_from_text(find(Command::BoundCert, "psi"), "1/2, 0, 1") == Json::array({"1/2", "0", "1"}));
    CHECK(param_from_text(find(Command::SeminormSweep, "sigma"), "gevrey:2:2.5") ==
          Json{{"kind", "gevrey"}, {"parameter", 2.0}, {"scale_a", 2.5}});
    CHECK(param_from_text(find(Command::SeminormSweep, "f"), "zero") == Json{{"kind", "zero"}});
    CHECK(param_from_text(find(Command::DivergenceCert, "d_prime"), "null").is_null());
    CHECK(param_from_text(find(Command::Cesaro, "n_values"), "1,2,3") == Json::array({1, 2, 3}));
    CHECK_THROWS_AS(param_from_text(find(Command::BoundCert, "k_max"), "6x"), ParseError);
    CHECK_THROWS_AS(param_from_text(find(Command::SeminormSweep, "sigma"), "gevrey"), ParseError);
}

TEST_CASE("exit codes") {
    std::string out, err;
    CHECK(run_cli({"bound-cert", "--psi", "1/4,0,1"}, &out, &err) == kExitConfig);
    CHECK(err.find("polynomial has fixed points") != std::string::npos);
    CHECK(run_cli({"bound-cert", "--no-such-flag"}) == kExitConfig);
    CHECK(run_cli({"bound-cert", "--k-max", "abc"}) == kExitConfig);
    CHECK(run_cli({"bound-cert", "--config", "/nonexistent/config.json"}) == kExitConfig);
    CHECK(run_cli({"bound-cert", "--format", "xml"}) == kExitConfig);
    CHECK(run_cli({"verify-lemmas", "--n-max", "6", "--inverse-binomial-n-max", "20"}, &out) == kExitOk);
    CHECK(out.find("# config_hash: fnv1a64:") != std::string::npos);
    CHECK(out.find("check,n,k,count,lhs,rhs,holds") != std::string::npos);
    CHECK(run_cli({"divergence-cert", "--d-prime", "3.5", "--d", "2", "--n-max", "100", "--recurrence-n-max", "10"}) ==
          kExitViolation);
    CHECK(run_cli({"divergence-cert", "--d", "2.5"}) == kExitConfig);
    CHECK(run_cli({"divergence-cert", "--d", "1.5", "--n-max", "500", "--recurrence-n-max", "10", "--format", "json"},
                  &out) == kExitOk);
    auto j = Json::parse(out);
    CHECK(j["summary"]["n_star_for_C"].contains("1e6"));
    CHECK(j["summary"]["status"] == "certified");
    CHECK(run_cli({"--version"}, &out) == kExitOk);
}

TEST_CASE("print-config round trip through the CLI") {
    std::string out;
    REQUIRE(run_cli({"neumann", "--mu", "2,1+1i", "--tol", "1e-8", "--print-config"}, &out) == kExitOk);
    auto cfg = parse_config_text(out);
    CHECK(cfg.command == Command::Neumann);
    CHECK(cfg.params["tol"] == 1e-8);
    CHECK(cfg.params["mu"].size() == 2);
}

TEST_CASE("reports do not depend on the job count") {
    auto cfg = parse_config(Json{{"command", "verify-lemmas"}, {"params", {{"n_max", 9}}}});
    std::ostringstream one, four;
    write_csv(run_experiment(cfg, 1), cfg, one);
    write_csv(run_experiment(cfg, 4), cfg, four);
    CHECK(one.str() == four.str());
}

TEST_CASE("cell formatting") {
    CHECK(format_cell(Json(0.1)) == "0.10000000000000001");
    CHECK(format_cell(Json(3)) == "3");
    CHECK(format_cell(Json(true)) == "true");
    CHECK(format_cell(Json(nullptr)).empty());
    CHECK(format_cell(Json("a,b")) == "\"a,b\"");
}
