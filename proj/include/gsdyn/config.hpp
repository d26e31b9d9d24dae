#pragma once

// Experiment configs: a command, its parameters (normalized JSON checked
// against a per-command schema), output settings and the numeric precision.

#include "gsdyn/polynomial.hpp"
#include "gsdyn/resolvent.hpp"
#include "gsdyn/seminorms.hpp"
#include "gsdyn/weights.hpp"

#include "json.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace gsdyn {

using Json = nlohmann::json;

enum class Command {
    VerifyLemmas,
    Iterate,
    BoundCert,
    DerivativeBounds,
    SeminormSweep,
    Cesaro,
    Neumann,
    DivergenceCert,
    WeightCheck,
};

std::string to_string(Command c);
Command command_from_string(const std::string& name);  // ParseError when unknown
const std::vector<Command>& all_commands();

enum class OutputFormat { Csv, Json };
std::string to_string(OutputFormat f);
OutputFormat format_from_string(const std::string& name);

enum class ParamType { Int, Double, OptionalDouble, DoubleList, IntList, Poly, Weight, Function, ComplexList };

struct ParamSpec {
    std::string name;
    ParamType type;
    Json default_value;
    std::string help;
};

const std::vector<ParamSpec>& param_schema(Command c);

struct OutputSpec {
    std::string path;  // empty: standard output
    OutputFormat format = OutputFormat::Csv;
    friend bool operator==(const OutputSpec&, const OutputSpec&) = default;
};

struct ExperimentConfig {
    Command command = Command::VerifyLemmas;
    Json params = Json::object();  // every schema key present, normalized
    OutputSpec output;
    long precision_bits = kDefaultPrecisionBits;
    friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

// Strict: unknown keys and ill-typed values throw ParseError.
ExperimentConfig parse_config(const Json& j);
ExperimentConfig parse_config_text(const std::string& text);
Json to_json(const ExperimentConfig& c);

// Checks and normalizes one parameter value; ParseError on mismatch.
Json normalize_param(const ParamSpec& spec, const Json& value);
// Reads a command-line string into the JSON form of the parameter.
Json param_from_text(const ParamSpec& spec, const std::string& text);

// FNV-1a 64 over the canonical dump of command, params and precision.
std::uint64_t config_hash(const ExperimentConfig& c);
std::string config_hash_hex(const ExperimentConfig& c);

// Typed accessors for normalized parameters.
Polynomial poly_param(const Json& params, const std::string& key);
WeightSpec weight_param(const Json& params, const std::string& key);
SmoothFunction function_param(const Json& params, const std::string& key);
std::vector<Complex> complex_list_param(const Json& params, const std::string& key);

Json to_json(const WeightSpec& w);
WeightSpec weight_from_json(const Json& j);
Json to_json(const Polynomial& p);
Polynomial polynomial_from_json(const Json& j);

}  // namespace gsdyn
