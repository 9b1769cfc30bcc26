#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "negmass/core/ode.hpp"

namespace negmass::scenario {

enum class ValueType
{
    number,
    integer,
    boolean,
    string,
    number_array
};

std::string to_string(ValueType t);

struct Value
{
    ValueType type = ValueType::number;
    double number = 0.0;
    bool boolean = false;
    std::string text;
    std::vector<double> array;

    static Value of(double x) { return {ValueType::number, x, false, {}, {}}; }
    static Value of_int(std::int64_t x)
    {
        return {ValueType::integer, static_cast<double>(x), false, {}, {}};
    }
    static Value of(bool b) { return {ValueType::boolean, 0.0, b, {}, {}}; }
    static Value of(std::string s) { return {ValueType::string, 0.0, false, std::move(s), {}}; }
    static Value of(std::vector<double> a)
    {
        return {ValueType::number_array, 0.0, false, {}, std::move(a)};
    }

    friend bool operator==(const Value&, const Value&) = default;
};

/// One accepted key of an experiment kind. A key without a default is
/// required. `choices` restricts string values.
struct KeySpec
{
    std::string name;
    ValueType type;
    bool required;
    Value fallback;
    std::string doc;
    std::vector<std::string> choices;
};

struct KindSpec
{
    std::string name;
    std::string summary;
    std::vector<KeySpec> keys;
};

/// Every experiment kind the runner knows, sorted by name.
const std::vector<KindSpec>& kind_specs();
const KindSpec* find_kind(std::string_view name);

struct OutputSpec
{
    bool csv = true;
    bool json = true;

    friend bool operator==(const OutputSpec&, const OutputSpec&) = default;
};

struct Scenario
{
    std::string name;
    std::string kind;
    std::uint64_t seed = 0;
    IntegratorConfig integrator;
    OutputSpec output;
    /// Keys of the kind section, defaults filled in.
    std::map<std::string, Value> params;

    double number(const std::string& key) const;
    std::int64_t integer(const std::string& key) const;
    bool flag(const std::string& key) const;
    const std::string& text(const std::string& key) const;
    const std::vector<double>& array(const std::string& key) const;
};

bool operator==(const Scenario& a, const Scenario& b);

struct Diagnostic
{
    int line;          // 0 when the problem has no single source line
    std::string path;  // e.g. "barrier.tau"
    std::string message;
};

class ScenarioError : public std::runtime_error
{
  public:
    explicit ScenarioError(std::vector<Diagnostic> diagnostics);
    const std::vector<Diagnostic>& diagnostics() const noexcept { return diagnostics_; }

  private:
    std::vector<Diagnostic> diagnostics_;
};

/**
 * Parses the scenario text format: `key = value` lines, `[section]`
 * headers, `#` comments. Values are numbers, "strings", true/false and
 * one-line numeric arrays [a, b, c]. Top-level keys are name, kind and
 * seed; sections are [integrator], [output] and one named after the kind.
 *
 * All problems found are reported together in a ScenarioError.
 */
Scenario parse_scenario(std::string_view text);

/// Normalized text: fixed key order, every default written out. Parsing the
/// result gives back an equal Scenario.
std::string serialize_scenario(const Scenario& s);

}  // namespace negmass::scenario
