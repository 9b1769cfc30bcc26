#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "negmass/scenario/config.hpp"

namespace negmass::scenario {

enum class Status
{
    pass,
    fail,
    report_only
};

std::string to_string(Status s);

struct Metric
{
    std::string name;
    double value;
    /// Scaled tolerance the value was compared against; empty when only
    /// reported.
    std::optional<double> tolerance;
    Status status;
};

struct RunReport
{
    std::string name;
    std::string kind;
    std::uint64_t seed = 0;
    Status status = Status::report_only;
    std::vector<Metric> metrics;
    /// Non-numeric results (classifications, basis names, flags).
    std::map<std::string, std::string> details;
    /// Files written, relative to the output root.
    std::vector<std::string> artifacts;
    /// Module or I/O error text, verbatim.
    std::string error;
    /// Not written to report.json, which stays byte-identical across runs.
    double wall_seconds = 0.0;
};

struct RunOptions
{
    std::filesystem::path out_dir = "out";
    /// Multiplies every assertion tolerance.
    double tolerance_scale = 1.0;
    std::optional<std::uint64_t> seed;
};

/// $NEGMASS_OUT_DIR, or "out" when unset.
std::filesystem::path default_out_dir();

/// report.json contents: sorted keys, metrics in the order they were
/// recorded.
std::string report_json(const RunReport& report);

/// Runs one scenario and writes <out_dir>/<name>/... atomically. Module
/// errors and I/O failures end up in report.error with status fail.
RunReport run_scenario(const Scenario& s, const RunOptions& opts);

struct SuiteReport
{
    /// Sorted by scenario file name.
    std::vector<RunReport> runs;
    /// Files that failed to parse, with the error text.
    std::vector<std::pair<std::string, std::string>> invalid;

    bool ok() const noexcept;
};

/// Runs every *.toml file in `dir` (scenarios in parallel) and writes
/// <out_dir>/suite.json.
SuiteReport run_suite(const std::filesystem::path& dir, const RunOptions& opts);

}  // namespace negmass::scenario
