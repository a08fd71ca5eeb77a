#pragma once

// Scenario files: line-oriented "key = value" text with [section] headers.
// A scenario names one experiment; running it yields assertions, a flat
// key=value summary and CSV tables.

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tauber/error.hpp"
#include "tauber/verify.hpp"

namespace tauber {

class ParseError : public DomainError {
public:
    using DomainError::DomainError;
};

/// Raw parsed file: keys are "section.key" ("key" before the first header).
class ScenarioFile {
public:
    static ScenarioFile parse(std::istream& in, const std::string& source = "<input>");
    static ScenarioFile parse_string(const std::string& text, const std::string& source = "<input>");

    void set(const std::string& key, const std::string& value) { values_[key] = value; }
    bool has(const std::string& key) const { return values_.count(key) != 0; }
    const std::map<std::string, std::string>& values() const noexcept { return values_; }
    const std::string& source() const noexcept { return source_; }

private:
    std::map<std::string, std::string> values_;
    std::string source_;
};

struct BuiltinScenario {
    std::string name;
    std::string description;
    std::string text;
};

const std::vector<BuiltinScenario>& builtin_scenarios();
const BuiltinScenario& find_builtin(const std::string& name);

struct RunOverrides {
    std::optional<double> horizon;
    std::optional<double> tol;
};

struct RunResult {
    std::string name;
    std::string experiment;
    std::vector<Assertion> assertions;
    std::vector<std::pair<std::string, std::string>> summary; ///< in output order
    std::vector<std::pair<std::string, std::string>> tables;  ///< file name -> CSV text

    bool passed() const;
    /// 0 when every assertion passed, 1 otherwise.
    int exit_code() const { return passed() ? 0 : 1; }
};

/// Validates and runs. Invalid input (unknown or missing keys, bad values,
/// domain violations) raises an Error.
RunResult run_scenario(ScenarioFile scenario, const RunOverrides& overrides = {});

/// Writes summary.txt and every table into `dir` (created if missing).
void write_outputs(const RunResult& result, const std::filesystem::path& dir);

/// The summary.txt text.
std::string render_summary(const RunResult& result);

} // namespace tauber
