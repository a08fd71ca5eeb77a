// tauberlab: run scenario files or built-in scenarios and write summary/CSV output.
//
//   tauberlab list
//   tauberlab run <file> [--horizon H] [--tol T] [--out DIR]
//   tauberlab run --builtin <name> [...]
//
// Exit codes: 0 all assertions pass, 1 an assertion failed, 2 invalid input.

#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "tauber/scenario.hpp"

namespace {

constexpr int kInvalidInput = 2;

int run(const std::string& file, const std::string& builtin, const tauber::RunOverrides& overrides,
        const std::string& out_dir) {
    tauber::ScenarioFile scenario;
    if (!builtin.empty()) {
        const auto& b = tauber::find_builtin(builtin);
        scenario = tauber::ScenarioFile::parse_string(b.text, "builtin:" + b.name);
    } else {
        std::ifstream in(file);
        if (!in) throw tauber::DomainError("cannot open scenario file '" + file + "'");
        scenario = tauber::ScenarioFile::parse(in, file);
    }
    const auto result = tauber::run_scenario(std::move(scenario), overrides);
    const std::filesystem::path dir = out_dir.empty() ? std::filesystem::path("tauberlab_out") / result.name
                                                      : std::filesystem::path(out_dir);
    tauber::write_outputs(result, dir);

    std::cout << result.name << ": " << (result.passed() ? "pass" : "FAIL") << " (" << result.assertions.size()
              << " assertions) -> " << dir.string() << "\n";
    for (const auto& a : result.assertions)
        if (!a.passed) std::cerr << "assertion failed: " << a.name << ": " << a.detail << "\n";
    return result.exit_code();
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"tauberlab: Tauberian experiments on weighted semigroup algebras"};
    app.require_subcommand(1);

    auto* list = app.add_subcommand("list", "print the built-in scenarios");

    auto* run_cmd = app.add_subcommand("run", "run a scenario file or a built-in scenario");
    std::string file, builtin, out_dir;
    std::optional<double> horizon, tol;
    run_cmd->add_option("file", file, "scenario file");
    run_cmd->add_option("--builtin", builtin, "name of a built-in scenario");
    run_cmd->add_option("--horizon", horizon, "override the horizon (or length / extent / bound)");
    run_cmd->add_option("--tol", tol, "override the primary tolerance");
    run_cmd->add_option("--out", out_dir, "output directory (default tauberlab_out/<name>)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kInvalidInput;
    }

    if (list->parsed()) {
        for (const auto& b : tauber::builtin_scenarios()) std::cout << b.name << "\t" << b.description << "\n";
        return 0;
    }
    if (file.empty() == builtin.empty()) {
        std::cerr << "error: give exactly one of <file> or --builtin <name>\n";
        return kInvalidInput;
    }
    try {
        return run(file, builtin, {horizon, tol}, out_dir);
    } catch (const tauber::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInvalidInput;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInvalidInput;
    }
}
