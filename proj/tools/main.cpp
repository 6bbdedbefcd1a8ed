#include <cstdio>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "inext/runner.hpp"

namespace {

int dispatch(const std::string& verb, const std::string& config_path,
             const std::string& out_override, bool with_checks) {
    inext::ScenarioConfig cfg;
    try {
        cfg = inext::load_config(config_path);
        inext::validate_config(cfg);
    } catch (const inext::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const inext::UnsupportedMode& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const inext::BadParameter& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    }

    if (verb == "validate") {
        std::cout << inext::validation_report(cfg);
        return 0;
    }

    const std::string out_dir =
        out_override.empty() ? cfg.output.directory : out_override;
    inext::RunOutcome out;
    try {
        if (verb == "run")
            out = inext::run_scenario(cfg, out_dir, with_checks);
        else if (verb == "static")
            out = inext::run_static(cfg, out_dir, with_checks);
        else
            out = inext::run_modes(cfg, out_dir);
    } catch (const inext::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const inext::UnsupportedMode& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "solver failure: " << e.what() << "\n";
        return 3;
    }

    for (const auto& c : out.checks)
        std::printf("check %-28s %s  value=%.6g threshold=%.6g\n", c.name.c_str(),
                    c.passed ? "pass" : "FAIL", c.value, c.threshold);
    if (out.exit_code == 3)
        std::cerr << "solver failure: " << out.message << "\n";
    else if (out.exit_code == 4)
        std::cerr << out.message << "\n";
    else
        std::cout << "artifacts written to " << out_dir << "\n";
    return out.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"inextensible beam and plate dynamics"};
    app.require_subcommand(1);

    std::string config_path, out_override;
    bool with_checks = false;

    auto add_common = [&](CLI::App* sub, bool has_check) {
        sub->add_option("--config", config_path, "scenario config (JSON)")
            ->required();
        sub->add_option("--out", out_override,
                        "output directory (overrides output.directory)");
        if (has_check)
            sub->add_flag("--check", with_checks,
                          "evaluate invariant checks; failures exit 4");
    };
    add_common(app.add_subcommand("run", "time integration"), true);
    add_common(app.add_subcommand("validate", "parse and report the config"), false);
    add_common(app.add_subcommand("modes", "small-amplitude spectrum"), false);
    add_common(app.add_subcommand("static", "equilibrium under a load"), true);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    return dispatch(app.get_subcommands().front()->get_name(), config_path,
                    out_override, with_checks);
}
