#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "vfstab/cli.hpp"
#include "vfstab/errors.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Stability analysis of admittance-controlled virtual fixtures"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir;
    std::vector<std::string> overrides;

    const char* verbs[][2] = {
        {"analyze", "Nyquist data, crossings and limit-cycle prediction"},
        {"simulate", "Nonlinear time simulation and force spectrum"},
        {"sweep", "Prediction and simulation over the (m, b) grid"},
        {"sensitivity", "Theoretical and simulated sensitivity curves"},
        {"optimize", "Adaptation center search and effort table"},
    };
    for (const auto& [name, help] : verbs) {
        CLI::App* sub = app.add_subcommand(name, help);
        sub->add_option("--config", config_path, "key = value configuration file");
        sub->add_option("--out", out_dir, "output directory");
        sub->add_option("--set", overrides, "override one key, key=value (repeatable)");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : vfstab::kExitConfig;
    }

    vfstab::RunConfig cfg;
    try {
        if (!config_path.empty()) cfg = vfstab::load_config_file(config_path);
        for (const std::string& kv : overrides) vfstab::apply_override(cfg, kv);
        if (!out_dir.empty()) cfg.output_dir = out_dir;
    } catch (const vfstab::ConfigError& e) {
        std::cerr << "config error";
        if (e.line() > 0) std::cerr << " at " << config_path << ':' << e.line();
        std::cerr << ": " << e.what() << '\n';
        return vfstab::kExitConfig;
    }
    return vfstab::run_command(app.get_subcommands().front()->get_name(), cfg, std::cout, std::cerr);
}
