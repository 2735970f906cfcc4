// triadic: simultaneous testing of hypotheses and their alternatives with
// three-decision output (D1 significantly true, D2 significantly false,
// D3 uncertain).

#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cli/commands.hpp"
#include "cli/run_config.hpp"

namespace {

using triadic::cli::RunConfig;

struct FlagSpec {
    const char* key;
    const char* help;
    bool is_switch = false;
    bool multi = false;
};

// Keys double as config-file keys.
const FlagSpec kAlpha{"alpha", "familywise level in (0, 1) (default 0.05)"};
const FlagSpec kCalibration{"calibration", "bonferroni | independent (default bonferroni)"};
const FlagSpec kFormat{"format", "table | json | csv (default table)"};
const FlagSpec kSeed{"seed", "random seed (fallback: $TRIADIC_SEED, then 0)"};
const FlagSpec kInput{"input", "input CSV path, or - for stdin"};
const FlagSpec kReplicates{"replicates", "Monte Carlo replicates (default 10000)"};
const FlagSpec kWorkers{"workers", "simulation threads; output does not depend on it (default 1)"};
const FlagSpec kM{"m", "number of couples"};
const FlagSpec kTheta{"theta", "true mean(s); one value is broadcast", false, true};
const FlagSpec kBoundary{"boundary", "null boundary b_i of h_i: theta_i <= b_i (default 0)", false, true};
const FlagSpec kN{"n", "sample size (default 1)"};
const FlagSpec kTheta1{"theta1", "nested threshold theta1 (default 0)"};
const FlagSpec kTheta2{"theta2", "nested threshold theta2 (default 10)"};
const FlagSpec kModel{"model", "gaussian | nested (default gaussian)"};
const FlagSpec kProcedure{"procedure", "single-step | bauer | closure | nested-closure (default single-step)"};
const FlagSpec kLossB{"loss-b", "identity-mode loss: a = c = 1 - b, l = b (default 0.5)"};
const FlagSpec kLoss{"loss", "general loss a,b,c,l"};
const FlagSpec kTrials{"trials", "random p-vectors to compare (default 10000)"};
const FlagSpec kNested{"nested", "use a nested (non free-combination) family", true};
const FlagSpec kAllowNonComplementary{"allow-noncomplementary", "accept p_h + p_k != 1 (flagged in the report)", true};
const FlagSpec kGridMin{"grid-min", "smallest xbar on the grid"};
const FlagSpec kGridMax{"grid-max", "largest xbar on the grid"};
const FlagSpec kGridStep{"grid-step", "grid spacing (default 0.01)"};
const FlagSpec kRho0{"rho0", "correlation threshold in [0, 1) (default 0)"};

struct Registered {
    CLI::App* app;
    std::map<std::string, std::vector<std::string>> values;
    std::map<std::string, bool> switches;
    std::map<std::string, CLI::Option*> options;
};

void add_flags(Registered& r, std::initializer_list<const FlagSpec*> specs) {
    for (const FlagSpec* s : specs) {
        const std::string name = std::string("--") + s->key;
        if (s->is_switch) {
            r.options[s->key] = r.app->add_flag(name, r.switches[s->key], s->help);
        } else {
            auto* opt = r.app->add_option(name, r.values[s->key], s->help);
            if (s->multi) {
                opt->expected(1, -1)->delimiter(',');
            } else {
                opt->expected(1);
            }
            r.options[s->key] = opt;
        }
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Simultaneous testing of hypotheses and alternatives with three-decision output"};
    app.require_subcommand(1);
    app.fallthrough();
    std::string config_path;
    app.add_option("--config", config_path, "flat key = value file; flags override it");

    const std::initializer_list<const FlagSpec*> common{&kAlpha, &kCalibration, &kFormat, &kSeed};

    std::vector<Registered> subs;
    subs.reserve(5);
    auto add_sub = [&](const char* name, const char* help, std::initializer_list<const FlagSpec*> specs) {
        Registered r{app.add_subcommand(name, help), {}, {}, {}};
        subs.push_back(std::move(r));
        add_flags(subs.back(), common);
        add_flags(subs.back(), specs);
    };
    add_sub("test", "three-decision single-step test of p-values from CSV (index,p_h[,p_k])",
            {&kInput, &kAllowNonComplementary});
    add_sub("simulate", "Monte Carlo FWER, E|G| and risk",
            {&kModel, &kProcedure, &kM, &kTheta, &kBoundary, &kN, &kTheta1, &kTheta2, &kReplicates, &kWorkers,
             &kLossB, &kLoss});
    add_sub("closure-check", "compare the closure engine with the single-step rule on random p-vectors",
            {&kM, &kTrials, &kNested});
    add_sub("counterexample", "closure vs Bonferroni for the nested one-sided normal pair",
            {&kTheta1, &kTheta2, &kN, &kGridMin, &kGridMax, &kGridStep});
    add_sub("graph", "three-way threshold graph from a data matrix CSV", {&kInput, &kRho0});

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        // Usage errors share the exit code of malformed input; --help still exits 0.
        const int cli_code = app.exit(e);
        return cli_code == 0 ? triadic::cli::kExitSuccess : triadic::cli::kExitParse;
    }

    RunConfig config;
    int exit_code = triadic::cli::kExitSuccess;
    try {
        for (Registered& r : subs) {
            if (!r.app->parsed()) {
                continue;
            }
            config.command = triadic::cli::parse_command(r.app->get_name());
            if (!config_path.empty()) {
                for (const auto& [key, value] : triadic::cli::load_config_file(config_path)) {
                    triadic::cli::apply_setting(config, key, value);
                }
            }
            for (const auto& [key, opt] : r.options) {
                if (opt->count() == 0) {
                    continue;
                }
                if (auto sw = r.switches.find(key); sw != r.switches.end()) {
                    triadic::cli::apply_setting(config, key, sw->second ? "true" : "false");
                } else {
                    std::string joined;
                    for (const std::string& v : r.values[key]) {
                        joined += (joined.empty() ? "" : ",") + v;
                    }
                    triadic::cli::apply_setting(config, key, joined);
                }
            }
        }
    } catch (const triadic::Error& e) {
        std::cerr << "triadic: " << triadic::to_string(e.kind()) << ": " << e.what() << '\n';
        return triadic::cli::exit_code_for(e.kind());
    }

    const triadic::cli::CommandResult result = triadic::cli::run_command(config);
    std::cout << result.output;
    if (!result.error.empty()) {
        std::cerr << "triadic: " << result.error << '\n';
    }
    exit_code = result.exit_code;
    return exit_code;
}
