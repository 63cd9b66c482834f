// Copyright 2026 The ionsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "ionsim/harness/cli.h"

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "ionsim/harness/config.h"
#include "ionsim/harness/experiments.h"
#include "ionsim/harness/output.h"

namespace ionsim {

namespace {

struct Options {
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<size_t> shots;
    std::string out_dir = "results";
    std::string format = "both";
    bool quiet = false;
};

void add_common_options(CLI::App *cmd, Options &opts) {
    cmd->add_option("--config", opts.config_path, "JSON configuration file (defaults are built in)");
    cmd->add_option("--seed", opts.seed, "Master RNG seed (required unless set in the config)");
    cmd->add_option("--shots", opts.shots, "Override the shot count of every experiment")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--out", opts.out_dir, "Output directory");
    cmd->add_option("--format", opts.format, "json, csv or both")->check(CLI::IsMember({"json", "csv", "both"}));
    cmd->add_flag("--quiet", opts.quiet, "Only print errors");
}

ExperimentConfig resolve_config(const Options &opts) {
    ExperimentConfig config = opts.config_path.empty() ? ExperimentConfig{} : load_config(opts.config_path);
    if (opts.seed) {
        config.seed = opts.seed;
    }
    if (opts.shots) {
        config.override_shots(*opts.shots);
    }
    config.validate();
    config.require_seed();
    return config;
}

void print_summary(const ResultBundle &bundle, const std::vector<std::filesystem::path> &paths, std::ostream &out) {
    out << bundle.experiment << ": " << bundle.derived.dump() << "\n";
    for (const auto &p : paths) {
        out << "  wrote " << p.string() << "\n";
    }
}

}  // namespace

int cli_main(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
    CLI::App app{"Digital twin of a MEMS-steered individual-addressing ion trap."};
    app.require_subcommand(1);
    Options opts;
    const std::vector<std::string> names{"fig2", "fig3", "waist", "table1", "all"};
    const std::vector<std::string> descriptions{
        "Rabi flops with neighbor crosstalk",
        "Mirror switching-time scan",
        "Beam waist from three pi-times",
        "Two-ion state tomography",
        "Every experiment in turn",
    };
    for (size_t i = 0; i < names.size(); i++) {
        add_common_options(app.add_subcommand(names[i], descriptions[i]), opts);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp &e) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError &e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }

    std::string command = app.get_subcommands().front()->get_name();
    std::vector<std::string> experiments;
    if (command == "all") {
        experiments = {"fig2", "fig3", "waist", "table1"};
    } else {
        experiments = {command};
    }

    ExperimentConfig config;
    OutputFormat format;
    try {
        config = resolve_config(opts);
        format = parse_output_format(opts.format);
    } catch (const std::exception &e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }

    std::string timestamp = utc_timestamp();
    try {
        for (const auto &name : experiments) {
            ResultBundle bundle = run_experiment(name, config);
            auto paths = write_bundle(bundle, opts.out_dir, format, timestamp);
            if (!opts.quiet) {
                print_summary(bundle, paths, out);
            }
        }
    } catch (const ConfigError &e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception &e) {
        err << "error: " << e.what() << "\n";
        return kExitRuntime;
    }
    return kExitOk;
}

}  // namespace ionsim
