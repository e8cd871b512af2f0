// Copyright (c) 2026 The LuxGen Toolkit Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// luxgen: command-line driver for the corpus, training and evaluation pipeline.

#include "luxgen/common/error.hpp"
#include "luxgen/fixture/fixture.hpp"
#include "luxgen/pipeline/config.hpp"
#include "luxgen/pipeline/stages.hpp"

#include <CLI11.hpp>
#include <json.hpp>
#include <spdlog/sinks/stdout_sinks.h>
#include <spdlog/spdlog.h>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

namespace {

namespace fs = std::filesystem;
using luxgen::pipeline::PipelineConfig;

int fail(const std::string &code, const std::string &message, const std::optional<std::string> &producer) {
    nlohmann::json j = {{"error", code}, {"message", message}, {"produced_by", nullptr}};
    if (producer) j["produced_by"] = *producer;
    std::cerr << j.dump() << std::endl;
    return code == "usage" ? 2 : 1;
}

/// Config written next to the fixture corpus by make-fixture.
std::string fixture_config(std::uint64_t seed) {
    nlohmann::json j = {{"preset", "desk"},
                        {"seed", seed},
                        {"corpus_manifest", "corpus/manifest.json"},
                        {"work_dir", "work"}};
    return j.dump(2) + "\n";
}

}  // namespace

int main(int argc, char **argv) {
    spdlog::set_default_logger(spdlog::stderr_logger_mt("luxgen"));
    spdlog::set_pattern("[%H:%M:%S] %^%l%$ %v");

    CLI::App app{"LuxGen toolkit: corpus building, T5-style pre-training, fine-tuning and evaluation"};
    app.require_subcommand(1);

    std::string config_path;
    bool force = false;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> preset;
    bool quiet = false;
    app.add_option("--config", config_path, "Pipeline config file (JSON)");
    app.add_flag("--force", force, "Redo the stage even if its output exists");
    app.add_option("--seed", seed, "Override the master seed");
    app.add_option("--preset", preset, "Override the preset (desk or paper)");
    app.add_flag("-q,--quiet", quiet, "Only log warnings and errors");

    std::vector<std::pair<std::string, CLI::App *>> stage_commands;
    const std::pair<const char *, const char *> descriptions[] = {
        {"ingest", "Read the corpus manifest into a deduplicated document store"},
        {"stats", "Print token and type counts per language, domain and source"},
        {"balance", "Plan and draw the balanced multilingual corpus"},
        {"build-vocab", "Learn the shared subword vocabulary"},
        {"make-pretrain-data", "Chunk and corrupt documents into denoising pairs"},
        {"pretrain", "Pre-train every configured model"},
        {"build-tasks", "Build and split the benchmark tasks"},
        {"finetune", "Fine-tune every model on every task"},
        {"predict", "Generate test-split predictions"},
        {"baseline", "Query a chat-completion endpoint for prompted baseline predictions"},
        {"evaluate", "Score predictions (BLEU, classification metrics)"},
        {"report", "Print the score tables"},
        {"manual-sample", "Write manual-evaluation sheets"},
    };
    for (const auto &[name, help] : descriptions) {
        stage_commands.emplace_back(name, app.add_subcommand(name, help));
    }
    CLI::App *all = app.add_subcommand("all", "Run every stage in order");
    CLI::App *show = app.add_subcommand("show-config", "Print the effective configuration");

    CLI::App *make_fixture = app.add_subcommand("make-fixture", "Write the synthetic fixture corpus and a config");
    std::string fixture_dir;
    std::uint64_t fixture_seed = 7;
    make_fixture->add_option("--out", fixture_dir, "Output directory")->required();
    make_fixture->add_option("--fixture-seed", fixture_seed, "Seed of the synthetic corpus");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        return fail("usage", e.what(), std::nullopt);
    }
    if (quiet) spdlog::set_level(spdlog::level::warn);

    try {
        if (make_fixture->parsed()) {
            const fs::path dir(fixture_dir);
            luxgen::fixture::FixtureOptions options;
            options.seed = fixture_seed;
            const auto summary = luxgen::fixture::write_fixture(dir / "corpus", options);
            const fs::path cfg = dir / "config.json";
            if (!fs::exists(cfg) || force) {
                std::ofstream(cfg) << fixture_config(seed.value_or(1));
            }
            spdlog::info("make-fixture: {} files, {} records, config {}", summary.files, summary.records, cfg.string());
            return 0;
        }
        if (config_path.empty()) {
            return fail("usage", "--config is required for this subcommand", std::nullopt);
        }
        luxgen::pipeline::RunContext ctx;
        ctx.config = luxgen::pipeline::load_config(config_path, preset, seed);
        ctx.force = force;
        ctx.out = &std::cout;
        if (show->parsed()) {
            std::cout << luxgen::pipeline::config_to_json(ctx.config) << '\n';
            return 0;
        }
        if (all->parsed()) {
            luxgen::pipeline::run_all(ctx);
            return 0;
        }
        for (const auto &[name, cmd] : stage_commands) {
            if (cmd->parsed()) {
                luxgen::pipeline::run_stage(name, ctx);
                return 0;
            }
        }
        return fail("usage", "no subcommand given", std::nullopt);
    } catch (const luxgen::pipeline::MissingArtifact &e) {
        return fail(e.code(), e.what(), e.producer());
    } catch (const luxgen::Error &e) {
        return fail(e.code(), e.what(), std::nullopt);
    } catch (const std::exception &e) {
        return fail("internal", e.what(), std::nullopt);
    }
}
