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

#include "luxgen/common/error.hpp"
#include "luxgen/common/rng.hpp"
#include "luxgen/corpus/store.hpp"
#include "luxgen/fixture/fixture.hpp"
#include "luxgen/pipeline/config.hpp"
#include "luxgen/pipeline/stages.hpp"
#include "luxgen/tasks/tasks.hpp"
#include "support/temp_dir.hpp"

#include <gtest/gtest.h>
#include <json.hpp>
#include <spdlog/spdlog.h>

#include <set>
#include <sstream>
#include <sys/wait.h>

namespace luxgen::pipeline {
namespace {

namespace fs = std::filesystem;
using luxgen::testing::slurp;
using luxgen::testing::TempDir;
using nlohmann::json;

constexpr const char *minimal = R"({"corpus_manifest":"corpus/manifest.json"})";

TEST(Config, DefaultsFollowThePreset) {
    const auto c = parse_config(minimal, "/base");
    EXPECT_EQ(c.preset, "desk");
    EXPECT_EQ(c.vocab_size, 1024);
    EXPECT_EQ(c.corpus_manifest, fs::path("/base/corpus/manifest.json"));
    EXPECT_EQ(c.work_dir, fs::path("/base/work"));
    EXPECT_EQ(c.models.size(), 2U);
    EXPECT_EQ(c.tasks.size(), 5U);
    EXPECT_FALSE(c.baseline.has_value());
    const auto paper = parse_config(minimal, "/base", std::string("paper"), 99);
    EXPECT_EQ(paper.vocab_size, 32128);
    EXPECT_EQ(paper.num_sentinels, 100);
    EXPECT_EQ(paper.seed, 99U);
    EXPECT_EQ(paper.model.vocab_size, 32128);
}

TEST(Config, OverridesAndNestedSections) {
    const auto c = parse_config(R"({"corpus_manifest":"/abs/m.json","seed":5,"vocab":{"size":600,"sentinels":8},
        "split":{"test_fraction":0.2},"tasks":["headline","moderation"],
        "models":[{"name":"tiny","corpus":"balanced"}],
        "baseline":{"name":"llm","flavor":"B","endpoint":{"url":"http://x/y","model":"m"},"limits":{"max_attempts":2}}})",
                                "/base");
    EXPECT_EQ(c.corpus_manifest, fs::path("/abs/m.json"));
    EXPECT_EQ(c.seed, 5U);
    EXPECT_EQ(c.vocab_size, 600);
    EXPECT_EQ(c.model.vocab_size, 600);
    EXPECT_EQ(c.test_fraction, 0.2);
    EXPECT_EQ(c.tasks, (std::vector<tasks::TaskKind>{tasks::TaskKind::headline, tasks::TaskKind::moderation}));
    ASSERT_EQ(c.models.size(), 1U);
    EXPECT_EQ(c.models[0].corpus, PretrainCorpus::balanced);
    ASSERT_TRUE(c.baseline.has_value());
    EXPECT_EQ(c.baseline->flavor, baseline::PromptFlavor::return_only);
    EXPECT_EQ(c.baseline->limits.max_attempts, 2);
    EXPECT_EQ(parse_config(minimal, "/b", std::nullopt, 42).seed, 42U);
}

TEST(Config, RejectsUnknownKeysAndBadValues) {
    auto code_of = [](const std::string &text) {
        try {
            parse_config(text, "/b");
        } catch (const Error &e) {
            return e.code();
        }
        return std::string("none");
    };
    EXPECT_EQ(code_of(R"({"corpus_manifest":"m","colour":1})"), "invalid-config");
    EXPECT_EQ(code_of(R"({"corpus_manifest":"m","vocab":{"szie":10}})"), "invalid-config");
    EXPECT_EQ(code_of(R"({"corpus_manifest":"m","vocab":{"size":100}})"), "invalid-config");
    EXPECT_EQ(code_of(R"({"seed":1})"), "invalid-config");
    EXPECT_EQ(code_of(R"({"corpus_manifest":"m","preset":"huge"})"), "invalid-config");
    EXPECT_EQ(code_of(R"({"corpus_manifest":"m","split":{"test_fraction":1.5}})"), "invalid-config");
    EXPECT_EQ(code_of(R"({"corpus_manifest":"m","models":[{"name":"a"},{"name":"a"}]})"), "invalid-config");
    EXPECT_EQ(code_of(R"({"corpus_manifest":"m","tasks":["poetry"]})"), "unknown-task");
    EXPECT_EQ(code_of("{"), "invalid-config");
    try {
        load_config("/definitely/not/here.json");
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), "missing-config");
    }
}

TEST(Config, JsonRoundTrip) {
    const auto c = parse_config(R"({"corpus_manifest":"/m.json","work_dir":"/w","seed":3})", "/");
    const auto again = parse_config(config_to_json(c), "/");
    EXPECT_EQ(config_to_json(again), config_to_json(c));
}

TEST(Config, StageSeedsAreDistinctAndStable) {
    const auto c = parse_config(minimal, "/b");
    std::set<std::uint64_t> seeds;
    for (const char *label : {"balance", "pretrain/LuxT5-desk", "pretrain/LuxT5-Grande-desk", "build-tasks/headline",
                              "finetune/LuxT5-desk/headline", "manual-sample"}) {
        EXPECT_TRUE(seeds.insert(stage_seed(c, label)).second) << label;
        EXPECT_EQ(stage_seed(c, label), derive_seed(c.seed, label));
    }
}

TEST(Config, PublishedRowsAndColumnTitles) {
    EXPECT_EQ(column_title(tasks::TaskKind::headline), "Headline");
    const auto rows = published_reference_rows();
    ASSERT_FALSE(rows.empty());
    for (const auto &r : rows) {
        EXPECT_NE(r.name.find("(published)"), std::string::npos);
        EXPECT_EQ(r.scores.size(), 4U);
    }
}

TEST(Fixture, DeterministicAndShapedLikeTheCorpus) {
    TempDir a, b, c;
    const auto sa = fixture::write_fixture(a.path());
    fixture::write_fixture(b.path());
    fixture::FixtureOptions other;
    other.seed = 8;
    fixture::write_fixture(c.path(), other);
    EXPECT_GT(sa.records, 1000U);
    for (const auto &entry : fs::directory_iterator(a.path())) {
        const auto name = entry.path().filename();
        EXPECT_EQ(slurp(entry.path()), slurp(b.path() / name)) << name;
    }
    EXPECT_NE(slurp(a / "news-lb.jsonl"), slurp(c / "news-lb.jsonl"));

    const auto manifest = corpus::load_manifest(sa.manifest);
    EXPECT_EQ(manifest.size(), sa.files);
    std::set<std::pair<corpus::Language, corpus::Domain>> cells;
    for (const auto &m : manifest) cells.insert({m.language, m.domain});
    using corpus::Domain;
    using corpus::Language;
    EXPECT_TRUE(cells.count({Language::lb, Domain::chat}));
    EXPECT_TRUE(cells.count({Language::lb, Domain::radio}));
    EXPECT_FALSE(cells.count({Language::de, Domain::chat}));
    EXPECT_TRUE(cells.count({Language::de, Domain::radio}));
    EXPECT_FALSE(cells.count({Language::fr, Domain::chat}));
    EXPECT_FALSE(cells.count({Language::fr, Domain::radio}));

    const auto ingested = corpus::ingest(manifest);
    EXPECT_TRUE(ingested.errors.empty());
    EXPECT_LT(corpus::dedupe(ingested.documents).size(), ingested.documents.size());
}

struct StageFixture : ::testing::Test {
    TempDir dir;
    RunContext ctx;
    std::ostringstream out;

    void SetUp() override {
        spdlog::set_level(spdlog::level::warn);
        fixture::write_fixture(dir / "corpus");
        ctx.config = parse_config(minimal, dir.path());
        ctx.out = &out;
    }
};

TEST_F(StageFixture, MissingInputsNameTheirProducer) {
    auto producer_of = [&](const char *stage) {
        try {
            run_stage(stage, ctx);
        } catch (const MissingArtifact &e) {
            return e.producer();
        }
        return std::string("none");
    };
    EXPECT_EQ(producer_of("balance"), "ingest");
    EXPECT_EQ(producer_of("build-tasks"), "ingest");
    run_stage("ingest", ctx);
    EXPECT_EQ(producer_of("build-vocab"), "balance");
    EXPECT_EQ(producer_of("make-pretrain-data"), "build-vocab");
    EXPECT_EQ(producer_of("evaluate"), "predict");
    EXPECT_THROW(run_stage("sing", ctx), Error);
}

TEST_F(StageFixture, CompletedStagesAreSkippedUnlessForced) {
    run_stage("ingest", ctx);
    const fs::path stage = stage_dir(ctx.config, "ingest");
    EXPECT_TRUE(fs::exists(stage / ".complete"));
    const auto store = slurp(stage / "store.jsonl");
    std::ofstream(stage / "canary") << "x";
    run_stage("ingest", ctx);
    EXPECT_TRUE(fs::exists(stage / "canary"));
    ctx.force = true;
    run_stage("ingest", ctx);
    EXPECT_FALSE(fs::exists(stage / "canary"));
    EXPECT_EQ(slurp(stage / "store.jsonl"), store);
}

TEST_F(StageFixture, CheapStagesProduceConsistentArtifacts) {
    for (const char *s : {"ingest", "stats", "balance", "build-vocab", "build-tasks"}) run_stage(s, ctx);
    EXPECT_NE(out.str().find("lb"), std::string::npos);

    const json plan = json::parse(slurp(stage_dir(ctx.config, "balance") / "plan.json"));
    std::set<std::string> deficits;
    for (const auto &d : plan["deficits"]) deficits.insert(d["language"].get<std::string>() + "/" + d["domain"].get<std::string>());
    EXPECT_TRUE(deficits.count("de/chat"));
    EXPECT_TRUE(deficits.count("fr/radio"));

    const auto vocab = subword::Vocabulary::load(stage_dir(ctx.config, "build-vocab") / "vocab.txt");
    EXPECT_EQ(vocab.size(), ctx.config.vocab_size);

    for (const auto task : ctx.config.tasks) {
        const auto s = tasks::read_split(stage_dir(ctx.config, "build-tasks") / std::string(tasks::to_string(task)));
        EXPECT_FALSE(s.train.empty()) << tasks::to_string(task);
        EXPECT_FALSE(s.test.empty()) << tasks::to_string(task);
        std::set<std::string> train_groups;
        for (const auto &e : s.train) train_groups.insert(e.source_ids.front());
        for (const auto &e : s.test) EXPECT_EQ(train_groups.count(e.source_ids.front()), 0U) << e.id;
        EXPECT_EQ(s.seed, stage_seed(ctx.config, "build-tasks/" + std::string(tasks::to_string(task))));
    }
}

TEST_F(StageFixture, BalanceIsReproducibleAcrossWorkDirs) {
    RunContext other = ctx;
    other.config.work_dir = dir / "work2";
    for (auto *c : {&ctx, &other}) {
        run_stage("ingest", *c);
        run_stage("balance", *c);
    }
    EXPECT_EQ(slurp(stage_dir(ctx.config, "balance") / "balanced.jsonl"),
              slurp(stage_dir(other.config, "balance") / "balanced.jsonl"));
    other.config.seed = 2;
    other.force = true;
    run_stage("balance", other);
    EXPECT_NE(slurp(stage_dir(ctx.config, "balance") / "balanced.jsonl"),
              slurp(stage_dir(other.config, "balance") / "balanced.jsonl"));
}

struct CliResult {
    int exit_code;
    std::string out;
    std::string err;
};

CliResult run_cli(const TempDir &dir, const std::string &args) {
    const auto out = dir / "cli.out";
    const auto err = dir / "cli.err";
    const std::string cmd = std::string(LUXGEN_CLI) + " " + args + " >" + out.string() + " 2>" + err.string();
    const int status = std::system(cmd.c_str());
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, slurp(out), slurp(err)};
}

TEST(Cli, ErrorsAreSingleJsonLines) {
    TempDir dir;
    const auto missing = run_cli(dir, "--config " + (dir / "nope.json").string() + " ingest");
    EXPECT_EQ(missing.exit_code, 1);
    const auto j = json::parse(missing.err);
    EXPECT_EQ(j["error"], "missing-config");
    EXPECT_TRUE(j["produced_by"].is_null());

    const auto usage = run_cli(dir, "ingest");
    EXPECT_EQ(usage.exit_code, 2);
    EXPECT_EQ(json::parse(usage.err)["error"], "usage");
    EXPECT_EQ(run_cli(dir, "--bogus-flag").exit_code, 2);
}

TEST(Cli, MissingArtifactNamesProducer) {
    TempDir dir;
    ASSERT_EQ(run_cli(dir, "-q make-fixture --out " + dir.path().string()).exit_code, 0);
    EXPECT_TRUE(fs::exists(dir / "corpus" / "manifest.json"));
    const auto r = run_cli(dir, "-q --config " + (dir / "config.json").string() + " build-vocab");
    EXPECT_EQ(r.exit_code, 1);
    const auto j = json::parse(r.err);
    EXPECT_EQ(j["error"], "missing-artifact");
    EXPECT_EQ(j["produced_by"], "balance");
    const auto shown = run_cli(dir, "--config " + (dir / "config.json").string() + " --seed 9 show-config");
    EXPECT_EQ(shown.exit_code, 0);
    EXPECT_EQ(json::parse(shown.out)["seed"], 9);
}

}  // namespace
}  // namespace luxgen::pipeline
